//! Integer partitions, Littlewood-Richardson coefficients and restricted
//! partition counts.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.0
    }
}

impl Partition {
    /// Trailing zeros are dropped; parts must be weakly decreasing.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Self(parts))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn rectangle(rows: usize, cols: u32) -> Self {
        if cols == 0 {
            return Self::empty();
        }
        Self(vec![cols; rows])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Part `i` (0-based), zero past the length.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Parts padded with zeros to length `k`.
    pub fn padded(&self, k: usize) -> Vec<u32> {
        (0..k.max(self.len())).map(|i| self.part(i)).collect()
    }

    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    pub fn fits_box(&self, rows: usize, cols: u32) -> bool {
        self.len() <= rows && self.part(0) <= cols
    }

    pub fn conjugate(&self) -> Partition {
        let m = self.part(0);
        Partition((1..=m).map(|c| self.0.iter().filter(|&&p| p >= c).count() as u32).collect())
    }

    /// `(m - λ_k, ..., m - λ_1)` inside a `k x m` box.
    pub fn complement(&self, k: usize, m: u32) -> Result<Partition> {
        if !self.fits_box(k, m) {
            return Err(Error::InvalidInput(format!("{self} does not fit a {k}x{m} box")));
        }
        Partition::new((0..k).rev().map(|i| m - self.part(i)).collect())
    }

    /// Compact label, e.g. `(3,1)` or `()`.
    pub fn label(&self) -> String {
        let p: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        format!("({})", p.join(","))
    }

    pub fn parse_label(s: &str) -> Result<Partition> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("partition label {s:?}")))?;
        if inner.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts: std::result::Result<Vec<u32>, _> =
            inner.split(',').map(|x| x.trim().parse::<u32>()).collect();
        Partition::new(parts.map_err(|_| Error::Parse(format!("partition label {s:?}")))?)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// All partitions fitting a `rows x cols` box, by size then reverse
/// lexicographic order.
pub fn box_partitions(rows: usize, cols: u32) -> Vec<Partition> {
    fn rec(rows: usize, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        out.push(Partition::new(cur.clone()).unwrap());
        if cur.len() == rows {
            return;
        }
        for p in 1..=max {
            cur.push(p);
            rec(rows, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(rows, cols, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| b.cmp(a)));
    out
}

/// `c^ν_{λμ}` by filling the skew shape `ν/λ` cell by cell in reading order
/// (rows top to bottom, each row right to left), pruning on column strictness,
/// content and the lattice condition.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if !nu.contains(lambda) || nu.size() != lambda.size() + mu.size() {
        return 0;
    }
    if !nu.contains(mu) {
        return 0;
    }
    let rows = nu.len();
    let cells: Vec<(usize, usize)> = (0..rows)
        .flat_map(|r| {
            let (a, b) = (lambda.part(r) as usize, nu.part(r) as usize);
            (a..b).rev().map(move |c| (r, c))
        })
        .collect();
    let mut grid: HashMap<(usize, usize), u32> = HashMap::new();
    let mut counts = vec![0u32; mu.len() + 1];
    let content: Vec<u32> = std::iter::once(0).chain(mu.parts().iter().copied()).collect();

    fn go(
        idx: usize,
        cells: &[(usize, usize)],
        lambda: &Partition,
        content: &[u32],
        grid: &mut HashMap<(usize, usize), u32>,
        counts: &mut [u32],
    ) -> u64 {
        if idx == cells.len() {
            return 1;
        }
        let (r, c) = cells[idx];
        // weakly increasing along the row: the cell to the right is already placed
        let max_label = grid.get(&(r, c + 1)).copied().unwrap_or(content.len() as u32 - 1);
        let above = if r > 0 && (c as u32) >= lambda.part(r - 1) {
            grid.get(&(r - 1, c)).copied().unwrap_or(0)
        } else {
            0
        };
        let mut total = 0;
        for a in (above + 1)..=max_label {
            let ai = a as usize;
            if counts[ai] >= content[ai] {
                continue;
            }
            if a > 1 && counts[ai] + 1 > counts[ai - 1] {
                continue;
            }
            counts[ai] += 1;
            grid.insert((r, c), a);
            total += go(idx + 1, cells, lambda, content, grid, counts);
            grid.remove(&(r, c));
            counts[ai] -= 1;
        }
        total
    }
    if mu.is_empty() {
        return u64::from(lambda == nu);
    }
    go(0, &cells, lambda, &content, &mut grid, &mut counts)
}

/// Closed form for partitions with at most two rows; `None` if any argument
/// has more than two rows.
pub fn lr_coefficient_len2(lambda: &Partition, nu: &Partition, mu: &Partition) -> Option<u64> {
    if lambda.len() > 2 || nu.len() > 2 || mu.len() > 2 {
        return None;
    }
    let (l1, m1, m2) = (lambda.part(0) as i64, mu.part(0) as i64, mu.part(1) as i64);
    let (n1, n2) = (nu.part(0) as i64, nu.part(1) as i64);
    let ok = mu.contains(lambda)
        && mu.size() == lambda.size() + nu.size()
        && n1 >= m1 - l1
        && m2 - l1 <= n2
        && n2 <= m1 - l1;
    Some(u64::from(ok))
}

/// Expansion of `s_λ s_μ` as `ν -> c^ν_{λμ}`, keeping only `ν` with at most
/// `max_rows` rows. Built by adding the letters of `μ` as successive
/// horizontal strips under the lattice condition.
pub fn lr_product(lambda: &Partition, mu: &Partition, max_rows: Option<usize>) -> BTreeMap<Partition, u64> {
    let rows = max_rows.unwrap_or(lambda.len() + mu.len());
    let mut out = BTreeMap::new();
    if lambda.len() > rows {
        return out;
    }
    let shape = lambda.padded(rows);
    let prev = vec![0u32; rows];
    strips(mu.parts(), 0, shape, prev, &mut out);
    out
}

fn strips(mu: &[u32], letter: usize, shape: Vec<u32>, prev: Vec<u32>, out: &mut BTreeMap<Partition, u64>) {
    if letter == mu.len() {
        *out.entry(Partition::new(shape).unwrap()).or_insert(0) += 1;
        return;
    }
    let rows = shape.len();
    let mut add = vec![0u32; rows];

    #[allow(clippy::too_many_arguments)]
    fn place(
        j: usize,
        left: u32,
        cum_prev: u32,
        cum_cur: u32,
        mu: &[u32],
        letter: usize,
        shape: &[u32],
        prev: &[u32],
        add: &mut Vec<u32>,
        out: &mut BTreeMap<Partition, u64>,
    ) {
        let rows = shape.len();
        if left == 0 {
            let new_shape: Vec<u32> = shape.iter().zip(add.iter()).map(|(a, b)| a + b).collect();
            strips(mu, letter + 1, new_shape, add.clone(), out);
            return;
        }
        if j == rows {
            return;
        }
        // rows above j hold the letter at most up to the old row j-1 length
        let room = if j == 0 { left } else { (shape[j - 1] - shape[j]).min(left) };
        // lattice: letters of this kind in rows <= j vs previous letter in rows < j
        let cap = if letter == 0 {
            room
        } else {
            room.min(cum_prev.saturating_sub(cum_cur))
        };
        if letter > 0 && cum_cur > cum_prev {
            return;
        }
        for a in (0..=cap).rev() {
            add[j] = a;
            place(
                j + 1,
                left - a,
                cum_prev + prev[j],
                cum_cur + a,
                mu,
                letter,
                shape,
                prev,
                add,
                out,
            );
        }
        add[j] = 0;
    }
    place(0, mu[letter], 0, 0, mu, letter, &shape, &prev, &mut add, out);
}

/// `p(i | m, l)`: partitions of `i` with at most `l` parts, each at most `m`.
pub fn restricted_count(i: u32, m: u32, l: u32) -> u128 {
    let mut memo = HashMap::new();
    restricted_count_memo(i, m, l, &mut memo)
}

fn restricted_count_memo(i: u32, m: u32, l: u32, memo: &mut HashMap<(u32, u32, u32), u128>) -> u128 {
    if i == 0 {
        return 1;
    }
    if m == 0 || l == 0 {
        return 0;
    }
    if let Some(v) = memo.get(&(i, m, l)) {
        return *v;
    }
    let mut v = restricted_count_memo(i, m - 1, l, memo);
    if i >= m {
        v += restricted_count_memo(i - m, m, l - 1, memo);
    }
    memo.insert((i, m, l), v);
    v
}

/// Upper bound for the span of handle-element powers of `Gr(k, n)`.
pub fn est_bound(k: u32, n: u32) -> Result<u128> {
    if !(1..n).contains(&k) {
        return Err(Error::InvalidInput(format!("need 0 < k < n, got k={k}, n={n}")));
    }
    let dim = k * (n - k);
    let factor = n / n.gcd(&(k * k));
    let s: u128 = (0..=dim / n).map(|i| restricted_count(i * n, n - k, k)).sum();
    Ok(factor as u128 * s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn basics() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!(p(&[3, 1, 0]).parts(), &[3, 1]);
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
        assert_eq!(p(&[3, 1]).complement(2, 3).unwrap(), p(&[2]));
        assert_eq!(box_partitions(2, 3).len(), 10);
        assert_eq!(Partition::parse_label("(2,1)").unwrap(), p(&[2, 1]));
        assert_eq!(Partition::parse_label("()").unwrap(), p(&[]));
    }

    #[test]
    fn classic_coefficient() {
        assert_eq!(lr_coefficient(&p(&[2, 1]), &p(&[2, 1]), &p(&[3, 2, 1])), 2);
        let prod = lr_product(&p(&[2, 1]), &p(&[2, 1]), None);
        assert_eq!(prod[&p(&[3, 2, 1])], 2);
        assert_eq!(prod.values().sum::<u64>(), 8);
    }

    #[test]
    fn estimate_table() {
        let table = [
            (2, 4, 2), (2, 5, 10), (2, 6, 9), (2, 7, 21), (2, 8, 8),
            (3, 6, 8), (3, 7, 35), (3, 8, 56), (4, 8, 10),
        ];
        for (k, n, e) in table {
            assert_eq!(est_bound(k, n).unwrap(), e, "Gr({k},{n})");
        }
        // 1 + p(9|6,3) + 1 with eight partitions of 9 in a 3x6 box
        assert_eq!(restricted_count(9, 6, 3), 8);
        assert_eq!(est_bound(3, 9).unwrap(), 10);
    }
}
