//! Dense exact matrices over the rationals.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::Poly;
use super::rational::{self, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rational::rat(x)).collect())
                .collect(),
        )
        .expect("rectangular literal")
    }

    pub fn from_columns(cols: &[Vec<Rational>]) -> Result<Self> {
        let c = cols.len();
        let r = cols.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            if col.len() != r {
                return Err(Error::DimensionMismatch("ragged columns".into()));
            }
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(rational::to_f64).collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m[(a, b)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut m = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        m[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// `self - c I`
    pub fn shift_diag(&self, c: &Rational) -> Self {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            m[(i, i)] -= c;
        }
        m
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let mut acc = Self::identity(self.rows);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in c..m.cols {
                        let v = &m[(r, j)] * &f;
                        m[(i, j)] -= v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (m, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -m[(r, f)].clone();
                }
                v
            })
            .collect()
    }

    /// Solves `self * x = b` for a square nonsingular `self`.
    pub fn solve(&self, b: &[Rational]) -> Result<Vec<Rational>> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch("right-hand side".into()));
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, n + 1);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n)] = b[i].clone();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() != n || pivots.iter().any(|&p| p >= n) {
            return Err(Error::Singular);
        }
        Ok((0..n).map(|i| r[(i, n)].clone()).collect())
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rational::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::Singular);
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Ok(inv)
    }

    pub fn det(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det *= &piv;
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] / &piv;
                for j in c..n {
                    let v = &m[(c, j)] * &f;
                    m[(i, j)] -= v;
                }
            }
        }
        Ok(det)
    }

    /// Leading principal minors `det A[0..k, 0..k]` for `k = 1..=n`.
    pub fn leading_minors(&self) -> Result<Vec<Rational>> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        // Elimination without row exchanges: the k-th minor is the product of
        // the first k pivots. A zero pivot means that minor vanishes, and the
        // later ones are then computed directly.
        let n = self.rows;
        let mut m = self.clone();
        let mut out = Vec::with_capacity(n);
        let mut prod = Rational::one();
        for c in 0..n {
            let piv = m[(c, c)].clone();
            if piv.is_zero() {
                out.push(Rational::zero());
                for k in c + 2..=n {
                    let idx: Vec<usize> = (0..k).collect();
                    out.push(self.submatrix(&idx, &idx).det()?);
                }
                return Ok(out);
            }
            prod *= &piv;
            out.push(prod.clone());
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] / &piv;
                for j in c..n {
                    let v = &m[(c, j)] * &f;
                    m[(i, j)] -= v;
                }
            }
        }
        Ok(out)
    }

    /// Sylvester's criterion: symmetric with all leading minors positive.
    pub fn is_positive_definite(&self) -> Result<bool> {
        if !self.is_symmetric() {
            return Ok(false);
        }
        Ok(self
            .leading_minors()?
            .iter()
            .all(|m| rational::sign(m) > 0))
    }

    /// `det(xI - A)` via similarity reduction to Hessenberg form.
    pub fn char_poly(&self) -> Result<Poly> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let mut h = self.clone();
        for j in 0..n.saturating_sub(2) {
            let Some(p) = (j + 1..n).find(|&i| !h[(i, j)].is_zero()) else {
                continue;
            };
            if p != j + 1 {
                h.swap_rows(p, j + 1);
                h.swap_cols(p, j + 1);
            }
            let piv = h[(j + 1, j)].clone();
            for k in j + 2..n {
                if h[(k, j)].is_zero() {
                    continue;
                }
                let t = &h[(k, j)] / &piv;
                for c in 0..n {
                    let v = &h[(j + 1, c)] * &t;
                    h[(k, c)] -= v;
                }
                for r in 0..n {
                    let v = &h[(r, k)] * &t;
                    h[(r, j + 1)] += v;
                }
            }
        }
        // p_m = (x - h_mm) p_{m-1} - sum_i h_im * prod_{j=i+1..m} h_{j,j-1} * p_{i-1}
        let mut ps: Vec<Poly> = vec![Poly::one()];
        for m in 0..n {
            let mut pm = ps[m].mul(&Poly::from_coeffs(vec![-h[(m, m)].clone(), Rational::one()]));
            let mut sub = Rational::one();
            for i in (0..m).rev() {
                sub *= &h[(i + 1, i)];
                if sub.is_zero() {
                    break;
                }
                let c = &h[(i, m)] * &sub;
                if !c.is_zero() {
                    pm = pm.sub(&ps[i].scale(&c));
                }
            }
            ps.push(pm);
        }
        Ok(ps.pop().unwrap())
    }

    /// Characteristic polynomial by the Faddeev-LeVerrier recurrence.
    pub fn char_poly_faddeev(&self) -> Result<Poly> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        let mut mk = Self::zeros(n, n);
        for k in 1..=n {
            let prev = &coeffs[n - k + 1];
            mk = self.mul(&mk)?.add(&Self::identity(n).scale(prev));
            let am = self.mul(&mk)?;
            let tr = (0..n).fold(Rational::zero(), |a, i| a + &am[(i, i)]);
            coeffs[n - k] = -tr / rational::rat(k as i64);
        }
        Ok(Poly::from_coeffs(coeffs))
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(rational::to_string).collect())
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells = self.to_string_rows();
        let w = cells.iter().flatten().map(|s| s.len()).max().unwrap_or(1);
        for row in cells {
            let line: Vec<String> = row.iter().map(|s| format!("{s:>w$}")).collect();
            writeln!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}

impl Serialize for RatMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_string_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        let parsed: Result<Vec<Vec<Rational>>> = rows
            .iter()
            .map(|r| r.iter().map(|s| rational::parse(s)).collect())
            .collect();
        let parsed = parsed.map_err(serde::de::Error::custom)?;
        RatMatrix::from_rows(parsed).map_err(serde::de::Error::custom)
    }
}

/// Row-reduced basis that grows one vector at a time.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    rows: Vec<(usize, Vec<Rational>)>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Returns true when `v` was independent of the current span.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            *x *= &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (x, y) in row.iter_mut().zip(&v) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        self.rows.push((p, v));
        true
    }
}

/// Krylov rank of `{v, Mv, M^2 v, ...}` capped at `cap` vectors, with the
/// exponents that enlarged the span.
pub fn krylov_rank(m: &RatMatrix, v: &[Rational], cap: usize) -> (usize, Vec<usize>) {
    let mut basis = EchelonBasis::new();
    let mut used = Vec::new();
    let mut cur = v.to_vec();
    for k in 0..cap {
        if !basis.insert(&cur) {
            break;
        }
        used.push(k);
        cur = m.mul_vec(&cur);
    }
    (basis.rank(), used)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::{frac, rat};

    #[test]
    fn inverse_and_det() {
        let a = RatMatrix::from_i64(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), RatMatrix::identity(3));
        assert_eq!(a.det().unwrap(), rat(18));
        let s = RatMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(s.inverse(), Err(Error::Singular));
        assert_eq!(s.rank(), 1);
        assert_eq!(s.nullspace(), vec![vec![rat(-2), rat(1)]]);
    }

    #[test]
    fn minors_of_a0_block() {
        let a = RatMatrix::from_i64(&[&[15, 9, 3], &[9, 27, 9], &[3, 9, 15]]);
        assert_eq!(a.leading_minors().unwrap(), vec![rat(15), rat(324), rat(3888)]);
        assert!(a.is_positive_definite().unwrap());
        let b = RatMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(b.leading_minors().unwrap(), vec![rat(0), rat(-1)]);
        assert!(!b.is_positive_definite().unwrap());
    }

    #[test]
    fn char_poly_methods_agree() {
        let a = RatMatrix::from_rows(vec![
            vec![rat(0), frac(1, 2), rat(3), rat(0)],
            vec![rat(1), rat(0), rat(0), rat(-2)],
            vec![rat(0), rat(0), rat(0), rat(1)],
            vec![rat(5), rat(1), rat(0), frac(-1, 3)],
        ])
        .unwrap();
        assert_eq!(a.char_poly().unwrap(), a.char_poly_faddeev().unwrap());
    }

    #[test]
    fn krylov() {
        let a = RatMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(krylov_rank(&a, &[rat(1), rat(1)], 5).0, 1);
        assert_eq!(krylov_rank(&a, &[rat(1), rat(0)], 5), (2, vec![0, 1]));
    }
}
