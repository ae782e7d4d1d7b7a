//! Slow, independent reference computations used to cross-check the main
//! algorithms.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::One;
use rand::Rng;

use crate::linalg::{rational, Poly, RatMatrix, Rational};
use crate::partition::Partition;

/// Kostka numbers `K_{λ,α}`: semistandard tableaux of shape `λ` and content
/// `α`, counted by peeling off the horizontal strip of the largest letter.
#[derive(Default)]
pub struct Kostka {
    memo: HashMap<(Vec<u32>, Vec<u32>), u64>,
}

impl Kostka {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, shape: &[u32], content: &[u32]) -> u64 {
        let shape: Vec<u32> = shape.iter().copied().filter(|&x| x > 0).collect();
        let content: Vec<u32> = content.iter().copied().filter(|&x| x > 0).collect();
        let ssum: u32 = shape.iter().sum();
        let csum: u32 = content.iter().sum();
        if ssum != csum {
            return 0;
        }
        if content.is_empty() {
            return 1;
        }
        // K is symmetric in the order of the content
        let mut key_c = content.clone();
        key_c.sort_unstable_by(|a, b| b.cmp(a));
        let key = (shape.clone(), key_c.clone());
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let last = *key_c.last().unwrap();
        let rest = &key_c[..key_c.len() - 1];
        let mut total = 0;
        for inner in horizontal_strip_removals(&shape, last) {
            total += self.get(&inner, rest);
        }
        self.memo.insert(key, total);
        total
    }
}

/// All `μ ⊆ λ` with `λ/μ` a horizontal strip of `size` cells.
fn horizontal_strip_removals(shape: &[u32], size: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(shape.len());
    fn rec(shape: &[u32], i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == shape.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let next = shape.get(i + 1).copied().unwrap_or(0);
        // row i can shrink down to the length of row i+1
        let max_take = (shape[i] - next).min(left);
        for take in 0..=max_take {
            cur.push(shape[i] - take);
            rec(shape, i + 1, left - take, cur, out);
            cur.pop();
        }
    }
    rec(shape, 0, size, &mut cur, &mut out);
    out
}

fn partitions_of(n: u32, max_part: u32, max_len: usize) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    if max_len == 0 {
        return vec![];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max_part)).rev() {
        for mut rest in partitions_of(n - first, first, max_len - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every partition of `n`, largest parts first in lexicographic order.
pub fn all_partitions(n: u32) -> Vec<Partition> {
    partitions_of(n, n, n as usize)
        .into_iter()
        .map(|p| Partition::new(p).unwrap())
        .collect()
}

/// `s_λ s_μ = sum c^ν s_ν` from monomial coefficients: the coefficient of
/// `x^ν` in the product is `sum_{α+β=ν} K_{λα} K_{μβ}`, and Schur
/// coefficients are peeled off in decreasing lexicographic order.
pub fn schur_product(kostka: &mut Kostka, lambda: &Partition, mu: &Partition) -> BTreeMap<Partition, u64> {
    let total = lambda.size() + mu.size();
    let nus = all_partitions(total);
    let mut mono: Vec<i64> = Vec::with_capacity(nus.len());
    for nu in &nus {
        let mut c = 0i64;
        let parts = nu.parts();
        let mut alpha = vec![0u32; parts.len()];
        loop {
            let a: u32 = alpha.iter().sum();
            if a == lambda.size() {
                let beta: Vec<u32> = parts.iter().zip(&alpha).map(|(n, a)| n - a).collect();
                let k1 = kostka.get(lambda.parts(), &alpha);
                if k1 > 0 {
                    c += (k1 * kostka.get(mu.parts(), &beta)) as i64;
                }
            }
            // odometer over 0 <= alpha_i <= nu_i
            let mut i = 0;
            while i < alpha.len() && alpha[i] == parts[i] {
                alpha[i] = 0;
                i += 1;
            }
            if i == alpha.len() {
                break;
            }
            alpha[i] += 1;
        }
        mono.push(c);
    }
    // nus is in decreasing lex order, which refines dominance
    let mut out = BTreeMap::new();
    for (a, nu) in nus.iter().enumerate() {
        let c = mono[a];
        if c == 0 {
            continue;
        }
        assert!(c > 0, "negative Schur coefficient in oracle");
        for (b, rho) in nus.iter().enumerate().skip(a + 1) {
            let k = kostka.get(nu.parts(), rho.parts()) as i64;
            mono[b] -= c * k;
        }
        out.insert(nu.clone(), c as u64);
    }
    out
}

/// Partitions of `i` in an `l × m` box, by listing them.
pub fn box_partition_count_bruteforce(i: u32, m: u32, l: u32) -> u128 {
    partitions_of(i, m, l as usize).len() as u128
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, j| acc * (n - j) as u128 / (j + 1) as u128)
}

/// Euler characteristic of a degree-`d` hypersurface in `P^{r+1}`.
pub fn hypersurface_euler_characteristic(d: u32, r: u32) -> Rational {
    let d_i = BigInt::from(d);
    let t = num_traits::pow(BigInt::one() - &d_i, r as usize + 2) - BigInt::one();
    Rational::new(t, d_i) + rational::rat(r as i64 + 2)
}

/// `p(M)` by Horner's rule.
pub fn eval_poly_at_matrix(p: &Poly, m: &RatMatrix) -> RatMatrix {
    let n = m.rows();
    let mut acc = RatMatrix::zeros(n, n);
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(m).expect("square").shift_diag(&-c.clone());
    }
    acc
}

/// Small random rational entries `a/b` with `|a| <= 9`, `1 <= b <= 4`.
pub fn random_rational_matrix<R: Rng>(rng: &mut R, n: usize) -> RatMatrix {
    let mut m = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = rational::frac(rng.gen_range(-9..=9), rng.gen_range(1..=4));
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn kostka_small() {
        let mut k = Kostka::new();
        assert_eq!(k.get(&[2, 1], &[1, 1, 1]), 2);
        assert_eq!(k.get(&[3], &[1, 1, 1]), 1);
        assert_eq!(k.get(&[2, 2], &[1, 1, 1, 1]), 2);
        assert_eq!(k.get(&[1, 1], &[2]), 0);
    }

    #[test]
    fn schur_product_known() {
        let mut k = Kostka::new();
        let c = schur_product(&mut k, &p(&[2, 1]), &p(&[2, 1]));
        assert_eq!(c[&p(&[3, 2, 1])], 2);
        assert_eq!(c.values().sum::<u64>(), 8);
        let c = schur_product(&mut k, &p(&[1]), &p(&[1]));
        assert_eq!(c.len(), 2);
    }

    #[test]
    fn hypersurface_values() {
        assert_eq!(hypersurface_euler_characteristic(3, 3), rational::rat(-6));
        assert_eq!(hypersurface_euler_characteristic(2, 3), rational::rat(4));
        assert_eq!(hypersurface_euler_characteristic(4, 3), rational::rat(-56));
    }
}
