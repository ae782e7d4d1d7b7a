use num_traits::{One, Signed, Zero};

use super::element::Element;
use crate::error::{Error, Result};
use crate::linalg::{rational, QLaurent, Rational};

/// Raw ring description, checked by [`FrobeniusRing::new`].
#[derive(Clone, Debug)]
pub struct RingData {
    pub name: String,
    pub labels: Vec<String>,
    pub degrees: Vec<i64>,
    /// Degree of `q`.
    pub tau: i64,
    /// Complex dimension; pairings are nonzero only in total degree
    /// `dim + d * tau` at `q^d`.
    pub dim: i64,
    pub unit: usize,
    pub point: Option<usize>,
    pub pairing: Vec<Vec<QLaurent>>,
    /// `structure[i][j] = e_i * e_j`
    pub structure: Vec<Vec<Element>>,
    /// Handle element supplied from outside, replacing the pairing sum.
    pub installed_delta: Option<Element>,
}

#[derive(Clone, Debug)]
pub struct FrobeniusRing {
    pub(crate) data: RingData,
    pub(crate) pairing_inv: Vec<Vec<QLaurent>>,
    pub(crate) handle: Element,
}

impl FrobeniusRing {
    /// Validates and freezes a ring: unit, commutativity, grading, pairing,
    /// associativity and the Frobenius condition on all basis triples.
    pub fn new(data: RingData) -> Result<Self> {
        let n = data.labels.len();
        if n == 0 {
            return Err(Error::Validation("empty basis".into()));
        }
        if data.degrees.len() != n
            || data.pairing.len() != n
            || data.pairing.iter().any(|r| r.len() != n)
            || data.structure.len() != n
            || data.structure.iter().any(|r| r.len() != n)
        {
            return Err(Error::Validation("inconsistent table sizes".into()));
        }
        if data.unit >= n || data.point.is_some_and(|p| p >= n) {
            return Err(Error::Validation("unit or point index out of range".into()));
        }
        if data.tau <= 0 {
            return Err(Error::Validation("q must have positive degree".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for l in &data.labels {
            if !seen.insert(l) {
                return Err(Error::Validation(format!("duplicate label {l}")));
            }
        }
        for row in &data.structure {
            for e in row {
                if e.terms().any(|(w, _)| w >= n) {
                    return Err(Error::Validation("structure constant index out of range".into()));
                }
            }
        }
        check_unit(&data)?;
        check_commutative(&data)?;
        check_grading(&data)?;
        check_pairing_grading(&data)?;
        let pairing_inv = laurent_inverse(&data.pairing).map_err(|_| {
            Error::Validation("pairing is not invertible over Q[q, 1/q]".into())
        })?;
        let mut ring = FrobeniusRing {
            data,
            pairing_inv,
            handle: Element::zero(),
        };
        ring.check_triples()?;
        ring.handle = ring.handle_double_sum();
        if let Some(d) = &ring.data.installed_delta {
            if d.terms().any(|(w, _)| w >= n) {
                return Err(Error::Validation("installed handle element out of range".into()));
            }
        }
        Ok(ring)
    }

    pub fn name(&self) -> &str {
        &self.data.name
    }

    pub fn data(&self) -> &RingData {
        &self.data
    }

    pub fn rank(&self) -> usize {
        self.data.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.data.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.data.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.data.labels.iter().position(|l| l == label)
    }

    pub fn degrees(&self) -> &[i64] {
        &self.data.degrees
    }

    pub fn tau(&self) -> i64 {
        self.data.tau
    }

    pub fn dim(&self) -> i64 {
        self.data.dim
    }

    pub fn unit(&self) -> usize {
        self.data.unit
    }

    pub fn point(&self) -> Option<usize> {
        self.data.point
    }

    pub fn pairing(&self) -> &[Vec<QLaurent>] {
        &self.data.pairing
    }

    pub fn pairing_inverse(&self) -> &[Vec<QLaurent>] {
        &self.pairing_inv
    }

    pub fn structure(&self, i: usize, j: usize) -> &Element {
        &self.data.structure[i][j]
    }

    /// True when a handle element was installed from a closed formula.
    pub fn has_installed_delta(&self) -> bool {
        self.data.installed_delta.is_some()
    }

    /// The handle element of the pairing, `sum g^{ij} e_i * e_j`.
    pub fn pairing_handle(&self) -> &Element {
        &self.handle
    }

    /// The handle element used for dynamics: the installed one if present,
    /// otherwise the pairing sum.
    pub fn delta(&self) -> &Element {
        self.data.installed_delta.as_ref().unwrap_or(&self.handle)
    }

    pub fn unit_element(&self) -> Element {
        Element::basis(self.data.unit)
    }

    pub fn product(&self, x: &Element, y: &Element) -> Element {
        let mut out = Element::zero();
        for (i, a) in x.terms() {
            for (j, b) in y.terms() {
                out.add_scaled(&self.data.structure[i][j], &(a * b));
            }
        }
        out
    }

    pub fn power(&self, x: &Element, k: u32) -> Element {
        let mut acc = self.unit_element();
        for _ in 0..k {
            acc = self.product(&acc, x);
        }
        acc
    }

    /// Bilinear pairing extended over `Q[q, 1/q]`.
    pub fn pair(&self, x: &Element, y: &Element) -> QLaurent {
        let mut out = QLaurent::zero();
        for (i, a) in x.terms() {
            for (j, b) in y.terms() {
                let g = &self.data.pairing[i][j];
                if !g.is_zero() {
                    out += &(&(a * b) * g);
                }
            }
        }
        out
    }

    /// `e_i * e_j * e_k` in the two associations that differ.
    fn check_triple(&self, i: usize, j: usize, k: usize) -> std::result::Result<(), String> {
        let s = &self.data.structure;
        let ij = &s[i][j];
        let mut left = Element::zero();
        for (w, c) in ij.terms() {
            left.add_scaled(&s[w][k], c);
        }
        let mut right = Element::zero();
        for (w, c) in s[j][k].terms() {
            right.add_scaled(&s[i][w], c);
        }
        if left != right {
            return Err(format!(
                "associativity fails on ({}, {}, {})",
                self.data.labels[i], self.data.labels[j], self.data.labels[k]
            ));
        }
        let mut other = Element::zero();
        for (w, c) in s[i][k].terms() {
            other.add_scaled(&s[w][j], c);
        }
        if left != other {
            return Err(format!(
                "associativity fails on ({}, {}, {})",
                self.data.labels[i], self.data.labels[k], self.data.labels[j]
            ));
        }
        let g = &self.data.pairing;
        let pair_basis = |x: &Element, b: usize| {
            let mut out = QLaurent::zero();
            for (w, c) in x.terms() {
                if !g[w][b].is_zero() {
                    out += &(c * &g[w][b]);
                }
            }
            out
        };
        // g(e_i e_j, e_k) = g(e_i, e_j e_k) and the cyclic variant
        let a = pair_basis(ij, k);
        let b = pair_basis(&s[j][k], i);
        let c = pair_basis(&s[i][k], j);
        if a != b || a != c {
            return Err(format!(
                "Frobenius condition fails on ({}, {}, {})",
                self.data.labels[i], self.data.labels[j], self.data.labels[k]
            ));
        }
        Ok(())
    }

    fn check_triples(&self) -> Result<()> {
        let n = self.rank();
        let run_i = |i: usize| -> Option<((usize, usize, usize), String)> {
            for j in i..n {
                for k in j..n {
                    if let Err(msg) = self.check_triple(i, j, k) {
                        return Some(((i, j, k), msg));
                    }
                }
            }
            None
        };
        #[cfg(feature = "parallel")]
        let failure = {
            use rayon::prelude::*;
            (0..n).into_par_iter().filter_map(run_i).min_by_key(|(t, _)| *t)
        };
        #[cfg(not(feature = "parallel"))]
        let failure = (0..n).filter_map(run_i).next();
        match failure {
            Some((_, msg)) => Err(Error::Validation(msg)),
            None => Ok(()),
        }
    }

    pub(crate) fn handle_double_sum(&self) -> Element {
        let n = self.rank();
        let mut out = Element::zero();
        for i in 0..n {
            for j in 0..n {
                let g = &self.pairing_inv[i][j];
                if !g.is_zero() {
                    out.add_scaled(&self.data.structure[i][j], g);
                }
            }
        }
        out
    }

    /// Human-readable form, e.g. `2*q + 6*s4` or `H - 1/36*H^3`.
    pub fn format(&self, x: &Element) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (n, (i, c)) in x.terms().enumerate() {
            let label = &self.data.labels[i];
            let mut parts: Vec<String> = Vec::new();
            let neg = match c.as_monomial() {
                Some((r, e)) => {
                    let a = r.abs();
                    if !a.is_one() {
                        parts.push(rational::to_string(&a));
                    }
                    match e {
                        0 => {}
                        1 => parts.push("q".into()),
                        _ => parts.push(format!("q^{e}")),
                    }
                    r.is_negative()
                }
                None => {
                    parts.push(format!("({c})"));
                    false
                }
            };
            if n == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if parts.is_empty() || i != self.data.unit {
                parts.push(label.clone());
            }
            s.push_str(&parts.join("*"));
        }
        s
    }

    /// Degree of the Laurent exponent pattern: `deg(e_w) + d * tau`.
    pub fn term_degree(&self, w: usize, d: i64) -> i64 {
        self.data.degrees[w] + d * self.data.tau
    }

    /// Rank of the basis portion `V_j` (degrees congruent to `j` mod `tau`).
    pub fn vj_split(&self, j: i64) -> Vec<usize> {
        let t = self.data.tau;
        (0..self.rank())
            .filter(|&w| (self.data.degrees[w] - j).rem_euclid(t) == 0)
            .collect()
    }

    pub fn rational_coords(&self, x: &Element) -> Vec<Rational> {
        x.at_one(self.rank())
    }

    pub fn element_from_coords(&self, v: &[Rational]) -> Element {
        Element::from_coords(v)
    }

    pub fn is_zero_coords(v: &[Rational]) -> bool {
        v.iter().all(|x| x.is_zero())
    }
}

fn check_unit(d: &RingData) -> Result<()> {
    for i in 0..d.labels.len() {
        if d.structure[d.unit][i] != Element::basis(i) {
            return Err(Error::Validation(format!(
                "unit law fails: {} * {}",
                d.labels[d.unit], d.labels[i]
            )));
        }
    }
    Ok(())
}

fn check_commutative(d: &RingData) -> Result<()> {
    let n = d.labels.len();
    for i in 0..n {
        for j in 0..i {
            if d.structure[i][j] != d.structure[j][i] {
                return Err(Error::Validation(format!(
                    "not commutative: {} * {}",
                    d.labels[i], d.labels[j]
                )));
            }
        }
    }
    Ok(())
}

fn check_grading(d: &RingData) -> Result<()> {
    let n = d.labels.len();
    for i in 0..n {
        for j in 0..n {
            for (w, c) in d.structure[i][j].terms() {
                for (e, _) in c.terms() {
                    if d.degrees[w] + e * d.tau != d.degrees[i] + d.degrees[j] {
                        return Err(Error::Validation(format!(
                            "grading fails: q^{e} {} in {} * {}",
                            d.labels[w], d.labels[i], d.labels[j]
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

fn check_pairing_grading(d: &RingData) -> Result<()> {
    let n = d.labels.len();
    for i in 0..n {
        for j in 0..n {
            if d.pairing[i][j] != d.pairing[j][i] {
                return Err(Error::Validation(format!(
                    "pairing not symmetric at ({}, {})",
                    d.labels[i], d.labels[j]
                )));
            }
            for (e, _) in d.pairing[i][j].terms() {
                if d.degrees[i] + d.degrees[j] != d.dim + e * d.tau {
                    return Err(Error::Validation(format!(
                        "pairing grading fails at ({}, {})",
                        d.labels[i], d.labels[j]
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Gauss-Jordan inversion over `Q[q, 1/q]`, pivoting on unit entries.
pub(crate) fn laurent_inverse(m: &[Vec<QLaurent>]) -> Result<Vec<Vec<QLaurent>>> {
    let n = m.len();
    let mut a: Vec<Vec<QLaurent>> = m.to_vec();
    let mut inv: Vec<Vec<QLaurent>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { QLaurent::one() } else { QLaurent::zero() })
                .collect()
        })
        .collect();
    let mut used = vec![false; n];
    let mut pivot_row_of_col = vec![usize::MAX; n];
    for col in 0..n {
        let Some(r) = (0..n).find(|&r| !used[r] && a[r][col].as_monomial().is_some()) else {
            return Err(Error::Singular);
        };
        used[r] = true;
        pivot_row_of_col[col] = r;
        let pinv = a[r][col].inverse()?;
        for j in 0..n {
            a[r][j] = &a[r][j] * &pinv;
            inv[r][j] = &inv[r][j] * &pinv;
        }
        for i in 0..n {
            if i == r || a[i][col].is_zero() {
                continue;
            }
            let f = a[i][col].clone();
            for j in 0..n {
                if !a[r][j].is_zero() {
                    let t = &a[r][j] * &f;
                    a[i][j] -= &t;
                }
                if !inv[r][j].is_zero() {
                    let t = &inv[r][j] * &f;
                    inv[i][j] -= &t;
                }
            }
        }
    }
    // row pivot_row_of_col[c] now holds row c of the inverse
    Ok((0..n).map(|c| inv[pivot_row_of_col[c]].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::rat;

    #[test]
    fn laurent_inverse_antitriangular() {
        let q = QLaurent::q_pow(1);
        let m = vec![
            vec![QLaurent::zero(), QLaurent::constant(rat(2))],
            vec![QLaurent::constant(rat(2)), q.scale(&rat(8))],
        ];
        let inv = laurent_inverse(&m).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let mut s = QLaurent::zero();
                for k in 0..2 {
                    s += &(&m[i][k] * &inv[k][j]);
                }
                let want = if i == j { QLaurent::one() } else { QLaurent::zero() };
                assert_eq!(s, want);
            }
        }
    }
}
