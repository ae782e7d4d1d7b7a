//! Exact rational spectra with Jordan data, and a float symmetric solver.

use num_traits::Zero;
use serde::Serialize;

use super::matrix::RatMatrix;
use super::poly::Poly;
use super::rational::{self, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct EigenBlock {
    #[serde(with = "rational::serde_rational")]
    pub value: Rational,
    pub algebraic_multiplicity: usize,
    /// Jordan block sizes, largest first.
    pub jordan_blocks: Vec<usize>,
    /// Basis of the generalized eigenspace `ker (M - value)^mult`.
    #[serde(skip)]
    pub generalized_basis: Vec<Vec<Rational>>,
}

impl EigenBlock {
    pub fn index(&self) -> usize {
        self.jordan_blocks.first().copied().unwrap_or(0)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EigenStructure {
    #[serde(skip)]
    pub char_poly: Poly,
    pub blocks: Vec<EigenBlock>,
    /// True when the rational eigenvalues account for the whole dimension.
    pub split: bool,
    /// False when root candidates could not be enumerated exhaustively.
    pub search_complete: bool,
}

pub fn rational_eigenstructure(m: &RatMatrix) -> Result<EigenStructure> {
    if !m.is_square() {
        return Err(Error::NotSquare(m.rows(), m.cols()));
    }
    let n = m.rows();
    let cp = m.char_poly()?;
    let (roots, complete) = cp.rational_roots();
    let mut blocks = Vec::new();
    let mut total = 0;
    for (value, mult) in roots {
        total += mult;
        let shifted = m.shift_diag(&value);
        // ranks of (M - v)^j for j = 0..=mult
        let mut ranks = vec![n];
        let mut power = RatMatrix::identity(n);
        for _ in 0..mult {
            power = power.mul(&shifted)?;
            ranks.push(power.rank());
        }
        // number of blocks of size >= j is ranks[j-1] - ranks[j]
        let at_least: Vec<usize> = (1..=mult).map(|j| ranks[j - 1] - ranks[j]).collect();
        let mut sizes = Vec::new();
        for j in (1..=mult).rev() {
            let exact = at_least[j - 1] - at_least.get(j).copied().unwrap_or(0);
            sizes.extend(std::iter::repeat_n(j, exact));
        }
        let generalized_basis = power.nullspace();
        blocks.push(EigenBlock {
            value,
            algebraic_multiplicity: mult,
            jordan_blocks: sizes,
            generalized_basis,
        });
    }
    Ok(EigenStructure {
        char_poly: cp,
        blocks,
        split: total == n,
        search_complete: complete,
    })
}

impl EigenStructure {
    /// Splits `z` into its generalized eigenspace components. Requires a split
    /// spectrum.
    pub fn decompose(&self, z: &[Rational]) -> Result<Vec<Vec<Rational>>> {
        if !self.split {
            return Err(Error::Unsupported("spectrum is not rational".into()));
        }
        let cols: Vec<Vec<Rational>> = self
            .blocks
            .iter()
            .flat_map(|b| b.generalized_basis.iter().cloned())
            .collect();
        let p = RatMatrix::from_columns(&cols)?;
        let c = p.solve(z)?;
        let n = z.len();
        let mut out = Vec::with_capacity(self.blocks.len());
        let mut offset = 0;
        for b in &self.blocks {
            let mut comp = vec![Rational::zero(); n];
            for (k, v) in b.generalized_basis.iter().enumerate() {
                let ck = &c[offset + k];
                if ck.is_zero() {
                    continue;
                }
                for (x, y) in comp.iter_mut().zip(v) {
                    *x += ck * y;
                }
            }
            offset += b.generalized_basis.len();
            out.push(comp);
        }
        Ok(out)
    }
}

/// Eigenpairs of a real symmetric matrix by cyclic Jacobi rotations,
/// sorted by descending eigenvalue. Columns of the returned vectors are
/// unit eigenvectors.
pub fn sym_float_eigs(a: &[Vec<f64>], tol: f64, max_sweeps: usize) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let n = a.len();
    if a.iter().any(|r| r.len() != n) {
        return Err(Error::NotSquare(n, a.first().map_or(0, |r| r.len())));
    }
    for i in 0..n {
        for j in 0..i {
            let s = a[i][j].abs().max(a[j][i].abs()).max(1.0);
            if (a[i][j] - a[j][i]).abs() > 1e-9 * s {
                return Err(Error::InvalidInput("matrix is not symmetric".into()));
            }
        }
    }
    let mut m: Vec<Vec<f64>> = a.to_vec();
    let mut v = vec![vec![0.0; n]; n];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    let scale = m.iter().flatten().fold(0.0f64, |s, x| s.max(x.abs())).max(1.0);
    for _ in 0..max_sweeps {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[i][j] * m[i][j])
            .sum::<f64>()
            .sqrt();
        if off <= tol * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if m[p][q].abs() <= f64::MIN_POSITIVE {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (mkp, mkq) = (m[k][p], m[k][q]);
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let (mpk, mqk) = (m[p][k], m[q][k]);
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
                for row in v.iter_mut() {
                    let (vp, vq) = (row[p], row[q]);
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[j][j].partial_cmp(&m[i][i]).unwrap_or(std::cmp::Ordering::Equal));
    let values = order.iter().map(|&i| m[i][i]).collect();
    let vectors = order
        .iter()
        .map(|&i| (0..n).map(|k| v[k][i]).collect())
        .collect();
    Ok((values, vectors))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::rat;

    #[test]
    fn jordan_data() {
        // one 2-block for 3, one 1-block for 3, and a simple -1
        let m = RatMatrix::from_i64(&[
            &[3, 1, 0, 0],
            &[0, 3, 0, 0],
            &[0, 0, 3, 0],
            &[0, 0, 0, -1],
        ]);
        let es = rational_eigenstructure(&m).unwrap();
        assert!(es.split);
        assert_eq!(es.blocks.len(), 2);
        assert_eq!(es.blocks[0].value, rat(-1));
        assert_eq!(es.blocks[1].jordan_blocks, vec![2, 1]);
        let parts = es.decompose(&[rat(1), rat(2), rat(3), rat(4)]).unwrap();
        assert_eq!(parts[0], vec![rat(0), rat(0), rat(0), rat(4)]);
    }

    #[test]
    fn jacobi_small() {
        let a = vec![vec![2.0, 1.0], vec![1.0, 2.0]];
        let (vals, vecs) = sym_float_eigs(&a, 1e-12, 100).unwrap();
        assert!((vals[0] - 3.0).abs() < 1e-12 && (vals[1] - 1.0).abs() < 1e-12);
        assert!((vecs[0][0].abs() - 0.5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn not_split() {
        let m = RatMatrix::from_i64(&[&[0, -1], &[1, 0]]);
        assert!(!rational_eigenstructure(&m).unwrap().split);
    }
}
