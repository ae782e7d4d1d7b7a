use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use super::element::Element;
use super::ring::FrobeniusRing;
use crate::error::{Error, Result};
use crate::linalg::{krylov_rank, rational, QLaurent, RatMatrix, Rational};

#[derive(Clone, Debug)]
pub struct HandleElement {
    pub delta: Element,
    /// The dual-basis form `sum e_i * ě_i` agreed with the double sum.
    pub forms_agree: bool,
    /// For rings with an installed handle element: does the pairing sum
    /// reproduce it?
    pub matches_installed: Option<bool>,
}

/// `[pt]^{*t} = c q^m 1` with `t` minimal.
#[derive(Clone, Debug, Serialize)]
pub struct Theta {
    pub t: u32,
    #[serde(with = "rational::serde_rational")]
    pub c: Rational,
    pub m: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct FSpan {
    pub dim: usize,
    /// Exponents `k` whose powers enlarged the span.
    pub basis_powers: Vec<usize>,
    /// Every computed power lies in the sum of `V_j` with `D_X | j`.
    pub containment_ok: bool,
    pub d_x: i64,
}

impl FrobeniusRing {
    /// Handle element from the pairing, computed as a double sum and as a
    /// dual-basis sum.
    pub fn handle_element(&self) -> HandleElement {
        let n = self.rank();
        let ginv = self.pairing_inverse();
        let mut dual_form = Element::zero();
        for i in 0..n {
            let mut dual = Element::zero();
            for j in 0..n {
                dual.add_term(j, &ginv[i][j]);
            }
            dual_form = dual_form.add(&self.product(&Element::basis(i), &dual));
        }
        let delta = self.handle_double_sum();
        HandleElement {
            forms_agree: dual_form == delta,
            matches_installed: self.data.installed_delta.as_ref().map(|d| *d == delta),
            delta,
        }
    }

    /// Matrix of multiplication by `x`; column `u` holds the coordinates of
    /// `x * e_u` evaluated at `q = 1`.
    pub fn mult_matrix(&self, x: &Element) -> RatMatrix {
        let n = self.rank();
        let cols: Vec<Vec<Rational>> = (0..n)
            .map(|u| self.product(x, &Element::basis(u)).at_one(n))
            .collect();
        RatMatrix::from_columns(&cols).expect("square")
    }

    /// Matrix of multiplication by `x` over `Q[q, 1/q]`, row-major.
    pub fn mult_matrix_laurent(&self, x: &Element) -> Vec<Vec<QLaurent>> {
        let n = self.rank();
        let cols: Vec<Element> = (0..n).map(|u| self.product(x, &Element::basis(u))).collect();
        (0..n)
            .map(|v| (0..n).map(|u| cols[u].coeff(v)).collect())
            .collect()
    }

    /// `Δ^{*k}` for `k = 0..=kmax`.
    pub fn delta_powers(&self, kmax: usize) -> Vec<Element> {
        let d = self.delta();
        let mut out = vec![self.unit_element()];
        for k in 1..=kmax {
            let next = self.product(&out[k - 1], d);
            out.push(next);
        }
        out
    }

    /// If `x = c q^m 1`, returns `(c, m)`.
    pub fn as_unit_multiple(&self, x: &Element) -> Option<(Rational, i64)> {
        let support = x.support();
        if support != [self.unit()] {
            return None;
        }
        x.coeff(self.unit()).as_monomial()
    }

    pub fn theta_order(&self, cap: u32) -> Result<Option<Theta>> {
        let pt = self
            .point()
            .ok_or_else(|| Error::Unsupported(format!("{} has no point class", self.name())))?;
        let pt = Element::basis(pt);
        let mut acc = self.unit_element();
        for t in 1..=cap {
            acc = self.product(&acc, &pt);
            if let Some((c, m)) = self.as_unit_multiple(&acc) {
                return Ok(Some(Theta { t, c, m }));
            }
            if acc.is_zero() {
                return Ok(None);
            }
        }
        Ok(None)
    }

    /// `[pt]^{-1} = c^{-1} q^{-m} [pt]^{t-1}`.
    pub fn pt_inverse(&self, cap: u32) -> Result<Element> {
        let th = self.theta_order(cap)?.ok_or_else(|| {
            Error::NotInvertible(format!("no power of [pt] in {} is a unit multiple", self.name()))
        })?;
        let pt = Element::basis(self.point().unwrap());
        let pw = self.power(&pt, th.t - 1);
        Ok(pw.scale(&QLaurent::monomial(th.c.recip(), -th.m)))
    }

    /// `D_X = gcd(tau, dim)`.
    pub fn d_x(&self) -> i64 {
        self.tau().gcd(&self.dim())
    }

    /// `(tau / D_X) * |V_0|`.
    pub fn dim_bound(&self) -> usize {
        (self.tau() / self.d_x()) as usize * self.vj_split(0).len()
    }

    /// Dimension of the span of the powers of the handle element at `q = 1`,
    /// with a symbolic check that each power stays in degrees divisible by
    /// `D_X`.
    pub fn f_span_dim(&self) -> FSpan {
        let n = self.rank();
        let dx = self.d_x();
        let m = self.mult_matrix(self.delta());
        let (dim, basis_powers) = krylov_rank(&m, &self.unit_element().at_one(n), n + 1);
        let mut ok = true;
        let mut p = self.unit_element();
        for _ in 0..=dim {
            if p.terms().any(|(w, _)| self.degrees()[w].rem_euclid(dx) != 0) {
                ok = false;
                break;
            }
            p = self.product(&p, self.delta());
        }
        FSpan {
            dim,
            basis_powers,
            containment_ok: ok,
            d_x: dx,
        }
    }

    /// Matrix of multiplication by `Δ * [pt]^{-1}` at `q = 1`, optionally in
    /// the rescaled basis `s_w e_w`.
    pub fn a_matrix(&self, scaling: Option<&[Rational]>) -> Result<RatMatrix> {
        let inv = self.pt_inverse(4 * self.rank() as u32 + 8)?;
        let x = self.product(self.delta(), &inv);
        let mut a = self.mult_matrix(&x);
        if let Some(s) = scaling {
            if s.len() != self.rank() || s.iter().any(|x| x.is_zero()) {
                return Err(Error::InvalidInput("scaling vector must be nonzero, one per label".into()));
            }
            for v in 0..a.rows() {
                for u in 0..a.cols() {
                    let val = &a[(v, u)] * &s[u] / &s[v];
                    a[(v, u)] = val;
                }
            }
        }
        Ok(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frobenius::RingData;
    use crate::linalg::rational::rat;

    /// `Q[x]/(x^2 - q)` with `deg x = 1`, `tau = 2`.
    fn toy() -> FrobeniusRing {
        let one = Element::basis(0);
        let x = Element::basis(1);
        let q1 = Element::term(0, QLaurent::q_pow(1));
        let c = |v: i64| QLaurent::constant(rat(v));
        FrobeniusRing::new(RingData {
            name: "toy".into(),
            labels: vec!["1".into(), "x".into()],
            degrees: vec![0, 1],
            tau: 2,
            dim: 1,
            unit: 0,
            point: Some(1),
            pairing: vec![vec![c(0), c(1)], vec![c(1), c(0)]],
            structure: vec![vec![one.clone(), x.clone()], vec![x, q1]],
            installed_delta: None,
        })
        .unwrap()
    }

    #[test]
    fn toy_ring() {
        let r = toy();
        let h = r.handle_element();
        assert!(h.forms_agree);
        assert_eq!(h.delta, Element::term(1, QLaurent::constant(rat(2))));
        let th = r.theta_order(5).unwrap().unwrap();
        assert_eq!((th.t, th.m), (2, 1));
        assert_eq!(r.a_matrix(None).unwrap(), RatMatrix::identity(2).scale(&rat(2)));
        assert_eq!(r.f_span_dim().dim, 2);
        assert_eq!(r.dim_bound(), 2);
    }

    #[test]
    fn violations_are_named() {
        let mut d = toy().data().clone();
        d.structure[1][1] = Element::basis(1);
        let err = FrobeniusRing::new(d).unwrap_err();
        assert!(err.to_string().contains("grading fails"), "{err}");
    }
}
