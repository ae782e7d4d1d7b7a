//! Restricted quantum cohomology of Fano complete intersections
//! `X ⊂ P^{r+L}` of multidegree `m = (m_1, ..., m_L)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::complexity::{s_infinity, trajectory, ProjState, SInfinityOptions};
use crate::error::{Error, Result};
use crate::frobenius::{Element, FrobeniusRing, RingData};
use crate::linalg::{rational, QLaurent, RatMatrix, Rational};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FciModel {
    pub m: Vec<u32>,
    pub r: u32,
    #[serde(with = "rational::serde_rational")]
    pub chi: Rational,
    /// False when `chi` was supplied by hand instead of computed.
    pub geometric: bool,
}

impl FciModel {
    pub fn new(m: &[u32], r: u32) -> Result<Self> {
        Self::check(m, r)?;
        Ok(Self {
            m: m.to_vec(),
            r,
            chi: euler_characteristic(m, r),
            geometric: true,
        })
    }

    /// Same ring with a prescribed Euler characteristic, to exercise branches
    /// of the closed formulas that no geometric example reaches.
    pub fn with_euler_characteristic(m: &[u32], r: u32, chi: Rational) -> Result<Self> {
        Self::check(m, r)?;
        Ok(Self {
            m: m.to_vec(),
            r,
            chi,
            geometric: false,
        })
    }

    fn check(m: &[u32], r: u32) -> Result<()> {
        if r < 3 {
            return Err(Error::InvalidInput("complete intersection needs r >= 3".into()));
        }
        if m.is_empty() || m.iter().any(|&x| x < 2) {
            return Err(Error::InvalidInput("degrees must be at least 2".into()));
        }
        let total: u32 = m.iter().sum();
        if total > r + m.len() as u32 {
            return Err(Error::InvalidInput(format!(
                "not Fano: |m| = {total} > r + L = {}",
                r + m.len() as u32
            )));
        }
        Ok(())
    }

    pub fn len(&self) -> u32 {
        self.m.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.m.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.m.iter().sum()
    }

    /// `τ = r + L + 1 - |m|`
    pub fn tau(&self) -> u32 {
        self.r + self.len() + 1 - self.weight()
    }

    /// Uses the shifted generator `Ĥ = H + m! q` (the case `|m| = r + L`).
    pub fn uses_hat(&self) -> bool {
        self.weight() == self.r + self.len()
    }

    /// `κ = |m| - L - 1`
    pub fn kappa(&self) -> i64 {
        self.weight() as i64 - self.len() as i64 - 1
    }

    /// `m^{a m + b} = prod m_i^{a m_i + b}`
    pub fn m_pow(&self, a: i64, b: i64) -> Rational {
        self.m.iter().fold(Rational::one(), |acc, &x| {
            acc * rational::pow(&rational::rat(x as i64), a * x as i64 + b)
        })
    }

    pub fn m_factorial(&self) -> Rational {
        self.m.iter().fold(Rational::one(), |acc, &x| {
            acc * (1..=x as i64).fold(Rational::one(), |f, i| f * rational::rat(i))
        })
    }

    pub fn degree(&self) -> Rational {
        self.m_pow(0, 1)
    }

    pub fn primitive_dim(&self) -> Rational {
        let s = if self.r % 2 == 0 { 1 } else { -1 };
        (&self.chi - rational::rat(self.r as i64 + 1)) * rational::rat(s)
    }

    pub fn name(&self) -> String {
        let ms: Vec<String> = self.m.iter().map(|x| x.to_string()).collect();
        let mut s = format!("FCI({};r={})", ms.join(","), self.r);
        if !self.geometric {
            s.push_str(&format!("[chi={}]", rational::to_string(&self.chi)));
        }
        s
    }

    /// `ζ = m^{-1} (r + 1 - χ)(m^m - m!)`
    pub fn zeta(&self) -> Rational {
        self.m_pow(0, -1) * self.excess() * (self.m_pow(1, 0) - self.m_factorial())
    }

    /// `r + 1 - χ`
    pub fn excess(&self) -> Rational {
        rational::rat(self.r as i64 + 1) - &self.chi
    }
}

/// `χ = deg · [h^r] (1+h)^{r+L+1} / prod (1 + m_i h)`
pub fn euler_characteristic(m: &[u32], r: u32) -> Rational {
    let r = r as usize;
    let big_n = r + m.len() + 1;
    let mut series: Vec<BigInt> = (0..=r)
        .map(|i| binomial(big_n as u64, i as u64))
        .collect();
    for &d in m {
        // divide by (1 + d h)
        for i in 1..=r {
            let prev = series[i - 1].clone();
            series[i] -= prev * BigInt::from(d);
        }
    }
    let deg: BigInt = m.iter().map(|&x| BigInt::from(x)).product();
    Rational::from_integer(deg * &series[r])
}

fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

fn power_label(hat: bool, i: usize) -> String {
    let g = if hat { "Hh" } else { "H" };
    match i {
        0 => "1".into(),
        1 => g.into(),
        _ => format!("{g}^{i}"),
    }
}

/// The restricted ring on quantum powers `H^{*i}` (or `Ĥ^{*i}`), `0 <= i <= r`,
/// reduced by `H^{*(r+1)} = m^m q H^{*(r+1-τ)}`. The pairing is Poincaré
/// duality written in this basis; the handle element is installed from the
/// closed formula of the model.
pub fn fano_ci(model: &FciModel) -> Result<FrobeniusRing> {
    let r = model.r as usize;
    let tau = model.tau() as usize;
    let size = r + 1;
    let mm = model.m_pow(1, 0);
    let reduce = |s: usize| -> Element {
        let (mut s, mut e) = (s, 0i64);
        while s > r {
            s -= tau;
            e += 1;
        }
        Element::term(s, QLaurent::monomial(rational::pow(&mm, e), e))
    };
    let structure: Vec<Vec<Element>> = (0..size)
        .map(|i| (0..size).map(|j| reduce(i + j)).collect())
        .collect();
    let deg = QLaurent::constant(model.degree());
    let pairing = (0..size)
        .map(|i| {
            (0..size)
                .map(|j| {
                    let red = reduce(i + j);
                    &red.coeff(r) * &deg
                })
                .collect()
        })
        .collect();
    FrobeniusRing::new(RingData {
        name: model.name(),
        labels: (0..size).map(|i| power_label(model.uses_hat(), i)).collect(),
        degrees: (0..size as i64).collect(),
        tau: tau as i64,
        dim: r as i64,
        unit: 0,
        point: None,
        pairing,
        structure,
        installed_delta: Some(fci_delta(model)),
    })
}

/// The handle element of the full quantum cohomology, which lies in the
/// restricted part.
pub fn fci_delta(model: &FciModel) -> Element {
    let r = model.r as usize;
    let minv = model.m_pow(0, -1);
    let top = Element::term(r, QLaurent::constant(&minv * &model.chi));
    if !model.uses_hat() {
        let tau = rational::rat(model.tau() as i64);
        let c = (tau - &model.chi) * model.m_pow(1, -1);
        let low = model.kappa();
        if low < 0 {
            return top;
        }
        return top.add(&Element::term(low as usize, QLaurent::monomial(c, 1)));
    }
    let zeta = model.zeta();
    let mfact = model.m_factorial();
    let mut d = top;
    for j in 1..=r {
        let mut c = zeta.clone();
        if j == 1 {
            c -= model.m_pow(1, -1) * rational::rat(r as i64);
        }
        c *= rational::pow(&mfact, j as i64 - 1);
        d.add_term(r - j, &QLaurent::monomial(c, j as i64));
    }
    d
}

/// Closed-form constants of the `|m| = r + L` case, each a monomial in `q`.
#[derive(Clone, Debug, Serialize)]
pub struct HatConstants {
    pub alpha: QLaurent,
    pub beta: QLaurent,
    pub xi: QLaurent,
    pub omega: QLaurent,
    #[serde(with = "rational::serde_rational")]
    pub zeta: Rational,
}

pub fn hat_constants(model: &FciModel) -> HatConstants {
    let r = model.r as i64;
    let mm = model.m_pow(1, 0);
    let mf = model.m_factorial();
    let zeta = model.zeta();
    let exc = model.excess();
    let alpha = (model.m_pow(0, -1) - model.m_pow(-r, -1) * rational::pow(&mf, r) * &exc) * rational::pow(&mm, r);
    let omega = (model.m_pow(r - 1, 0) - &exc * rational::pow(&mf, r - 1)) * model.m_pow(0, -1);
    HatConstants {
        alpha: QLaurent::monomial(alpha, r),
        beta: QLaurent::monomial(&zeta * rational::pow(&mf, r - 1), r),
        xi: QLaurent::monomial(&zeta * rational::pow(&mf, r - 2), r - 1),
        omega: QLaurent::monomial(omega, r - 1),
        zeta,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HatReport {
    pub constants: HatConstants,
    /// Matrix of `Δ` on `Ĥ^{*(r-j)}`, `j = 0..r`, entries as text.
    pub a_matrix: Vec<Vec<String>>,
    pub a_matches_closed_form: bool,
    /// `(A - βI)^{r-1} != 0` at `q = 1`.
    pub jordan_check: bool,
    pub omega_zero: bool,
    /// `r + 1 - χ = m^{(r-1)m} (m!)^{1-r}`, equivalent to `ω = 0`.
    pub omega_condition: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FciReport {
    pub name: String,
    pub m: Vec<u32>,
    pub r: u32,
    pub tau: u32,
    #[serde(with = "rational::serde_rational")]
    pub chi: Rational,
    pub geometric: bool,
    #[serde(with = "rational::serde_rational")]
    pub primitive_dim: Rational,
    pub branch: String,
    pub delta: String,
    /// The pairing-sum handle element of the restricted ring; equals `Δ`
    /// exactly when there are no primitive classes.
    pub restricted_handle: String,
    pub restricted_handle_matches: bool,
    pub predicted_finite_states: Option<Vec<String>>,
    pub computed_finite_states: Vec<String>,
    pub orbit_closed: bool,
    pub finite_states_match: Option<bool>,
    pub predicted_dim_f: Option<usize>,
    pub computed_dim_f: usize,
    pub s_infinity_size: usize,
    pub hat: Option<HatReport>,
}

/// Computes the orbit data of `[1]` and compares with the closed forms.
pub fn fci_report(model: &FciModel) -> Result<FciReport> {
    let ring = fano_ci(model)?;
    let r = model.r as usize;
    let tau = model.tau() as usize;
    let n = ring.rank();
    let unit = ProjState::basis(n, 0);
    let traj = trajectory(&ring, &unit, 10 * n + 10)?;
    let mut computed: Vec<ProjState> = traj.states.clone();
    computed.sort();
    let fspan = ring.f_span_dim();
    let sinf = s_infinity(&ring, &unit, &SInfinityOptions::for_ring(&ring))?;
    let excess = model.excess();
    let r1 = excess.is_zero();
    let restricted = ring.pairing_handle().clone();
    let restricted_matches = (restricted == *ring.delta()) == r1;

    let (predicted_states, predicted_dim, hat, branch) = if !model.uses_hat() {
        let kappa = model.kappa();
        if kappa < 1 {
            (None, None, None, "quadric (|m| = L + 1): outside the closed form".to_string())
        } else {
            let d = r.gcd(&tau);
            let mut states = vec![unit.clone(), ProjState::from_element(&ring, ring.delta())?];
            for j in 1..=r / d {
                if (j * d) as i64 > kappa {
                    states.push(ProjState::basis(n, j * d));
                }
            }
            states.sort();
            states.dedup();
            let chi_is_tau = model.chi == rational::rat(tau as i64);
            let dim = if chi_is_tau { 1 + tau / d } else { 2 + tau / d };
            (Some(states), Some(dim), None, "|m| <= r + L - 1".to_string())
        }
    } else if r1 {
        let states = {
            let mut s = vec![
                unit.clone(),
                ProjState::from_element(&ring, ring.delta())?,
                ProjState::basis(n, r),
            ];
            s.sort();
            s.dedup();
            s
        };
        (Some(states), Some(3), Some(hat_report(model, &ring)?), "|m| = r + L, chi = r + 1".into())
    } else {
        let h = hat_report(model, &ring)?;
        let dim = if h.omega_condition { r } else { r + 1 };
        (None, Some(dim), Some(h), "|m| = r + L".to_string())
    };

    Ok(FciReport {
        name: model.name(),
        m: model.m.clone(),
        r: model.r,
        tau: model.tau(),
        chi: model.chi.clone(),
        geometric: model.geometric,
        primitive_dim: model.primitive_dim(),
        branch,
        delta: ring.format(ring.delta()),
        restricted_handle: ring.format(&restricted),
        restricted_handle_matches: restricted_matches,
        finite_states_match: predicted_states
            .as_ref()
            .map(|p| traj.is_closed() && *p == computed),
        predicted_finite_states: predicted_states.map(|v| v.iter().map(|s| s.format(&ring)).collect()),
        computed_finite_states: traj.states.iter().map(|s| s.format(&ring)).collect(),
        orbit_closed: traj.is_closed(),
        predicted_dim_f: predicted_dim,
        computed_dim_f: fspan.dim,
        s_infinity_size: sinf.points.len(),
        hat,
    })
}

fn hat_report(model: &FciModel, ring: &FrobeniusRing) -> Result<HatReport> {
    let r = model.r as usize;
    let c = hat_constants(model);
    let full = ring.mult_matrix_laurent(ring.delta());
    // reorder to the basis Ĥ^{*(r-j)}
    let a: Vec<Vec<QLaurent>> = (0..=r)
        .map(|i| (0..=r).map(|j| full[r - i][r - j].clone()).collect())
        .collect();
    let mut matches = true;
    for i in 0..=r {
        for j in 0..=r {
            let want = if i == j {
                if i == 0 { c.alpha.clone() } else { c.beta.clone() }
            } else if i == 0 && j == 1 {
                c.omega.clone()
            } else if i >= 1 && j == i + 1 {
                c.xi.clone()
            } else if i > j {
                QLaurent::zero()
            } else {
                // entries further above the diagonal are not pinned down
                a[i][j].clone()
            };
            if a[i][j] != want {
                matches = false;
            }
        }
    }
    let a1 = RatMatrix::from_rows(a.iter().map(|row| row.iter().map(|x| x.at_one()).collect()).collect())?;
    let beta1 = c.beta.at_one();
    let jordan = !a1.shift_diag(&beta1).pow(r as u32 - 1)?.is_zero();
    let rhs = model.m_pow(r as i64 - 1, 0) * rational::pow(&model.m_factorial(), 1 - r as i64);
    let omega_condition = model.excess() == rhs;
    Ok(HatReport {
        a_matrix: a.iter().map(|row| row.iter().map(|x| x.to_string()).collect()).collect(),
        a_matches_closed_form: matches,
        jordan_check: jordan,
        omega_zero: c.omega.is_zero(),
        omega_condition,
        constants: c,
    })
}

/// Parses `3` or `2,3` into a degree vector.
pub fn parse_degrees(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad degree list {s:?}")))
        })
        .collect()
}

pub fn chi_as_i64(model: &FciModel) -> Option<i64> {
    if model.chi.is_integer() {
        model.chi.to_integer().to_i64()
    } else {
        None
    }
}
