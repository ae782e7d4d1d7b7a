use num_traits::{Signed, Zero};
use serde::Serialize;

use super::orbit::{mat_vec_f64, trajectory_matrix, Trajectory};
use super::state::{chordal, normalize_f64, ProjState};
use crate::error::{Error, Result};
use crate::frobenius::FrobeniusRing;
use crate::linalg::{rational, rational_eigenstructure, sym_float_eigs, FloatTol, RatMatrix, Rational};

/// Limit points of `[M^k z]` for a matrix with rational spectrum.
#[derive(Clone, Debug, Serialize)]
pub struct LimitAnalysis {
    /// `λ`, the largest modulus among eigenvalues meeting `z`.
    #[serde(serialize_with = "ser_opt_rat")]
    pub dominant: Option<Rational>,
    /// Longest Jordan chain reached by `z` at `±λ`.
    pub depth: usize,
    /// Accumulation points of the orbit (at most two).
    pub candidates: Vec<ProjState>,
    /// The orbit is eventually periodic, so every accumulation point lies in it.
    pub eventually_periodic: bool,
    /// `M^k z` reaches zero.
    pub nilpotent: bool,
    /// Accumulation points that are not orbit states.
    pub s_infinity: Vec<ProjState>,
}

fn ser_opt_rat<S: serde::Serializer>(v: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(r) => s.serialize_some(&rational::to_string(r)),
        None => s.serialize_none(),
    }
}

/// Exact limit points following the Jordan-chain recipe: with `z_μ` the
/// generalized eigencomponents and `w_μ = (M - μ)^{r-1} z_μ`, the limits are
/// `[λ^{1-r} w_λ ± (-λ)^{1-r} w_{-λ}]`.
pub fn limit_points_real(m: &RatMatrix, z: &[Rational]) -> Result<LimitAnalysis> {
    if !m.is_square() || m.rows() != z.len() {
        return Err(Error::DimensionMismatch("matrix and vector".into()));
    }
    let es = rational_eigenstructure(m)?;
    if !es.split {
        return Err(Error::Unsupported("spectrum is not rational".into()));
    }
    let comps = es.decompose(z)?;
    // (eigenvalue, depth, w) for nonzero components at nonzero eigenvalues
    let mut live: Vec<(Rational, usize, Vec<Rational>)> = Vec::new();
    for (b, comp) in es.blocks.iter().zip(&comps) {
        if b.value.is_zero() || comp.iter().all(|x| x.is_zero()) {
            continue;
        }
        let shifted = m.shift_diag(&b.value);
        let mut prev = comp.clone();
        let mut cur = shifted.mul_vec(comp);
        let mut depth = 1;
        while cur.iter().any(|x| !x.is_zero()) {
            prev = cur.clone();
            cur = shifted.mul_vec(&cur);
            depth += 1;
        }
        live.push((b.value.clone(), depth, prev));
    }
    if live.is_empty() {
        return Ok(LimitAnalysis {
            dominant: None,
            depth: 0,
            candidates: vec![],
            eventually_periodic: true,
            nilpotent: true,
            s_infinity: vec![],
        });
    }
    let lambda = live.iter().map(|(v, _, _)| v.abs()).max().unwrap();
    let r = live
        .iter()
        .filter(|(v, _, _)| v.abs() == lambda)
        .map(|(_, d, _)| *d)
        .max()
        .unwrap();
    let n = z.len();
    let part = |sign_neg: bool| -> Option<Vec<Rational>> {
        let target = if sign_neg { -lambda.clone() } else { lambda.clone() };
        live.iter()
            .find(|(v, d, _)| *v == target && *d == r)
            .map(|(v, _, w)| {
                let f = rational::pow(v, 1 - r as i64);
                w.iter().map(|x| x * &f).collect()
            })
    };
    let a = part(false);
    let b = part(true);
    let mut candidates = Vec::new();
    match (a, b) {
        (Some(a), Some(b)) => {
            let plus: Vec<Rational> = (0..n).map(|i| &a[i] + &b[i]).collect();
            let minus: Vec<Rational> = (0..n).map(|i| &a[i] - &b[i]).collect();
            candidates.extend(ProjState::try_normalize(plus));
            candidates.extend(ProjState::try_normalize(minus));
        }
        (Some(v), None) | (None, Some(v)) => candidates.extend(ProjState::try_normalize(v)),
        (None, None) => unreachable!("the dominant modulus is attained"),
    }
    candidates.sort();
    candidates.dedup();
    let periodic = live.iter().all(|(v, d, _)| *d == 1 && v.abs() == lambda);
    Ok(LimitAnalysis {
        dominant: Some(lambda),
        depth: r,
        s_infinity: if periodic { vec![] } else { candidates.clone() },
        candidates,
        eventually_periodic: periodic,
        nilpotent: false,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitMethod {
    FiniteOrbit,
    ExactRational,
    ThetaPeriodic,
    FloatFallback,
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum LimitPoint {
    Exact(ProjState),
    Approx { approx: Vec<f64> },
}

impl LimitPoint {
    pub fn to_f64(&self) -> Vec<f64> {
        match self {
            LimitPoint::Exact(s) => s.to_f64(),
            LimitPoint::Approx { approx } => approx.clone(),
        }
    }

    pub fn format(&self, ring: &FrobeniusRing) -> String {
        match self {
            LimitPoint::Exact(s) => s.format(ring),
            LimitPoint::Approx { approx } => {
                let terms: Vec<String> = approx
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| x.abs() > 1e-12)
                    .map(|(i, x)| format!("{x:.9}*{}", ring.label(i)))
                    .collect();
                format!("~[{}]", terms.join(" + "))
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SInfinity {
    pub method: LimitMethod,
    pub points: Vec<LimitPoint>,
    pub low_confidence: bool,
    pub theta: Option<u32>,
    pub detail: String,
    #[serde(skip)]
    pub trajectory: Trajectory,
}

#[derive(Clone, Copy, Debug)]
pub struct SInfinityOptions {
    pub kmax: usize,
    pub tol: f64,
    pub float: FloatTol,
    /// Float fallback iteration count.
    pub float_steps: usize,
}

impl SInfinityOptions {
    pub fn for_ring(ring: &FrobeniusRing) -> Self {
        Self {
            kmax: 10 * ring.rank(),
            tol: 1e-9,
            float: FloatTol::default(),
            float_steps: 4000,
        }
    }
}

/// `closure(orbit) \ orbit` for the handle-element dynamics from `z`.
pub fn s_infinity(ring: &FrobeniusRing, z: &ProjState, opts: &SInfinityOptions) -> Result<SInfinity> {
    if z.dim() != ring.rank() {
        return Err(Error::DimensionMismatch("state and ring".into()));
    }
    let m = ring.mult_matrix(ring.delta());
    let traj = trajectory_matrix(&m, z, opts.kmax);
    if traj.is_closed() {
        return Ok(SInfinity {
            method: LimitMethod::FiniteOrbit,
            points: vec![],
            low_confidence: false,
            theta: None,
            detail: format!("orbit closes after {} states", traj.states.len()),
            trajectory: traj,
        });
    }
    let la = limit_points_real(&m, z.coords());
    if let Ok(la) = la {
        let detail = format!(
            "dominant eigenvalue modulus {}, chain depth {}",
            la.dominant.as_ref().map(rational::to_string).unwrap_or_default(),
            la.depth
        );
        return Ok(SInfinity {
            method: LimitMethod::ExactRational,
            points: la.s_infinity.into_iter().map(LimitPoint::Exact).collect(),
            low_confidence: false,
            theta: None,
            detail,
            trajectory: traj,
        });
    }
    if let Some(res) = theta_periodic(ring, z, &m, opts)? {
        return Ok(SInfinity { trajectory: traj, ..res });
    }
    Ok(SInfinity {
        trajectory: traj,
        ..float_fallback(&m, z, opts)
    })
}

fn theta_periodic(ring: &FrobeniusRing, z: &ProjState, m: &RatMatrix, opts: &SInfinityOptions) -> Result<Option<SInfinity>> {
    if ring.point().is_none() {
        return Ok(None);
    }
    let Some(theta) = ring.theta_order(4 * ring.rank() as u32 + 8)? else {
        return Ok(None);
    };
    let a = ring.a_matrix(None)?;
    if !a.is_positive_definite()? {
        return Ok(None);
    }
    // Eigenspaces of Δ^θ coincide with those of the positive definite A.
    let (vals, vecs) = sym_float_eigs(&a.to_f64(), opts.float.jacobi_tol, opts.float.jacobi_sweeps)?;
    let zf = z.to_f64();
    let zn = zf.iter().map(|x| x * x).sum::<f64>().sqrt();
    let proj: Vec<f64> = vecs.iter().map(|v| v.iter().zip(&zf).map(|(a, b)| a * b).sum()).collect();
    let Some(top) = (0..vals.len()).find(|&i| proj[i].abs() > 1e-10 * zn) else {
        return Ok(None);
    };
    let lam = vals[top];
    let group: Vec<usize> = (0..vals.len())
        .filter(|&i| (vals[i] - lam).abs() <= opts.float.cluster * lam.abs().max(1.0))
        .collect();
    let n = zf.len();
    let mut xh = vec![0.0; n];
    for &i in &group {
        for (x, v) in xh.iter_mut().zip(&vecs[i]) {
            *x += proj[i] * v;
        }
    }
    let mf = m.to_f64();
    let mut points: Vec<Vec<f64>> = Vec::new();
    let mut cur = xh;
    normalize_f64(&mut cur);
    for _ in 0..theta.t {
        if !points.iter().any(|p| chordal(p, &cur) < opts.tol.max(1e-12) * 10.0) {
            points.push(cur.clone());
        }
        cur = mat_vec_f64(&mf, &cur);
        normalize_f64(&mut cur);
    }
    Ok(Some(SInfinity {
        method: LimitMethod::ThetaPeriodic,
        points: points.into_iter().map(|p| LimitPoint::Approx { approx: p }).collect(),
        low_confidence: false,
        theta: Some(theta.t),
        detail: format!(
            "theta = {}, top eigenvalue of A = {:.12}, multiplicity {}",
            theta.t,
            lam,
            group.len()
        ),
        trajectory: Trajectory {
            states: vec![],
            hits_zero_at: None,
            cycle: None,
            kmax: 0,
        },
    }))
}

fn float_fallback(m: &RatMatrix, z: &ProjState, opts: &SInfinityOptions) -> SInfinity {
    let mf = m.to_f64();
    let mut hist: Vec<Vec<f64>> = Vec::with_capacity(opts.float_steps + 1);
    let mut x = z.to_f64();
    normalize_f64(&mut x);
    hist.push(x.clone());
    for _ in 0..opts.float_steps {
        x = mat_vec_f64(&mf, &x);
        if !normalize_f64(&mut x) {
            break;
        }
        hist.push(x.clone());
    }
    let last = hist.len() - 1;
    let tol = opts.tol.max(1e-8);
    let mut points = Vec::new();
    let mut period = None;
    for p in 1..=24.min(last) {
        if chordal(&hist[last], &hist[last - p]) < tol {
            period = Some(p);
            for k in 0..p {
                let s = &hist[last - k];
                if !points.iter().any(|q: &Vec<f64>| chordal(q, s) < tol) {
                    points.push(s.clone());
                }
            }
            break;
        }
    }
    SInfinity {
        method: LimitMethod::FloatFallback,
        points: points.into_iter().map(|p| LimitPoint::Approx { approx: p }).collect(),
        low_confidence: true,
        theta: None,
        detail: match period {
            Some(p) => format!("float iteration settled with period {p} (tolerance {tol:e})"),
            None => "float iteration did not settle; no limit points reported".into(),
        },
        trajectory: Trajectory {
            states: vec![],
            hits_zero_at: None,
            cycle: None,
            kmax: 0,
        },
    }
}
