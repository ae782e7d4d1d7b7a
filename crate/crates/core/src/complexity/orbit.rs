use std::collections::HashMap;

use serde::Serialize;

use super::state::{chordal, normalize_f64, ProjState};
use crate::error::{Error, Result};
use crate::frobenius::FrobeniusRing;
use crate::linalg::RatMatrix;

/// The exact sequence `[M^k z]`, stopped at the first repeat, at the zero
/// vector, or after `kmax` steps.
#[derive(Clone, Debug, Serialize)]
pub struct Trajectory {
    pub states: Vec<ProjState>,
    /// `M^k z = 0` at this `k`.
    pub hits_zero_at: Option<usize>,
    /// `(start, period)`: state `start + period` equals state `start`.
    pub cycle: Option<(usize, usize)>,
    pub kmax: usize,
}

impl Trajectory {
    /// The orbit is finite and fully listed.
    pub fn is_closed(&self) -> bool {
        self.hits_zero_at.is_some() || self.cycle.is_some()
    }

    pub fn position(&self, s: &ProjState) -> Option<usize> {
        self.states.iter().position(|x| x == s)
    }
}

pub fn trajectory_matrix(m: &RatMatrix, z: &ProjState, kmax: usize) -> Trajectory {
    let mut states = vec![z.clone()];
    let mut seen: HashMap<ProjState, usize> = HashMap::new();
    seen.insert(z.clone(), 0);
    let mut hits_zero_at = None;
    let mut cycle = None;
    for k in 1..=kmax {
        let next = m.mul_vec(states[k - 1].coords());
        match ProjState::try_normalize(next) {
            None => {
                hits_zero_at = Some(k);
                break;
            }
            Some(s) => {
                if let Some(&j) = seen.get(&s) {
                    cycle = Some((j, k - j));
                    break;
                }
                seen.insert(s.clone(), k);
                states.push(s);
            }
        }
    }
    Trajectory {
        states,
        hits_zero_at,
        cycle,
        kmax,
    }
}

/// `[Δ^k z]` for the ring's handle element at `q = 1`.
pub fn trajectory(ring: &FrobeniusRing, z: &ProjState, kmax: usize) -> Result<Trajectory> {
    check_dim(ring, z)?;
    Ok(trajectory_matrix(&ring.mult_matrix(ring.delta()), z, kmax))
}

fn check_dim(ring: &FrobeniusRing, z: &ProjState) -> Result<()> {
    if z.dim() != ring.rank() {
        return Err(Error::DimensionMismatch(format!(
            "state has {} coordinates, {} has rank {}",
            z.dim(),
            ring.name(),
            ring.rank()
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplexityResult {
    /// Minimal `k` with `[Δ^k z] = S`.
    pub k: Option<usize>,
    pub searched: usize,
    /// A negative answer is certain: the orbit closed before `kmax`.
    pub definitive: bool,
}

pub fn exact_complexity(ring: &FrobeniusRing, from: &ProjState, to: &ProjState, kmax: usize) -> Result<ComplexityResult> {
    check_dim(ring, to)?;
    let t = trajectory(ring, from, kmax)?;
    let k = t.position(to);
    Ok(ComplexityResult {
        k,
        searched: t.states.len(),
        definitive: k.is_some() || t.is_closed(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ApproxComplexity {
    pub k: Option<usize>,
    pub distance: f64,
    pub eps: f64,
}

/// First `k` with chordal distance `d([Δ^k z], S) < eps`, iterating in floats.
pub fn approx_complexity(
    ring: &FrobeniusRing,
    from: &ProjState,
    to: &ProjState,
    eps: f64,
    kmax: usize,
) -> Result<ApproxComplexity> {
    check_dim(ring, from)?;
    check_dim(ring, to)?;
    if eps.is_nan() || eps <= 0.0 {
        return Err(Error::InvalidInput("eps must be positive".into()));
    }
    let m = ring.mult_matrix(ring.delta()).to_f64();
    let target = to.to_f64();
    let mut x = from.to_f64();
    let mut best = f64::INFINITY;
    for k in 0..=kmax {
        let d = chordal(&x, &target);
        best = best.min(d);
        if d < eps {
            return Ok(ApproxComplexity { k: Some(k), distance: d, eps });
        }
        x = mat_vec_f64(&m, &x);
        if !normalize_f64(&mut x) {
            break;
        }
    }
    Ok(ApproxComplexity { k: None, distance: best, eps })
}

pub fn mat_vec_f64(m: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    m.iter()
        .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct FiniteStates {
    pub states: Vec<ProjState>,
    /// The orbit closed (cycle or zero) within the bound, so the list is the
    /// whole finite-complexity set.
    pub closed: bool,
}

pub fn finite_state_set(ring: &FrobeniusRing, from: &ProjState, kmax: usize) -> Result<FiniteStates> {
    let t = trajectory(ring, from, kmax)?;
    Ok(FiniteStates {
        closed: t.is_closed(),
        states: t.states,
    })
}
