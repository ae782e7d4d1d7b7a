//! Concrete quantum cohomology rings.

mod fci;
mod grassmannian;
mod projective;
mod quadric;

pub use fci::{
    chi_as_i64, euler_characteristic, fano_ci, fci_delta, fci_report, hat_constants, parse_degrees, FciModel, FciReport, HatConstants, HatReport,
};
pub use grassmannian::{
    gr2_a0_closed_form, gr2_dim_f_closed_form, gr2_v0_indices, grassmannian, grassmannian2_delta,
    grassmannian_delta_closed_form, phi_map, reduce_sigma_hat, z_tuples, SigmaHat,
};
pub use projective::{projective_delta, projective_delta_power, projective_space};
pub use quadric::{quadric, quadric_delta};

use crate::error::{Error, Result};
use crate::frobenius::{Element, FrobeniusRing};
use crate::linalg::rational;

/// A parsed ring identifier such as `gr:2,5` or `fci:2,3;r=3`.
#[derive(Clone, Debug, PartialEq)]
pub enum RingId {
    Projective(usize),
    Quadric(usize),
    Grassmannian(usize, usize),
    Fci(FciModel),
}

impl RingId {
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("ring id {s:?} has no ':'")))?;
        let num = |t: &str| -> Result<usize> {
            t.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad number {t:?} in ring id {s:?}")))
        };
        match kind.trim().to_ascii_lowercase().as_str() {
            "pn" | "p" => Ok(Self::Projective(num(rest)?)),
            "quadric" | "q" => Ok(Self::Quadric(num(rest)?)),
            "gr" => {
                let (k, n) = rest
                    .split_once(',')
                    .ok_or_else(|| Error::Parse(format!("expected gr:<k>,<n>, got {s:?}")))?;
                Ok(Self::Grassmannian(num(k)?, num(n)?))
            }
            "fci" => {
                let mut parts = rest.split(';');
                let m = parse_degrees(parts.next().unwrap_or(""))?;
                let (mut r, mut chi) = (None, None);
                for p in parts {
                    match p.trim().split_once('=') {
                        Some(("r", v)) => r = Some(num(v)? as u32),
                        Some(("chi", v)) => chi = Some(rational::parse(v.trim())?),
                        _ => return Err(Error::Parse(format!("unknown fci option {p:?}"))),
                    }
                }
                let r = r.ok_or_else(|| Error::Parse(format!("fci id {s:?} is missing ;r=<r>")))?;
                let model = match chi {
                    Some(c) => FciModel::with_euler_characteristic(&m, r, c)?,
                    None => FciModel::new(&m, r)?,
                };
                Ok(Self::Fci(model))
            }
            other => Err(Error::Parse(format!("unknown ring kind {other:?}"))),
        }
    }

    pub fn build(&self) -> Result<FrobeniusRing> {
        match self {
            Self::Projective(n) => projective_space(*n),
            Self::Quadric(r) => quadric(*r),
            Self::Grassmannian(k, n) => grassmannian(*k, *n),
            Self::Fci(m) => fano_ci(m),
        }
    }

    /// The closed-form handle element, when one is known for this family.
    pub fn closed_form_delta(&self, ring: &FrobeniusRing) -> Result<Option<Element>> {
        Ok(match self {
            Self::Projective(n) => Some(projective_delta(*n)),
            Self::Quadric(r) => Some(quadric_delta(ring, *r)),
            Self::Grassmannian(k, n) => Some(grassmannian_delta_closed_form(ring, *k, *n)?),
            Self::Fci(m) => Some(fci_delta(m)),
        })
    }
}

pub fn parse_ring_id(s: &str) -> Result<FrobeniusRing> {
    RingId::parse(s)?.build()
}
