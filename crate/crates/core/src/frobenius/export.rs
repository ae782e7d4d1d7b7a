use serde::{Deserialize, Serialize};

use super::element::Element;
use super::ring::{FrobeniusRing, RingData};
use crate::error::{Error, Result};
use crate::linalg::QLaurent;

/// JSON form of a ring. Structure constants are sparse
/// `(i, j, label, coefficient)` entries for `e_i * e_j`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RingExport {
    pub name: String,
    pub labels: Vec<String>,
    pub degrees: Vec<i64>,
    pub tau: i64,
    pub dim: i64,
    pub unit: String,
    pub point: Option<String>,
    pub pairing: Vec<Vec<QLaurent>>,
    pub structure: Vec<(usize, usize, String, QLaurent)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub installed_delta: Option<Vec<(String, QLaurent)>>,
}

impl FrobeniusRing {
    pub fn export(&self) -> RingExport {
        let d = &self.data;
        let n = self.rank();
        let mut structure = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for (w, c) in d.structure[i][j].terms() {
                    structure.push((i, j, d.labels[w].clone(), c.clone()));
                }
            }
        }
        RingExport {
            name: d.name.clone(),
            labels: d.labels.clone(),
            degrees: d.degrees.clone(),
            tau: d.tau,
            dim: d.dim,
            unit: d.labels[d.unit].clone(),
            point: d.point.map(|p| d.labels[p].clone()),
            pairing: d.pairing.clone(),
            structure,
            installed_delta: d.installed_delta.as_ref().map(|e| {
                e.terms().map(|(w, c)| (d.labels[w].clone(), c.clone())).collect()
            }),
        }
    }

    pub fn import(x: &RingExport) -> Result<FrobeniusRing> {
        let n = x.labels.len();
        let idx = |l: &str| {
            x.labels
                .iter()
                .position(|m| m == l)
                .ok_or_else(|| Error::Parse(format!("unknown label {l:?}")))
        };
        let mut structure = vec![vec![Element::zero(); n]; n];
        for (i, j, l, c) in &x.structure {
            if *i >= n || *j >= n {
                return Err(Error::Parse("structure index out of range".into()));
            }
            structure[*i][*j].add_term(idx(l)?, c);
        }
        let installed_delta = match &x.installed_delta {
            Some(v) => {
                let mut e = Element::zero();
                for (l, c) in v {
                    e.add_term(idx(l)?, c);
                }
                Some(e)
            }
            None => None,
        };
        FrobeniusRing::new(RingData {
            name: x.name.clone(),
            labels: x.labels.clone(),
            degrees: x.degrees.clone(),
            tau: x.tau,
            dim: x.dim,
            unit: idx(&x.unit)?,
            point: x.point.as_deref().map(idx).transpose()?,
            pairing: x.pairing.clone(),
            structure,
            installed_delta,
        })
    }
}
