use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::frobenius::{Element, FrobeniusRing};
use crate::linalg::{rational, Rational};

/// A point of projective space over `Q`, stored with its first nonzero
/// coordinate equal to 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ProjState {
    #[serde(with = "rational::serde_rational_vec")]
    coords: Vec<Rational>,
}

impl ProjState {
    pub fn new(v: Vec<Rational>) -> Result<Self> {
        Self::try_normalize(v).ok_or_else(|| Error::InvalidInput("the zero vector is not a state".into()))
    }

    /// `None` for the zero vector.
    pub fn try_normalize(mut v: Vec<Rational>) -> Option<Self> {
        let p = v.iter().position(|x| !x.is_zero())?;
        let lead = v[p].clone();
        if !lead.is_one() {
            for x in v.iter_mut().skip(p) {
                *x /= &lead;
            }
        }
        Some(Self { coords: v })
    }

    pub fn from_element(ring: &FrobeniusRing, x: &Element) -> Result<Self> {
        Self::new(x.at_one(ring.rank()))
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = vec![Rational::zero(); dim];
        v[i] = Rational::one();
        Self { coords: v }
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Float coordinates scaled so the largest has magnitude 1.
    pub fn to_f64(&self) -> Vec<f64> {
        let max = self
            .coords
            .iter()
            .map(|x| x.abs())
            .max()
            .unwrap_or_else(Rational::one);
        self.coords.iter().map(|x| rational::to_f64(&(x / &max))).collect()
    }

    /// `[1 + 2*s4]` style rendering against a ring's labels.
    pub fn format(&self, ring: &FrobeniusRing) -> String {
        format_coords(&self.coords, ring)
    }
}

pub fn format_coords(coords: &[Rational], ring: &FrobeniusRing) -> String {
    let mut s = String::from("[");
    let mut first = true;
    for (i, c) in coords.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        if first {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        first = false;
        let a = c.abs();
        if a.is_one() {
            let _ = write!(s, "{}", ring.label(i));
        } else {
            let _ = write!(s, "{}*{}", rational::to_string(&a), ring.label(i));
        }
    }
    s.push(']');
    s
}

/// `sqrt(1 - |<x,y>|^2 / (|x|^2 |y|^2))`
pub fn chordal(x: &[f64], y: &[f64]) -> f64 {
    let dot: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    let nx: f64 = x.iter().map(|a| a * a).sum();
    let ny: f64 = y.iter().map(|a| a * a).sum();
    if nx == 0.0 || ny == 0.0 {
        return 1.0;
    }
    let c = (dot * dot) / (nx * ny);
    (1.0 - c.min(1.0)).max(0.0).sqrt()
}

pub fn normalize_f64(v: &mut [f64]) -> bool {
    let max = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if max == 0.0 || !max.is_finite() {
        return false;
    }
    for x in v.iter_mut() {
        *x /= max;
    }
    true
}

/// Parses `label:coef;label:coef`, or one of the keywords `unit`, `pt`,
/// `delta`. A bare label means coefficient 1.
pub fn parse_state(ring: &FrobeniusRing, spec: &str) -> Result<ProjState> {
    let s = spec.trim();
    match s {
        "unit" => return Ok(ProjState::basis(ring.rank(), ring.unit())),
        "pt" | "point" => {
            let p = ring
                .point()
                .ok_or_else(|| Error::Unsupported(format!("{} has no point class", ring.name())))?;
            return Ok(ProjState::basis(ring.rank(), p));
        }
        "delta" => return ProjState::from_element(ring, ring.delta()),
        _ => {}
    }
    let mut v = vec![Rational::zero(); ring.rank()];
    for term in s.split(';').map(str::trim).filter(|t| !t.is_empty()) {
        let (label, coef) = match term.rsplit_once(':') {
            Some((l, c)) => (l.trim(), rational::parse(c)?),
            None => (term, Rational::one()),
        };
        let i = ring
            .index_of(label)
            .ok_or_else(|| Error::Parse(format!("unknown label {label:?} in {}", ring.name())))?;
        v[i] += coef;
    }
    ProjState::new(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::rat;

    #[test]
    fn canonical_form() {
        let a = ProjState::new(vec![rat(0), rat(3), rat(-6)]).unwrap();
        let b = ProjState::new(vec![rat(0), rat(-1), rat(2)]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.coords()[1], rat(1));
        assert!(ProjState::new(vec![rat(0), rat(0)]).is_err());
    }

    #[test]
    fn chordal_metric() {
        assert!(chordal(&[1.0, 0.0], &[-2.0, 0.0]) < 1e-15);
        assert!((chordal(&[1.0, 0.0], &[0.0, 1.0]) - 1.0).abs() < 1e-15);
    }
}
