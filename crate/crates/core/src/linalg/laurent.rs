//! Laurent polynomials in `q` with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{self, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QLaurent {
    terms: BTreeMap<i64, Rational>,
}

impl QLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: Rational, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    pub fn q_pow(exp: i64) -> Self {
        Self::monomial(Rational::one(), exp)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, exp: i64, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    /// Adds `c * q^shift * other` in place.
    pub fn add_scaled(&mut self, other: &QLaurent, c: &Rational, shift: i64) {
        if c.is_zero() {
            return;
        }
        for (e, v) in &other.terms {
            self.add_term(e + shift, &(v * c));
        }
    }

    pub fn scale(&self, c: &Rational) -> QLaurent {
        if c.is_zero() {
            return QLaurent::zero();
        }
        QLaurent {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    pub fn shift(&self, by: i64) -> QLaurent {
        QLaurent {
            terms: self.terms.iter().map(|(e, v)| (e + by, v.clone())).collect(),
        }
    }

    /// Value at `q = 1`.
    pub fn at_one(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |a, c| a + c)
    }

    pub fn eval(&self, q: &Rational) -> Rational {
        self.terms
            .iter()
            .fold(Rational::zero(), |a, (e, c)| a + c * rational::pow(q, *e))
    }

    pub fn as_monomial(&self) -> Option<(Rational, i64)> {
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            Some((c.clone(), *e))
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Units of the Laurent ring are exactly the nonzero monomials.
    pub fn inverse(&self) -> Result<QLaurent> {
        match self.as_monomial() {
            Some((c, e)) => Ok(QLaurent::monomial(c.recip(), -e)),
            None => Err(Error::NotInvertible(format!("{self} is not a unit"))),
        }
    }

    pub fn pow(&self, k: u32) -> QLaurent {
        let mut acc = QLaurent::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn to_json_map(&self) -> BTreeMap<String, String> {
        self.terms
            .iter()
            .map(|(e, c)| (e.to_string(), rational::to_string(c)))
            .collect()
    }

    pub fn from_json_map(m: &BTreeMap<String, String>) -> Result<Self> {
        let mut out = QLaurent::zero();
        for (e, c) in m {
            let e: i64 = e
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent {e:?}")))?;
            out.add_term(e, &rational::parse(c)?);
        }
        Ok(out)
    }
}

impl fmt::Display for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = rational::sign(c) < 0;
            let a = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let cs = rational::to_string(&a);
            match *e {
                0 => write!(f, "{cs}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{cs}*")?;
                    }
                    if *e == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Add for &QLaurent {
    type Output = QLaurent;
    fn add(self, o: &QLaurent) -> QLaurent {
        let mut r = self.clone();
        r += o;
        r
    }
}

impl Sub for &QLaurent {
    type Output = QLaurent;
    fn sub(self, o: &QLaurent) -> QLaurent {
        let mut r = self.clone();
        r -= o;
        r
    }
}

impl AddAssign<&QLaurent> for QLaurent {
    fn add_assign(&mut self, o: &QLaurent) {
        for (e, c) in &o.terms {
            self.add_term(*e, c);
        }
    }
}

impl SubAssign<&QLaurent> for QLaurent {
    fn sub_assign(&mut self, o: &QLaurent) {
        for (e, c) in &o.terms {
            self.add_term(*e, &-c.clone());
        }
    }
}

impl Neg for &QLaurent {
    type Output = QLaurent;
    fn neg(self) -> QLaurent {
        QLaurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Mul for &QLaurent {
    type Output = QLaurent;
    fn mul(self, o: &QLaurent) -> QLaurent {
        let mut r = QLaurent::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                r.add_term(e1 + e2, &(c1 * c2));
            }
        }
        r
    }
}

impl Serialize for QLaurent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_map().serialize(s)
    }
}

impl<'de> Deserialize<'de> for QLaurent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let m = BTreeMap::<String, String>::deserialize(d)?;
        QLaurent::from_json_map(&m).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::{frac, rat};

    #[test]
    fn arithmetic_and_units() {
        let a = &QLaurent::monomial(rat(2), 1) + &QLaurent::one();
        let b = &QLaurent::monomial(rat(2), 1) - &QLaurent::one();
        let p = &a * &b;
        assert_eq!(p, &QLaurent::monomial(rat(4), 2) - &QLaurent::one());
        assert!(a.inverse().is_err());
        let m = QLaurent::monomial(frac(3, 2), -2);
        assert_eq!(&m * &m.inverse().unwrap(), QLaurent::one());
        assert_eq!(p.at_one(), rat(3));
    }

    #[test]
    fn json_round_trip() {
        let a = &QLaurent::monomial(frac(-7, 3), -4) + &QLaurent::monomial(rat(5), 2);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"-4":"-7/3","2":"5"}"#);
        let back: QLaurent = serde_json::from_str(&s).unwrap();
        assert_eq!(a, back);
    }

    #[test]
    fn display() {
        let a = &QLaurent::monomial(rat(-2), 1) + &QLaurent::monomial(frac(1, 2), 0);
        assert_eq!(a.to_string(), "-2*q + 1/2");
    }
}
