use std::collections::BTreeMap;

use num_traits::Zero;

use crate::linalg::{QLaurent, Rational};

/// Sparse ring element: basis index -> Laurent coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Element {
    terms: BTreeMap<usize, QLaurent>,
}

impl Element {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(i: usize) -> Self {
        Self::term(i, QLaurent::one())
    }

    pub fn term(i: usize, c: QLaurent) -> Self {
        let mut e = Self::zero();
        e.add_term(i, &c);
        e
    }

    pub fn from_terms(it: impl IntoIterator<Item = (usize, QLaurent)>) -> Self {
        let mut e = Self::zero();
        for (i, c) in it {
            e.add_term(i, &c);
        }
        e
    }

    /// Element with constant coefficients.
    pub fn from_coords(v: &[Rational]) -> Self {
        Self::from_terms(
            v.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, QLaurent::constant(c.clone()))),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &QLaurent)> {
        self.terms.iter().map(|(i, c)| (*i, c))
    }

    pub fn coeff(&self, i: usize) -> QLaurent {
        self.terms.get(&i).cloned().unwrap_or_default()
    }

    pub fn support(&self) -> Vec<usize> {
        self.terms.keys().copied().collect()
    }

    pub fn add_term(&mut self, i: usize, c: &QLaurent) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(i).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&i);
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, other: &Element, c: &QLaurent) {
        if c.is_zero() {
            return;
        }
        for (i, v) in &other.terms {
            self.add_term(*i, &(v * c));
        }
    }

    pub fn add(&self, o: &Element) -> Element {
        let mut r = self.clone();
        r.add_scaled(o, &QLaurent::one());
        r
    }

    pub fn sub(&self, o: &Element) -> Element {
        let mut r = self.clone();
        r.add_scaled(o, &QLaurent::constant(crate::linalg::rational::rat(-1)));
        r
    }

    pub fn scale(&self, c: &QLaurent) -> Element {
        let mut r = Element::zero();
        r.add_scaled(self, c);
        r
    }

    /// Coordinates at `q = 1`.
    pub fn at_one(&self, dim: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); dim];
        for (i, c) in &self.terms {
            v[*i] = c.at_one();
        }
        v
    }
}
