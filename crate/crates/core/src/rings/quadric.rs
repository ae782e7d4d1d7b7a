use crate::error::{Error, Result};
use crate::frobenius::{Element, FrobeniusRing, RingData};
use crate::linalg::{rational::{frac, rat}, QLaurent};

#[derive(Clone, Copy, Debug, PartialEq)]
enum Class {
    Sigma(usize),
    Plus,
    Minus,
}

struct Quadric {
    r: usize,
    classes: Vec<Class>,
}

impl Quadric {
    fn idx(&self, c: Class) -> usize {
        self.classes.iter().position(|&x| x == c).unwrap()
    }

    fn sigma(&self, a: usize) -> Element {
        Element::basis(self.idx(Class::Sigma(a)))
    }

    fn even(&self) -> bool {
        self.r % 2 == 0
    }

    /// `H * e_b`
    fn times_h(&self, b: usize) -> Element {
        let r = self.r;
        let m = r / 2;
        match self.classes[b] {
            Class::Plus | Class::Minus => self.sigma(m + 1),
            Class::Sigma(a) if a == r => self.sigma(1).scale(&QLaurent::q_pow(1)),
            Class::Sigma(a) if a == r - 1 => self
                .sigma(r)
                .add(&Element::term(self.idx(Class::Sigma(0)), QLaurent::q_pow(1))),
            Class::Sigma(a) if self.even() && a + 1 == m => {
                Element::basis(self.idx(Class::Plus)).add(&Element::basis(self.idx(Class::Minus)))
            }
            Class::Sigma(a) if !self.even() && a == m => {
                self.sigma(m + 1).scale(&QLaurent::constant(rat(2)))
            }
            Class::Sigma(a) => self.sigma(a + 1),
        }
    }

    fn times_h_elem(&self, x: &Element) -> Element {
        let mut out = Element::zero();
        for (b, c) in x.terms() {
            out.add_scaled(&self.times_h(b), c);
        }
        out
    }

    /// `e_a` as a polynomial in `H`: `(power, coefficient)` pairs. `None`
    /// for the two middle classes.
    fn as_h_poly(&self, c: Class) -> Option<Vec<(usize, QLaurent)>> {
        let r = self.r;
        let Class::Sigma(a) = c else { return None };
        let half = QLaurent::constant(frac(1, 2));
        Some(if a <= (r - 1) / 2 {
            vec![(a, QLaurent::one())]
        } else if a < r {
            vec![(a, half)]
        } else {
            vec![(r, half), (0, QLaurent::monomial(rat(-1), 1))]
        })
    }

    fn product(&self, i: usize, j: usize) -> Element {
        let (ci, cj) = (self.classes[i], self.classes[j]);
        let (poly, other) = match (self.as_h_poly(ci), self.as_h_poly(cj)) {
            (Some(p), _) => (p, j),
            (None, Some(p)) => (p, i),
            (None, None) => {
                return if ci == cj {
                    Element::term(self.idx(Class::Sigma(0)), QLaurent::q_pow(1))
                } else {
                    self.sigma(self.r)
                };
            }
        };
        let mut out = Element::zero();
        for (pw, c) in poly {
            let mut x = Element::basis(other);
            for _ in 0..pw {
                x = self.times_h_elem(&x);
            }
            out.add_scaled(&x, &c);
        }
        out
    }
}

/// Quantum cohomology of the smooth quadric `Q^r`, `r >= 3`, on the Schubert
/// basis `σ_0 .. σ_r` with `σ_m^±` in the middle degree when `r = 2m`.
pub fn quadric(r: usize) -> Result<FrobeniusRing> {
    if r < 3 {
        return Err(Error::InvalidInput("quadric needs r >= 3".into()));
    }
    let m = r / 2;
    let mut classes = Vec::new();
    for a in 0..=r {
        if r % 2 == 0 && a == m {
            classes.push(Class::Plus);
            classes.push(Class::Minus);
        } else {
            classes.push(Class::Sigma(a));
        }
    }
    let q = Quadric { r, classes };
    let n = q.classes.len();
    let labels: Vec<String> = q
        .classes
        .iter()
        .map(|c| match c {
            Class::Sigma(0) => "1".to_string(),
            Class::Sigma(a) => format!("s{a}"),
            Class::Plus => format!("s{m}+"),
            Class::Minus => format!("s{m}-"),
        })
        .collect();
    let degrees: Vec<i64> = q
        .classes
        .iter()
        .map(|c| match c {
            Class::Sigma(a) => *a as i64,
            _ => m as i64,
        })
        .collect();
    let pairing = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let dual = match (q.classes[i], q.classes[j]) {
                        (Class::Sigma(a), Class::Sigma(b)) => a + b == r,
                        (Class::Plus, Class::Minus) | (Class::Minus, Class::Plus) => true,
                        _ => false,
                    };
                    if dual {
                        QLaurent::one()
                    } else {
                        QLaurent::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut structure = vec![vec![Element::zero(); n]; n];
    for i in 0..n {
        for j in i..n {
            let p = q.product(i, j);
            structure[j][i] = p.clone();
            structure[i][j] = p;
        }
    }
    FrobeniusRing::new(RingData {
        name: format!("Q^{r}"),
        labels,
        degrees,
        tau: r as i64,
        dim: r as i64,
        unit: 0,
        point: Some(q.idx(Class::Sigma(r))),
        pairing,
        structure,
        installed_delta: None,
    })
}

/// `(r + δ) σ_r + (r - δ) q`, `δ = 1` for odd `r` and `2` for even `r`.
pub fn quadric_delta(ring: &FrobeniusRing, r: usize) -> Element {
    let delta = if r % 2 == 0 { 2 } else { 1 };
    let top = ring.index_of(&format!("s{r}")).expect("top class");
    Element::term(top, QLaurent::constant(rat((r + delta) as i64)))
        .add(&Element::term(ring.unit(), QLaurent::monomial(rat((r - delta) as i64), 1)))
}
