//! Dense univariate polynomials over the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::{self, Rational};

/// Coefficients are stored low degree first, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    c: Vec<Rational>,
}

impl Poly {
    pub fn from_coeffs(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Self { c }
    }

    pub fn zero() -> Self {
        Self { c: vec![] }
    }

    pub fn one() -> Self {
        Self { c: vec![Rational::one()] }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> Rational {
        self.c.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.c
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, a| acc * x + a)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.c
            .iter()
            .rev()
            .fold(0.0, |acc, a| acc * x + rational::to_f64(a))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::from_coeffs(self.c.iter().map(|a| a * s).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let z = Rational::zero();
        Self::from_coeffs(
            (0..n)
                .map(|i| self.c.get(i).unwrap_or(&z) + o.c.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&rational::rat(-1)))
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![Rational::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::from_coeffs(c)
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a * rational::rat(i as i64))
                .collect(),
        )
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.lead().recip())
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.c.len() - 1;
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let lead_inv = d.lead().recip();
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let f = &r[k + dd] * &lead_inv;
            if f.is_zero() {
                continue;
            }
            for (i, b) in d.c.iter().enumerate() {
                r[k + i] -= &f * b;
            }
            q[k] = f;
        }
        r.truncate(dd);
        (Self::from_coeffs(q), Self::from_coeffs(r))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// True when the polynomial has no repeated roots.
    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Distinct rational roots with multiplicities, sorted ascending.
    ///
    /// Candidates come from the rational root theorem. Integer factoring is
    /// done by trial division; when a constant term is too large to factor
    /// completely some candidates may be missed, which is reported through
    /// the second return value.
    pub fn rational_roots(&self) -> (Vec<(Rational, usize)>, bool) {
        if self.degree().unwrap_or(0) == 0 {
            return (vec![], true);
        }
        let mut rest = self.clone();
        let mut roots = Vec::new();
        let mut zero_mult = 0;
        while rest.c.first().is_some_and(|x| x.is_zero()) {
            rest.c.remove(0);
            zero_mult += 1;
        }
        if zero_mult > 0 {
            roots.push((Rational::zero(), zero_mult));
        }
        if rest.degree().unwrap_or(0) == 0 {
            return (roots, true);
        }
        let sqf = rest.div_rem(&rest.gcd(&rest.derivative())).0;
        let ints = integer_coeffs(&sqf);
        let (num_divs, c1) = divisors(ints.first().unwrap());
        let (den_divs, c2) = divisors(ints.last().unwrap());
        let complete = c1 && c2;
        let mut cands: Vec<Rational> = Vec::new();
        for p in &num_divs {
            for q in &den_divs {
                let r = Rational::new(p.clone(), q.clone());
                cands.push(r.clone());
                cands.push(-r);
            }
        }
        cands.sort();
        cands.dedup();
        let mut found = Vec::new();
        for r in cands {
            if modular_root_test(&ints, &r) && sqf.eval(&r).is_zero() {
                found.push(r);
            }
        }
        let lin = |r: &Rational| Self::from_coeffs(vec![-r.clone(), Rational::one()]);
        for r in found {
            let mut m = 0;
            loop {
                let (q, rem) = rest.div_rem(&lin(&r));
                if !rem.is_zero() {
                    break;
                }
                rest = q;
                m += 1;
            }
            roots.push((r, m));
        }
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        (roots, complete)
    }
}

/// Primitive integer multiple of a rational polynomial.
fn integer_coeffs(p: &Poly) -> Vec<BigInt> {
    let l = rational::lcm_of_denominators(p.c.iter());
    let ints: Vec<BigInt> = p
        .c
        .iter()
        .map(|a| (a * Rational::from_integer(l.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    ints.into_iter().map(|x| x / &g).collect()
}

const TRIAL_LIMIT: u64 = 1_000_000;
const MAX_DIVISORS: usize = 50_000;

/// Positive divisors of `n`; the flag is false if factoring was incomplete.
fn divisors(n: &BigInt) -> (Vec<BigInt>, bool) {
    let mut n = n.abs();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut p = 2u64;
    while p <= TRIAL_LIMIT {
        let bp = BigInt::from(p);
        if &bp * &bp > n {
            break;
        }
        let mut e = 0;
        while (&n % &bp).is_zero() {
            n /= &bp;
            e += 1;
        }
        if e > 0 {
            factors.push((bp, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let mut complete = true;
    if n > BigInt::one() {
        // either prime or a product of primes beyond the trial bound
        let bound = BigInt::from(TRIAL_LIMIT) * BigInt::from(TRIAL_LIMIT);
        if n > bound {
            complete = false;
        }
        factors.push((n, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut x = d.clone();
            for _ in 0..=e {
                next.push(x.clone());
                x *= &p;
            }
        }
        divs = next;
        if divs.len() > MAX_DIVISORS {
            divs.truncate(MAX_DIVISORS);
            complete = false;
        }
    }
    (divs, complete)
}

/// Cheap necessary condition: `q^n f(p/q) = 0 mod` two large primes.
fn modular_root_test(ints: &[BigInt], r: &Rational) -> bool {
    const PRIMES: [u64; 2] = [2_305_843_009_213_693_951, 4_611_686_018_427_387_847];
    let n = ints.len() - 1;
    PRIMES.iter().all(|&m| {
        let mb = BigInt::from(m);
        let red = |x: &BigInt| -> u128 { x.mod_floor(&mb).to_u128().unwrap() };
        let (p, q) = (red(r.numer()), red(r.denom()));
        let m = m as u128;
        // sum a_i p^i q^(n-i), Horner in the homogenised form
        let mut acc: u128 = 0;
        let mut qpow: Vec<u128> = vec![1; n + 1];
        for i in 1..=n {
            qpow[i] = qpow[i - 1] * q % m;
        }
        for (i, a) in ints.iter().enumerate().rev() {
            acc = (acc * p % m + red(a) * qpow[n - i] % m) % m;
        }
        acc == 0
    })
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, a)| !a.is_zero())
            .map(|(i, a)| match i {
                0 => rational::to_string(a),
                1 => format!("{}*x", rational::to_string(a)),
                _ => format!("{}*x^{i}", rational::to_string(a)),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::{frac, rat};

    fn p(c: &[i64]) -> Poly {
        Poly::from_coeffs(c.iter().map(|&x| rat(x)).collect())
    }

    #[test]
    fn roots_with_multiplicity() {
        // (x - 2)^2 (2x + 3) x
        let f = p(&[0, 1]).mul(&p(&[-2, 1])).mul(&p(&[-2, 1])).mul(&p(&[3, 2]));
        let (roots, complete) = f.rational_roots();
        assert!(complete);
        assert_eq!(roots, vec![(frac(-3, 2), 1), (rat(0), 1), (rat(2), 2)]);
        assert!(!f.is_squarefree());
        // x^2 + 1 has none
        assert_eq!(p(&[1, 0, 1]).rational_roots().0, vec![]);
    }

    #[test]
    fn gcd_and_division() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, 2, 1]);
        assert_eq!(a.gcd(&b), p(&[1, 1]));
        let (q, r) = a.div_rem(&p(&[1, 1]));
        assert_eq!(q, p(&[-1, 1]));
        assert!(r.is_zero());
    }
}
