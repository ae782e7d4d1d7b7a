use crate::error::{Error, Result};
use crate::frobenius::{Element, FrobeniusRing, RingData};
use crate::linalg::{rational::rat, QLaurent};

fn label(i: usize) -> String {
    match i {
        0 => "1".into(),
        1 => "H".into(),
        _ => format!("H^{i}"),
    }
}

/// `QH^*(P^n) = Q[H, q] / (H^{n+1} - q)`.
pub fn projective_space(n: usize) -> Result<FrobeniusRing> {
    if n < 1 {
        return Err(Error::InvalidInput("projective space needs n >= 1".into()));
    }
    let size = n + 1;
    let structure = (0..size)
        .map(|i| {
            (0..size)
                .map(|j| {
                    let s = i + j;
                    if s <= n {
                        Element::basis(s)
                    } else {
                        Element::term(s - size, QLaurent::q_pow(1))
                    }
                })
                .collect()
        })
        .collect();
    let pairing = (0..size)
        .map(|i| {
            (0..size)
                .map(|j| {
                    if i + j == n {
                        QLaurent::one()
                    } else {
                        QLaurent::zero()
                    }
                })
                .collect()
        })
        .collect();
    FrobeniusRing::new(RingData {
        name: format!("P^{n}"),
        labels: (0..size).map(label).collect(),
        degrees: (0..size as i64).collect(),
        tau: size as i64,
        dim: n as i64,
        unit: 0,
        point: Some(n),
        pairing,
        structure,
        installed_delta: None,
    })
}

/// `(n+1) H^n`
pub fn projective_delta(n: usize) -> Element {
    Element::term(n, QLaurent::constant(rat(n as i64 + 1)))
}

/// `Δ^{*k} = (n+1)^k q^{k-1} H^{n+1-k}` for `1 <= k <= n+1`.
pub fn projective_delta_power(n: usize, k: usize) -> Element {
    assert!((1..=n + 1).contains(&k));
    let c = num_traits::pow(rat(n as i64 + 1), k);
    Element::term(n + 1 - k, QLaurent::monomial(c, k as i64 - 1))
}
