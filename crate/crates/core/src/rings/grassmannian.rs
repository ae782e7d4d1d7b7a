use std::collections::HashMap;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::frobenius::{Element, FrobeniusRing, RingData};
use crate::linalg::{rational::rat, QLaurent, RatMatrix};
use crate::partition::{box_partitions, lr_coefficient, lr_product, Partition};

/// Outcome of reducing `σ̂_I` to a Schubert class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SigmaHat {
    Zero,
    /// `sign * q^r * σ_λ`
    Class { sign: i32, r: i64, lambda: Partition },
}

/// Reduces `σ̂_I` for an integer sequence `I` of length at most `k` in
/// `QH^*(Gr(k, n))`: first each index is moved into its window
/// `[j-k, j-k+n)`, then adjacent rows are exchanged until the sequence is a
/// partition.
pub fn reduce_sigma_hat(k: usize, n: usize, seq: &[i64]) -> Result<SigmaHat> {
    if k == 0 || n <= k {
        return Err(Error::InvalidInput(format!("need 0 < k < n, got k={k}, n={n}")));
    }
    if seq.len() > k && seq[k..].iter().any(|&x| x != 0) {
        return Ok(SigmaHat::Zero);
    }
    let (k_i, n_i) = (k as i64, n as i64);
    let mut idx: Vec<i64> = (0..k).map(|j| seq.get(j).copied().unwrap_or(0)).collect();
    let mut r = 0i64;
    for (j0, x) in idx.iter_mut().enumerate() {
        let lo = j0 as i64 + 1 - k_i;
        if *x < lo {
            return Ok(SigmaHat::Zero);
        }
        let shift = Integer::div_floor(&(*x - lo), &n_i);
        *x -= shift * n_i;
        r += shift;
    }
    let mut sign = if (r * (k_i + 1)) % 2 == 0 { 1 } else { -1 };
    while let Some(j) = (0..k - 1).find(|&j| idx[j] < idx[j + 1]) {
        let (a, b) = (idx[j], idx[j + 1]);
        if b == a + 1 {
            return Ok(SigmaHat::Zero);
        }
        idx[j] = b - 1;
        idx[j + 1] = a + 1;
        sign = -sign;
    }
    if idx[k - 1] < 0 {
        return Ok(SigmaHat::Zero);
    }
    let lambda = Partition::new(idx.iter().map(|&x| x as u32).collect())?;
    if !lambda.fits_box(k, (n - k) as u32) {
        return Err(Error::Validation(format!("reduction left the box: {lambda}")));
    }
    Ok(SigmaHat::Class { sign, r, lambda })
}

/// Small quantum cohomology of `Gr(k, n)` on the Schubert basis, with
/// products from the Littlewood-Richardson rule and `σ̂` reduction.
pub fn grassmannian(k: usize, n: usize) -> Result<FrobeniusRing> {
    if k < 2 || k + 2 > n {
        return Err(Error::InvalidInput(format!(
            "need 2 <= k <= n-2 for Gr(k,n), got k={k}, n={n} (use pn for k=1)"
        )));
    }
    let m = (n - k) as u32;
    let parts = box_partitions(k, m);
    let size = parts.len();
    let index: HashMap<&Partition, usize> = parts.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut structure = vec![vec![Element::zero(); size]; size];
    for i in 0..size {
        for j in i..size {
            let mut e = Element::zero();
            for (nu, c) in lr_product(&parts[i], &parts[j], Some(k)) {
                let seq: Vec<i64> = nu.parts().iter().map(|&x| x as i64).collect();
                if let SigmaHat::Class { sign, r, lambda } = reduce_sigma_hat(k, n, &seq)? {
                    let w = index[&lambda];
                    e.add_term(w, &QLaurent::monomial(rat(sign as i64 * c as i64), r));
                }
            }
            structure[j][i] = e.clone();
            structure[i][j] = e;
        }
    }
    let mut pairing = vec![vec![QLaurent::zero(); size]; size];
    for (i, p) in parts.iter().enumerate() {
        let j = index[&p.complement(k, m)?];
        pairing[i][j] = QLaurent::one();
    }
    FrobeniusRing::new(RingData {
        name: format!("Gr({k},{n})"),
        labels: parts.iter().map(|p| p.label()).collect(),
        degrees: parts.iter().map(|p| p.size() as i64).collect(),
        tau: n as i64,
        dim: (k * (n - k)) as i64,
        unit: 0,
        point: Some(index[&Partition::rectangle(k, m)]),
        pairing,
        structure,
        installed_delta: None,
    })
}

/// `Z_r`: strictly increasing `r`-tuples in `1..=k`.
pub fn z_tuples(r: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, r: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..=k {
            cur.push(i);
            rec(i + 1, r, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, r, k, &mut Vec::new(), &mut out);
    out
}

/// The sequence `φ(ν, I)`: parts `i_1 < ... < i_r` of `ν` pushed to the front
/// by row exchanges, then raised by `n`. Returned as a raw sequence of length
/// `k` (1-based formulas, 0-based storage).
pub fn phi_map(k: usize, n: usize, nu: &Partition, i_set: &[usize]) -> Vec<i64> {
    let r = i_set.len();
    let nu_at = |j: usize| nu.part(j - 1) as i64;
    let n = n as i64;
    let mut out = Vec::with_capacity(k);
    for j in 1..=k {
        let v = if j <= r {
            let ij = i_set[j - 1];
            nu_at(ij) - ij as i64 + j as i64 + n
        } else if j <= i_set[r - 1] {
            let t = (j - r) as i64;
            let mut val = None;
            for l in 1..=r {
                let prev = if l == 1 { 0 } else { i_set[l - 2] as i64 };
                let lo = prev - l as i64 + 2;
                let hi = i_set[l - 1] as i64 - l as i64;
                if lo <= t && t <= hi {
                    val = Some(nu_at(j - r + l - 1) + (r - l + 1) as i64);
                    break;
                }
            }
            val.expect("every row between r and i_r falls in one block")
        } else {
            nu_at(j)
        };
        out.push(v);
    }
    out
}

/// Closed-form handle element: `χ [pt]` plus the quantum corrections indexed
/// by `(ν, I)` with LR coefficients `C^{φ(ν,I)}_{λ, p(λ)}`.
pub fn grassmannian_delta_closed_form(ring: &FrobeniusRing, k: usize, n: usize) -> Result<Element> {
    let m = (n - k) as u32;
    let parts = box_partitions(k, m);
    let chi = parts.len() as i64;
    let dim = k * (n - k);
    let big_r = dim / n;
    let idx = |p: &Partition| ring.index_of(&p.label()).expect("label in ring");
    let mut delta = Element::term(idx(&Partition::rectangle(k, m)), QLaurent::constant(rat(chi)));
    let complements: Vec<Partition> = parts
        .iter()
        .map(|p| p.complement(k, m))
        .collect::<Result<_>>()?;
    for r in 1..=big_r {
        let target = (dim - r * n) as u32;
        for nu in parts.iter().filter(|p| p.size() == target) {
            let mut coeff = 0i64;
            for i_set in z_tuples(r, k) {
                let phi = phi_map(k, n, nu, &i_set);
                if phi.iter().any(|&x| x < 0) {
                    continue;
                }
                let Ok(phi) = Partition::new(phi.iter().map(|&x| x as u32).collect()) else {
                    continue;
                };
                let abs_i: usize = i_set.iter().sum();
                let e = r * (2 * k - r + 1) / 2 + abs_i;
                let sign = if e % 2 == 0 { 1 } else { -1 };
                let total: u64 = parts
                    .iter()
                    .zip(&complements)
                    .map(|(l, pl)| lr_coefficient(l, pl, &phi))
                    .sum();
                coeff += sign * total as i64;
            }
            delta.add_term(idx(nu), &QLaurent::monomial(rat(coeff), r as i64));
        }
    }
    Ok(delta)
}

/// `Gr(2, n)`: `n(n-1)/2 σ_(n-2,n-2) + sum_s n(n-2s-1)/2 q σ_(n-3-s, s-1)`.
pub fn grassmannian2_delta(ring: &FrobeniusRing, n: usize) -> Result<Element> {
    let n_i = n as i64;
    let pt = Partition::rectangle(2, (n - 2) as u32);
    let idx = |p: &Partition| {
        ring.index_of(&p.label())
            .ok_or_else(|| Error::InvalidInput(format!("{p} not in {}", ring.name())))
    };
    let mut d = Element::term(idx(&pt)?, QLaurent::constant(rat(n_i * (n_i - 1) / 2)));
    for s in 1..=(n - 2) / 2 {
        let nu = Partition::new(vec![(n - 3 - s) as u32, (s - 1) as u32])?;
        let c = n_i * (n_i - 2 * s as i64 - 1) / 2;
        d.add_term(idx(&nu)?, &QLaurent::monomial(rat(c), 1));
    }
    Ok(d)
}

/// `Θ_1 = 1`, `Θ_j = σ_(n-j, j)` for `2 <= j <= ⌊n/2⌋`: the degree-0 part of
/// `Gr(2,n)` in the normalisation `{Θ_1, q^{-1} Θ_j}`.
pub fn gr2_v0_indices(ring: &FrobeniusRing, n: usize) -> Vec<usize> {
    let mut out = vec![ring.unit()];
    for j in 2..=n / 2 {
        let p = Partition::new(vec![(n - j) as u32, j as u32]).unwrap();
        out.push(ring.index_of(&p.label()).unwrap());
    }
    out
}

/// `A_ij = (2i - 1) b_j` for `i <= j` (symmetric), `b_j = n(n+1)/2 - j n`.
pub fn gr2_a0_closed_form(n: usize) -> RatMatrix {
    let m = n / 2;
    let n_i = n as i64;
    let b = |j: usize| n_i * (n_i + 1) / 2 - j as i64 * n_i;
    let mut a = RatMatrix::zeros(m, m);
    for i in 1..=m {
        for j in i..=m {
            let v = rat((2 * i as i64 - 1) * b(j));
            a[(i - 1, j - 1)] = v.clone();
            a[(j - 1, i - 1)] = v;
        }
    }
    a
}

/// `(n / gcd(4, n)) * ⌊n/2⌋`
pub fn gr2_dim_f_closed_form(n: usize) -> usize {
    n / n.gcd(&4) * (n / 2)
}
