//! The acceptance suite: one entry per criterion, each a list of named exact
//! (or explicitly toleranced) checks.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::complexity::{
    chordal, exact_complexity, finite_state_set, limit_points_real, s_infinity, trajectory, ProjState,
    SInfinityOptions,
};
use crate::error::Result;
use crate::frobenius::{Element, FrobeniusRing};
use crate::linalg::{rational, rational_eigenstructure, RatMatrix, Rational};
use crate::oracle;
use crate::partition::{est_bound, lr_coefficient, lr_coefficient_len2, lr_product, restricted_count, Partition};
use crate::rings::{self, FciModel, SigmaHat};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Criterion {
    pub id: u32,
    pub title: String,
    pub pass: bool,
    pub checks: Vec<Check>,
}

impl Criterion {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// `PASS`/`FAIL`, id, title and check counts on one line.
    pub fn summary_line(&self) -> String {
        let passed = self.checks.iter().filter(|c| c.pass).count();
        let mut s = format!(
            "{} criterion {}: {} ({}/{} checks)",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            passed,
            self.checks.len()
        );
        let failed: Vec<String> = self
            .failures()
            .map(|c| match &c.detail {
                Some(d) => format!("{} [{}]", c.name, d),
                None => c.name.clone(),
            })
            .collect();
        if !failed.is_empty() {
            s.push_str(&format!(" failed: {}", failed.join("; ")));
        }
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub pass: bool,
    pub criteria: Vec<Criterion>,
}

pub const CRITERIA: [(u32, &str); 8] = [
    (1, "projective spaces"),
    (2, "quadrics"),
    (3, "Grassmannians"),
    (4, "Gr(2,n) fine structure"),
    (5, "dimension bound sharpness"),
    (6, "Fano complete intersections"),
    (7, "limit points of real-spectrum orbits"),
    (8, "property suites"),
];

struct Log {
    checks: Vec<Check>,
}

impl Log {
    fn new() -> Self {
        Self { checks: Vec::new() }
    }

    fn check(&mut self, name: impl Into<String>, pass: bool, detail: impl FnOnce() -> String) {
        let detail = if pass { None } else { Some(detail()) };
        self.checks.push(Check {
            name: name.into(),
            pass,
            detail,
        });
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, name: impl Into<String>, got: T, want: T) {
        let pass = got == want;
        self.check(name, pass, || format!("got {got:?}, expected {want:?}"));
    }

    /// Runs a fallible block; an error becomes a failed check.
    fn guard(&mut self, name: &str, f: impl FnOnce(&mut Self) -> Result<()>) {
        if let Err(e) = f(self) {
            self.check(name, false, || format!("error: {e}"));
        }
    }

    fn finish(self, id: u32) -> Criterion {
        let title = CRITERIA.iter().find(|c| c.0 == id).map(|c| c.1).unwrap_or("?");
        Criterion {
            id,
            title: title.to_string(),
            pass: self.checks.iter().all(|c| c.pass),
            checks: self.checks,
        }
    }
}

pub fn run_criterion(id: u32) -> Option<Criterion> {
    let mut log = Log::new();
    match id {
        1 => projective(&mut log),
        2 => quadrics(&mut log),
        3 => grassmannians(&mut log),
        4 => gr2_fine(&mut log),
        5 => sharpness(&mut log),
        6 => complete_intersections(&mut log),
        7 => limit_points(&mut log, 100),
        8 => properties(&mut log),
        _ => return None,
    }
    Some(log.finish(id))
}

/// Runs the selected criteria (all when `ids` is empty); results come back in
/// id order regardless of scheduling.
pub fn run(ids: &[u32]) -> VerifyReport {
    let ids: Vec<u32> = CRITERIA
        .iter()
        .map(|c| c.0)
        .filter(|i| ids.is_empty() || ids.contains(i))
        .collect();
    #[cfg(feature = "parallel")]
    let criteria: Vec<Criterion> = {
        use rayon::prelude::*;
        ids.par_iter().filter_map(|&i| run_criterion(i)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let criteria: Vec<Criterion> = ids.iter().filter_map(|&i| run_criterion(i)).collect();
    VerifyReport {
        pass: criteria.iter().all(|c| c.pass),
        criteria,
    }
}

fn unit_state(ring: &FrobeniusRing) -> ProjState {
    ProjState::basis(ring.rank(), ring.unit())
}

fn projective(log: &mut Log) {
    for n in 1..=6usize {
        log.guard(&format!("P^{n}"), |log| {
            let ring = rings::projective_space(n)?;
            let h = ring.handle_element();
            log.check(format!("P^{n}: Δ = {}H^{n}", n + 1), h.delta == rings::projective_delta(n) && h.forms_agree, || {
                ring.format(&h.delta)
            });
            let unit = unit_state(&ring);
            let t = trajectory(&ring, &unit, 10 * (n + 1))?;
            log.eq(format!("P^{n}: orbit size"), t.states.len(), n + 1);
            log.eq(format!("P^{n}: period"), t.cycle, Some((0, n + 1)));
            for i in 1..=n {
                let c = exact_complexity(&ring, &unit, &ProjState::basis(n + 1, i), 10 * (n + 1))?;
                log.eq(format!("P^{n}: complexity of [H^{i}]"), c.k, Some(n + 1 - i));
            }
            let s = s_infinity(&ring, &unit, &SInfinityOptions::for_ring(&ring))?;
            log.eq(format!("P^{n}: S∞ size"), s.points.len(), 0);
            log.eq(format!("P^{n}: dim F"), ring.f_span_dim().dim, n + 1);
            Ok(())
        });
    }
}

fn quadrics(log: &mut Log) {
    for r in 3..=8usize {
        log.guard(&format!("Q^{r}"), |log| {
            let ring = rings::quadric(r)?;
            let delta_r: i64 = if r % 2 == 1 { 1 } else { 2 };
            let h = ring.handle_element();
            let want = rings::quadric_delta(&ring, r);
            log.check(format!("Q^{r}: Δ = (r+δ)σ_r + (r-δ)q"), h.delta == want && h.forms_agree, || {
                ring.format(&h.delta)
            });
            let m = ring.mult_matrix(ring.delta());
            let es = rational_eigenstructure(&m)?;
            let v1 = 2 * ((r - 1) / 2);
            let even = usize::from(r % 2 == 0);
            let mut got: Vec<(Rational, usize, usize)> = es
                .blocks
                .iter()
                .map(|b| (b.value.clone(), b.algebraic_multiplicity, b.jordan_blocks.len()))
                .collect();
            got.sort();
            let mut want = vec![
                (rational::rat(-2 * delta_r), 1 + even, 1 + even),
                (rational::rat(2 * r as i64), v1 + 1 + even, v1 + 1 + even),
            ];
            want.sort();
            log.eq(format!("Q^{r}: spectrum (value, mult, eigenspace dim)"), got, want);
            // the invariant pieces, at q = 1
            let idx = |l: &str| ring.index_of(l).expect("quadric label");
            let n = ring.rank();
            let vec_of = |terms: &[(usize, i64)]| {
                let mut v = vec![Rational::zero(); n];
                for &(i, c) in terms {
                    v[i] += rational::rat(c);
                }
                v
            };
            let top = idx(&format!("s{r}"));
            let eig = |v: &[Rational], lam: i64| m.mul_vec(v) == v.iter().map(|x| x * rational::rat(lam)).collect::<Vec<_>>();
            let two_r = 2 * r as i64;
            let mut ok = eig(&vec_of(&[(0, 1), (top, 1)]), two_r) && eig(&vec_of(&[(0, 1), (top, -1)]), -2 * delta_r);
            for i in 1..=(r - 1) / 2 {
                ok &= eig(&vec_of(&[(idx(&format!("s{i}")), 1)]), two_r);
                ok &= eig(&vec_of(&[(idx(&format!("s{}", r - i)), 1)]), two_r);
            }
            if r % 2 == 0 {
                let (p, q) = (idx(&format!("s{}+", r / 2)), idx(&format!("s{}-", r / 2)));
                ok &= eig(&vec_of(&[(p, 1), (q, 1)]), two_r) && eig(&vec_of(&[(p, 1), (q, -1)]), -2 * delta_r);
            }
            log.check(format!("Q^{r}: eigenvectors on V1, V2, V3"), ok, || "eigenvector mismatch".into());
            log.eq(format!("Q^{r}: dim F"), ring.f_span_dim().dim, 2);
            let unit = unit_state(&ring);
            let s = s_infinity(&ring, &unit, &SInfinityOptions::for_ring(&ring))?;
            let want_pt = ProjState::new(vec_of(&[(0, 1), (top, 1)]))?;
            let got_pts: Vec<String> = s.points.iter().map(|p| p.format(&ring)).collect();
            log.eq(format!("Q^{r}: S∞([1]) = [1 + σ_r]"), got_pts, vec![want_pt.format(&ring)]);
            Ok(())
        });
    }
}

const GR_LIST: [(usize, usize); 8] = [(2, 4), (2, 5), (2, 6), (2, 7), (2, 8), (3, 6), (3, 7), (3, 8)];

/// Rows of the estimate table: `(k, n, dim H, Est)`.
pub const EST_TABLE: [(u32, u32, u64, u128); 10] = [
    (2, 4, 6, 2),
    (2, 5, 10, 10),
    (2, 6, 15, 9),
    (2, 7, 21, 21),
    (2, 8, 28, 8),
    (3, 6, 20, 8),
    (3, 7, 35, 35),
    (3, 8, 56, 56),
    (3, 9, 84, 9),
    (4, 8, 70, 10),
];

fn grassmannians(log: &mut Log) {
    for (k, n) in GR_LIST {
        log.guard(&format!("Gr({k},{n})"), |log| {
            let ring = rings::grassmannian(k, n)?;
            let name = format!("Gr({k},{n})");
            let h = ring.handle_element();
            let cf = rings::grassmannian_delta_closed_form(&ring, k, n)?;
            log.check(format!("{name}: closed form = handle element"), cf == h.delta && h.forms_agree, || {
                format!("closed {} vs handle {}", ring.format(&cf), ring.format(&h.delta))
            });
            if k == 2 {
                let cor = rings::grassmannian2_delta(&ring, n)?;
                log.check(format!("{name}: two-row closed expression"), cor == h.delta, || ring.format(&cor));
            }
            let d1 = num_integer::gcd(k, n);
            let pt = Element::basis(ring.point().expect("point"));
            let p = ring.power(&pt, (n / d1) as u32);
            log.eq(
                format!("{name}: [pt]^(n/D1) = q^(k(n-k)/D1)"),
                ring.as_unit_multiple(&p),
                Some((rational::rat(1), (k * (n - k) / d1) as i64)),
            );
            let a = ring.a_matrix(None)?;
            log.check(format!("{name}: A symmetric"), a.is_symmetric(), || "not symmetric".into());
            let nonneg = a.to_rows().iter().flatten().all(|x| !x.is_negative());
            log.check(format!("{name}: A entries >= 0"), nonneg, || "negative entry".into());
            let minors = a.leading_minors()?;
            let bad = minors.iter().position(|m| !m.is_positive());
            log.check(format!("{name}: A positive definite (Sylvester)"), bad.is_none(), || {
                format!("leading minor {} is {}", bad.unwrap() + 1, rational::to_string(&minors[bad.unwrap()]))
            });
            Ok(())
        });
    }
    for (k, n, _, want) in EST_TABLE {
        log.guard(&format!("est Gr({k},{n})"), |log| {
            log.eq(format!("est Gr({k},{n})"), est_bound(k, n)?, want);
            Ok(())
        });
    }
}

fn gr2_fine(log: &mut Log) {
    for n in 4..=8usize {
        log.guard(&format!("Gr(2,{n})"), |log| {
            let ring = rings::grassmannian(2, n)?;
            let v0 = rings::gr2_v0_indices(&ring, n);
            let a = ring.a_matrix(None)?;
            let a0 = a.submatrix(&v0, &v0);
            let closed = rings::gr2_a0_closed_form(n);
            log.check(format!("Gr(2,{n}): A0 = (2i-1) b_j"), a0 == closed, || format!("got {a0}"));
            let cp = a0.char_poly()?;
            log.check(format!("Gr(2,{n}): A0 eigenvalues simple"), cp.is_squarefree(), || {
                "char poly has a repeated factor".into()
            });
            log.eq(format!("Gr(2,{n}): dim F"), ring.f_span_dim().dim, rings::gr2_dim_f_closed_form(n));
            Ok(())
        });
    }
}

fn sharpness(log: &mut Log) {
    for n in 4..=8usize {
        log.guard(&format!("Gr(2,{n})"), |log| {
            let ring = rings::grassmannian(2, n)?;
            let f = ring.f_span_dim();
            log.eq(format!("Gr(2,{n}): dim F = bound"), f.dim, ring.dim_bound());
            log.check(format!("Gr(2,{n}): powers in degrees ≡ 0 mod D"), f.containment_ok, || "escaped".into());
            Ok(())
        });
    }
    for n in [6usize, 8] {
        log.guard(&format!("Gr(3,{n})"), |log| {
            let ring = rings::grassmannian(3, n)?;
            let f = ring.f_span_dim();
            let b = ring.dim_bound();
            log.check(format!("Gr(3,{n}): dim F <= bound"), f.dim <= b, || format!("{} > {b}", f.dim));
            log.check(format!("Gr(3,{n}): powers in degrees ≡ 0 mod D"), f.containment_ok, || "escaped".into());
            Ok(())
        });
    }
}

/// The geometric models of the suite, then two with a prescribed Euler
/// characteristic that reach the `ω = 0` and `χ = r + 1` branches.
pub fn fci_models() -> Vec<FciModel> {
    let mut v: Vec<FciModel> = [(vec![3], 3), (vec![2, 2], 3), (vec![4], 3), (vec![2, 3], 3), (vec![5], 4)]
        .into_iter()
        .map(|(m, r)| FciModel::new(&m, r).expect("valid model"))
        .collect();
    v.push(omega_zero_model(&[2, 3], 3));
    v.push(FciModel::with_euler_characteristic(&[4], 3, rational::rat(4)).expect("valid model"));
    v
}

/// `χ` solving `r + 1 - χ = m^{(r-1)m} (m!)^{1-r}`.
pub fn omega_zero_model(m: &[u32], r: u32) -> FciModel {
    let base = FciModel::new(m, r).expect("valid model");
    let rhs = base.m_pow(r as i64 - 1, 0) * rational::pow(&base.m_factorial(), 1 - r as i64);
    let chi = rational::rat(r as i64 + 1) - rhs;
    FciModel::with_euler_characteristic(m, r, chi).expect("valid model")
}

fn complete_intersections(log: &mut Log) {
    let spots: [(&[u32], u32, i64); 4] = [(&[2], 3, 4), (&[3], 3, -6), (&[2, 2], 3, 0), (&[2, 3], 3, -36)];
    for (m, r, chi) in spots {
        log.eq(format!("χ{m:?}, r={r}"), rings::euler_characteristic(m, r), rational::rat(chi));
    }
    for (d, r) in [(2, 3), (3, 3), (4, 3), (5, 4), (3, 5), (6, 5)] {
        log.eq(
            format!("χ({d}), r={r} vs hypersurface formula"),
            rings::euler_characteristic(&[d], r),
            oracle::hypersurface_euler_characteristic(d, r),
        );
    }
    let mut branches = BTreeSet::new();
    for model in fci_models() {
        let name = model.name();
        log.guard(&name, |log| {
            let rep = rings::fci_report(&model)?;
            let ring = rings::fano_ci(&model)?;
            log.check(format!("{name}: restricted pairing handle"), rep.restricted_handle_matches, || {
                rep.restricted_handle.clone()
            });
            if let Some(ok) = rep.finite_states_match {
                log.check(format!("{name}: finite-complexity set"), ok, || {
                    format!("{:?} vs {:?}", rep.computed_finite_states, rep.predicted_finite_states)
                });
            }
            if let Some(d) = rep.predicted_dim_f {
                log.eq(format!("{name}: dim F"), rep.computed_dim_f, d);
            }
            if !model.uses_hat() {
                let hm = ring.mult_matrix(&Element::basis(1));
                let lhs = hm.pow(model.r + 1)?;
                let rhs = hm.pow(model.weight() - model.len())?.scale(&model.m_pow(1, 0));
                log.check(format!("{name}: hyperplane relation"), lhs == rhs, || "H^(r+1) != m^m H^(|m|-L)".into());
                branches.insert("|m| <= r+L-1");
            }
            if let Some(h) = &rep.hat {
                log.check(format!("{name}: A upper-triangular shape"), h.a_matches_closed_form, || {
                    format!("{:?}", h.a_matrix)
                });
                log.check(format!("{name}: (A - β)^(r-1) != 0"), h.jordan_check, || "vanishes".into());
                if model.excess().is_zero() {
                    branches.insert("chi = r+1");
                } else {
                    let want = if h.omega_condition { model.r } else { model.r + 1 };
                    log.eq(format!("{name}: dim F per ω-condition"), rep.computed_dim_f, want as usize);
                    log.eq(format!("{name}: ω = 0 iff condition"), h.omega_zero, h.omega_condition);
                    branches.insert(if h.omega_condition { "dim F = r" } else { "dim F = r+1" });
                }
            }
            let unit = unit_state(&ring);
            let fs = finite_state_set(&ring, &unit, 10 * ring.rank())?;
            let s = s_infinity(&ring, &unit, &SInfinityOptions::for_ring(&ring))?;
            log.check(format!("{name}: |S∞([1])| <= 2"), s.points.len() <= 2, || s.points.len().to_string());
            if fs.closed {
                log.eq(format!("{name}: S∞ empty for a closed orbit"), s.points.len(), 0);
            }
            Ok(())
        });
    }
    for b in ["|m| <= r+L-1", "chi = r+1", "dim F = r", "dim F = r+1"] {
        log.check(format!("branch exercised: {b}"), branches.contains(b), || "no instance".into());
    }
}

/// A random `6 × 6` matrix `P J P^{-1}` with rational Jordan form `J`: a
/// semisimple dominant eigenvalue `D` (sometimes with `-D` as well) and
/// smaller eigenvalues in Jordan blocks of size up to 3.
pub fn random_real_spectrum_matrix<R: Rng>(rng: &mut R) -> (RatMatrix, Vec<Rational>) {
    let n = 6;
    let d: i64 = rng.gen_range(5..=9);
    let mut diag: Vec<(i64, bool)> = vec![(d, false)];
    if rng.gen_bool(0.4) {
        diag.push((-d, false));
    }
    if rng.gen_bool(0.3) {
        diag.push((d, false));
    }
    while diag.len() < n {
        let mu = rng.gen_range(-(d - 2)..=(d - 2));
        let size = rng.gen_range(1..=3).min(n - diag.len());
        for s in 0..size {
            diag.push((mu, s > 0));
        }
    }
    let mut j = RatMatrix::zeros(n, n);
    for (i, &(v, chained)) in diag.iter().enumerate() {
        j[(i, i)] = rational::rat(v);
        if chained {
            j[(i - 1, i)] = rational::rat(1);
        }
    }
    let p = loop {
        let p = oracle::random_rational_matrix(rng, n);
        if !p.det().map(|x| x.is_zero()).unwrap_or(true) {
            break p;
        }
    };
    let m = p.mul(&j).unwrap().mul(&p.inverse().unwrap()).unwrap();
    let z: Vec<Rational> = loop {
        let z: Vec<Rational> = (0..n).map(|_| rational::rat(rng.gen_range(-5..=5))).collect();
        if z.iter().any(|x| !x.is_zero()) {
            break z;
        }
    };
    (m, z)
}

fn normalized_f64(v: &[Rational]) -> Vec<f64> {
    let big = v.iter().map(|x| x.abs()).max().unwrap_or_else(Rational::zero);
    if big.is_zero() {
        return vec![0.0; v.len()];
    }
    v.iter().map(|x| rational::to_f64(&(x / &big))).collect()
}

fn limit_points(log: &mut Log, count: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    let mut worst: f64 = 0.0;
    let mut max_points = 0;
    let mut bad = Vec::new();
    for trial in 0..count {
        let (m, z) = random_real_spectrum_matrix(&mut rng);
        match limit_points_real(&m, &z) {
            Ok(la) => {
                max_points = max_points.max(la.candidates.len());
                let mut x = z.clone();
                for _ in 0..200 {
                    x = m.mul_vec(&x);
                }
                let xf = normalized_f64(&x);
                let dist = la
                    .candidates
                    .iter()
                    .map(|c| chordal(&xf, &c.to_f64()))
                    .fold(f64::INFINITY, f64::min);
                worst = worst.max(dist);
                if la.candidates.len() > 2 || dist.is_nan() || dist >= 1e-6 {
                    bad.push(format!("#{trial}: {} points, distance {dist:.3e}", la.candidates.len()));
                }
            }
            Err(e) => bad.push(format!("#{trial}: {e}")),
        }
    }
    log.check(format!("{count} random matrices: <= 2 limits, M^200 z within 1e-6"), bad.is_empty(), || {
        bad.join(", ")
    });
    log.check(
        format!("largest limit set {max_points}, worst distance {worst:.2e}"),
        max_points <= 2 && worst < 1e-6,
        || "out of bounds".into(),
    );
}

fn properties(log: &mut Log) {
    // LR: symmetry, strip algorithm vs cell filling vs Schur oracle
    let small: Vec<Partition> = (0..=6).flat_map(oracle::all_partitions).collect();
    let mut kostka = oracle::Kostka::new();
    let (mut sym_bad, mut oracle_bad, mut cell_bad) = (Vec::new(), Vec::new(), Vec::new());
    for (a, l) in small.iter().enumerate() {
        for mu in &small[a..] {
            let p = lr_product(l, mu, None);
            if p != lr_product(mu, l, None) {
                sym_bad.push(format!("{l}*{mu}"));
            }
            if p != oracle::schur_product(&mut kostka, l, mu) {
                oracle_bad.push(format!("{l}*{mu}"));
            }
            for nu in oracle::all_partitions(l.size() + mu.size()) {
                let c = lr_coefficient(l, mu, &nu);
                if c != p.get(&nu).copied().unwrap_or(0) || c != lr_coefficient(mu, l, &nu) {
                    cell_bad.push(format!("c^{nu}_{l},{mu}"));
                }
            }
        }
    }
    let show = |v: &Vec<String>| v.iter().take(5).cloned().collect::<Vec<_>>().join(", ");
    log.check("LR symmetry, |λ|,|μ| <= 6", sym_bad.is_empty(), || show(&sym_bad));
    log.check("LR = Schur oracle, |λ|,|μ| <= 6", oracle_bad.is_empty(), || show(&oracle_bad));
    log.check("LR strips = LR cell filling", cell_bad.is_empty(), || show(&cell_bad));

    let two_row: Vec<&Partition> = small.iter().filter(|p| p.len() <= 2).collect();
    let mut len2_bad = Vec::new();
    for l in &two_row {
        for nu in &two_row {
            for mu in oracle::all_partitions(l.size() + nu.size()).iter().filter(|p| p.len() <= 2) {
                if lr_coefficient_len2(l, nu, mu) != Some(lr_coefficient(l, nu, mu)) {
                    len2_bad.push(format!("c^{mu}_{l},{nu}"));
                }
            }
        }
    }
    log.check("two-row closed form = general LR", len2_bad.is_empty(), || show(&len2_bad));

    let mut rc_bad = Vec::new();
    for m in 0..=7u32 {
        for l in 0..=7u32 {
            let mut sum = 0u128;
            for i in 0..=m * l {
                let c = restricted_count(i, m, l);
                sum += c;
                if c != oracle::box_partition_count_bruteforce(i, m, l) {
                    rc_bad.push(format!("p({i}|{m},{l})"));
                }
            }
            if sum != oracle::binomial((m + l) as u64, m as u64) {
                rc_bad.push(format!("sum p(.|{m},{l})"));
            }
        }
    }
    log.check("p(i|m,l) = enumeration, sum = binomial", rc_bad.is_empty(), || show(&rc_bad));

    let mut built = Vec::new();
    let mut build_errors = Vec::new();
    let mut try_build = |name: String, r: Result<FrobeniusRing>| match r {
        Ok(_) => built.push(name),
        Err(e) => build_errors.push(format!("{name}: {e}")),
    };
    for n in 1..=6 {
        try_build(format!("P^{n}"), rings::projective_space(n));
    }
    for r in 3..=8 {
        try_build(format!("Q^{r}"), rings::quadric(r));
    }
    for (k, n) in GR_LIST {
        try_build(format!("Gr({k},{n})"), rings::grassmannian(k, n));
    }
    for m in fci_models() {
        try_build(m.name(), rings::fano_ci(&m));
    }
    log.check(
        format!("ring validation (unit, grading, associativity, Frobenius) on {} rings", built.len() + build_errors.len()),
        build_errors.is_empty(),
        || build_errors.join("; "),
    );

    let mut phi_bad = Vec::new();
    let mut phi_count = 0;
    for k in 1..=3usize {
        for n in (k + 1)..=8usize {
            let dim = k * (n - k);
            let parts = crate::partition::box_partitions(k, (n - k) as u32);
            for r in 1..=(dim / n).min(k) {
                for nu in parts.iter().filter(|p| p.size() as usize == dim - r * n) {
                    for i_set in rings::z_tuples(r, k) {
                        phi_count += 1;
                        let phi = rings::phi_map(k, n, nu, &i_set);
                        let abs_i: usize = i_set.iter().sum();
                        let e = r * (2 * k - r + 1) / 2 + abs_i;
                        let want = SigmaHat::Class {
                            sign: if e % 2 == 0 { 1 } else { -1 },
                            r: r as i64,
                            lambda: nu.clone(),
                        };
                        match rings::reduce_sigma_hat(k, n, &phi) {
                            Ok(got) if got == want => {}
                            other => phi_bad.push(format!("k={k} n={n} ν={nu} I={i_set:?}: {other:?}")),
                        }
                    }
                }
            }
        }
    }
    log.check(format!("reduce(φ(ν,I)) = ±q^r σ_ν on {phi_count} pairs, k <= 3, n <= 8"), phi_bad.is_empty(), || {
        show(&phi_bad)
    });

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    let mut ch_bad = Vec::new();
    for size in 1..=12usize {
        for _ in 0..3 {
            let m = oracle::random_rational_matrix(&mut rng, size);
            let ok = m.char_poly().and_then(|p| {
                let f = m.char_poly_faddeev()?;
                Ok(p == f && oracle::eval_poly_at_matrix(&p, &m).is_zero())
            });
            if !matches!(ok, Ok(true)) {
                ch_bad.push(format!("{size}x{size}"));
            }
        }
    }
    log.check("Cayley-Hamilton and Hessenberg = Faddeev, sizes 1..12", ch_bad.is_empty(), || show(&ch_bad));
}
