use qh_core::complexity::*;
use qh_core::frobenius::Element;
use qh_core::linalg::rational::{frac, rat};
use qh_core::linalg::*;
use qh_core::partition::*;
use qh_core::rings::*;

fn p(v: &[u32]) -> Partition {
    Partition::new(v.to_vec()).unwrap()
}

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| rat(x)).collect()
}

#[test]
fn complements() {
    assert_eq!(p(&[3, 1]).complement(2, 3).unwrap(), p(&[2]));
    assert_eq!(Partition::empty().complement(2, 2).unwrap(), p(&[2, 2]));
    for (k, m) in [(2, 3), (3, 4), (4, 1)] {
        assert_eq!(Partition::rectangle(k, m).complement(k, m).unwrap(), Partition::empty());
    }
}

#[test]
fn lr_examples() {
    assert_eq!(lr_coefficient(&p(&[1]), &p(&[1]), &p(&[2])), 1);
    assert_eq!(lr_coefficient(&p(&[2, 1]), &p(&[2, 1]), &p(&[3, 2, 1])), 2);
    assert_eq!(lr_coefficient(&p(&[2, 1]), &Partition::empty(), &p(&[2, 1])), 1);
    assert_eq!(lr_coefficient_len2(&p(&[2, 1]), &p(&[2, 1]), &p(&[3, 3])), Some(1));
    assert_eq!(lr_coefficient_len2(&p(&[2, 1]), &p(&[2, 1]), &p(&[5, 1])), Some(0));
    assert_eq!(lr_coefficient_len2(&p(&[2, 1]), &Partition::empty(), &p(&[2, 1])), Some(1));
    assert_eq!(lr_coefficient_len2(&p(&[1, 1, 1]), &p(&[1]), &p(&[2, 1, 1])), None);
}

#[test]
fn restricted_counts() {
    for (m, l) in [(0, 0), (3, 5), (7, 2)] {
        assert_eq!(restricted_count(0, m, l), 1);
    }
    assert_eq!(restricted_count(5, 3, 2), 1);
    assert_eq!(restricted_count(8, 4, 4), 8);
    assert_eq!(est_bound(2, 6).unwrap(), 9);
    assert_eq!(est_bound(3, 7).unwrap(), 35);
    assert_eq!(est_bound(4, 8).unwrap(), 10);
    assert!(est_bound(0, 4).is_err());
}

#[test]
fn char_polys() {
    let cp = |rows: &[&[i64]]| RatMatrix::from_i64(rows).char_poly().unwrap();
    assert_eq!(cp(&[&[1, 0], &[0, 1]]).coeffs(), ints(&[1, -2, 1]).as_slice());
    assert_eq!(cp(&[&[0, 1], &[0, 0]]).coeffs(), ints(&[0, 0, 1]).as_slice());
    assert_eq!(cp(&[&[2, 1], &[1, 2]]).coeffs(), ints(&[3, -4, 1]).as_slice());
}

#[test]
fn eigenstructures() {
    let es = rational_eigenstructure(&RatMatrix::from_i64(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 3]])).unwrap();
    assert!(es.split);
    let two = es.blocks.iter().find(|b| b.value == rat(2)).unwrap();
    assert_eq!((two.algebraic_multiplicity, two.jordan_blocks.clone()), (2, vec![1, 1]));
    let three = es.blocks.iter().find(|b| b.value == rat(3)).unwrap();
    assert_eq!(three.algebraic_multiplicity, 1);

    let es = rational_eigenstructure(&RatMatrix::from_i64(&[&[5, 1], &[0, 5]])).unwrap();
    assert_eq!(es.blocks.len(), 1);
    assert_eq!(es.blocks[0].jordan_blocks, vec![2]);

    let es = rational_eigenstructure(&RatMatrix::from_i64(&[&[0, 2], &[1, 0]])).unwrap();
    assert!(!es.split);
    assert!(es.blocks.is_empty());
}

#[test]
fn sylvester() {
    let id = RatMatrix::identity(3);
    assert!(id.is_positive_definite().unwrap());
    assert_eq!(id.leading_minors().unwrap(), ints(&[1, 1, 1]));
    let m = RatMatrix::from_i64(&[&[1, 2], &[2, 1]]);
    assert!(!m.is_positive_definite().unwrap());
    assert_eq!(m.leading_minors().unwrap()[1], rat(-3));
    let a0 = RatMatrix::from_i64(&[&[15, 9, 3], &[9, 27, 9], &[3, 9, 15]]);
    assert_eq!(a0, gr2_a0_closed_form(6));
    assert_eq!(a0.leading_minors().unwrap(), ints(&[15, 324, 3888]));
    assert!(a0.is_positive_definite().unwrap());
}

#[test]
fn krylov() {
    let v = ints(&[1, 2, 3]);
    assert_eq!(krylov_rank(&RatMatrix::identity(3), &v, 10).0, 1);
    let mut nil = RatMatrix::zeros(4, 4);
    for i in 0..3 {
        nil[(i, i + 1)] = rat(1);
    }
    assert_eq!(krylov_rank(&nil, &ints(&[0, 0, 0, 1]), 10).0, 4);
    let gr = grassmannian(2, 5).unwrap();
    let m = gr.mult_matrix(gr.delta());
    assert_eq!(krylov_rank(&m, &gr.unit_element().at_one(10), 20).0, 10);
}

#[test]
fn float_symmetric_eigs() {
    let (vals, _) = sym_float_eigs(&[vec![2.0, 1.0], vec![1.0, 2.0]], 1e-12, 100).unwrap();
    assert!((vals[0] - 3.0).abs() < 1e-10 && (vals[1] - 1.0).abs() < 1e-10);
    let (vals, _) = sym_float_eigs(
        &[vec![1.0, 0.0, 0.0], vec![0.0, -4.0, 0.0], vec![0.0, 0.0, 2.5]],
        1e-12,
        100,
    )
    .unwrap();
    assert_eq!(vals, vec![2.5, 1.0, -4.0]);
    let a0 = gr2_a0_closed_form(6).to_f64();
    let (vals, _) = sym_float_eigs(&a0, 1e-12, 100).unwrap();
    assert_eq!(vals.len(), 3);
    assert!(vals.iter().all(|&v| v > 0.0));
    let cp = gr2_a0_closed_form(6).char_poly().unwrap();
    for v in vals {
        assert!(cp.eval_f64(v).abs() < 1e-6 * cp.eval_f64(0.0).abs());
    }
}

#[test]
fn products() {
    let p2 = projective_space(2).unwrap();
    let h = Element::basis(1);
    let h2 = Element::basis(2);
    assert_eq!(p2.product(&h, &h2), Element::term(0, QLaurent::q_pow(1)));
    for r in 3..=6 {
        let q = quadric(r).unwrap();
        let pt = Element::basis(q.point().unwrap());
        assert_eq!(q.product(&pt, &pt), Element::term(0, QLaurent::q_pow(2)));
    }
    let g = grassmannian(2, 4).unwrap();
    let s1 = Element::basis(g.index_of("(1)").unwrap());
    let want = Element::basis(g.index_of("(2)").unwrap()).add(&Element::basis(g.index_of("(1,1)").unwrap()));
    assert_eq!(g.product(&s1, &s1), want);
}

#[test]
fn handle_elements() {
    for n in 1..=5 {
        let r = projective_space(n).unwrap();
        assert_eq!(r.format(r.delta()), format!("{}*{}", n + 1, r.label(n)));
        assert_eq!(r.format(&r.unit_element()), "1");
    }
    let q4 = quadric(4).unwrap();
    let want = Element::term(q4.index_of("s4").unwrap(), QLaurent::constant(rat(6)))
        .add(&Element::term(0, QLaurent::monomial(rat(2), 1)));
    assert_eq!(*q4.delta(), want);
    assert_eq!(q4.format(q4.delta()), "2*q + 6*s4");
    let g = grassmannian(2, 5).unwrap();
    let want = Element::term(g.index_of("(3,3)").unwrap(), QLaurent::constant(rat(10)))
        .add(&Element::term(g.index_of("(1)").unwrap(), QLaurent::monomial(rat(5), 1)));
    assert_eq!(*g.delta(), want);
    assert!(g.handle_element().forms_agree);
}

#[test]
fn multiplication_matrices() {
    let g = grassmannian(2, 5).unwrap();
    assert_eq!(g.mult_matrix(&g.unit_element()), RatMatrix::identity(10));
    let p2 = projective_space(2).unwrap();
    let m = p2.mult_matrix(p2.delta());
    assert_eq!(m.pow(3).unwrap(), RatMatrix::identity(3).scale(&rat(27)));
    let q4 = quadric(4).unwrap();
    let es = rational_eigenstructure(&q4.mult_matrix(q4.delta())).unwrap();
    let mut vals: Vec<Rational> = es.blocks.iter().map(|b| b.value.clone()).collect();
    vals.sort();
    assert_eq!(vals, ints(&[-4, 8]));
}

#[test]
fn powers() {
    let p2 = projective_space(2).unwrap();
    let d2 = p2.power(p2.delta(), 2);
    assert_eq!(d2, Element::term(1, QLaurent::monomial(rat(9), 1)));
    for n in 1..=5 {
        let r = projective_space(n).unwrap();
        for k in 1..=n + 1 {
            assert_eq!(r.power(r.delta(), k as u32), projective_delta_power(n, k));
        }
        assert_eq!(r.power(r.delta(), 0), r.unit_element());
    }
    for r in 3..=6 {
        let q = quadric(r).unwrap();
        let top = q.point().unwrap();
        for k in 0..5 {
            let d = q.power(q.delta(), k);
            assert!(d.support().iter().all(|&i| i == 0 || i == top));
        }
    }
}

#[test]
fn theta_and_point_inverse() {
    for r in 3..=6 {
        let q = quadric(r).unwrap();
        let th = q.theta_order(20).unwrap().unwrap();
        assert_eq!((th.t, th.m), (2, 2));
        let inv = q.pt_inverse(20).unwrap();
        assert_eq!(inv, Element::term(q.point().unwrap(), QLaurent::q_pow(-2)));
    }
    let g = grassmannian(2, 4).unwrap();
    let th = g.theta_order(20).unwrap().unwrap();
    assert_eq!((th.t, th.m), (2, 2));
    assert_eq!(g.pt_inverse(20).unwrap(), Element::term(g.point().unwrap(), QLaurent::q_pow(-2)));
    let p2 = projective_space(2).unwrap();
    let th = p2.theta_order(20).unwrap().unwrap();
    assert_eq!((th.t, th.m), (3, 2));
    assert_eq!(p2.pt_inverse(20).unwrap(), Element::term(1, QLaurent::q_pow(-1)));
}

#[test]
fn degree_splits_and_bounds() {
    let g = grassmannian(2, 6).unwrap();
    let mut v0: Vec<&str> = g.vj_split(0).into_iter().map(|i| g.label(i)).collect();
    v0.sort();
    // (4,4) has weight 8, which is not 0 mod 6
    assert_eq!(v0, vec!["()", "(3,3)", "(4,2)"]);
    assert_eq!(g.dim_bound(), 9);
    assert_eq!(g.f_span_dim().dim, 9);
    for n in 1..=5 {
        let r = projective_space(n).unwrap();
        for j in 0..=n as i64 {
            assert_eq!(r.vj_split(j), vec![j as usize]);
        }
        assert_eq!(r.f_span_dim().dim, n + 1);
    }
    let q4 = quadric(4).unwrap();
    let v0: Vec<&str> = q4.vj_split(0).into_iter().map(|i| q4.label(i)).collect();
    assert_eq!(v0, vec!["1", "s4"]);
    assert_eq!(q4.dim_bound(), 2);
    assert_eq!(q4.f_span_dim().dim, 2);
    assert_eq!(grassmannian(4, 8).unwrap().dim_bound(), 10);
}

#[test]
fn sigma_hat_examples() {
    let class = |sign, r, l: &[u32]| SigmaHat::Class { sign, r, lambda: p(l) };
    assert_eq!(reduce_sigma_hat(2, 5, &[5, 3]).unwrap(), class(1, 1, &[2, 1]));
    assert_eq!(reduce_sigma_hat(2, 6, &[8, 0]).unwrap(), class(-1, 1, &[2]));
    assert_eq!(reduce_sigma_hat(2, 5, &[2, 1]).unwrap(), class(1, 0, &[2, 1]));
    // σ̂_(a, a+1) vanishes after one exchange
    assert_eq!(reduce_sigma_hat(3, 6, &[1, 2]).unwrap(), SigmaHat::Zero);
}

#[test]
fn theta_lambda_products() {
    // Θ_1 = 1, Θ_j = σ_(n-j,j); Λ_1 = [pt], Λ_j = σ_(n-j-2,j-2)
    for n in 4..=8usize {
        let g = grassmannian(2, n).unwrap();
        let m = n / 2;
        let idx = |a: usize, b: usize| g.index_of(&p(&[a as u32, b as u32]).label()).unwrap();
        let theta = |i: usize| Element::basis(idx(n - i, i));
        let lambda = |j: usize| {
            if j == 1 {
                Element::basis(g.point().unwrap())
            } else {
                Element::basis(idx(n - j - 2, j - 2))
            }
        };
        for i in 2..=m {
            for j in 2..=m {
                let mut want = Element::zero();
                for k in i.abs_diff(j) + 1..=(i + j - 1).min(n + 1 - i - j) {
                    want.add_scaled(&lambda(k), &QLaurent::q_pow(if k == 1 { 0 } else { 1 }));
                }
                assert_eq!(g.product(&theta(i), &lambda(j)), want, "n={n} i={i} j={j}");
            }
        }
    }
    // for n = 6: Θ_2 * Λ_2 = [pt] + qΛ_2 + qΛ_3
    let g = grassmannian(2, 6).unwrap();
    let t2 = Element::basis(g.index_of("(4,2)").unwrap());
    let l2 = Element::basis(g.index_of("(2)").unwrap());
    assert_eq!(g.format(&g.product(&t2, &l2)), "q*(2) + q*(1,1) + (4,4)");
}

#[test]
fn classical_range_matches_lr() {
    for (k, n) in [(2, 5), (2, 6), (3, 6), (3, 7)] {
        let g = grassmannian(k, n).unwrap();
        let parts = box_partitions(k, (n - k) as u32);
        for a in &parts {
            for b in &parts {
                if (a.size() + b.size()) as usize >= n {
                    continue;
                }
                let mut want = Element::zero();
                for (nu, c) in lr_product(a, b, Some(k)) {
                    if nu.fits_box(k, (n - k) as u32) {
                        want.add_term(g.index_of(&nu.label()).unwrap(), &QLaurent::constant(rat(c as i64)));
                    }
                }
                let got = g.product(&Element::basis(g.index_of(&a.label()).unwrap()), &Element::basis(g.index_of(&b.label()).unwrap()));
                assert_eq!(got, want, "Gr({k},{n}): {a} * {b}");
            }
        }
    }
}

#[test]
fn point_periodicity() {
    for k in 2..=4usize {
        for n in (k + 2)..=8 {
            let g = grassmannian(k, n).unwrap();
            let d1 = num_integer::gcd(k, n);
            let pt = Element::basis(g.point().unwrap());
            let pw = g.power(&pt, (n / d1) as u32);
            assert_eq!(g.as_unit_multiple(&pw), Some((rat(1), (k * (n - k) / d1) as i64)), "Gr({k},{n})");
        }
    }
}

#[test]
fn closed_forms_small() {
    for (k, n) in [(2, 4), (2, 5), (2, 6), (3, 6), (2, 7)] {
        let g = grassmannian(k, n).unwrap();
        assert_eq!(grassmannian_delta_closed_form(&g, k, n).unwrap(), *g.delta(), "Gr({k},{n})");
        if k == 2 {
            assert_eq!(grassmannian2_delta(&g, n).unwrap(), *g.delta());
        }
    }
}

#[test]
fn trajectories() {
    let p2 = projective_space(2).unwrap();
    let unit = ProjState::basis(3, 0);
    let t = trajectory(&p2, &unit, 6).unwrap();
    let labels: Vec<String> = t.states.iter().map(|s| s.format(&p2)).collect();
    assert_eq!(labels, vec!["[1]", "[H^2]", "[H]"]);
    assert_eq!(t.cycle, Some((0, 3)));

    let q4 = quadric(4).unwrap();
    let u = ProjState::basis(q4.rank(), 0);
    let t = trajectory(&q4, &u, 40).unwrap();
    assert!(!t.is_closed());
    let limit = parse_state(&q4, "1;s4").unwrap();
    let d: Vec<f64> = t.states.iter().map(|s| chordal(&s.to_f64(), &limit.to_f64())).collect();
    assert!(d[..12].windows(2).all(|w| w[1] < w[0]));
    assert!(d.windows(2).all(|w| w[1] <= w[0]));
    assert!(*d.last().unwrap() < 1e-10);

    for ring in [p2.clone(), q4.clone(), grassmannian(2, 5).unwrap()] {
        let u = ProjState::basis(ring.rank(), 0);
        let base = trajectory(&ring, &u, 12).unwrap();
        let shifted = trajectory(&ring, &base.states[2], 10).unwrap();
        assert_eq!(&base.states[2..2 + shifted.states.len().min(base.states.len() - 2)], &shifted.states[..shifted.states.len().min(base.states.len() - 2)]);
    }
}

#[test]
fn complexities() {
    let p2 = projective_space(2).unwrap();
    let unit = ProjState::basis(3, 0);
    assert_eq!(exact_complexity(&p2, &unit, &ProjState::basis(3, 1), 10).unwrap().k, Some(2));
    assert_eq!(exact_complexity(&p2, &unit, &unit, 10).unwrap().k, Some(0));
    let q4 = quadric(4).unwrap();
    let u = ProjState::basis(q4.rank(), 0);
    let limit = parse_state(&q4, "1;s4").unwrap();
    for kmax in [10, 100] {
        let c = exact_complexity(&q4, &u, &limit, kmax).unwrap();
        assert_eq!(c.k, None);
        assert!(!c.definitive);
    }
    let mut last = 0;
    for eps in [1e-1, 1e-3, 1e-6] {
        let a = approx_complexity(&q4, &u, &limit, eps, 1000).unwrap();
        let k = a.k.unwrap();
        assert!(k >= last);
        last = k;
    }
    assert_eq!(approx_complexity(&q4, &u, &u, 1e-9, 10).unwrap().k, Some(0));
    // P^2 orbit is {1, H^2, H}; H + H^2 stays at a fixed distance from it
    let target = parse_state(&p2, "H;H^2").unwrap();
    let far = approx_complexity(&p2, &unit, &target, 0.5, 100).unwrap();
    assert_eq!(far.k, None);
    assert!((far.distance - (0.5f64).sqrt()).abs() < 1e-12);
}

#[test]
fn finite_sets() {
    for n in 1..=5 {
        let r = projective_space(n).unwrap();
        let f = finite_state_set(&r, &ProjState::basis(n + 1, 0), 100).unwrap();
        assert!(f.closed);
        assert_eq!(f.states.len(), n + 1);
    }
    let cubic = fano_ci(&FciModel::new(&[3], 3).unwrap()).unwrap();
    let f = finite_state_set(&cubic, &ProjState::basis(4, 0), 100).unwrap();
    assert!(f.closed);
    assert_eq!(f.states.len(), 4);
    let q3 = quadric(3).unwrap();
    // x1 = 1 + σ3, x2 = 1 - σ3: a state on one eigenline is fixed
    let f = finite_state_set(&q3, &parse_state(&q3, "1;s3:-1").unwrap(), 10).unwrap();
    assert!(f.closed);
    assert_eq!(f.states.len(), 1);
}

#[test]
fn limit_point_examples() {
    let m = RatMatrix::from_i64(&[&[2, 0], &[0, 1]]);
    let la = limit_points_real(&m, &ints(&[1, 1])).unwrap();
    assert_eq!(la.candidates, vec![ProjState::new(ints(&[1, 0])).unwrap()]);
    let m = RatMatrix::from_i64(&[&[2, 0], &[0, -2]]);
    let la = limit_points_real(&m, &ints(&[1, 1])).unwrap();
    let mut want = vec![ProjState::new(ints(&[1, 1])).unwrap(), ProjState::new(ints(&[1, -1])).unwrap()];
    want.sort();
    assert_eq!(la.candidates, want);
    assert!(la.eventually_periodic);
    assert!(la.s_infinity.is_empty());
    let m = RatMatrix::from_i64(&[&[3, 1], &[0, 3]]);
    let la = limit_points_real(&m, &ints(&[0, 1])).unwrap();
    assert_eq!(la.candidates, vec![ProjState::new(ints(&[1, 0])).unwrap()]);
    assert_eq!(la.depth, 2);
    assert_eq!(la.s_infinity.len(), 1);
}

#[test]
fn s_infinity_examples() {
    for n in 1..=4 {
        let r = projective_space(n).unwrap();
        for spec in ["unit", "H", "1;H:2"] {
            let s = s_infinity(&r, &parse_state(&r, spec).unwrap(), &SInfinityOptions::for_ring(&r)).unwrap();
            assert!(s.points.is_empty(), "P^{n} from {spec}");
        }
    }
    let q4 = quadric(4).unwrap();
    let s = s_infinity(&q4, &ProjState::basis(6, 0), &SInfinityOptions::for_ring(&q4)).unwrap();
    assert_eq!(s.points.len(), 1);
    assert_eq!(s.points[0].format(&q4), "[1 + s4]");
    assert_eq!(s.method, LimitMethod::ExactRational);
    let cubic = fano_ci(&FciModel::new(&[3], 3).unwrap()).unwrap();
    let s = s_infinity(&cubic, &ProjState::basis(4, 0), &SInfinityOptions::for_ring(&cubic)).unwrap();
    assert!(s.points.is_empty());
}

#[test]
fn fci_examples() {
    let model = FciModel::new(&[3], 3).unwrap();
    assert_eq!(model.tau(), 2);
    let rep = fci_report(&model).unwrap();
    assert_eq!(rep.predicted_dim_f, Some(4));
    assert_eq!(rep.finite_states_match, Some(true));
    let mut states = rep.computed_finite_states.clone();
    states.sort();
    assert_eq!(states, vec!["[1]", "[H - 1/36*H^3]", "[H^2]", "[H^3]"]);

    let r1 = FciModel::with_euler_characteristic(&[2, 3], 3, rat(4)).unwrap();
    let rep = fci_report(&r1).unwrap();
    assert_eq!(rep.computed_dim_f, 3);
    assert_eq!(rep.finite_states_match, Some(true));
    assert_eq!(rep.computed_finite_states.len(), 3);

    let geo = fci_report(&FciModel::new(&[2, 3], 3).unwrap()).unwrap();
    let h = geo.hat.as_ref().unwrap();
    assert!(!h.omega_condition && !h.omega_zero);
    assert_eq!(geo.computed_dim_f, 4);
    let omega0 = fci_report(&qh_core::verify::omega_zero_model(&[2, 3], 3)).unwrap();
    let h = omega0.hat.as_ref().unwrap();
    assert!(h.omega_condition && h.omega_zero);
    assert_eq!(omega0.computed_dim_f, 3);
    assert_eq!(omega0.chi, rat(-77));

    assert!(FciModel::new(&[6], 3).is_err());
    assert!(FciModel::new(&[1, 3], 3).is_err());
    assert_eq!(euler_characteristic(&[5], 4), rat(825));
    assert_eq!(FciModel::new(&[2, 3], 3).unwrap().zeta(), rat(640));
}

#[test]
fn ring_ids() {
    assert_eq!(RingId::parse("pn:3").unwrap(), RingId::Projective(3));
    assert_eq!(RingId::parse("gr:2,5").unwrap(), RingId::Grassmannian(2, 5));
    assert_eq!(RingId::parse("quadric:4").unwrap(), RingId::Quadric(4));
    match RingId::parse("fci:2,3;r=3").unwrap() {
        RingId::Fci(m) => assert_eq!((m.m.clone(), m.r, m.chi.clone()), (vec![2, 3], 3, rat(-36))),
        other => panic!("{other:?}"),
    }
    match RingId::parse("fci:4;r=3;chi=9/2").unwrap() {
        RingId::Fci(m) => assert_eq!(m.chi, frac(9, 2)),
        other => panic!("{other:?}"),
    }
    for bad in ["pn", "xx:3", "gr:2", "fci:3", "fci:3;r=x", "pn:-1"] {
        assert!(RingId::parse(bad).is_err(), "{bad}");
    }
    assert!(parse_ring_id("gr:1,4").is_err());
    assert!(parse_ring_id("quadric:2").is_err());
}
