use std::sync::OnceLock;

use proptest::prelude::*;
use qh_core::complexity::*;
use qh_core::frobenius::{Element, FrobeniusRing};
use qh_core::linalg::rational::{self, frac, rat};
use qh_core::linalg::*;
use qh_core::partition::*;
use qh_core::rings::*;

fn small_rat() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| frac(n, d))
}

fn laurent() -> impl Strategy<Value = QLaurent> {
    prop::collection::vec((-3i64..=3, small_rat()), 0..4).prop_map(|terms| {
        let mut x = QLaurent::zero();
        for (e, c) in terms {
            x.add_term(e, &c);
        }
        x
    })
}

fn partition(rows: usize, cols: u32) -> impl Strategy<Value = Partition> {
    prop::collection::vec(0..=cols, rows).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).unwrap()
    })
}

fn state(dim: usize) -> impl Strategy<Value = ProjState> {
    prop::collection::vec(-6i64..=6, dim)
        .prop_filter("nonzero", |v| v.iter().any(|&x| x != 0))
        .prop_map(|v| ProjState::new(v.into_iter().map(rat).collect()).unwrap())
}

fn gr25() -> &'static FrobeniusRing {
    static R: OnceLock<FrobeniusRing> = OnceLock::new();
    R.get_or_init(|| grassmannian(2, 5).unwrap())
}

fn cubic() -> &'static FrobeniusRing {
    static R: OnceLock<FrobeniusRing> = OnceLock::new();
    R.get_or_init(|| fano_ci(&FciModel::new(&[3], 3).unwrap()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_text_round_trip(x in small_rat()) {
        prop_assert_eq!(rational::parse(&rational::to_string(&x)).unwrap(), x);
    }

    #[test]
    fn laurent_ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        let mul = |x: &QLaurent, y: &QLaurent| {
            let mut out = QLaurent::zero();
            for (e, v) in y.terms() {
                out.add_scaled(x, v, e);
            }
            out
        };
        let add = |x: &QLaurent, y: &QLaurent| {
            let mut out = x.clone();
            out.add_scaled(y, &rat(1), 0);
            out
        };
        prop_assert_eq!(mul(&a, &b), mul(&b, &a));
        prop_assert_eq!(mul(&mul(&a, &b), &c), mul(&a, &mul(&b, &c)));
        prop_assert_eq!(mul(&a, &add(&b, &c)), add(&mul(&a, &b), &mul(&a, &c)));
        let q = frac(3, 2);
        prop_assert_eq!(mul(&a, &b).eval(&q), a.eval(&q) * b.eval(&q));
        prop_assert_eq!(QLaurent::from_json_map(&a.to_json_map()).unwrap(), a);
    }

    #[test]
    fn lr_symmetric(l in partition(3, 3), m in partition(3, 3)) {
        let a = lr_product(&l, &m, None);
        let b = lr_product(&m, &l, None);
        prop_assert_eq!(&a, &b);
        let total: u32 = l.size() + m.size();
        for (nu, c) in &a {
            prop_assert_eq!(nu.size(), total);
            prop_assert_eq!(lr_coefficient(&l, &m, nu), *c);
            prop_assert_eq!(lr_coefficient(&l.conjugate(), &m.conjugate(), &nu.conjugate()), *c);
        }
    }

    #[test]
    fn proj_state_canonical(v in prop::collection::vec(-6i64..=6, 4), s in 1i64..=7, neg in any::<bool>()) {
        prop_assume!(v.iter().any(|&x| x != 0));
        let base: Vec<Rational> = v.iter().map(|&x| rat(x)).collect();
        let scale = if neg { rat(-s) } else { frac(1, s) };
        let scaled: Vec<Rational> = base.iter().map(|x| x * &scale).collect();
        let a = ProjState::new(base).unwrap();
        prop_assert_eq!(&a, &ProjState::new(scaled).unwrap());
        let lead = a.coords().iter().find(|x| *x != &rat(0)).unwrap();
        prop_assert_eq!(lead, &rat(1));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn trajectory_matches_delta_powers(z in state(10)) {
        let ring = gr25();
        let t = trajectory(ring, &z, 6).unwrap();
        let zel = ring.element_from_coords(z.coords());
        for (k, s) in t.states.iter().enumerate() {
            let x = ring.product(&ring.power(ring.delta(), k as u32), &zel);
            prop_assert_eq!(s, &ProjState::from_element(ring, &x).unwrap());
        }
    }

    #[test]
    fn approx_complexity_monotone_in_eps(z in state(10), w in state(10)) {
        let ring = gr25();
        let mut last: Option<usize> = Some(0);
        for eps in [1.0, 0.3, 0.1, 0.03, 0.01] {
            let a = approx_complexity(ring, &z, &w, eps, 60).unwrap();
            match (last, a.k) {
                (Some(p), Some(k)) => prop_assert!(k >= p),
                (None, Some(_)) => prop_assert!(false, "smaller eps reached sooner"),
                _ => {}
            }
            last = a.k;
        }
    }

    #[test]
    fn s_infinity_disjoint_from_orbit(z in state(10)) {
        let ring = gr25();
        let s = s_infinity(ring, &z, &SInfinityOptions::for_ring(ring)).unwrap();
        let fin = finite_state_set(ring, &z, 100).unwrap();
        for p in &s.points {
            if let LimitPoint::Exact(p) = p {
                prop_assert!(!fin.states.contains(p));
            }
        }
        let theta = ring.theta_order(20).unwrap().unwrap().t as usize;
        prop_assert!(s.points.len() <= theta);
    }

    #[test]
    fn fci_s_infinity_at_most_two(z in state(4)) {
        let ring = cubic();
        let s = s_infinity(ring, &z, &SInfinityOptions::for_ring(ring)).unwrap();
        prop_assert!(s.points.len() <= 2, "{} points", s.points.len());
    }

    #[test]
    fn products_commute_and_respect_pairing(i in 0usize..10, j in 0usize..10, k in 0usize..10) {
        let ring = gr25();
        let (a, b, c) = (Element::basis(i), Element::basis(j), Element::basis(k));
        prop_assert_eq!(ring.product(&a, &b), ring.product(&b, &a));
        prop_assert_eq!(ring.pair(&ring.product(&a, &b), &c), ring.pair(&a, &ring.product(&b, &c)));
    }
}

#[test]
fn export_import_round_trip() {
    for id in ["pn:3", "quadric:4", "gr:2,5", "fci:2,3;r=3"] {
        let ring = parse_ring_id(id).unwrap();
        let json = serde_json::to_string(&ring.export()).unwrap();
        let back = FrobeniusRing::import(&serde_json::from_str(&json).unwrap()).unwrap();
        assert_eq!(back.export(), ring.export(), "{id}");
        assert_eq!(back.delta(), ring.delta(), "{id}");
    }
}
