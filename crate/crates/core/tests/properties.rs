use proptest::prelude::*;
use wigner::hilbert::{canonicalize, gap_distance, transition_probability, ComplexVector, Tolerances};
use wigner::resolving::{build_resolving_set, profile_of, recover_from_profile};
use wigner::{Complex64, Projection64, Vector64};

fn unit_vector(dim: usize) -> impl Strategy<Value = Vector64> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), dim)
        .prop_filter("non-degenerate", |c| c.iter().map(|(a, b)| a * a + b * b).sum::<f64>() > 1e-3)
        .prop_map(|c| {
            let v = ComplexVector::new(c.into_iter().map(|(a, b)| Complex64::new(a, b)).collect()).unwrap();
            v.scale(Complex64::new(1.0 / v.norm(), 0.0))
        })
}

fn projection(dim: usize) -> impl Strategy<Value = Projection64> {
    unit_vector(dim).prop_map(|v| canonicalize(&v, &Tolerances::default()).unwrap())
}

fn phase() -> impl Strategy<Value = Complex64> {
    (0.0f64..std::f64::consts::TAU).prop_map(|t| Complex64::new(t.cos(), t.sin()))
}

proptest! {
    #[test]
    fn canonical_form_ignores_global_phase(v in unit_vector(5), mu in phase()) {
        let tol = Tolerances::default();
        let a = canonicalize(&v, &tol).unwrap();
        let b = canonicalize(&v.scale(mu), &tol).unwrap();
        prop_assert!(gap_distance(&a, &b).unwrap() <= tol.eq);
        prop_assert!(a.rep().max_abs_diff(b.rep()).unwrap() <= 1e-12);
    }

    #[test]
    fn gap_is_a_metric(p in projection(4), q in projection(4), r in projection(4)) {
        let slack = 4.0 * f64::EPSILON;
        let pq = gap_distance(&p, &q).unwrap();
        let qr = gap_distance(&q, &r).unwrap();
        let pr = gap_distance(&p, &r).unwrap();
        prop_assert!(pr <= pq + qr + slack);
        prop_assert!((pq - gap_distance(&q, &p).unwrap()).abs() <= 1e-15);
        prop_assert!(gap_distance(&p, &p).unwrap() <= 1e-15);
    }

    #[test]
    fn transition_probability_and_gap_are_complementary(p in projection(6), q in projection(6)) {
        let tp = transition_probability(&p, &q).unwrap();
        let gap = gap_distance(&p, &q).unwrap();
        prop_assert!((tp + gap * gap - 1.0).abs() <= 1e-7);
        prop_assert_eq!(tp, transition_probability(&q, &p).unwrap());
        prop_assert!((0.0..=1.0).contains(&tp));
    }

    #[test]
    fn profile_round_trip(v in unit_vector(6)) {
        let tol = Tolerances::default();
        prop_assume!(v.coords().iter().all(|z| z.norm() > 1e-3));
        let p = canonicalize(&v, &tol).unwrap();
        let r = build_resolving_set(6).unwrap();
        let back = recover_from_profile(&profile_of(&p, &r).unwrap(), &tol).unwrap();
        prop_assert!(gap_distance(&p, &back).unwrap() <= 1e-9);
    }
}
