use std::collections::BTreeSet;

use wigner::generators::{
    haar_random_witness, partial_conjugation_adversary, random_isometry_witness, shift_witness, symmetry_from_witness,
};
use wigner::hilbert::Tolerances;
use wigner::reconstruct::{extract_frame, parseval_check, reconstruct, run_pipeline, validate_symmetry};
use wigner::sampling::{random_unit_vector, rng_from_seed};
use wigner::{Complex64, Error, Linearity, Witness64};

/// Best unit phase `lambda` with `got ~ lambda * want`, then the max
/// entrywise deviation; independent of the gauge the pipeline picks.
fn phase_aligned_deviation(got: &Witness64, want: &Witness64) -> f64 {
    let (m, n) = (want.codomain_dim(), want.domain_dim());
    let mut overlap = Complex64::new(0.0, 0.0);
    for i in 0..m {
        for j in 0..n {
            overlap += want.matrix()[(i, j)].conj() * got.matrix()[(i, j)];
        }
    }
    let lambda = overlap / overlap.norm();
    let mut worst = 0.0f64;
    for i in 0..m {
        for j in 0..n {
            worst = worst.max((got.matrix()[(i, j)] - lambda * want.matrix()[(i, j)]).norm());
        }
    }
    worst
}

#[test]
fn round_trip_across_shapes_and_tags() {
    let tol = Tolerances::default();
    let mut seed = 100;
    for n in [2, 3, 8, 32] {
        for m in [n, n + 1, n + 5] {
            for tag in [Linearity::Linear, Linearity::Antilinear] {
                seed += 1;
                let truth = random_isometry_witness::<f64>(n, m, tag, seed).unwrap();
                let f = symmetry_from_witness(truth.clone(), seed ^ 0xff);
                let report = reconstruct(&f, 200, seed, &tol).unwrap();
                assert_eq!(report.witness.tag(), tag, "n={n} m={m}");
                assert!(report.max_gap_residual <= tol.verify);
                assert!(report.witness.isometry_defect() <= tol.eq);
                assert!(phase_aligned_deviation(&report.witness, &truth) <= 1e-8);
                if m > n {
                    assert!(report.parseval_residual <= 1e-10);
                }
            }
        }
    }
}

#[test]
fn classification_is_always_right() {
    let tol = Tolerances::default();
    for seed in 0..500u64 {
        let tag = if seed % 2 == 0 { Linearity::Linear } else { Linearity::Antilinear };
        let n = 2 + (seed % 4) as usize;
        let f = symmetry_from_witness(haar_random_witness::<f64>(n, tag, seed).unwrap(), seed);
        let report = reconstruct(&f, 10, seed, &tol).unwrap();
        assert_eq!(report.witness.tag(), tag, "seed {seed}");
    }
}

#[test]
fn phase_scrambling_does_not_move_residuals() {
    let tol = Tolerances::default();
    let truth = random_isometry_witness::<f64>(6, 9, Linearity::Antilinear, 5).unwrap();
    let a = run_pipeline(&symmetry_from_witness(truth.clone(), 1), 300, 4, &tol).unwrap();
    let b = run_pipeline(&symmetry_from_witness(truth, 2), 300, 4, &tol).unwrap();
    assert!((a.max_gap_residual - b.max_gap_residual).abs() <= tol.eq);
    assert!((a.mean_gap_residual - b.mean_gap_residual).abs() <= tol.eq);
    assert!((a.parseval_residual - b.parseval_residual).abs() <= tol.eq);
    assert!(a.witness.matrix().max_abs_diff(b.witness.matrix()).unwrap() <= 1e-10);
}

#[test]
fn adversary_rejected_for_every_boundary() {
    let tol = Tolerances::default();
    for n in 3..=10 {
        for j in 2..n {
            let adv = partial_conjugation_adversary::<f64>(n, j).unwrap();
            let err = reconstruct(&adv, 20, 0, &tol).unwrap_err();
            assert!(matches!(err, Error::Verification { .. }), "n={n} j={j}: {err}");
        }
    }
}

#[test]
fn parseval_holds_for_images_of_induced_maps() {
    let tol = Tolerances::default();
    let f = symmetry_from_witness(random_isometry_witness::<f64>(4, 7, Linearity::Linear, 3).unwrap(), 8);
    let frame = extract_frame(&f, &tol).unwrap();
    let mut rng = rng_from_seed(2);
    for _ in 0..200 {
        let v = random_unit_vector::<f64, _>(4, &mut rng).unwrap();
        let image = wigner::SymmetryMap::query(&f, &wigner::canonicalize(&v, &tol).unwrap()).unwrap();
        assert!(parseval_check(image.rep(), &frame).unwrap() <= tol.eq);
    }
}

#[test]
fn shift_reconstructs_exactly() {
    let tol = Tolerances::default();
    for n in 1..=12 {
        let report = reconstruct(&symmetry_from_witness(shift_witness::<f64>(n), 7), 100, 1, &tol).unwrap();
        assert!(report.max_gap_residual <= 1e-12);
        assert!(report.witness.matrix().max_abs_diff(shift_witness::<f64>(n).matrix()).unwrap() <= 1e-12);
    }
}

#[test]
fn induced_maps_pass_validation() {
    let tol = Tolerances::default();
    for (seed, tag) in [(1u64, Linearity::Linear), (2, Linearity::Antilinear)] {
        let f = symmetry_from_witness(random_isometry_witness::<f64>(5, 6, tag, seed).unwrap(), seed);
        assert!(validate_symmetry(&f, 1000, seed, &tol).unwrap() <= 1e-12);
    }
}

#[test]
fn haar_first_column_moment() {
    let trials = 10_000u64;
    let mean = (0..trials)
        .map(|s| haar_random_witness::<f64>(2, Linearity::Linear, s).unwrap().matrix()[(0, 0)].norm_sqr())
        .sum::<f64>()
        / trials as f64;
    assert!((mean - 0.5).abs() <= 0.02, "mean {mean}");
}

#[test]
fn generators_are_bitwise_deterministic() {
    let a = random_isometry_witness::<f64>(7, 9, Linearity::Linear, 31).unwrap();
    let b = random_isometry_witness::<f64>(7, 9, Linearity::Linear, 31).unwrap();
    let bits = |w: &Witness64| {
        (0..w.codomain_dim())
            .flat_map(|i| w.matrix().row(i).iter().flat_map(|z| [z.re.to_bits(), z.im.to_bits()]).collect::<Vec<_>>())
            .collect::<Vec<_>>()
    };
    assert_eq!(bits(&a), bits(&b));
    let distinct: BTreeSet<_> = (0..20u64)
        .map(|s| haar_random_witness::<f64>(3, Linearity::Linear, s).unwrap().matrix()[(0, 0)].re.to_bits())
        .collect();
    assert_eq!(distinct.len(), 20);
}

#[test]
fn single_precision_pipeline() {
    let tol = Tolerances::<f32>::default();
    for tag in [Linearity::Linear, Linearity::Antilinear] {
        let truth = random_isometry_witness::<f32>(4, 6, tag, 9).unwrap();
        let report = reconstruct(&symmetry_from_witness(truth, 3), 100, 2, &tol).unwrap();
        assert_eq!(report.witness.tag(), tag);
        assert!(report.max_gap_residual <= tol.verify);
    }
}
