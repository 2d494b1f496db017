//! Cross-module properties: the analytic classifier against the numeric
//! oracle over the generated families, phase-equivalence of powers, and the
//! decay laws for substochastic and sign-mixed matrices.

use num_complex::Complex64;
use std::f64::consts::TAU;

use powermat::{
    classify, classifier::DEFAULT_TOL, fixed_point_residual, is_likewise, iterate,
    modulus_matrix, phase_twist, AnalyticVerdict, ComplexMatrix, FamilyKind, IterationConfig,
    MatrixFamily, NumericVerdict, PhaseTwist,
};

fn twist_angle(seed: u64) -> f64 {
    // low-discrepancy angles over [0, 2*pi), bounded away from pi
    let raw = (seed as f64 * 0.618_033_988_749_894_9).fract() * TAU;
    if (raw - std::f64::consts::PI).abs() < 0.05 {
        raw + 0.1
    } else {
        raw
    }
}

/// Real 2x2 test matrix with nonnegative off-diagonals, unit column modulus
/// sums, and (for odd seeds) negated diagonal entries.
fn real_twistable(seed: u64) -> ComplexMatrix {
    let base = MatrixFamily::new(FamilyKind::PositiveStochastic, 2)
        .unwrap()
        .generate(seed)
        .unwrap();
    let flip0 = seed % 2 == 1;
    let flip1 = seed % 4 >= 2;
    ComplexMatrix::from_fn(2, |i, j| {
        let z = base.get(i, j);
        if (i == j && i == 0 && flip0) || (i == j && i == 1 && flip1) {
            -z
        } else {
            z
        }
    })
    .unwrap()
}

#[test]
fn classifier_and_oracle_agree_on_every_family() {
    let cfg = IterationConfig::default();
    let cases: &[(FamilyKind, usize)] = &[
        (FamilyKind::PhaseTwisted2x2, 2),
        (FamilyKind::ComplexOffDiagonal, 2),
        (FamilyKind::ComplexDiagonal, 2),
        (FamilyKind::NegativeEntry, 2),
        (FamilyKind::AllNegative, 2),
        (FamilyKind::PositiveStochastic, 3),
        (FamilyKind::ComplexOffDiagonal, 3),
        (FamilyKind::ComplexDiagonal, 3),
        (FamilyKind::NegativeEntry, 3),
    ];
    let mut inconclusive = 0u32;
    let mut total = 0u32;
    for &(kind, d) in cases {
        let family = MatrixFamily::new(kind, d).unwrap();
        for seed in 0..100 {
            let m = family.generate(seed).unwrap();
            let analytic = classify(&m, DEFAULT_TOL);
            assert_ne!(analytic.verdict, AnalyticVerdict::OutOfScope);
            let numeric = iterate(&m, &cfg).unwrap();
            total += 1;
            if numeric.verdict == NumericVerdict::Inconclusive {
                inconclusive += 1;
                continue;
            }
            assert_eq!(
                analytic.verdict == AnalyticVerdict::NonzeroLimit,
                numeric.verdict == NumericVerdict::NonzeroLimit,
                "{} d={d} seed={seed}: analytic {:?} vs numeric {:?}",
                kind.name(),
                analytic.verdict,
                numeric.verdict
            );
        }
    }
    assert!(
        inconclusive * 100 <= total,
        "inconclusive rate too high: {inconclusive}/{total}"
    );
}

#[test]
fn twisted_powers_stay_likewise() {
    for seed in 0..50 {
        let a = real_twistable(seed);
        let twist = PhaseTwist::new(twist_angle(seed)).unwrap();
        let twisted = phase_twist(&a, twist).unwrap();
        for n in 1..=50u64 {
            let an = a.power(n).unwrap();
            let tn = twisted.power(n).unwrap();
            assert!(
                is_likewise(&an, &tn, 1e-10).unwrap(),
                "seed={seed} n={n}"
            );
        }
    }
}

#[test]
fn twisted_powers_keep_the_off_diagonal_phase() {
    for seed in 0..50 {
        let a = real_twistable(seed);
        let phi = twist_angle(seed);
        let twisted = phase_twist(&a, PhaseTwist::new(phi).unwrap()).unwrap();
        let rot = Complex64::from_polar(1.0, phi);
        for n in 1..=50u64 {
            let an = a.power(n).unwrap();
            let tn = twisted.power(n).unwrap();
            assert!(
                (tn.get(0, 1) - an.get(0, 1) * rot).norm() <= 1e-10,
                "seed={seed} n={n}"
            );
            assert!(
                (tn.get(1, 0) - an.get(1, 0) * rot.conj()).norm() <= 1e-10,
                "seed={seed} n={n}"
            );
        }
    }
}

#[test]
fn modulus_of_twist_equals_modulus_of_base() {
    for seed in 0..50 {
        let a = real_twistable(seed);
        let twisted = phase_twist(&a, PhaseTwist::new(twist_angle(seed)).unwrap()).unwrap();
        let diff = modulus_matrix(&twisted)
            .max_abs_diff(&modulus_matrix(&a))
            .unwrap();
        assert!(diff <= 1e-15, "seed={seed} diff={diff:e}");
    }
}

#[test]
fn nonzero_limits_are_sound_fixed_points() {
    let cfg = IterationConfig::default();
    for &(kind, d) in &[
        (FamilyKind::PhaseTwisted2x2, 2),
        (FamilyKind::PositiveStochastic, 3),
        (FamilyKind::PositiveStochastic, 5),
    ] {
        let family = MatrixFamily::new(kind, d).unwrap();
        for seed in 0..50 {
            let m = family.generate(seed).unwrap();
            let verdict = iterate(&m, &cfg).unwrap();
            assert_eq!(verdict.verdict, NumericVerdict::NonzeroLimit);
            let limit = verdict.limit.expect("limit accompanies the verdict");
            assert!(limit.max_entry_modulus() > cfg.zero_tol);
            assert!(fixed_point_residual(&limit, &m).unwrap() <= 10.0 * cfg.conv_tol);
        }
    }
}

#[test]
fn limit_moduli_match_the_modulus_matrix_limit() {
    let cfg = IterationConfig::default();
    let family = MatrixFamily::new(FamilyKind::PhaseTwisted2x2, 2).unwrap();
    for seed in 0..50 {
        let m = family.generate(seed).unwrap();
        let twisted_limit = iterate(&m, &cfg).unwrap().limit.unwrap();
        let modulus_limit = iterate(&modulus_matrix(&m), &cfg).unwrap().limit.unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let gap =
                    (twisted_limit.get(i, j).norm() - modulus_limit.get(i, j).norm()).abs();
                assert!(gap <= 10.0 * cfg.conv_tol, "seed={seed} ({i},{j}) gap={gap:e}");
            }
        }
    }
}

#[test]
fn substochastic_matrices_decay_to_zero() {
    let cfg = IterationConfig::default();
    for d in 2..=6 {
        let family = MatrixFamily::new(FamilyKind::Substochastic, d).unwrap();
        for seed in 0..40 {
            let m = family.generate(seed).unwrap();
            let verdict = iterate(&m, &cfg).unwrap();
            assert_eq!(verdict.verdict, NumericVerdict::ZeroLimit, "d={d} seed={seed}");
        }
    }
}

#[test]
fn negated_entries_never_reach_a_nonzero_limit() {
    let cfg = IterationConfig::default();
    for d in 2..=4 {
        let family = MatrixFamily::new(FamilyKind::NegativeEntry, d).unwrap();
        for seed in 0..40 {
            let m = family.generate(seed).unwrap();
            let verdict = iterate(&m, &cfg).unwrap();
            assert!(
                matches!(
                    verdict.verdict,
                    NumericVerdict::ZeroLimit | NumericVerdict::Oscillates
                ),
                "d={d} seed={seed}: {:?}",
                verdict.verdict
            );
        }
    }
}

#[test]
fn stochastic_trajectories_keep_unit_column_sums() {
    let family = MatrixFamily::new(FamilyKind::PositiveStochastic, 4).unwrap();
    for seed in 0..20 {
        let p = family.generate(seed).unwrap();
        let mut x = p.clone();
        for _ in 0..200 {
            x = x.multiply(&p).unwrap();
            for s in x.column_abs_sums() {
                assert!((s - 1.0).abs() <= 1e-9, "seed={seed}");
            }
        }
    }
}

#[test]
fn widening_the_tolerance_never_revokes_acceptance() {
    // Monotonicity holds for tolerances below the entry scale; the grid
    // stays under the 0.01 modulus floor of the generated families.
    let tolerances = [1e-12, 1e-10, 1e-9, 1e-6, 1e-3];
    for &(kind, d) in &[
        (FamilyKind::PhaseTwisted2x2, 2),
        (FamilyKind::ComplexOffDiagonal, 2),
        (FamilyKind::PositiveStochastic, 3),
        (FamilyKind::ComplexDiagonal, 3),
    ] {
        let family = MatrixFamily::new(kind, d).unwrap();
        for seed in 0..30 {
            let m = family.generate(seed).unwrap();
            for (a, &tol) in tolerances.iter().enumerate() {
                if classify(&m, tol).verdict == AnalyticVerdict::NonzeroLimit {
                    for &wider in &tolerances[a..] {
                        assert_eq!(
                            classify(&m, wider).verdict,
                            AnalyticVerdict::NonzeroLimit,
                            "{} seed={seed} tol={tol:e} wider={wider:e}",
                            kind.name()
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn opposite_phase_rescaling_preserves_the_verdict() {
    // Multiplying the (0,1) entry by e^{i phi} and the (1,0) entry by
    // e^{-i phi} keeps the off-diagonal product's argument; as long as
    // neither entry lands on the negative real ray the verdict is invariant.
    let negative_real = |z: Complex64| z.im.abs() <= DEFAULT_TOL && z.re < -DEFAULT_TOL;
    for &kind in &[
        FamilyKind::PhaseTwisted2x2,
        FamilyKind::ComplexOffDiagonal,
        FamilyKind::ComplexDiagonal,
    ] {
        let family = MatrixFamily::new(kind, 2).unwrap();
        for seed in 0..40 {
            let m = family.generate(seed).unwrap();
            let baseline = classify(&m, DEFAULT_TOL).verdict;
            for k in 1..8 {
                let phi = k as f64 * TAU / 9.0;
                let rot = Complex64::from_polar(1.0, phi);
                let rescaled = ComplexMatrix::from_fn(2, |i, j| match (i, j) {
                    (0, 1) => m.get(0, 1) * rot,
                    (1, 0) => m.get(1, 0) * rot.conj(),
                    _ => m.get(i, j),
                })
                .unwrap();
                if negative_real(rescaled.get(0, 1)) || negative_real(rescaled.get(1, 0)) {
                    continue;
                }
                assert_eq!(
                    classify(&rescaled, DEFAULT_TOL).verdict,
                    baseline,
                    "{} seed={seed} k={k}",
                    kind.name()
                );
            }
        }
    }
}
