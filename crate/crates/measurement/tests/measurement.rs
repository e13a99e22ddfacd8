use num_complex::Complex64;
use qembed_automaton::{ConfigSpace, Distribution};
use qembed_core::{random_density, spin_op, tau, tensor_generator, DensityMatrix, OperatorMatrix};
use qembed_measurement::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn op2(rows: [[Complex64; 2]; 2]) -> OperatorMatrix {
    OperatorMatrix::from_matrix(nalgebra::DMatrix::from_fn(2, 2, |i, j| rows[i][j]))
}

/// random Hermitian operator with eigenvalues exactly +-1
fn random_spin_direction(rng: &mut ChaCha8Rng) -> OperatorMatrix {
    loop {
        let d = [
            rng.gen::<f64>() * 2.0 - 1.0,
            rng.gen::<f64>() * 2.0 - 1.0,
            rng.gen::<f64>() * 2.0 - 1.0,
        ];
        let n = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
        if n < 1e-3 {
            continue;
        }
        let mut m = qembed_core::CMatrix::zeros(2, 2);
        for (k, &dk) in d.iter().enumerate() {
            m += tau(k + 1) * c(dk / n, 0.0);
        }
        return OperatorMatrix::from_matrix(m);
    }
}

fn random_unitary(dim: usize, rng: &mut ChaCha8Rng) -> OperatorMatrix {
    let g = qembed_core::CMatrix::from_fn(dim, dim, |_, _| {
        c(rng.gen::<f64>() * 2.0 - 1.0, rng.gen::<f64>() * 2.0 - 1.0)
    });
    let herm = (&g + g.adjoint()) * c(0.5, 0.0);
    let (evals, evecs) = qembed_core::herm_eigen(&herm);
    let mut phases = qembed_core::CMatrix::zeros(dim, dim);
    for (i, &e) in evals.iter().enumerate() {
        phases[(i, i)] = Complex64::from_polar(1.0, e);
    }
    OperatorMatrix::from_matrix(&evecs * phases * evecs.adjoint())
}

#[test]
fn joint_table_inversion_matches_the_pinned_examples() {
    let anti = joint_from_expectations(0.0, 0.0, -1.0).unwrap();
    assert_eq!(anti.w_pm, 0.5);
    assert_eq!(anti.w_mp, 0.5);
    assert_eq!(anti.w_pp, 0.0);
    assert_eq!(anti.w_mm, 0.0);

    let flat = joint_from_expectations(0.0, 0.0, 0.0).unwrap();
    assert_eq!(flat.entries(), [0.25; 4]);

    let sharp = joint_from_expectations(1.0, 1.0, 1.0).unwrap();
    assert_eq!(sharp.w_pp, 1.0);
    assert_eq!(sharp.w_pm + sharp.w_mp + sharp.w_mm, 0.0);

    assert!(matches!(
        joint_from_expectations(1.0, 1.0, -1.0),
        Err(MeasureError::Infeasible(_))
    ));
}

#[test]
fn joint_table_round_trips_exactly_on_dyadic_entries() {
    // dyadic rationals with denominator 16 survive the round trip exactly
    let table = JointTable::new(5.0 / 16.0, 3.0 / 16.0, 7.0 / 16.0, 1.0 / 16.0).unwrap();
    let back =
        joint_from_expectations(table.mean_a_b(), table.mean_b(), table.correlation()).unwrap();
    assert_eq!(table.entries(), back.entries());

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let mut w: Vec<f64> = (0..4).map(|_| rng.gen::<f64>()).collect();
        let s: f64 = w.iter().sum();
        w.iter_mut().for_each(|v| *v /= s);
        let t = JointTable::new(w[0], w[1], w[2], w[3]).unwrap();
        let b = joint_from_expectations(t.mean_a_b(), t.mean_b(), t.correlation()).unwrap();
        for (x, y) in t.entries().iter().zip(b.entries()) {
            assert!((x - y).abs() < 1e-12);
        }
        assert!(t.conditionals().column_defect() < 1e-12);
    }
}

#[test]
fn conditional_table_flags_empty_branches() {
    let t = JointTable::new(0.7, 0.0, 0.3, 0.0).unwrap();
    let cond = t.conditionals();
    assert_eq!(cond.given_plus, Some([0.7, 0.3]));
    assert_eq!(cond.given_minus, None);
}

#[test]
fn coherent_correlation_reproduces_singlet_anticorrelation_and_repetition() {
    let rho = singlet();
    let id4 = OperatorMatrix::identity(4);
    for k in 1..4 {
        let a = spin_op(2, 0, k);
        let b = spin_op(2, 1, k);
        let corr = coherent_correlation(&rho, &a, &b, &id4).unwrap();
        assert!((corr + 1.0).abs() < 1e-12, "k={k}: {corr}");
    }
    // repeating the same measurement without evolution is fully correlated
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let rho = random_density(1, &mut rng);
        let a = random_spin_direction(&mut rng);
        let corr = coherent_correlation(&rho, &a, &a, &OperatorMatrix::identity(2)).unwrap();
        assert!((corr - 1.0).abs() < 1e-12);
    }
}

#[test]
fn reduce_erases_coherences_and_is_idempotent() {
    // one qubit: off-diagonal elements vanish, diagonal survives
    let rho = DensityMatrix::new(qembed_core::CMatrix::from_row_slice(
        2,
        2,
        &[c(0.7, 0.0), c(0.2, 0.1), c(0.2, -0.1), c(0.3, 0.0)],
    ))
    .unwrap();
    let b = OperatorMatrix::from_matrix(tau(3));
    let r = reduce(&rho, &b).unwrap();
    assert!((r.matrix()[(0, 0)].re - 0.7).abs() < 1e-14);
    assert!((r.matrix()[(1, 1)].re - 0.3).abs() < 1e-14);
    assert!(r.matrix()[(0, 1)].norm() < 1e-14);

    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..30 {
        let rho = random_density(2, &mut rng);
        let b = spin_op(2, 0, 3);
        let r = reduce(&rho, &b).unwrap();
        // idempotent, trace preserving, outcome probabilities unchanged
        let rr = reduce(&r, &b).unwrap();
        assert!(r.as_operator().approx_eq(&rr.as_operator(), 1e-13));
        for (_, p) in spectral_projectors(&b).unwrap() {
            let before = (p.matrix() * rho.matrix()).trace().re;
            let after = (p.matrix() * r.matrix()).trace().re;
            assert!((before - after).abs() < 1e-13);
        }
        // block structure: coherences between the two eigenspaces vanish
        for row in 0..2 {
            for col in 2..4 {
                assert!(r.matrix()[(row, col)].norm() < 1e-13);
            }
        }
        // already-commuting states are fixed points
        let fixed = reduce(&r, &spin_op(2, 0, 3)).unwrap();
        assert!(fixed.as_operator().approx_eq(&r.as_operator(), 1e-13));
    }
}

#[test]
fn decoherent_measure_matches_the_reduced_wave_function_prescription() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..50 {
        let rho = random_density(1, &mut rng);
        let b = random_spin_direction(&mut rng);
        let a = random_spin_direction(&mut rng);
        let u = random_unitary(2, &mut rng);
        let out = decoherent_measure(&rho, &b, &a, &u).unwrap();

        // independent oracle: conditional means from the eigenvectors of B
        let (evals, evecs) = qembed_core::herm_eigen(b.matrix());
        let a_h = heisenberg(&a, &u).unwrap();
        for (i, &lambda) in evals.iter().enumerate() {
            let psi = evecs.column(i);
            let mean = (psi.adjoint() * a_h.matrix() * psi)[(0, 0)].re;
            let col = if lambda > 0.0 {
                out.conditionals.given_plus
            } else {
                out.conditionals.given_minus
            };
            let col = col.expect("generic state populates both branches");
            assert!((col[0] - 0.5 * (1.0 + mean)).abs() < 1e-12);
            assert!((col[1] - 0.5 * (1.0 - mean)).abs() < 1e-12);
        }

        // aggregates agree with the joint table built from the conditionals
        let wb = 0.5 * (1.0 + out.mean_b);
        let cp = out.conditionals.given_plus.unwrap();
        let cm = out.conditionals.given_minus.unwrap();
        let joint = JointTable::new(cp[0] * wb, cm[0] * (1.0 - wb), cp[1] * wb, cm[1] * (1.0 - wb))
            .unwrap();
        assert!((joint.mean_a_b() - out.mean_a_b).abs() < 1e-12);
        assert!((joint.correlation() - out.correlation).abs() < 1e-12);
        assert!((joint.mean_b() - out.mean_b).abs() < 1e-12);
    }
}

#[test]
fn decoherent_repetition_is_deterministic_and_empty_branches_are_absent() {
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    let rho = random_density(1, &mut rng);
    let b = random_spin_direction(&mut rng);
    let out = decoherent_measure(&rho, &b, &b, &OperatorMatrix::identity(2)).unwrap();
    let cp = out.conditionals.given_plus.unwrap();
    let cm = out.conditionals.given_minus.unwrap();
    assert!((cp[0] - 1.0).abs() < 1e-12 && cp[1].abs() < 1e-12);
    assert!(cm[0].abs() < 1e-12 && (cm[1] - 1.0).abs() < 1e-12);
    assert!((out.correlation - 1.0).abs() < 1e-12);

    // with an exactly involutory operator the repetition rule is exact
    let t3 = OperatorMatrix::from_matrix(tau(3));
    let out = decoherent_measure(&rho, &t3, &t3, &OperatorMatrix::identity(2)).unwrap();
    assert_eq!(out.conditionals.given_plus, Some([1.0, 0.0]));
    assert_eq!(out.conditionals.given_minus, Some([0.0, 1.0]));

    // spin-up state never populates the minus branch of a 3-axis measurement
    let up = DensityMatrix::from_pure(&[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
    let out = decoherent_measure(
        &up,
        &OperatorMatrix::from_matrix(tau(3)),
        &OperatorMatrix::from_matrix(tau(1)),
        &OperatorMatrix::identity(2),
    )
    .unwrap();
    assert!(out.conditionals.given_plus.is_some());
    assert!(out.conditionals.given_minus.is_none());

    // a non-involutory operator is rejected as the measured observable
    let bad = op2([[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(0.5, 0.0)]]);
    assert!(matches!(
        decoherent_measure(&rho, &bad, &b, &OperatorMatrix::identity(2)),
        Err(MeasureError::NotTwoLevel(_))
    ));
}

#[test]
fn coherent_minus_decoherent_difference_traces_the_erased_coherences() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..50 {
        let rho = random_density(2, &mut rng);
        let b = spin_op(2, 0, 3);
        let a = random_spin_direction(&mut rng).kron(&OperatorMatrix::identity(2));
        let u = random_unitary(4, &mut rng);
        let coherent = coherent_mean(&rho, &a, &u).unwrap();
        let deco = decoherent_measure(&rho, &b, &a, &u).unwrap();
        let rho_r = reduce(&rho, &b).unwrap();
        let diff_op = rho.as_operator().sub(&rho_r.as_operator());
        let expected = (heisenberg(&a, &u).unwrap().matrix() * diff_op.matrix())
            .trace()
            .re;
        assert!((coherent - deco.mean_a_b - expected).abs() < 1e-12);
    }
    // commuting case: both prescriptions coincide
    let rho = singlet();
    let b = spin_op(2, 0, 3);
    let a = spin_op(2, 1, 3);
    let id = OperatorMatrix::identity(4);
    let coherent = coherent_mean(&rho, &a, &id).unwrap();
    let deco = decoherent_measure(&rho, &b, &a, &id).unwrap();
    assert!((coherent - deco.mean_a_b).abs() < 1e-14);
    let corr = coherent_correlation(&rho, &a, &b, &id).unwrap();
    assert!((corr - deco.correlation).abs() < 1e-14);
}

#[test]
fn classical_chsh_never_exceeds_two() {
    let mut rng = ChaCha8Rng::seed_from_u64(47);
    for _ in 0..2000 {
        let space = ConfigSpace::new(6);
        let mut p: Vec<f64> = (0..64).map(|_| rng.gen::<f64>()).collect();
        let s: f64 = p.iter().sum();
        p.iter_mut().for_each(|v| *v /= s);
        let dist = Distribution::new(space, p).unwrap();
        let a = rng.gen_range(0..3);
        let a2 = rng.gen_range(0..3);
        let b = rng.gen_range(0..3);
        let b2 = rng.gen_range(0..3);
        let rep = classical_chsh(&dist, a, a2, b, b2).unwrap();
        assert!(rep.satisfied, "value {}", rep.value);
    }
    // sharp anticorrelated distribution saturates the bound
    let space = ConfigSpace::new(6);
    let mut p = vec![0.0; 64];
    // spins (+,+,+) for particle 1 and (-,-,-) for particle 2
    p[0b111000] = 1.0;
    let dist = Distribution::new(space, p).unwrap();
    let rep = classical_chsh(&dist, 0, 1, 0, 1).unwrap();
    assert!((rep.value - 2.0).abs() < 1e-12);
    assert!(matches!(
        classical_chsh(&dist, 3, 0, 0, 0),
        Err(MeasureError::BadSpinIndex(3))
    ));
}

#[test]
fn quantum_chsh_bounds_hold_for_the_singlet_and_random_states() {
    let rho = singlet();
    let rep = cartesian_quantum(&rho).unwrap();
    assert!((rep.value - 2.0).abs() < 1e-12, "singlet max {}", rep.value);
    assert!(rep.satisfied);

    let mut rng = ChaCha8Rng::seed_from_u64(53);
    for _ in 0..100 {
        let rho = random_density(2, &mut rng);
        assert!(cartesian_quantum(&rho).unwrap().satisfied);
        let pb = pairwise_bound(&rho).unwrap();
        assert!(pb.satisfied, "violation {}", pb.max_violation);
    }
}

#[test]
fn optimal_directions_reach_two_sqrt_two_on_the_singlet() {
    let rho = singlet();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    // A along 3, A' along 1; B and B' on the diagonals between them
    let rep = directions_chsh(
        &rho,
        &[0.0, 0.0, 1.0],
        &[1.0, 0.0, 0.0],
        &[-s, 0.0, -s],
        &[s, 0.0, -s],
    )
    .unwrap();
    assert!(
        (rep.value - 2.0 * std::f64::consts::SQRT_2).abs() < 1e-9,
        "value {}",
        rep.value
    );
    assert!(rep.satisfied);
    assert!(matches!(
        ChshMode::from_name("nope"),
        Err(MeasureError::UnknownMode(_))
    ));
    assert_eq!(
        ChshMode::from_name("pairwise_bound").unwrap(),
        ChshMode::PairwiseBound
    );
}

#[test]
fn kochen_specker_chains_clash_between_the_two_sign_assignments() {
    let report = kochen_specker_demo();
    assert!(report.chains_commute, "max {}", report.max_commutator);
    assert!(report.product_identity);
    assert!(report.anti_identity);
    assert!(report.shared_members);
    assert_ne!(report.sign_via_chains, report.sign_via_diagonal);
    assert!(report.contradiction);

    let all = chains();
    assert_eq!(all.len(), 5);
    for c in &all {
        assert_eq!(c.ops.len(), 7);
        for op in &c.ops {
            // two-level: Hermitian involutions
            assert!(op.is_hermitian(1e-14));
            assert!(op.mul(op).approx_eq(&OperatorMatrix::identity(8), 1e-14));
        }
    }
    // the triple product is minus the all-3 diagonal operator
    let q123 = &all[3].ops[6];
    let diag = tensor_generator(&[3, 3, 3]);
    assert!(q123.add(&diag).max_norm() < 1e-14);
}

#[test]
fn stern_gerlach_contrasts_coherent_and_decoherent_sequences() {
    let coh = stern_gerlach(true).unwrap();
    assert_eq!(coh.probabilities.len(), 2);
    assert!((coh.probabilities["+++"] - 0.5).abs() < 1e-12);
    assert!((coh.probabilities["+-+"] - 0.5).abs() < 1e-12);
    assert!((coh.expectations["S_z(0)"] - 1.0).abs() < 1e-12);
    assert!(coh.expectations["S_x(pi/w)"].abs() < 1e-12);
    assert!((coh.expectations["S_z(2pi/w)"] - 1.0).abs() < 1e-12);

    let deco = stern_gerlach(false).unwrap();
    assert_eq!(deco.probabilities.len(), 4);
    for key in ["+++", "++-", "+-+", "+--"] {
        assert!(
            (deco.probabilities[key] - 0.25).abs() < 1e-12,
            "missing {key}"
        );
    }
    assert!((deco.expectations["S_z(0)"] - 1.0).abs() < 1e-12);
    assert!(deco.expectations["S_x(pi/w)"].abs() < 1e-12);
    assert!(deco.expectations["S_z(2pi/w)"].abs() < 1e-12);

    let json = deco.to_json();
    assert!(json.contains("\"mode\": \"decoherent\""));
    assert!(json.contains("+-+"));
}
