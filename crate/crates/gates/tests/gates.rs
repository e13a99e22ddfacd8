use nalgebra::DMatrix;
use num_complex::Complex64;
use qembed_automaton::{evolve_distribution, ConfigSpace, Distribution, SpinTransform, StepOperator};
use qembed_bitquantum::BitQuantumMap;
use qembed_core::{
    random_density, spin_op, tensor_generator, BlochVector, DensityMatrix, OperatorMatrix,
};
use qembed_gates::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn idx(mu: usize, nu: usize) -> usize {
    4 * mu + nu - 1
}

#[test]
fn catalog_is_unitary_and_satisfies_the_group_identities() {
    for name in FIXED_NAMES {
        let g = gate(name).unwrap();
        assert!(
            g.unitary.unitarity_defect() < 1e-14,
            "{name} not unitary"
        );
    }
    let u = |n: &str| gate(n).unwrap().unitary;
    assert!(u("U31").mul(&u("U31")).approx_eq(&u("U2"), 1e-14));
    assert!(u("U12").mul(&u("U12")).approx_eq(&u("U3"), 1e-14));
    assert!(u("U23").mul(&u("U23")).approx_eq(&u("U1"), 1e-14));
    // U23 = U12 U31 U21 with U21 the inverse quarter turn
    let u21 = u("U12").dagger();
    assert!(u("U12").mul(&u("U31")).mul(&u21).approx_eq(&u("U23"), 1e-14));
    // Hadamard as a product of rotations
    let prod = u("U31").mul(&u("U1")).scale(Complex64::new(0.0, -1.0));
    assert!(prod.approx_eq(&u("UH"), 1e-14));
    assert!(gate("U99").is_err());
    // phase-family fourth power is a global phase a*b*c*d
    let p = gate("PHASE(1,i,1,i)").unwrap().unitary;
    let p4 = p.mul(&p).mul(&p).mul(&p);
    // (U^dagger)^4 = abcd, here abcd = -1, so U^4 = -1
    assert!(p4.approx_eq(&OperatorMatrix::identity(4).scale(-qembed_core::I1), 1e-14));
}

#[test]
fn one_qubit_bloch_actions_match_the_closed_forms() {
    let m31 = bloch_action(&gate("U31").unwrap().unitary).unwrap();
    // (rho1, rho2, rho3) -> (-rho3, rho2, rho1)
    let before = [0.3, -0.5, 0.7];
    let after: Vec<f64> = (0..3)
        .map(|z| (0..3).map(|w| m31[z][w] * before[w]).sum())
        .collect();
    assert!((after[0] + 0.7).abs() < 1e-14);
    assert!((after[1] + 0.5).abs() < 1e-14);
    assert!((after[2] - 0.3).abs() < 1e-14);

    let mh = bloch_action(&gate("UH").unwrap().unitary).unwrap();
    let after: Vec<f64> = (0..3)
        .map(|z| (0..3).map(|w| mh[z][w] * before[w]).sum())
        .collect();
    assert!((after[0] - 0.7).abs() < 1e-14 && (after[2] - 0.3).abs() < 1e-14);
    assert!((after[1] - 0.5).abs() < 1e-14);

    // rotation gate: pi/4 turn about axis 3
    let mt = bloch_action(&gate("UT").unwrap().unitary).unwrap();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let after: Vec<f64> = (0..3)
        .map(|z| (0..3).map(|w| mt[z][w] * before[w]).sum())
        .collect();
    assert!((after[0] - s * (before[0] - before[1])).abs() < 1e-14);
    assert!((after[1] - s * (before[0] + before[1])).abs() < 1e-14);
    assert!((after[2] - before[2]).abs() < 1e-14);
}

#[test]
fn discrete_one_qubit_gates_realize_as_the_named_updatings() {
    for (gate_name, transform) in [
        ("U12", "T12"),
        ("U23", "T23"),
        ("U31", "T31"),
        ("U1", "T1"),
        ("U2", "T2"),
        ("U3", "T3"),
        ("UH", "H"),
    ] {
        match automaton_realization(gate_name, "one_qubit").unwrap() {
            Some(Realization::Spins(t)) => {
                assert_eq!(t, SpinTransform::named(transform).unwrap(), "{gate_name}");
            }
            other => panic!("{gate_name}: expected spin realization, got {other:?}"),
        }
    }
    assert!(automaton_realization("UT", "one_qubit").unwrap().is_none());
    assert!(automaton_realization("CNOT", "one_qubit").is_err());
    assert!(automaton_realization("UH", "no_such_map").is_err());
}

#[test]
fn cnot_on_the_average_spin_map_is_the_known_exchange_table() {
    let re = automaton_realization("CNOT", "average_spin_q2").unwrap();
    let sp = match re {
        Some(Realization::Averages(sp)) => sp,
        other => panic!("expected averages table, got {other:?}"),
    };
    let mut perm: Vec<usize> = (0..15).collect();
    let mut sign = vec![1.0f64; 15];
    let mut swap = |a: (usize, usize), b: (usize, usize), s: f64| {
        perm[idx(a.0, a.1)] = idx(b.0, b.1);
        perm[idx(b.0, b.1)] = idx(a.0, a.1);
        sign[idx(a.0, a.1)] = s;
        sign[idx(b.0, b.1)] = s;
    };
    swap((1, 0), (1, 1), 1.0);
    swap((2, 0), (2, 1), 1.0);
    swap((1, 3), (2, 2), -1.0);
    swap((0, 2), (3, 2), 1.0);
    swap((0, 3), (3, 3), 1.0);
    swap((2, 3), (1, 2), 1.0);
    assert_eq!(sp, SignedPermutation { perm, sign });
}

#[test]
fn d3_on_the_average_spin_map_matches_its_exchange_table() {
    let sp = match automaton_realization("D3", "average_spin_q2").unwrap() {
        Some(Realization::Averages(sp)) => sp,
        other => panic!("expected averages table, got {other:?}"),
    };
    let mut perm: Vec<usize> = (0..15).collect();
    let mut sign = vec![1.0f64; 15];
    let mut swap = |a: (usize, usize), b: (usize, usize), s: f64| {
        perm[idx(a.0, a.1)] = idx(b.0, b.1);
        perm[idx(b.0, b.1)] = idx(a.0, a.1);
        sign[idx(a.0, a.1)] = s;
        sign[idx(b.0, b.1)] = s;
    };
    swap((1, 0), (1, 3), -1.0);
    swap((2, 0), (2, 3), -1.0);
    swap((0, 1), (3, 1), 1.0);
    swap((0, 2), (3, 2), 1.0);
    swap((1, 1), (2, 2), -1.0);
    swap((1, 2), (2, 1), 1.0);
    assert_eq!(sp, SignedPermutation { perm, sign });
}

#[test]
fn correlation_map_realizability_splits_the_catalog() {
    // swap is a block exchange of the two spin triples
    match automaton_realization("SWAP", "correlation_q2").unwrap() {
        Some(Realization::Spins(t)) => assert_eq!(t, SpinTransform::block_swap(3)),
        other => panic!("expected swap realization, got {other:?}"),
    }
    // pi-rotations about the 3-axes act per particle
    assert!(automaton_realization("Z1", "correlation_q2").unwrap().is_some());
    assert!(automaton_realization("Z2", "correlation_q2").unwrap().is_some());
    assert!(automaton_realization("ZZ", "correlation_q2").unwrap().is_some());
    assert!(automaton_realization("UH1", "correlation_q2").unwrap().is_some());
    // no unique jump reproduces these for six spins
    assert!(automaton_realization("CNOT", "correlation_q2").unwrap().is_none());
    assert!(automaton_realization("D3", "correlation_q2").unwrap().is_none());
    assert!(automaton_realization("UT2", "correlation_q2").unwrap().is_none());
    assert!(automaton_realization("PHASE(1,1,1,-1)", "correlation_q2")
        .unwrap()
        .is_none());
}

fn random_dist(space: ConfigSpace, rng: &mut ChaCha8Rng) -> Distribution {
    let w: Vec<f64> = (0..space.size()).map(|_| rng.gen::<f64>()).collect();
    let s: f64 = w.iter().sum();
    Distribution::new(space, w.iter().map(|x| x / s).collect()).unwrap()
}

#[test]
fn realized_gates_commute_with_the_maps() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let cases: &[(&str, &str)] = &[
        ("U12", "one_qubit"),
        ("U31", "one_qubit"),
        ("UH", "one_qubit"),
        ("SWAP", "correlation_q2"),
        ("Z1", "correlation_q2"),
        ("UH1", "correlation_q2"),
        ("PHASE(1,1,1,1)", "correlation_q2"),
    ];
    for (gate_name, map_name) in cases {
        let map = match *map_name {
            "one_qubit" => BitQuantumMap::one_qubit(),
            _ => BitQuantumMap::correlation(2).unwrap(),
        };
        let t = match automaton_realization(gate_name, map_name).unwrap() {
            Some(Realization::Spins(t)) => t,
            other => panic!("{gate_name}: no spin realization ({other:?})"),
        };
        let step = StepOperator::from_spin_transform(map.space().unwrap(), &t).unwrap();
        let u = gate(gate_name).unwrap().unitary;
        for _ in 0..25 {
            let p = random_dist(map.space().unwrap(), &mut rng);
            let evolved = map.apply(&evolve_distribution(&p, &step).unwrap()).unwrap();
            let conjugated = map.apply(&p).unwrap().apply_unitary(&u).unwrap();
            assert!(
                evolved
                    .as_operator()
                    .sub(&conjugated.as_operator())
                    .max_norm()
                    < 1e-12,
                "{gate_name} on {map_name}"
            );
        }
    }
    // averages tables against direct conjugation
    for gate_name in ["CNOT", "D3", "SWAP", "PHASE(1,1,1,-1)", "Z1"] {
        let sp = match automaton_realization(gate_name, "average_spin_q2").unwrap() {
            Some(Realization::Averages(sp)) => sp,
            other => panic!("{gate_name}: expected averages table ({other:?})"),
        };
        let u = gate(gate_name).unwrap().unitary;
        for _ in 0..25 {
            let rho = random_density(2, &mut rng);
            let moved = sp.apply(&rho.bloch().0);
            let direct = rho.apply_unitary(&u).unwrap().bloch().0;
            let err = moved
                .iter()
                .zip(&direct)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0f64, f64::max);
            assert!(err < 1e-12, "{gate_name}: table error {err}");
        }
    }
}

fn trace_distance(a: &DensityMatrix, b: &DensityMatrix) -> f64 {
    let diff = a.as_operator().sub(&b.as_operator());
    let (evals, _) = qembed_core::herm_eigen(diff.matrix());
    evals.iter().map(|l| l.abs()).sum::<f64>() / 2.0
}

#[test]
fn sequences_fold_left_to_right() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let rho = random_density(1, &mut rng);
    let twice = apply_sequence(&rho, &["U31", "U31"]).unwrap();
    let once = apply_sequence(&rho, &["U2"]).unwrap();
    assert!(twice.as_operator().approx_eq(&once.as_operator(), 1e-14));
    let same = apply_sequence(&rho, &[]).unwrap();
    assert!(same.as_operator().approx_eq(&rho.as_operator(), 1e-15));
    assert!(apply_sequence(&rho, &["CNOT"]).is_err());

    // alternating two-qubit sequence vs the analytic matrix power
    let rho2 = random_density(2, &mut rng);
    let n = 8;
    let names: Vec<&str> = std::iter::repeat(["UHR", "CNOT"]).take(n).flatten().collect();
    let stepped = apply_sequence(&rho2, &names).unwrap();
    let u = gate("CNOT").unwrap().unitary.mul(&gate("UHR").unwrap().unitary);
    let mut power = OperatorMatrix::identity(4);
    for _ in 0..n {
        power = u.mul(&power);
    }
    let direct = rho2.apply_unitary(&power).unwrap();
    assert!(trace_distance(&stepped, &direct) < 1e-9);
}

#[test]
fn hamiltonian_extraction_round_trips() {
    let tau2 = tensor_generator(&[2]);
    let eh = effective_hamiltonian(&gate("U31").unwrap().unitary, 1.0).unwrap();
    let expected = tau2.scale(Complex64::new(-std::f64::consts::FRAC_PI_4, 0.0));
    assert!(eh.h.approx_eq(&expected, 1e-12));
    assert!(!eh.branch_ambiguous);
    assert!(eh.j.max_norm() == 0.0);

    for name in FIXED_NAMES {
        let u = gate(name).unwrap().unitary;
        let eh = effective_hamiltonian(&u, 0.5).unwrap();
        let back = evolution_from_hamiltonian(&eh.h, 0.5);
        assert!(
            back.approx_eq(&eh.normalized_u, 1e-12),
            "{name} round trip failed"
        );
        assert_eq!(eh.j.max_norm(), 0.0);
    }

    // continuous rotation: U = exp(i omega tau2 t / 2) has H = -omega tau2 / 2
    let omega = 0.8;
    let t = 0.3;
    let h_target = tau2.scale(Complex64::new(-omega / 2.0, 0.0));
    let u = evolution_from_hamiltonian(&h_target, t);
    let eh = effective_hamiltonian(&u, t).unwrap();
    assert!(eh.h.approx_eq(&h_target, 1e-12));
    // hbar approximates h to second order in the step
    let eps = 1e-4;
    let u_small = evolution_from_hamiltonian(&h_target, eps);
    let eh_small = effective_hamiltonian(&u_small, eps).unwrap();
    assert!(eh_small.hbar.sub(&h_target).max_norm() < 1e-8);

    // identity and branch flag
    let eh1 = effective_hamiltonian(&OperatorMatrix::identity(2), 1.0).unwrap();
    assert!(eh1.h.max_norm() < 1e-14 && eh1.j.max_norm() == 0.0);
    let minus = OperatorMatrix::identity(2).scale(-qembed_core::I1);
    assert!(effective_hamiltonian(&minus, 1.0).unwrap().branch_ambiguous);
    assert!(effective_hamiltonian(&OperatorMatrix::identity(2), 0.0).is_err());
}

#[test]
fn quantumness_gate_always_produces_a_state() {
    // embedding of the complex identity gives the maximally mixed state
    let a = real_embedding(OperatorMatrix::identity(4).matrix());
    let rho = quantumness_gate(&a).unwrap();
    assert!(rho
        .as_operator()
        .approx_eq(&DensityMatrix::maximally_mixed(2).as_operator(), 1e-14));
    // a unitary C also lands on the maximally mixed state
    let a = real_embedding(gate("CNOT").unwrap().unitary.matrix());
    let rho = quantumness_gate(&a).unwrap();
    assert!(rho
        .as_operator()
        .approx_eq(&DensityMatrix::maximally_mixed(2).as_operator(), 1e-14));

    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..300 {
        let a = DMatrix::from_fn(8, 8, |_, _| rng.gen::<f64>() * 2.0 - 1.0);
        let rho = quantumness_gate(&a).unwrap();
        assert!(rho.check_positive().positive);
    }
    // anti-compatible input projects to zero
    let mut bad = DMatrix::zeros(8, 8);
    for i in 0..4 {
        bad[(i, i)] = 1.0;
        bad[(i + 4, i + 4)] = -1.0;
    }
    assert!(matches!(quantumness_gate(&bad), Err(GateError::Degenerate)));
    assert!(quantumness_gate(&DMatrix::zeros(4, 4)).is_err());

    // embedding round trip and product isomorphism
    let c1 = gate("U12").unwrap().unitary.kron(&gate("UT").unwrap().unitary);
    let c2 = gate("UHR").unwrap().unitary;
    let back = complex_from_embedding(&real_embedding(c1.matrix()));
    assert!((&back - c1.matrix()).map(|v| v.norm()).max() < 1e-15);
    let real_prod = real_embedding(c1.matrix()) * real_embedding(c2.matrix());
    let complex_prod = real_embedding(c1.mul(&c2).matrix());
    assert!((real_prod - complex_prod).abs().max() < 1e-14);
}

#[test]
fn icosahedron_constants_directions_and_constraints() {
    let a = icosahedron_a();
    let b = icosahedron_b();
    assert!((a * a + b * b - 1.0).abs() < 1e-15);
    assert!((b - 2.0 * a / (1.0 + 5.0f64.sqrt())).abs() < 1e-15);
    let dirs = icosahedron_directions();
    let golden_dot = 1.0 / 5.0f64.sqrt();
    for (i, d1) in dirs.iter().enumerate() {
        let norm: f64 = d1.iter().map(|x| x * x).sum();
        assert!((norm - 1.0).abs() < 1e-14);
        for d2 in dirs.iter().skip(i + 1) {
            let dot: f64 = d1.iter().zip(d2).map(|(x, y)| x * y).sum();
            assert!(
                (dot.abs() - golden_dot).abs() < 1e-14,
                "corner pair angle off: {dot}"
            );
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..50 {
        let rho = random_density(1, &mut rng);
        let bl = rho.bloch();
        let spins = icosahedron_spins(&[bl.0[0], bl.0[1], bl.0[2]]);
        assert!(icosahedron_constraint_defect(&spins) < 1e-12);
        // each spin average is the quantum expectation in its direction
        for (s, d) in spins.iter().zip(dirs.iter()) {
            let op = tensor_generator(&[1]).scale(Complex64::new(d[0], 0.0))
                .add(&tensor_generator(&[2]).scale(Complex64::new(d[1], 0.0)))
                .add(&tensor_generator(&[3]).scale(Complex64::new(d[2], 0.0)));
            assert!((s - rho.expectation(&op).unwrap()).abs() < 1e-13);
        }
    }
}

fn conj(u: &OperatorMatrix, a: &OperatorMatrix) -> OperatorMatrix {
    u.dagger().mul(a).mul(u)
}

#[test]
fn phase_assignments_transmute_operators_as_listed() {
    let s = |p: usize, k: usize| spin_op(2, p, k);
    let l = |mu: usize, nu: usize| tensor_generator(&[mu, nu]);

    // a = b = c = d = 1: spins swap between the particles
    let u = gate("PHASE(1,1,1,1)").unwrap().unitary;
    assert!(conj(&u, &s(0, 3)).approx_eq(&s(1, 3), 1e-14));
    assert!(conj(&u, &s(1, 3)).approx_eq(&s(0, 3).scale(-qembed_core::I1), 1e-14));
    assert!(conj(&u, &s(0, 1)).approx_eq(&s(1, 1), 1e-14));
    assert!(conj(&u, &s(0, 2)).approx_eq(&s(1, 2), 1e-14));
    assert!(conj(&u, &s(1, 1)).approx_eq(&s(0, 1), 1e-14));
    assert!(conj(&u, &s(1, 2)).approx_eq(&s(0, 2).scale(-qembed_core::I1), 1e-14));

    // a = 1, b = i, c = 1, d = i mixes the 1 and 2 directions
    let u = gate("PHASE(1,i,1,i)").unwrap().unitary;
    assert!(conj(&u, &s(0, 1)).approx_eq(&s(1, 2), 1e-14));
    assert!(conj(&u, &s(0, 2)).approx_eq(&s(1, 1).scale(-qembed_core::I1), 1e-14));
    assert!(conj(&u, &s(1, 1)).approx_eq(&s(0, 1), 1e-14));
    assert!(conj(&u, &s(1, 2)).approx_eq(&s(0, 2).scale(-qembed_core::I1), 1e-14));

    // a = b = c = 1, d = -1: spins transmute into correlations
    let u = gate("PHASE(1,1,1,-1)").unwrap().unitary;
    assert!(conj(&u, &s(0, 1)).approx_eq(&l(3, 1), 1e-14));
    assert!(conj(&u, &s(0, 2)).approx_eq(&l(3, 2), 1e-14));
    assert!(conj(&u, &s(1, 1)).approx_eq(&l(1, 3), 1e-14));
    assert!(conj(&u, &s(1, 2)).approx_eq(&l(2, 3).scale(-qembed_core::I1), 1e-14));
    assert!(conj(&u, &l(3, 3)).approx_eq(&l(3, 3).scale(-qembed_core::I1), 1e-14));
    assert!(conj(&u, &l(1, 1)).approx_eq(&l(2, 2), 1e-14));
    assert!(conj(&u, &l(2, 2)).approx_eq(&l(1, 1).scale(-qembed_core::I1), 1e-14));
    assert!(conj(&u, &l(1, 2)).approx_eq(&l(1, 2), 1e-14));
    assert!(conj(&u, &l(2, 1)).approx_eq(&l(2, 1).scale(-qembed_core::I1), 1e-14));
    // and the whole family acts by exchanges on the average spin map
    assert!(automaton_realization("PHASE(1,1,1,-1)", "average_spin_q2")
        .unwrap()
        .is_some());
    assert!(automaton_realization("PHASE(1,i,1,i)", "average_spin_q2")
        .unwrap()
        .is_some());
}

#[test]
fn d3_fixes_the_three_axes_and_maps_spins_to_products() {
    let u = gate("D3").unwrap().unitary;
    let s = |p: usize, k: usize| spin_op(2, p, k);
    let l = |mu: usize, nu: usize| tensor_generator(&[mu, nu]);
    assert!(conj(&u, &s(0, 3)).approx_eq(&s(0, 3), 1e-14));
    assert!(conj(&u, &s(1, 3)).approx_eq(&s(1, 3), 1e-14));
    assert!(conj(&u, &s(0, 1)).approx_eq(&l(1, 3).scale(-qembed_core::I1), 1e-14));
    assert!(conj(&u, &s(0, 2)).approx_eq(&l(2, 3).scale(-qembed_core::I1), 1e-14));
    assert!(conj(&u, &s(1, 1)).approx_eq(&l(3, 1), 1e-14));
    assert!(conj(&u, &s(1, 2)).approx_eq(&l(3, 2), 1e-14));
    assert!(conj(&u, &l(1, 1)).approx_eq(&l(2, 2).scale(-qembed_core::I1), 1e-14));
    assert!(conj(&u, &l(1, 2)).approx_eq(&l(2, 1), 1e-14));
}

#[test]
fn bloch_action_preserves_random_states() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for name in ["CNOT", "SWAP", "UHR", "D3"] {
        let u = gate(name).unwrap().unitary;
        let m = bloch_action(&u).unwrap();
        for _ in 0..10 {
            let rho = random_density(2, &mut rng);
            let b = rho.bloch().0;
            let moved: Vec<f64> = (0..15)
                .map(|z| (0..15).map(|w| m[z][w] * b[w]).sum())
                .collect();
            let direct = rho.apply_unitary(&u).unwrap();
            let expect = DensityMatrix::from_bloch(&BlochVector(moved)).unwrap();
            assert!(expect
                .as_operator()
                .approx_eq(&direct.as_operator(), 1e-13));
        }
    }
}
