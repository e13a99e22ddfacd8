use proptest::prelude::*;
use qembed_automaton::*;

fn space3() -> ConfigSpace {
    ConfigSpace::new(3)
}

/// 8-entry distribution from raw nonnegative weights.
fn dist_from_weights(space: ConfigSpace, w: &[f64]) -> Distribution {
    let sum: f64 = w.iter().sum();
    Distribution::new(space, w.iter().map(|x| x / sum).collect()).unwrap()
}

#[test]
fn config_indexing_matches_spin_tables() {
    let sp = space3();
    // (---) is config 0, (+++) is config 7
    assert_eq!(sp.spins(0), vec![-1, -1, -1]);
    assert_eq!(sp.spins(7), vec![1, 1, 1]);
    // frozen value tables of the three spin observables
    assert_eq!(
        sp.spin_observable(0),
        vec![-1.0, -1.0, -1.0, -1.0, 1.0, 1.0, 1.0, 1.0]
    );
    assert_eq!(
        sp.spin_observable(1),
        vec![-1.0, -1.0, 1.0, 1.0, -1.0, -1.0, 1.0, 1.0]
    );
    assert_eq!(
        sp.spin_observable(2),
        vec![-1.0, 1.0, -1.0, 1.0, -1.0, 1.0, -1.0, 1.0]
    );
    for tau in 0..8 {
        assert_eq!(sp.config(&sp.spins(tau)), tau);
    }
}

#[test]
fn named_transform_examples() {
    let sp = space3();
    // T12 sends (+,-,+) to (-,-,+): s1' = s2 = -1, s2' = -s1 = -1, s3' = +1
    let t12 = SpinTransform::named("T12").unwrap();
    let src = sp.config(&[1, -1, 1]);
    let dst = sp.config(&[-1, -1, 1]);
    assert_eq!(t12.config_map(sp)[src], dst);
    // Hadamard map: (+,+,-) -> (-,-,+)
    let h = SpinTransform::named("H").unwrap();
    let src = sp.config(&[1, 1, -1]);
    let dst = sp.config(&[-1, -1, 1]);
    assert_eq!(h.config_map(sp)[src], dst);
    // H is a product of the basis updatings: T1 then T31
    let prod = SpinTransform::named("T1")
        .unwrap()
        .then(&SpinTransform::named("T31").unwrap());
    assert_eq!(prod, h);
    assert!(SpinTransform::named("T99").is_err());
}

#[test]
fn transform_inverse_and_parse() {
    for name in SpinTransform::NAMED_BASIS {
        let t = SpinTransform::named(name).unwrap();
        let id = t.then(&t.inverse());
        assert_eq!(id, SpinTransform::identity(3));
    }
    let seq = SpinTransform::parse_sequence("T12;T31;T1").unwrap();
    let manual = SpinTransform::named("T12")
        .unwrap()
        .then(&SpinTransform::named("T31").unwrap())
        .then(&SpinTransform::named("T1").unwrap());
    assert_eq!(seq, manual);
    assert!(SpinTransform::parse_sequence("T12;bogus").is_err());
}

#[test]
fn unique_jump_validation() {
    let sp = space3();
    assert!(StepOperator::unique_jump(sp, &[0, 1, 2, 3, 4, 5, 6, 6]).is_err());
    assert!(StepOperator::unique_jump(sp, &[0, 1, 2]).is_err());
    let id = StepOperator::identity(sp);
    let m = id.matrix();
    for i in 0..8 {
        for j in 0..8 {
            assert_eq!(m[(i, j)], if i == j { 1.0 } else { 0.0 });
        }
    }
}

#[test]
fn evolution_moves_deltas_along_the_map() {
    let sp = space3();
    let t31 = StepOperator::from_spin_transform(sp, &SpinTransform::named("T31").unwrap()).unwrap();
    let tau0 = sp.config(&[1, -1, 1]);
    let d = Distribution::delta(sp, tau0);
    let d1 = evolve_distribution(&d, &t31).unwrap();
    // T31: s3' = s1, s1' = -s3 => (+,-,+) -> (-,-,+)
    let expect = sp.config(&[-1, -1, 1]);
    assert_eq!(d1.probabilities()[expect], 1.0);
    // uniform is a fixed point
    let u = Distribution::uniform(sp);
    assert_eq!(evolve_distribution(&u, &t31).unwrap(), u);
}

#[test]
fn t31_acts_on_expectations_as_quarter_rotation() {
    let sp = space3();
    let p = dist_from_weights(sp, &[0.3, 0.1, 0.05, 0.2, 0.05, 0.1, 0.15, 0.05]);
    let before: Vec<f64> = (0..3)
        .map(|k| classical_expectation(&p, &sp.spin_observable(k)).unwrap())
        .collect();
    let t31 = StepOperator::from_spin_transform(sp, &SpinTransform::named("T31").unwrap()).unwrap();
    let p1 = evolve_distribution(&p, &t31).unwrap();
    let after: Vec<f64> = (0..3)
        .map(|k| classical_expectation(&p1, &sp.spin_observable(k)).unwrap())
        .collect();
    assert!((after[2] - before[0]).abs() < 1e-15); // <s3>' = <s1>
    assert!((after[0] + before[2]).abs() < 1e-15); // <s1>' = -<s3>
    assert!((after[1] - before[1]).abs() < 1e-15); // <s2>' = <s2>
}

#[test]
fn pair_correlation_table_matches_brute_force() {
    // <s1 s2> = p1+p2-p3-p4-p5-p6+p7+p8 in 1-based labels
    let sp = space3();
    let p = dist_from_weights(sp, &[0.12, 0.08, 0.2, 0.05, 0.15, 0.1, 0.22, 0.08]);
    let table = sp.product_observable(&[0, 1]);
    let via_table = classical_expectation(&p, &table).unwrap();
    let brute: f64 = (0..8)
        .map(|t| p.probabilities()[t] * (sp.spin(t, 0) * sp.spin(t, 1)) as f64)
        .sum();
    assert!((via_table - brute).abs() < 1e-15);
    let w = p.probabilities();
    let linear = w[0] + w[1] - w[2] - w[3] - w[4] - w[5] + w[6] + w[7];
    assert!((via_table - linear).abs() < 1e-15);
}

#[test]
fn wave_and_distribution_evolution_commute_with_squaring() {
    let sp = space3();
    let p = dist_from_weights(sp, &[0.1, 0.2, 0.05, 0.15, 0.1, 0.1, 0.25, 0.05]);
    let q = p.sqrt_wave();
    for name in SpinTransform::NAMED_BASIS {
        let s = StepOperator::from_spin_transform(sp, &SpinTransform::named(name).unwrap()).unwrap();
        let p1 = evolve_distribution(&p, &s).unwrap();
        let q1 = evolve_wave(&q, &s).unwrap();
        // permutations act identically on q and p, so squaring commutes
        // up to the sqrt/square round-off of the initial root
        for (a, b) in q1
            .to_distribution()
            .probabilities()
            .iter()
            .zip(p1.probabilities())
        {
            assert!((a - b).abs() < 1e-15);
        }
    }
}

#[test]
fn general_orthogonal_steps_are_flagged() {
    let sp = space3();
    // rotation by an angle in the (0,1) configuration block
    let mut m = nalgebra::DMatrix::identity(8, 8);
    let th = 0.3f64;
    m[(0, 0)] = th.cos();
    m[(0, 1)] = -th.sin();
    m[(1, 0)] = th.sin();
    m[(1, 1)] = th.cos();
    let s = StepOperator::general_orthogonal(sp, m).unwrap();
    assert_eq!(s.kind(), StepKind::GeneralOrthogonal);
    let q = Distribution::uniform(sp).sqrt_wave();
    let q1 = evolve_wave(&q, &s).unwrap();
    let norm2: f64 = q1.amplitudes().iter().map(|x| x * x).sum();
    assert!((norm2 - 1.0).abs() < 1e-12);
    // distributions and trajectories refuse general steps
    assert!(evolve_distribution(&Distribution::uniform(sp), &s).is_err());
    assert!(trajectory_probabilities(&Distribution::uniform(sp), std::slice::from_ref(&s)).is_err());
    // non-orthogonal matrices are rejected outright
    let bad = nalgebra::DMatrix::from_element(8, 8, 0.5);
    assert!(StepOperator::general_orthogonal(sp, bad).is_err());
}

#[test]
fn trajectories_carry_initial_weights() {
    let sp = space3();
    let p0 = dist_from_weights(sp, &[0.1, 0.2, 0.05, 0.15, 0.1, 0.1, 0.25, 0.05]);
    let steps: Vec<StepOperator> = ["T12", "T31"]
        .iter()
        .map(|n| StepOperator::from_spin_transform(sp, &SpinTransform::named(n).unwrap()).unwrap())
        .collect();
    let table = trajectory_probabilities(&p0, &steps).unwrap();
    assert_eq!(table.rows.len(), 8);
    let total: f64 = table.rows.iter().map(|(_, w)| w).sum();
    assert!((total - 1.0).abs() < 1e-15);
    // trajectory of (+,+,+): T12 gives (+,-,+), then T31 gives (-,-,+)
    let tau0 = sp.config(&[1, 1, 1]);
    let row = &table.rows[tau0];
    assert_eq!(
        row.0,
        vec![tau0, sp.config(&[1, -1, 1]), sp.config(&[-1, -1, 1])]
    );
    assert_eq!(row.1, p0.probabilities()[tau0]);
    // empty step list reproduces p0
    let t0 = trajectory_probabilities(&p0, &[]).unwrap();
    for (tau, (states, w)) in t0.rows.iter().enumerate() {
        assert_eq!(states, &vec![tau]);
        assert_eq!(*w, p0.probabilities()[tau]);
    }
    // weight conservation over a long chain
    let many: Vec<StepOperator> = (0..100)
        .map(|i| {
            let name = SpinTransform::NAMED_BASIS[i % 6];
            StepOperator::from_spin_transform(sp, &SpinTransform::named(name).unwrap()).unwrap()
        })
        .collect();
    let t = trajectory_probabilities(&p0, &many).unwrap();
    let total: f64 = t.rows.iter().map(|(_, w)| w).sum();
    assert!((total - 1.0).abs() < 1e-12);
}

#[test]
fn conditional_flip_leaves_the_qubit_but_not_the_environment() {
    // Two distributions with identical (<s1>,<s2>,<s3>) whose images under the
    // conditional flip differ in <s2>: the flipped spin average cannot be a
    // function of the qubit data alone.
    let sp = space3();
    let cf = StepOperator::conditional_flip(sp).unwrap();
    let pa = dist_from_weights(sp, &[0.25, 0.25, 0.0, 0.0, 0.0, 0.0, 0.25, 0.25]);
    let pb = dist_from_weights(sp, &[0.0, 0.0, 0.25, 0.25, 0.25, 0.25, 0.0, 0.0]);
    let s2 = sp.spin_observable(1);
    for k in 0..3 {
        let obs = sp.spin_observable(k);
        let a = classical_expectation(&pa, &obs).unwrap();
        let b = classical_expectation(&pb, &obs).unwrap();
        assert!((a - b).abs() < 1e-15, "inputs must agree on <s{}>", k + 1);
    }
    let fa = classical_expectation(&evolve_distribution(&pa, &cf).unwrap(), &s2).unwrap();
    let fb = classical_expectation(&evolve_distribution(&pb, &cf).unwrap(), &s2).unwrap();
    assert!(
        (fa - fb).abs() > 0.5,
        "flip outcomes must differ: {fa} vs {fb}"
    );
}

#[test]
fn sampling_is_reproducible_and_consistent() {
    let sp = space3();
    let p = dist_from_weights(sp, &[0.05, 0.3, 0.1, 0.05, 0.2, 0.1, 0.15, 0.05]);
    let observables = vec![
        sp.spin_observable(0),
        sp.spin_observable(2),
        sp.product_observable(&[0, 1]),
    ];
    let est = sample_estimator(&p, &observables, 200_000, 42).unwrap();
    let again = sample_estimator(&p, &observables, 200_000, 42).unwrap();
    assert_eq!(est, again, "same seed must give identical estimates");
    for (e, obs) in est.iter().zip(&observables) {
        let exact = classical_expectation(&p, obs).unwrap();
        assert!(
            (e.mean - exact).abs() < 4.0 * e.std_error.max(1e-6),
            "estimate {} too far from {exact}",
            e.mean
        );
    }
    // delta distribution: zero variance
    let d = Distribution::delta(sp, 5);
    let est = sample_estimator(&d, &[sp.spin_observable(0)], 1000, 7).unwrap();
    assert_eq!(est[0].mean, 1.0);
    assert_eq!(est[0].std_error, 0.0);
}

#[test]
fn csv_round_trip() {
    let sp = space3();
    let p = dist_from_weights(sp, &[0.05, 0.3, 0.1, 0.05, 0.2, 0.1, 0.15, 0.05]);
    let mut buf = Vec::new();
    write_distribution_csv(&p, &mut buf).unwrap();
    let text = String::from_utf8(buf.clone()).unwrap();
    assert!(text.starts_with("tau,probability\n"));
    let back = read_distribution_csv(sp, buf.as_slice()).unwrap();
    for (a, b) in p.probabilities().iter().zip(back.probabilities()) {
        assert!((a - b).abs() < 1e-15);
    }
    assert!(read_distribution_csv(ConfigSpace::new(2), buf.as_slice()).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn distribution_evolution_is_a_permutation(weights in prop::collection::vec(0.0f64..1.0, 8), seq in prop::collection::vec(0usize..6, 1..20)) {
        prop_assume!(weights.iter().sum::<f64>() > 1e-6);
        let sp = space3();
        let mut p = dist_from_weights(sp, &weights);
        let mut sorted0: Vec<f64> = p.probabilities().to_vec();
        sorted0.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for &i in &seq {
            let t = SpinTransform::named(SpinTransform::NAMED_BASIS[i]).unwrap();
            let s = StepOperator::from_spin_transform(sp, &t).unwrap();
            p = evolve_distribution(&p, &s).unwrap();
        }
        let mut sorted1: Vec<f64> = p.probabilities().to_vec();
        sorted1.sort_by(|a, b| a.partial_cmp(b).unwrap());
        // multiset of probabilities is exactly preserved
        prop_assert_eq!(sorted0, sorted1);
    }

    #[test]
    fn expectations_transform_like_spins(weights in prop::collection::vec(0.01f64..1.0, 8), i in 0usize..6) {
        let sp = space3();
        let p = dist_from_weights(sp, &weights);
        let t = SpinTransform::named(SpinTransform::NAMED_BASIS[i]).unwrap();
        let s = StepOperator::from_spin_transform(sp, &t).unwrap();
        let p1 = evolve_distribution(&p, &s).unwrap();
        let before: Vec<f64> = (0..3).map(|k| classical_expectation(&p, &sp.spin_observable(k)).unwrap()).collect();
        let after: Vec<f64> = (0..3).map(|k| classical_expectation(&p1, &sp.spin_observable(k)).unwrap()).collect();
        let predicted = t.apply_expectations(&before);
        for k in 0..3 {
            prop_assert!((after[k] - predicted[k]).abs() < 1e-12);
        }
    }
}
