use std::f64::consts::PI;

use num_complex::Complex64;

use qembed_oscillator::{
    apply_position_hamiltonian, default_time_step, double_position_density, hermite_mode,
    hermite_value, liouville_energy_expectation, liouville_evolve, liouville_evolve_sampled,
    mode_pair_spectrum, oscillation_spectrum, partner_energy_expectation, position_expectation,
    position_grid, quantum_energy_expectation, wave_from_functions, wave_from_modes, wave_summary,
    write_wave_csv, ModePair, OscillatorError, PhaseGrid, PhaseSpaceWave,
};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn grid64() -> PhaseGrid {
    PhaseGrid::new(64, 64, 8.0, 8.0)
}

fn xs(n: usize, half: f64) -> Vec<f64> {
    (0..n).map(|i| -half + i as f64 * 2.0 * half / n as f64).collect()
}

#[test]
fn hermite_modes_are_orthonormal_eigenfunctions() {
    let xs = xs(128, 8.0);
    let dx = xs[1] - xs[0];

    // the ground mode is strictly positive, the third mode changes sign
    // exactly three times
    let h0 = hermite_mode(0, 1.0, 1.0, &xs).unwrap();
    assert!(h0.iter().all(|&v| v > 0.0));
    let h3 = hermite_mode(3, 1.0, 1.0, &xs).unwrap();
    let signs: Vec<f64> = h3.iter().copied().filter(|v| v.abs() > 1e-12).collect();
    let flips = signs.windows(2).filter(|w| w[0] * w[1] < 0.0).count();
    assert_eq!(flips, 3);

    // orthonormality on the grid
    for n in 0..=4usize {
        let hn = hermite_mode(n, 1.0, 1.0, &xs).unwrap();
        for k in 0..=4usize {
            let hk = hermite_mode(k, 1.0, 1.0, &xs).unwrap();
            let overlap: f64 = hn.iter().zip(&hk).map(|(a, b)| a * b).sum::<f64>() * dx;
            let expect = if n == k { 1.0 } else { 0.0 };
            assert!((overlap - expect).abs() < 1e-10, "n={n} k={k}: {overlap}");
        }
    }

    // each mode solves the eigenvalue problem: small residual and the
    // expected energy (n + 1/2)ω
    for n in 0..=4usize {
        let vals = hermite_mode(n, 1.0, 1.0, &xs).unwrap();
        let psi: Vec<Complex64> = vals.iter().map(|&v| c(v, 0.0)).collect();
        let h_psi = apply_position_hamiltonian(&psi, &xs, 1.0, 1.0);
        let energy: f64 = psi
            .iter()
            .zip(&h_psi)
            .map(|(a, b)| (a.conj() * b).re)
            .sum::<f64>()
            * dx;
        assert!((energy - (n as f64 + 0.5)).abs() < 1e-3, "n={n}: {energy}");
        let residual: f64 = psi
            .iter()
            .zip(&h_psi)
            .map(|(a, b)| (b - a * c(energy, 0.0)).norm_sqr())
            .sum::<f64>()
            * dx;
        assert!(residual.sqrt() < 1e-4, "n={n}: residual {}", residual.sqrt());
    }

    // a narrow grid cannot hold even the ground mode
    let narrow = (0..32).map(|i| -4.0 + i as f64 * 0.25).collect::<Vec<_>>();
    assert!(matches!(
        hermite_mode(0, 1.0, 1.0, &narrow),
        Err(OscillatorError::GridCoverage { .. })
    ));
    assert!(matches!(
        hermite_mode(7, 1.0, 1.0, &xs),
        Err(OscillatorError::ModeTooHigh(7))
    ));
    assert!(matches!(
        hermite_mode(0, -1.0, 1.0, &xs),
        Err(OscillatorError::BadOscillator { .. })
    ));
}

#[test]
fn mode_pair_waves_are_normalized_with_the_expected_energies() {
    let grid = grid64();

    // the diagonal ground pair is a real, nonnegative distribution
    let w00 = wave_from_modes(&ModePair::new(0, 0, 1.0, 1.0).unwrap(), &grid).unwrap();
    assert!((w00.norm() - 1.0).abs() < 1e-12);
    for v in w00.amplitudes().iter() {
        assert!(v.im.abs() < 1e-8);
        assert!(v.re > -1e-8);
    }

    // swapping the two modes conjugates the wave
    let w10 = wave_from_modes(&ModePair::new(1, 0, 1.0, 1.0).unwrap(), &grid).unwrap();
    let w01 = wave_from_modes(&ModePair::new(0, 1, 1.0, 1.0).unwrap(), &grid).unwrap();
    for (a, b) in w10.amplitudes().iter().zip(w01.amplitudes().iter()) {
        assert!((a - b.conj()).norm() < 1e-10);
    }

    // the two colors of an off-diagonal pair carry equal weight
    let (re, im) = w10.color_populations();
    assert!((re - 0.5).abs() < 1e-8, "re color {re}");
    assert!((im - 0.5).abs() < 1e-8, "im color {im}");

    // energies: a pair (n, n') carries E_n, its partner E_n', and their
    // difference ω(n - n')
    for (n, n_prime) in [(0usize, 0usize), (2, 2), (1, 0), (3, 1)] {
        let pair = ModePair::new(n, n_prime, 1.0, 1.0).unwrap();
        let wave = wave_from_modes(&pair, &grid).unwrap();
        let eq = quantum_energy_expectation(&wave, 1.0, 1.0);
        let ep = partner_energy_expectation(&wave, 1.0, 1.0);
        let el = liouville_energy_expectation(&wave, 1.0, 1.0);
        assert!((eq - (n as f64 + 0.5)).abs() < 1e-3, "({n},{n_prime}): {eq}");
        assert!(
            (ep - (n_prime as f64 + 0.5)).abs() < 1e-3,
            "({n},{n_prime}): {ep}"
        );
        assert!(
            (el - (n as f64 - n_prime as f64)).abs() < 1e-3,
            "({n},{n_prime}): {el}"
        );
    }

    // a momentum box too small for the mode is rejected
    let tight = PhaseGrid::new(64, 16, 8.0, 1.5);
    assert!(matches!(
        wave_from_modes(&ModePair::new(0, 0, 1.0, 1.0).unwrap(), &tight),
        Err(OscillatorError::Resolution(_))
    ));
    assert!(ModePair::new(7, 0, 1.0, 1.0).is_err());
    assert!(ModePair::new(0, 0, 0.0, 1.0).is_err());
}

#[test]
fn liouville_flow_is_stationary_on_the_ground_pair_and_periodic() {
    let grid = grid64();
    let period = 2.0 * PI;

    // the diagonal ground pair is a fixed point of the flow
    let w00 = wave_from_modes(&ModePair::new(0, 0, 1.0, 1.0).unwrap(), &grid).unwrap();
    let moved = liouville_evolve(&w00, 1.0, 1.0, period, None).unwrap();
    let change: f64 = w00
        .amplitudes()
        .iter()
        .zip(moved.amplitudes().iter())
        .map(|(a, b)| (a - b).norm_sqr())
        .sum::<f64>()
        * grid.cell();
    assert!(change.sqrt() < 1e-6, "ground pair moved by {}", change.sqrt());

    // an off-diagonal pair rotates with frequency ω(n - n'): after a quarter
    // period the wave picks up the phase e^{-iπ/2}
    let w10 = wave_from_modes(&ModePair::new(1, 0, 1.0, 1.0).unwrap(), &grid).unwrap();
    let quarter = liouville_evolve(&w10, 1.0, 1.0, period / 4.0, None).unwrap();
    let phase = c(0.0, -1.0);
    let defect: f64 = w10
        .amplitudes()
        .iter()
        .zip(quarter.amplitudes().iter())
        .map(|(a, b)| (b - a * phase).norm_sqr())
        .sum::<f64>()
        * grid.cell();
    assert!(defect.sqrt() < 1e-2, "phase defect {}", defect.sqrt());

    // norm and both color populations are conserved along the way
    let (re0, im0) = w10.color_populations();
    let (evolved, samples) =
        liouville_evolve_sampled(&w10, 1.0, 1.0, period, None, 16).unwrap();
    assert!((evolved.norm() - 1.0).abs() < 1e-6);
    for s in &samples {
        assert!((s.norm - 1.0).abs() < 1e-6, "t={}: norm {}", s.t, s.norm);
        assert!((s.color_re - re0).abs() < 1e-6);
        assert!((s.color_im - im0).abs() < 1e-6);
    }
    // the autocorrelation traces half a cosine of the beat frequency
    for s in &samples {
        assert!(
            (s.autocorrelation - 0.5 * s.t.cos()).abs() < 1e-2,
            "t={}: {}",
            s.t,
            s.autocorrelation
        );
    }

    // a step far beyond the stability limit is reported, not returned
    assert!(matches!(
        liouville_evolve(&w10, 1.0, 1.0, 5.0, Some(0.5)),
        Err(OscillatorError::StepInstability(_))
    ));
    assert!(matches!(
        liouville_evolve(&w10, 1.0, 1.0, 1.0, Some(0.0)),
        Err(OscillatorError::BadStep(_))
    ));
}

#[test]
fn full_resolution_period_return_of_the_beating_pair() {
    let grid = PhaseGrid::default_grid();
    let w10 = wave_from_modes(&ModePair::new(1, 0, 1.0, 1.0).unwrap(), &grid).unwrap();
    let back = liouville_evolve(&w10, 1.0, 1.0, 2.0 * PI, None).unwrap();
    let diff: f64 = w10
        .amplitudes()
        .iter()
        .zip(back.amplitudes().iter())
        .map(|(a, b)| (a - b).norm_sqr())
        .sum::<f64>()
        * grid.cell();
    assert!(diff.sqrt() < 1e-2, "period return error {}", diff.sqrt());
    assert!((back.norm() - 1.0).abs() < 1e-6, "norm {}", back.norm());

    // the quantum energy is conserved to high relative accuracy
    let e0 = quantum_energy_expectation(&w10, 1.0, 1.0);
    let e1 = quantum_energy_expectation(&back, 1.0, 1.0);
    assert!(((e1 - e0) / e0).abs() < 1e-6, "energy {e0} -> {e1}");
}

#[test]
fn coarse_graining_recovers_the_quantum_density_matrix() {
    let grid = grid64();

    // a pure mode pair coarse grains to the pure state of its first mode
    let w00 = wave_from_modes(&ModePair::new(0, 0, 1.0, 1.0).unwrap(), &grid).unwrap();
    let coarse = double_position_density(&w00).unwrap();
    let xs = position_grid(&grid);
    assert_eq!(coarse.xs, xs);
    assert!((coarse.rho.purity() - 1.0).abs() < 1e-4, "purity {}", coarse.rho.purity());

    // fidelity against the sampled ground mode
    let sqrt_dx = coarse.dx.sqrt();
    let target: Vec<f64> = xs.iter().map(|&x| hermite_value(0, 1.0, 1.0, x) * sqrt_dx).collect();
    let tnorm: f64 = target.iter().map(|v| v * v).sum::<f64>();
    let mat = coarse.rho.matrix();
    let mut fidelity = 0.0;
    for (i, &a) in target.iter().enumerate() {
        for (j, &b) in target.iter().enumerate() {
            fidelity += a * mat[(i, j)].re * b;
        }
    }
    fidelity /= tnorm;
    assert!(fidelity > 1.0 - 1e-4, "fidelity {fidelity}");

    // an off-diagonal pair also coarse grains to a pure state (of the first
    // mode), even after evolving for a while
    let w10 = wave_from_modes(&ModePair::new(1, 0, 1.0, 1.0).unwrap(), &grid).unwrap();
    let moved = liouville_evolve(&w10, 1.0, 1.0, 0.7, None).unwrap();
    let coarse10 = double_position_density(&moved).unwrap();
    assert!(
        (coarse10.rho.purity() - 1.0).abs() < 1e-3,
        "purity {}",
        coarse10.rho.purity()
    );

    // an equal blend of two diagonal pairs coarse grains to the mixed state
    let w11 = wave_from_modes(&ModePair::new(1, 1, 1.0, 1.0).unwrap(), &grid).unwrap();
    let mut amp = (w00.amplitudes() + w11.amplitudes()) * c(0.5f64.sqrt(), 0.0);
    let norm = (amp.iter().map(|v| v.norm_sqr()).sum::<f64>() * grid.cell()).sqrt();
    amp /= c(norm, 0.0);
    let blend = PhaseSpaceWave::new(grid.clone(), amp).unwrap();
    let mixed = double_position_density(&blend).unwrap();
    assert!((mixed.rho.purity() - 0.5).abs() < 1e-3, "purity {}", mixed.rho.purity());
}

#[test]
fn position_expectation_matches_the_quantum_oracle_and_oscillates() {
    let grid = grid64();

    // symmetric states sit at the origin
    let w00 = wave_from_modes(&ModePair::new(0, 0, 1.0, 1.0).unwrap(), &grid).unwrap();
    assert!(position_expectation(&w00).abs() < 1e-8);

    // the displaced superposition (ψ0 + ψ1)/√2 has ⟨x⟩ = 1/√2
    let psi = |x: f64| c((hermite_value(0, 1.0, 1.0, x) + hermite_value(1, 1.0, 1.0, x)) / 2f64.sqrt(), 0.0);
    let wave = wave_from_functions(&grid, psi, psi).unwrap();
    let expect = 1.0 / 2f64.sqrt();
    let x0 = position_expectation(&wave);
    assert!((x0 - expect).abs() < 1e-6, "x0 {x0}");

    // under the Liouville flow it swings as cos(ωt)
    for t in [PI / 3.0, PI / 2.0, PI] {
        let moved = liouville_evolve(&wave, 1.0, 1.0, t, None).unwrap();
        let x = position_expectation(&moved);
        assert!((x - expect * t.cos()).abs() < 1e-3, "t={t}: {x}");
    }
}

#[test]
fn spectra_peak_at_the_quantum_energy_differences() {
    // synthetic series: exact recovery of a pure cosine
    let n = 64usize;
    let total = 4.0 * PI;
    let times: Vec<f64> = (0..n).map(|k| k as f64 * total / n as f64).collect();
    let values: Vec<f64> = times.iter().map(|&t| 0.3 + 0.7 * (1.5 * t).cos()).collect();
    let peak = oscillation_spectrum(&times, &values).unwrap();
    assert!((peak.frequency - 1.5).abs() < 1e-9, "freq {}", peak.frequency);
    assert!((peak.amplitude - 0.7).abs() < 1e-9, "amp {}", peak.amplitude);

    // mode pairs oscillate at ω(n - n')
    let grid = grid64();
    let duration = 4.0 * PI;
    let p10 = ModePair::new(1, 0, 1.0, 1.0).unwrap();
    let peak10 = mode_pair_spectrum(&p10, &grid, duration, 64).unwrap();
    assert!((peak10.frequency - 1.0).abs() < 1e-9, "freq {}", peak10.frequency);
    assert!((peak10.amplitude - 0.5).abs() < 0.05, "amp {}", peak10.amplitude);

    let p31 = ModePair::new(3, 1, 1.0, 1.0).unwrap();
    let peak31 = mode_pair_spectrum(&p31, &grid, duration, 64).unwrap();
    assert!((peak31.frequency - 2.0).abs() < 1e-9, "freq {}", peak31.frequency);

    // a diagonal pair does not oscillate at all
    let p22 = ModePair::new(2, 2, 1.0, 1.0).unwrap();
    let peak22 = mode_pair_spectrum(&p22, &grid, duration, 64).unwrap();
    assert!(peak22.amplitude < 1e-4, "amp {}", peak22.amplitude);

    // too short a run cannot resolve the beat
    assert!(matches!(
        mode_pair_spectrum(&p10, &grid, PI, 16),
        Err(OscillatorError::Resolution(_))
    ));
    assert!(oscillation_spectrum(&times[..2], &values[..2]).is_err());
}

#[test]
fn exports_carry_the_wave_observables() {
    let grid = PhaseGrid::new(32, 32, 8.0, 4.0);
    let w00 = wave_from_modes(&ModePair::new(0, 0, 1.0, 1.0).unwrap(), &grid).unwrap();

    let summary = wave_summary(&w00, 1.25, 1.0, 1.0);
    assert_eq!(summary.t, 1.25);
    assert!((summary.norm - 1.0).abs() < 1e-12);
    assert!((summary.color_re + summary.color_im - 1.0).abs() < 1e-12);
    let json = serde_json::to_string(&summary).unwrap();
    assert!(json.contains("\"energy\""));

    let mut buf = Vec::new();
    write_wave_csv(&w00, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "z,p,re,im");
    assert_eq!(text.lines().count(), 1 + 32 * 32);
    let first = lines.next().unwrap();
    let fields: Vec<&str> = first.split(',').collect();
    assert_eq!(fields.len(), 4);
    assert!((fields[0].parse::<f64>().unwrap() + 8.0).abs() < 1e-12);
}

#[test]
fn default_step_respects_the_grid_scales() {
    let grid = PhaseGrid::default_grid();
    let h = default_time_step(&grid, 1.0, 1.0);
    assert!(h > 0.0 && h < grid.dz());
    // a stiffer spring forces a smaller step
    assert!(default_time_step(&grid, 1.0, 4.0) < h);
}
