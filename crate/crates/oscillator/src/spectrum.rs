//! Frequency analysis of the evolving wave: the first-color autocorrelation
//! of a mode pair oscillates at the difference of the quantum energies.

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::evolve::liouville_evolve_sampled;
use crate::grid::PhaseGrid;
use crate::wave::{wave_from_modes, ModePair};
use crate::{OscillatorError, Result};

/// Dominant nonzero frequency of a uniformly sampled real series.
#[derive(Debug, Clone, Copy)]
pub struct SpectrumPeak {
    pub frequency: f64,
    pub amplitude: f64,
}

/// Locate the dominant oscillation of a real time series sampled at uniform
/// times: subtract the mean, take the discrete Fourier transform, and return
/// the strongest positive-frequency bin.
pub fn oscillation_spectrum(times: &[f64], values: &[f64]) -> Result<SpectrumPeak> {
    let n = times.len();
    if n < 4 || values.len() != n {
        return Err(OscillatorError::Resolution(format!(
            "need at least four matching samples, got {} times and {} values",
            n,
            values.len()
        )));
    }
    let dt = (times[n - 1] - times[0]) / (n - 1) as f64;
    if dt <= 0.0 {
        return Err(OscillatorError::Resolution(
            "sample times must be increasing".into(),
        ));
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    let mut buf: Vec<Complex64> = values
        .iter()
        .map(|&v| Complex64::new(v - mean, 0.0))
        .collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let mut best = (1usize, buf[1].norm());
    for (k, v) in buf.iter().enumerate().take(n / 2 + 1).skip(2) {
        if v.norm() > best.1 {
            best = (k, v.norm());
        }
    }
    Ok(SpectrumPeak {
        frequency: 2.0 * std::f64::consts::PI * best.0 as f64 / (n as f64 * dt),
        amplitude: 2.0 * best.1 / n as f64,
    })
}

/// Evolve the mode-pair wave for `t_final` and read the dominant frequency
/// of its first-color autocorrelation; at least two base periods 2π/ω are
/// required to resolve the difference frequencies.
pub fn mode_pair_spectrum(
    pair: &ModePair,
    grid: &PhaseGrid,
    t_final: f64,
    n_samples: usize,
) -> Result<SpectrumPeak> {
    let base_period = 2.0 * std::f64::consts::PI / pair.omega();
    if t_final < 2.0 * base_period {
        return Err(OscillatorError::Resolution(format!(
            "duration {t_final} is shorter than two base periods {}",
            2.0 * base_period
        )));
    }
    let wave = wave_from_modes(pair, grid)?;
    let (_, samples) = liouville_evolve_sampled(&wave, pair.m, pair.c, t_final, None, n_samples)?;
    // drop the final sample: for durations commensurate with the oscillation
    // it duplicates the first one, and the series becomes exactly periodic
    let times: Vec<f64> = samples[..n_samples].iter().map(|s| s.t).collect();
    let values: Vec<f64> = samples[..n_samples]
        .iter()
        .map(|s| s.autocorrelation)
        .collect();
    oscillation_spectrum(&times, &values)
}
