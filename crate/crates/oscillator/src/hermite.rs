//! Normalized oscillator eigenfunctions on a grid, and the position-space
//! Hamiltonian they diagonalize.

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::{OscillatorError, Result};

/// largest mode index supported by the default grids
pub const MODE_CUTOFF: usize = 6;

/// Value of the normalized n-th oscillator eigenfunction at x, by the stable
/// recurrence on Hermite functions.
pub fn hermite_value(n: usize, m: f64, omega: f64, x: f64) -> f64 {
    let a = m * omega;
    let xi = a.sqrt() * x;
    let mut h0 = (a / std::f64::consts::PI).powf(0.25) * (-0.5 * xi * xi).exp();
    if n == 0 {
        return h0;
    }
    let mut h1 = (2.0f64).sqrt() * xi * h0;
    for k in 1..n {
        let k = k as f64;
        let h2 = (2.0 / (k + 1.0)).sqrt() * xi * h1 - (k / (k + 1.0)).sqrt() * h0;
        h0 = h1;
        h1 = h2;
    }
    h1
}

fn check_mode(n: usize, m: f64, c: f64) -> Result<f64> {
    if m <= 0.0 || c <= 0.0 {
        return Err(OscillatorError::BadOscillator { m, c });
    }
    if n > MODE_CUTOFF {
        return Err(OscillatorError::ModeTooHigh(n));
    }
    Ok((c / m).sqrt())
}

/// The n-th eigenfunction sampled on the grid and normalized so that
/// Σ ψ² Δx = 1. The grid must cover the classically allowed interval with
/// eight ground-state widths to spare.
pub fn hermite_mode(n: usize, m: f64, omega: f64, xs: &[f64]) -> Result<Vec<f64>> {
    let c = m * omega * omega;
    check_mode(n, m, c)?;
    let span = xs.last().copied().unwrap_or(0.0) - xs.first().copied().unwrap_or(0.0);
    let turning = ((2 * n + 1) as f64 / (m * omega)).sqrt();
    let width = 1.0 / (m * omega).sqrt();
    let required = 2.0 * turning + 8.0 * width;
    if span < required {
        return Err(OscillatorError::GridCoverage { span, required });
    }
    let dx = span / (xs.len() - 1) as f64;
    let mut vals: Vec<f64> = xs.iter().map(|&x| hermite_value(n, m, omega, x)).collect();
    let norm = (vals.iter().map(|v| v * v).sum::<f64>() * dx).sqrt();
    for v in &mut vals {
        *v /= norm;
    }
    Ok(vals)
}

/// Apply H = -(1/2m)∂² + (c/2)x² to complex grid values by spectral
/// differentiation on the periodic box.
pub fn apply_position_hamiltonian(
    psi: &[Complex64],
    xs: &[f64],
    m: f64,
    c: f64,
) -> Vec<Complex64> {
    let n = psi.len();
    let dx = (xs[n - 1] - xs[0]) / (n - 1) as f64;
    let length = n as f64 * dx;
    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_forward(n);
    let ifft = planner.plan_fft_inverse(n);
    let mut buf: Vec<Complex64> = psi.to_vec();
    fft.process(&mut buf);
    for (k, v) in buf.iter_mut().enumerate() {
        let idx = if k <= n / 2 { k as f64 } else { k as f64 - n as f64 };
        let kappa = 2.0 * std::f64::consts::PI * idx / length;
        *v *= Complex64::new(kappa * kappa / (2.0 * m * n as f64), 0.0);
    }
    ifft.process(&mut buf);
    (0..n)
        .map(|i| buf[i] + psi[i] * Complex64::new(0.5 * c * xs[i] * xs[i], 0.0))
        .collect()
}
