//! Liouville evolution of the phase-space wave by spectral differentiation
//! and fourth-order time stepping.

use num_complex::Complex64;

use crate::grid::PhaseGrid;
use crate::spectral::{Field, SpectralPlan};
use crate::wave::PhaseSpaceWave;
use crate::{OscillatorError, Result};

/// norm drift beyond which the evolution is rejected as unstable
const DRIFT_TOL: f64 = 1e-3;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Default step: min(Δz m / p_max, Δp / (c z_max)) / 4.
pub fn default_time_step(grid: &PhaseGrid, m: f64, spring: f64) -> f64 {
    let a = grid.dz() * m / grid.p_abs_max();
    let b = grid.dp() / (spring * grid.z_abs_max());
    a.min(b) / 4.0
}

struct Stepper<'a> {
    grid: &'a PhaseGrid,
    plan: SpectralPlan,
    m: f64,
    spring: f64,
}

impl<'a> Stepper<'a> {
    fn new(grid: &'a PhaseGrid, m: f64, spring: f64) -> Self {
        Self {
            grid,
            plan: SpectralPlan::new(grid),
            m,
            spring,
        }
    }

    /// -L̂ φ = -(p/m) ∂_z φ + c z ∂_p φ
    fn rhs(&self, phi: &Field) -> Field {
        let dz = self.plan.d_z(phi);
        let dp = self.plan.d_p(phi);
        let mut out = Field::zeros(self.grid.n_z, self.grid.n_p);
        for i in 0..self.grid.n_z {
            let z = self.grid.z(i);
            for j in 0..self.grid.n_p {
                let p = self.grid.p(j);
                out[(i, j)] =
                    dz[(i, j)] * c(-p / self.m, 0.0) + dp[(i, j)] * c(self.spring * z, 0.0);
            }
        }
        out
    }

    fn step(&self, phi: &Field, h: f64) -> Field {
        let k1 = self.rhs(phi);
        let k2 = self.rhs(&(phi + &k1 * c(0.5 * h, 0.0)));
        let k3 = self.rhs(&(phi + &k2 * c(0.5 * h, 0.0)));
        let k4 = self.rhs(&(phi + &k3 * c(h, 0.0)));
        phi + (k1 + k2 * c(2.0, 0.0) + k3 * c(2.0, 0.0) + k4) * c(h / 6.0, 0.0)
    }
}

fn finish(grid: &PhaseGrid, amp: Field, start_norm: f64) -> Result<PhaseSpaceWave> {
    let wave = PhaseSpaceWave::from_parts(grid.clone(), amp);
    let drift = (wave.norm() - start_norm).abs();
    // the negated comparison also catches a norm that overflowed to NaN
    if !(drift <= DRIFT_TOL) {
        return Err(OscillatorError::StepInstability(drift));
    }
    Ok(wave)
}

/// Advance ∂_t φ = -L̂ φ for a time t_final; `dt` defaults to the grid
/// stability step.
pub fn liouville_evolve(
    wave: &PhaseSpaceWave,
    m: f64,
    spring: f64,
    t_final: f64,
    dt: Option<f64>,
) -> Result<PhaseSpaceWave> {
    let h0 = dt.unwrap_or_else(|| default_time_step(&wave.grid, m, spring));
    if h0 <= 0.0 {
        return Err(OscillatorError::BadStep(h0));
    }
    let stepper = Stepper::new(&wave.grid, m, spring);
    let mut amp = wave.amplitudes().clone();
    if t_final > 0.0 {
        let steps = (t_final / h0).ceil() as usize;
        let h = t_final / steps as f64;
        for _ in 0..steps {
            amp = stepper.step(&amp, h);
        }
    }
    finish(&wave.grid, amp, wave.norm())
}

/// One observation of the evolving wave.
#[derive(Debug, Clone, Copy)]
pub struct EvolutionSample {
    pub t: f64,
    pub norm: f64,
    pub color_re: f64,
    pub color_im: f64,
    /// first-color overlap with the initial wave
    pub autocorrelation: f64,
}

/// Evolve while recording `n_samples` uniformly spaced observations after
/// the initial one.
pub fn liouville_evolve_sampled(
    wave: &PhaseSpaceWave,
    m: f64,
    spring: f64,
    t_final: f64,
    dt: Option<f64>,
    n_samples: usize,
) -> Result<(PhaseSpaceWave, Vec<EvolutionSample>)> {
    let h0 = dt.unwrap_or_else(|| default_time_step(&wave.grid, m, spring));
    if h0 <= 0.0 || n_samples == 0 {
        return Err(OscillatorError::BadStep(h0));
    }
    let per_sample = (t_final / (n_samples as f64 * h0)).ceil().max(1.0) as usize;
    let h = t_final / (n_samples * per_sample) as f64;
    let stepper = Stepper::new(&wave.grid, m, spring);
    let start_norm = wave.norm();

    let observe = |amp: &Field, t: f64| {
        let probe = PhaseSpaceWave::from_parts(wave.grid.clone(), amp.clone());
        let (color_re, color_im) = probe.color_populations();
        EvolutionSample {
            t,
            norm: probe.norm(),
            color_re,
            color_im,
            autocorrelation: probe.color_overlap(wave).expect("same grid"),
        }
    };

    let mut amp = wave.amplitudes().clone();
    let mut samples = vec![observe(&amp, 0.0)];
    for s in 1..=n_samples {
        for _ in 0..per_sample {
            amp = stepper.step(&amp, h);
        }
        samples.push(observe(&amp, s as f64 * per_sample as f64 * h));
    }
    let final_wave = finish(&wave.grid, amp, start_norm)?;
    Ok((final_wave, samples))
}
