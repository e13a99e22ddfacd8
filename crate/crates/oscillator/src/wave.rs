//! The two-color classical wave in phase space and the quantum-constrained
//! initial data built from oscillator modes.

use num_complex::Complex64;

use crate::grid::PhaseGrid;
use crate::hermite::{hermite_value, MODE_CUTOFF};
use crate::spectral::{Field, SpectralPlan};
use crate::{OscillatorError, Result};

/// tolerance on the norm invariant of a constructed wave
const NORM_TOL: f64 = 1e-8;
/// admissible energy fraction in the outermost momentum band
const ALIAS_TOL: f64 = 1e-6;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// A pair of oscillator modes (n, n′) for given mass and spring constant;
/// the associated wave oscillates at ω(n - n′).
#[derive(Debug, Clone, Copy)]
pub struct ModePair {
    pub n: usize,
    pub n_prime: usize,
    pub m: f64,
    pub c: f64,
}

impl ModePair {
    pub fn new(n: usize, n_prime: usize, m: f64, spring: f64) -> Result<Self> {
        if m <= 0.0 || spring <= 0.0 {
            return Err(OscillatorError::BadOscillator { m, c: spring });
        }
        if n > MODE_CUTOFF {
            return Err(OscillatorError::ModeTooHigh(n));
        }
        if n_prime > MODE_CUTOFF {
            return Err(OscillatorError::ModeTooHigh(n_prime));
        }
        Ok(Self {
            n,
            n_prime,
            m,
            c: spring,
        })
    }

    pub fn omega(&self) -> f64 {
        (self.c / self.m).sqrt()
    }

    /// E_n = (n + 1/2)ω
    pub fn energy(&self, n: usize) -> f64 {
        (n as f64 + 0.5) * self.omega()
    }

    /// difference frequency ω(n - n′)
    pub fn beat(&self) -> f64 {
        self.omega() * (self.n as f64 - self.n_prime as f64)
    }
}

/// The complex two-color wave on the phase-space grid; the classical
/// probability densities of the colors are (Re φ)² and (Im φ)².
#[derive(Debug, Clone)]
pub struct PhaseSpaceWave {
    pub grid: PhaseGrid,
    amp: Field,
}

impl PhaseSpaceWave {
    /// Wrap amplitudes, enforcing the unit-norm invariant.
    pub fn new(grid: PhaseGrid, amp: Field) -> Result<Self> {
        if amp.nrows() != grid.n_z || amp.ncols() != grid.n_p {
            return Err(OscillatorError::GridMismatch);
        }
        let wave = Self { grid, amp };
        let defect = (wave.norm() - 1.0).abs();
        if defect > NORM_TOL {
            return Err(OscillatorError::NotNormalized(defect));
        }
        Ok(wave)
    }

    pub(crate) fn from_parts(grid: PhaseGrid, amp: Field) -> Self {
        Self { grid, amp }
    }

    pub fn amplitudes(&self) -> &Field {
        &self.amp
    }

    /// Σ |φ|² Δz Δp
    pub fn norm(&self) -> f64 {
        self.amp.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.grid.cell()
    }

    /// integrated color weights (Σ (Re φ)², Σ (Im φ)²) · Δz Δp
    pub fn color_populations(&self) -> (f64, f64) {
        let cell = self.grid.cell();
        let re: f64 = self.amp.iter().map(|v| v.re * v.re).sum();
        let im: f64 = self.amp.iter().map(|v| v.im * v.im).sum();
        (re * cell, im * cell)
    }

    /// overlap of the first color with the first color of another wave
    pub fn color_overlap(&self, other: &PhaseSpaceWave) -> Result<f64> {
        if self.grid != other.grid {
            return Err(OscillatorError::GridMismatch);
        }
        Ok(self
            .amp
            .iter()
            .zip(other.amp.iter())
            .map(|(a, b)| a.re * b.re)
            .sum::<f64>()
            * self.grid.cell())
    }
}

fn check_coverage(n: usize, m: f64, omega: f64, span: f64) -> Result<()> {
    let turning = ((2 * n + 1) as f64 / (m * omega)).sqrt();
    let required = 2.0 * turning + 8.0 / (m * omega).sqrt();
    if span < required {
        return Err(OscillatorError::GridCoverage { span, required });
    }
    Ok(())
}

fn check_aliasing(wave: &PhaseSpaceWave) -> Result<()> {
    let grid = &wave.grid;
    let amp = wave.amplitudes();
    let band: f64 = (0..grid.n_z)
        .map(|i| amp[(i, 0)].norm_sqr() + amp[(i, grid.n_p - 1)].norm_sqr())
        .sum::<f64>()
        * grid.cell();
    if band > ALIAS_TOL {
        return Err(OscillatorError::Resolution(format!(
            "energy {band:.3e} in the outermost momentum band"
        )));
    }
    Ok(())
}

/// Transform a pair of position-space wave functions into phase space:
/// φ(z, p) = ∫ dr e^{-ipr} ψ(z + r/2) ψ̃*(z - r/2) / √(2π), evaluated by a
/// discrete Fourier sum over r and renormalized.
pub fn wave_from_functions(
    grid: &PhaseGrid,
    psi: impl Fn(f64) -> Complex64,
    psi_tilde: impl Fn(f64) -> Complex64,
) -> Result<PhaseSpaceWave> {
    let dz = grid.dz();
    let n_r = 2 * grid.n_z;
    let r0 = -(n_r as f64) * dz / 2.0;
    let scale = dz / (2.0 * std::f64::consts::PI).sqrt();

    // phase table e^{-i p r}
    let phases: Vec<Vec<Complex64>> = (0..grid.n_p)
        .map(|j| {
            let p = grid.p(j);
            (0..n_r)
                .map(|l| {
                    let r = r0 + l as f64 * dz;
                    c(0.0, -p * r).exp()
                })
                .collect()
        })
        .collect();

    let mut amp = Field::zeros(grid.n_z, grid.n_p);
    let mut products = vec![Complex64::default(); n_r];
    for i in 0..grid.n_z {
        let z = grid.z(i);
        for (l, slot) in products.iter_mut().enumerate() {
            let r = r0 + l as f64 * dz;
            *slot = psi(z + 0.5 * r) * psi_tilde(z - 0.5 * r).conj();
        }
        for j in 0..grid.n_p {
            let mut sum = Complex64::default();
            for (l, &v) in products.iter().enumerate() {
                sum += phases[j][l] * v;
            }
            amp[(i, j)] = sum * c(scale, 0.0);
        }
    }

    // exact renormalization on the grid
    let norm = (amp.iter().map(|v| v.norm_sqr()).sum::<f64>() * grid.cell()).sqrt();
    let amp = amp * c(1.0 / norm, 0.0);
    let wave = PhaseSpaceWave::from_parts(grid.clone(), amp);
    check_aliasing(&wave)?;
    Ok(wave)
}

/// The phase-space wave of a mode pair: ψ_n against ψ_{n′}.
pub fn wave_from_modes(pair: &ModePair, grid: &PhaseGrid) -> Result<PhaseSpaceWave> {
    let omega = pair.omega();
    let span = grid.z_max - grid.z_min;
    check_coverage(pair.n.max(pair.n_prime), pair.m, omega, span)?;
    wave_from_functions(
        grid,
        |x| c(hermite_value(pair.n, pair.m, omega, x), 0.0),
        |x| c(hermite_value(pair.n_prime, pair.m, omega, x), 0.0),
    )
}

fn energy_with_signs(wave: &PhaseSpaceWave, m: f64, spring: f64, sign: f64) -> f64 {
    let grid = &wave.grid;
    let plan = SpectralPlan::new(grid);
    let phi = wave.amplitudes();
    let phi_z = plan.d_z(phi);
    let phi_zz = plan.d2_z(phi);
    let phi_p = plan.d_p(phi);
    let phi_pp = plan.d2_p(phi);

    let mut total = Complex64::default();
    for i in 0..grid.n_z {
        let z = grid.z(i);
        for j in 0..grid.n_p {
            let p = grid.p(j);
            let kinetic = (phi[(i, j)] * c(p * p, 0.0) - phi_zz[(i, j)] * c(0.25, 0.0)
                - phi_z[(i, j)] * c(0.0, sign * p))
                * c(0.5 / m, 0.0);
            let potential = (phi[(i, j)] * c(z * z, 0.0) - phi_pp[(i, j)] * c(0.25, 0.0)
                + phi_p[(i, j)] * c(0.0, sign * z))
                * c(0.5 * spring, 0.0);
            total += phi[(i, j)].conj() * (kinetic + potential);
        }
    }
    (total * c(grid.cell(), 0.0)).re
}

/// ⟨H_Q⟩ through the phase-space differential representation of the quantum
/// energy; conserved by the Liouville flow.
pub fn quantum_energy_expectation(wave: &PhaseSpaceWave, m: f64, spring: f64) -> f64 {
    energy_with_signs(wave, m, spring, 1.0)
}

/// ⟨H̃_Q⟩, the partner energy acting on the second position; also conserved.
pub fn partner_energy_expectation(wave: &PhaseSpaceWave, m: f64, spring: f64) -> f64 {
    energy_with_signs(wave, m, spring, -1.0)
}

/// ⟨H_L⟩ = ⟨H_Q⟩ - ⟨H̃_Q⟩, the Liouville energy; equals ω(n - n′) for mode
/// pairs.
pub fn liouville_energy_expectation(wave: &PhaseSpaceWave, m: f64, spring: f64) -> f64 {
    quantum_energy_expectation(wave, m, spring) - partner_energy_expectation(wave, m, spring)
}

/// ⟨X_Q⟩ = ∫ φ* (z + (i/2)∂_p) φ, the quantum position read off the
/// phase-space wave.
pub fn position_expectation(wave: &PhaseSpaceWave) -> f64 {
    let grid = &wave.grid;
    let plan = SpectralPlan::new(grid);
    let phi = wave.amplitudes();
    let phi_p = plan.d_p(phi);
    let mut total = Complex64::default();
    for i in 0..grid.n_z {
        let z = grid.z(i);
        for j in 0..grid.n_p {
            total += phi[(i, j)].conj() * (phi[(i, j)] * c(z, 0.0) + phi_p[(i, j)] * c(0.0, 0.5));
        }
    }
    (total * c(grid.cell(), 0.0)).re
}
