//! The probabilistic clock: a rotating half-circle distribution whose spin
//! expectation in any direction is the cosine of the angle to the pointer.

use std::f64::consts::{FRAC_PI_2, PI};

use qembed_core::{BlochVector, DensityMatrix, OperatorMatrix};

use crate::quad::{gauss_legendre, integrate, GaussRule};
use crate::schrodinger::rotation_unitary;
use crate::{ContinuumError, Result};

/// number of quadrature nodes per smooth subinterval
const NODES: usize = 256;

/// A clock state: pointer angle β with the distribution
/// p(φ) = ½ cos(φ-β) Θ(cos(φ-β)), advancing with angular frequency ω.
#[derive(Debug, Clone, Copy)]
pub struct ClockState {
    pub beta: f64,
    pub omega: f64,
}

impl ClockState {
    pub fn new(beta: f64, omega: f64) -> Self {
        Self { beta, omega }
    }

    /// Probability density at the angle φ.
    pub fn density(&self, phi: f64) -> f64 {
        let c = (phi - self.beta).cos();
        if c > 0.0 {
            0.5 * c
        } else {
            0.0
        }
    }

    /// Two-component quantum state carried by the clock: Bloch vector
    /// (cos β, 0, sin β), a real pure one-qubit density matrix.
    pub fn density_matrix(&self) -> Result<DensityMatrix> {
        DensityMatrix::from_bloch(&BlochVector(vec![self.beta.cos(), 0.0, self.beta.sin()]))
            .map_err(ContinuumError::from)
    }
}

/// Expectation of the half-circle spin s(ψ) in the clock state, by angular
/// quadrature over the support of the density split at the sign flips of the
/// spin. Equals cos(ψ - β).
pub fn clock_expectation(state: &ClockState, psi: f64) -> f64 {
    let rule = gauss_legendre(NODES);
    clock_expectation_with(state, psi, &rule)
}

pub(crate) fn clock_expectation_with(state: &ClockState, psi: f64, rule: &GaussRule) -> f64 {
    let a = state.beta - FRAC_PI_2;
    let b = state.beta + FRAC_PI_2;
    // the spin flips where cos(φ - ψ) vanishes: φ = ψ + π/2 + kπ
    let mut cuts = vec![a];
    let mut k = ((a - psi - FRAC_PI_2) / PI).floor() as i64 - 1;
    loop {
        let phi = psi + FRAC_PI_2 + k as f64 * PI;
        if phi >= b {
            break;
        }
        if phi > a {
            cuts.push(phi);
        }
        k += 1;
    }
    cuts.push(b);

    let mut total = 0.0;
    for pair in cuts.windows(2) {
        total += integrate(rule, pair[0], pair[1], |phi| {
            let s = if (phi - psi).cos() >= 0.0 { 1.0 } else { -1.0 };
            state.density(phi) * s
        });
    }
    total
}

/// Advance the pointer: β ← β + ωΔt.
pub fn clock_evolve(state: &ClockState, dt: f64) -> ClockState {
    ClockState {
        beta: state.beta + state.omega * dt,
        omega: state.omega,
    }
}

/// Hamiltonian of the quantum subsystem carried by the clock: -ω τ₂ / 2.
pub fn clock_hamiltonian(omega: f64) -> OperatorMatrix {
    OperatorMatrix::from_matrix(qembed_core::tau(2))
        .scale(num_complex::Complex64::new(-0.5 * omega, 0.0))
}

/// Evolution operator exp(iωt τ₂ / 2) of the quantum subsystem.
pub fn clock_unitary(omega: f64, t: f64) -> OperatorMatrix {
    rotation_unitary(&[0.0, 1.0, 0.0], omega * t)
}

/// CSV export of clock spin expectations as `t,psi,expectation`, sampling
/// each requested direction at every time step up to `t_max`.
pub fn write_clock_csv<W: std::io::Write>(
    state: &ClockState,
    t_max: f64,
    dt: f64,
    psi_list: &[f64],
    w: W,
) -> Result<()> {
    if dt <= 0.0 {
        return Err(ContinuumError::BadStep(dt));
    }
    let rule = gauss_legendre(NODES);
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(["t", "psi", "expectation"])
        .map_err(|e| ContinuumError::Io(e.to_string()))?;
    let steps = (t_max / dt).round() as usize;
    for i in 0..=steps {
        let t = i as f64 * dt;
        let now = clock_evolve(state, t);
        for &psi in psi_list {
            let value = clock_expectation_with(&now, psi, &rule);
            wtr.write_record([
                format!("{:.16e}", t),
                format!("{:.16e}", psi),
                format!("{:.16e}", value),
            ])
            .map_err(|e| ContinuumError::Io(e.to_string()))?;
        }
    }
    wtr.flush().map_err(|e| ContinuumError::Io(e.to_string()))?;
    Ok(())
}
