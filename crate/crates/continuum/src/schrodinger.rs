//! Continuous-time one-qubit evolution: rotations of the classical sphere
//! become unitary conjugations, and smooth axis/frequency schedules are
//! integrated through the von Neumann equation.

use num_complex::Complex64;
use qembed_core::{tau, CMatrix, DensityMatrix, OperatorMatrix};

use crate::{ContinuumError, Result, UNIT_TOL};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// τ·b for a 3-component axis.
fn tau_dot(b: &[f64; 3]) -> CMatrix {
    tau(1) * c(b[0], 0.0) + tau(2) * c(b[1], 0.0) + tau(3) * c(b[2], 0.0)
}

fn check_unit(b: &[f64; 3]) -> Result<()> {
    let norm = (b[0] * b[0] + b[1] * b[1] + b[2] * b[2]).sqrt();
    if (norm - 1.0).abs() > UNIT_TOL {
        return Err(ContinuumError::NotUnit((norm - 1.0).abs()));
    }
    Ok(())
}

/// One-qubit Hamiltonian for a rotation axis b: H(b) = -ω (τ·b) / 2.
pub fn hamiltonian(omega: f64, b: &[f64; 3]) -> Result<OperatorMatrix> {
    check_unit(b)?;
    Ok(OperatorMatrix::from_matrix(
        tau_dot(b) * c(-0.5 * omega, 0.0),
    ))
}

/// The unitary exp(iγ(τ·b)/2) realizing a rotation by γ around the axis b on
/// the quantum side.
pub fn rotation_unitary(b: &[f64; 3], gamma: f64) -> OperatorMatrix {
    let half = 0.5 * gamma;
    let m = CMatrix::identity(2, 2) * c(half.cos(), 0.0) + tau_dot(b) * c(0.0, half.sin());
    OperatorMatrix::from_matrix(m)
}

/// Default integrator step for a frequency scale: 1e-3 / max|ω|.
pub fn default_step(omega_max: f64) -> f64 {
    1e-3 / omega_max.abs().max(f64::MIN_POSITIVE)
}

/// drift in tr ρ² beyond which the step size is considered unstable
const PURITY_DRIFT_TOL: f64 = 1e-6;

fn rhs(h: &CMatrix, rho: &CMatrix) -> CMatrix {
    (h * rho - rho * h) * c(0.0, -1.0)
}

fn purity_of(m: &CMatrix) -> f64 {
    m.iter().map(|v| v.norm_sqr()).sum()
}

/// Integrate i∂ₜρ = [H(t), ρ] with H(t) = -ω(t) (τ·b(t)) / 2 by the
/// classical fourth-order one-step method with fixed step ≤ dt. Fails if the
/// purity drifts by more than 1e-6 over the run, which signals a too-large
/// step.
pub fn schrodinger_integrate(
    rho0: &DensityMatrix,
    omega: impl Fn(f64) -> f64,
    b: impl Fn(f64) -> [f64; 3],
    t_final: f64,
    dt: f64,
) -> Result<DensityMatrix> {
    if rho0.dim() != 2 {
        return Err(ContinuumError::NotOneQubit(rho0.dim()));
    }
    if dt <= 0.0 {
        return Err(ContinuumError::BadStep(dt));
    }
    let mut rho = rho0.matrix().clone();
    let p0 = purity_of(&rho);
    if t_final > 0.0 {
        let steps = (t_final / dt).ceil() as usize;
        let h = t_final / steps as f64;
        let ham = |t: f64| -> Result<CMatrix> {
            let axis = b(t);
            check_unit(&axis)?;
            Ok(tau_dot(&axis) * c(-0.5 * omega(t), 0.0))
        };
        for i in 0..steps {
            let t = i as f64 * h;
            let h1 = ham(t)?;
            let h2 = ham(t + 0.5 * h)?;
            let h4 = ham(t + h)?;
            let k1 = rhs(&h1, &rho);
            let k2 = rhs(&h2, &(&rho + &k1 * c(0.5 * h, 0.0)));
            let k3 = rhs(&h2, &(&rho + &k2 * c(0.5 * h, 0.0)));
            let k4 = rhs(&h4, &(&rho + &k3 * c(h, 0.0)));
            rho += (k1 + k2 * c(2.0, 0.0) + k3 * c(2.0, 0.0) + k4) * c(h / 6.0, 0.0);
        }
    }
    let drift = (purity_of(&rho) - p0).abs();
    if drift > PURITY_DRIFT_TOL {
        return Err(ContinuumError::StepInstability(drift));
    }
    DensityMatrix::new(rho).map_err(ContinuumError::from)
}

/// One constant-axis stretch of a piecewise evolution schedule.
#[derive(Debug, Clone, Copy)]
pub struct EvolutionSegment {
    pub duration: f64,
    pub omega: f64,
    pub axis: [f64; 3],
}

/// Integrate a piecewise-constant schedule segment by segment, so that the
/// integrator never steps across an axis discontinuity.
pub fn schrodinger_integrate_piecewise(
    rho0: &DensityMatrix,
    segments: &[EvolutionSegment],
    dt: f64,
) -> Result<DensityMatrix> {
    let mut state = rho0.clone();
    for seg in segments {
        if seg.duration < 0.0 {
            return Err(ContinuumError::BadStep(seg.duration));
        }
        state = schrodinger_integrate(&state, |_| seg.omega, |_| seg.axis, seg.duration, dt)?;
    }
    Ok(state)
}
