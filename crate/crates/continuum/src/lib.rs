//! Continuous-variable classical systems realizing qubits: half-space Ising
//! observables, the probabilistic clock, the sphere one-qubit model with
//! spins in arbitrary directions, rotation updates checked against unitary
//! conjugation, and continuous-time von Neumann integration.

use thiserror::Error;

mod clock;
mod fermion;
mod quad;
mod schrodinger;
mod sphere;
mod spin;

pub use clock::{
    clock_evolve, clock_expectation, clock_hamiltonian, clock_unitary, write_clock_csv,
    ClockState,
};
pub use fermion::{
    annihilation_operator, creation_operator, fermion_hamiltonian, fermion_observables,
    number_operator, FermionExpectations,
};
pub use quad::{gauss_legendre, integrate, GaussRule};
pub use schrodinger::{
    default_step, hamiltonian, rotation_unitary, schrodinger_integrate,
    schrodinger_integrate_piecewise, EvolutionSegment,
};
pub use sphere::{
    rotate_bloch, rotate_update, sphere_expectation, sphere_expectation_monte_carlo,
    MonteCarloEstimate, RadialProfile, SphereState,
};
pub use spin::DirectionSpin;

#[derive(Debug, Error)]
pub enum ContinuumError {
    #[error("direction must be a unit vector, norm deviates by {0}")]
    NotUnit(f64),
    #[error("direction must have 2 or 3 components, got {0}")]
    BadDimension(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimMismatch { expected: usize, found: usize },
    #[error("expected a one-qubit state, found dimension {0}")]
    NotOneQubit(usize),
    #[error("time step {0} must be positive")]
    BadStep(f64),
    #[error("step-size error: purity drifted by {0} during integration")]
    StepInstability(f64),
    #[error("monte carlo sample size must be at least 2")]
    EmptySample,
    #[error("io error: {0}")]
    Io(String),
    #[error("core error: {0}")]
    Core(#[from] qembed_core::CoreError),
}

pub type Result<T> = std::result::Result<T, ContinuumError>;

/// tolerance for unit-vector checks on directions and axes
pub const UNIT_TOL: f64 = 1e-12;
