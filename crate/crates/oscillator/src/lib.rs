//! Harmonic-oscillator embedding: a two-color classical wave in phase space
//! evolves by the Liouville equation, and waves built from quantum mode
//! pairs coarse grain to the quantum density matrix, carry the quantum
//! energy as a conserved phase-space observable, and oscillate at the
//! differences of the quantum energies.

use thiserror::Error;

mod density;
mod evolve;
mod export;
mod grid;
mod hermite;
mod spectral;
mod spectrum;
mod wave;

pub use density::{double_position_density, position_grid, DoublePositionDensity};
pub use evolve::{default_time_step, liouville_evolve, liouville_evolve_sampled, EvolutionSample};
pub use export::{wave_summary, write_wave_csv, WaveSummary};
pub use grid::PhaseGrid;
pub use hermite::{apply_position_hamiltonian, hermite_mode, hermite_value, MODE_CUTOFF};
pub use spectrum::{mode_pair_spectrum, oscillation_spectrum, SpectrumPeak};
pub use wave::{
    liouville_energy_expectation, partner_energy_expectation, position_expectation,
    quantum_energy_expectation, wave_from_functions, wave_from_modes, ModePair, PhaseSpaceWave,
};

#[derive(Debug, Error)]
pub enum OscillatorError {
    #[error("mode index {0} exceeds the cutoff {MODE_CUTOFF}")]
    ModeTooHigh(usize),
    #[error("mass and spring constant must be positive, got m={m}, c={c}")]
    BadOscillator { m: f64, c: f64 },
    #[error("grid does not cover the mode: span {span} < required {required}")]
    GridCoverage { span: f64, required: f64 },
    #[error("resolution error: {0}")]
    Resolution(String),
    #[error("wave is not normalized: |norm - 1| = {0}")]
    NotNormalized(f64),
    #[error("time step {0} must be positive")]
    BadStep(f64),
    #[error("step-size error: norm drifted by {0} during evolution")]
    StepInstability(f64),
    #[error("grid mismatch between waves")]
    GridMismatch,
    #[error("io error: {0}")]
    Io(String),
    #[error("core error: {0}")]
    Core(#[from] qembed_core::CoreError),
}

pub type Result<T> = std::result::Result<T, OscillatorError>;
