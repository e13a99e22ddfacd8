//! Gate catalog and everything that turns gates into classical dynamics:
//! automaton realizations per bit-quantum map, gate sequencing, effective
//! Hamiltonians, the quantumness gate and the bottleneck learner.

use qembed_core::DensityMatrix;
use thiserror::Error;

mod catalog;
mod hamiltonian;
mod learner;
mod quantumness;
mod realize;

pub use catalog::{
    gate, icosahedron_a, icosahedron_b, icosahedron_constraint_defect, icosahedron_directions,
    icosahedron_spins, phase_gate, GateSpec, FIXED_NAMES,
};
pub use hamiltonian::{effective_hamiltonian, evolution_from_hamiltonian, EffectiveHamiltonian};
pub use learner::{
    bottleneck_floor, train_bottleneck, training_data, write_loss_csv, LearnerConfig, TrainResult,
};
pub use quantumness::{complex_from_embedding, quantumness_gate, real_embedding};
pub use realize::{
    automaton_realization, bloch_action, signed_permutation, Realization, SignedPermutation,
};

#[derive(Debug, Error)]
pub enum GateError {
    #[error("unknown gate {0}")]
    Unknown(String),
    #[error("unknown map {0}")]
    UnknownMap(String),
    #[error("gate dimension {gate} does not fit map dimension {map}")]
    DimMismatch { gate: usize, map: usize },
    #[error("time step {0} must be positive")]
    BadStep(f64),
    #[error("input shape {rows}x{cols} is not 8x8")]
    BadShape { rows: usize, cols: usize },
    #[error("degenerate input: projected matrix vanishes")]
    Degenerate,
    #[error("bottleneck width must be at least 1")]
    BadBottleneck,
    #[error("io error: {0}")]
    Io(String),
    #[error("core error: {0}")]
    Core(#[from] qembed_core::CoreError),
}

pub type Result<T> = std::result::Result<T, GateError>;

/// Apply a gate sequence to a state, leftmost gate first.
pub fn apply_sequence(rho: &DensityMatrix, names: &[&str]) -> Result<DensityMatrix> {
    let mut state = rho.clone();
    for name in names {
        let spec = gate(name)?;
        if spec.unitary.dim() != state.dim() {
            return Err(GateError::DimMismatch {
                gate: spec.unitary.dim(),
                map: state.dim(),
            });
        }
        state = state.apply_unitary(&spec.unitary)?;
    }
    Ok(state)
}
