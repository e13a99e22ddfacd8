//! Ideal measurements on quantum subsystems.
//!
//! A sequence of two two-level measurements is fully described by either a
//! joint outcome table, or by the triple (first-measurement mean, conditional
//! second mean, measurement correlation). Coherent ideal measurements leave
//! the state untouched and correlate observables through the symmetrized
//! Heisenberg-operator product; decoherent ideal measurements project onto
//! the measured eigenspaces first. The crate also provides CHSH evaluators,
//! the three-qubit operator-chain sign clash, and the three-step
//! Stern-Gerlach scenario contrasting the two measurement types.

use thiserror::Error;

mod chsh;
mod kochen;
mod measure;
mod scenario;
mod tables;

pub use chsh::{
    cartesian_quantum, classical_chsh, directions_chsh, pairwise_bound, singlet, ChshMode,
    ChshReport, PairwiseBoundReport,
};
pub use kochen::{chains, kochen_specker_demo, BitChain, KochenSpeckerReport};
pub use measure::{
    coherent_correlation, coherent_mean, decoherent_measure, heisenberg, reduce,
    spectral_projectors, DecoherentMeasurement,
};
pub use scenario::{stern_gerlach, ScenarioReport};
pub use tables::{joint_from_expectations, ConditionalTable, JointTable};

#[derive(Debug, Error)]
pub enum MeasureError {
    #[error("entry {0} is negative: expectation triple is infeasible")]
    Infeasible(f64),
    #[error("joint table invalid: {0}")]
    BadTable(String),
    #[error("operator dimensions {left} and {right} do not match")]
    DimMismatch { left: usize, right: usize },
    #[error("operator is not a two-level observable (defect {0})")]
    NotTwoLevel(f64),
    #[error("distribution must cover six spins, found {0}")]
    WrongSpinCount(usize),
    #[error("spin index {0} outside 0..3")]
    BadSpinIndex(usize),
    #[error("direction must be a nonzero 3-vector")]
    BadDirection,
    #[error("unknown chsh mode {0}")]
    UnknownMode(String),
    #[error("core error: {0}")]
    Core(#[from] qembed_core::CoreError),
    #[error("automaton error: {0}")]
    Automaton(#[from] qembed_automaton::AutomatonError),
}

pub type Result<T> = std::result::Result<T, MeasureError>;
