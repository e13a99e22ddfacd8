//! The two-qubit decoherence/syncoherence worked example.
//!
//! A pure state of two qubits evolves unitarily while the one-qubit
//! subsystem, obtained by tracing out the partner, oscillates between pure
//! and maximally mixed. The subsystem obeys an exact evolution equation with
//! a Hermitian generator plus a traceless environment term, and the purity
//! rate is an explicit function of the subsystem Bloch vector and the
//! environment couplings.

use num_complex::Complex64;
use qembed_core::{tau, CMatrix, DensityMatrix, OperatorMatrix};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OpenSystemError {
    #[error("expected a two-qubit state, found dimension {0}")]
    NotTwoQubit(usize),
    #[error("expected a one-qubit state, found dimension {0}")]
    NotOneQubit(usize),
    #[error("frequency must be positive, got {0}")]
    BadFrequency(f64),
    #[error("io error: {0}")]
    Io(String),
    #[error("core error: {0}")]
    Core(#[from] qembed_core::CoreError),
}

pub type Result<T> = std::result::Result<T, OpenSystemError>;

/// internal angular frequency unit; times are reported in units of 1/omega
pub const OMEGA: f64 = 1.0;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// The Hermitian involution generating the full evolution.
pub fn coupling_matrix() -> OperatorMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    // only the corner block carries the 1/sqrt2 normalization; the middle
    // block must be the identity for the coupling to square to one
    let rows = [
        [s, 0.0, 0.0, -s],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [-s, 0.0, 0.0, -s],
    ];
    OperatorMatrix::from_matrix(CMatrix::from_fn(4, 4, |i, j| c(rows[i][j], 0.0)))
}

/// The product state with both qubits up; pure subsystem.
pub fn initial_product_state() -> DensityMatrix {
    let psi = [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
    DensityMatrix::from_pure(&psi).expect("normalized state")
}

/// The entangled state reached after a quarter period; mixed subsystem.
pub fn entangled_state() -> DensityMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let psi = [c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-s, 0.0)];
    DensityMatrix::from_pure(&psi).expect("normalized state")
}

/// Full-system evolution operator; since the coupling squares to one it is
/// a cosine/sine combination.
pub fn full_evolution_operator(t: f64, omega: f64) -> OperatorMatrix {
    let wt = omega * t;
    let id = OperatorMatrix::identity(4);
    id.scale(c(wt.cos(), 0.0))
        .add(&coupling_matrix().scale(c(0.0, wt.sin())))
}

/// Evolve the two-qubit state for a time `t`.
pub fn full_evolution(rho4: &DensityMatrix, t: f64, omega: f64) -> Result<DensityMatrix> {
    if rho4.dim() != 4 {
        return Err(OpenSystemError::NotTwoQubit(rho4.dim()));
    }
    if omega <= 0.0 {
        return Err(OpenSystemError::BadFrequency(omega));
    }
    rho4.apply_unitary(&full_evolution_operator(t, omega))
        .map_err(Into::into)
}

/// One-qubit subsystem state: trace over the second qubit.
pub fn subsystem(rho4: &DensityMatrix) -> Result<DensityMatrix> {
    if rho4.dim() != 4 {
        return Err(OpenSystemError::NotTwoQubit(rho4.dim()));
    }
    rho4.partial_trace(&[0]).map_err(Into::into)
}

/// Exact generator of the subsystem evolution at one instant: a Hermitian
/// piece and a traceless environment term built from the full state.
#[derive(Debug, Clone)]
pub struct SubsystemGenerator {
    pub hbar: OperatorMatrix,
    pub f: OperatorMatrix,
    /// real diagonal coupling of the environment term
    pub a: f64,
    /// complex off-diagonal coupling of the environment term
    pub b: Complex64,
}

/// Assemble the subsystem generator from the full two-qubit state, with an
/// optional extra Hermitian one-qubit Hamiltonian added to the closed part.
pub fn subsystem_generator_with(
    rho4: &DensityMatrix,
    omega: f64,
    extra_h: Option<&OperatorMatrix>,
) -> Result<SubsystemGenerator> {
    if rho4.dim() != 4 {
        return Err(OpenSystemError::NotTwoQubit(rho4.dim()));
    }
    let m = rho4.matrix();
    // double-index order (first qubit, second qubit), row-major in the flat
    // 4x4 matrix: (1,1)->0, (1,2)->1, (2,1)->2, (2,2)->3
    let a = -std::f64::consts::SQRT_2 * omega * m[(0, 3)].im;
    let b = c(0.0, omega / std::f64::consts::SQRT_2)
        * (m[(1, 0)] + m[(1, 3)] - m[(0, 2)] - m[(3, 2)]);
    let mut hbar =
        OperatorMatrix::from_matrix(tau(3)).scale(c(-omega / (2.0 * std::f64::consts::SQRT_2), 0.0));
    if let Some(extra) = extra_h {
        if extra.dim() != 2 {
            return Err(OpenSystemError::NotOneQubit(extra.dim()));
        }
        hbar = hbar.add(extra);
    }
    let f = OperatorMatrix::from_matrix(CMatrix::from_row_slice(
        2,
        2,
        &[c(a, 0.0), b, b.conj(), c(-a, 0.0)],
    ));
    Ok(SubsystemGenerator { hbar, f, a, b })
}

pub fn subsystem_generator(rho4: &DensityMatrix, omega: f64) -> Result<SubsystemGenerator> {
    subsystem_generator_with(rho4, omega, None)
}

impl SubsystemGenerator {
    /// Right-hand side of the subsystem evolution equation for the given
    /// subsystem state.
    pub fn rhs(&self, rho_bar: &DensityMatrix) -> Result<OperatorMatrix> {
        if rho_bar.dim() != 2 {
            return Err(OpenSystemError::NotOneQubit(rho_bar.dim()));
        }
        let comm = self.hbar.commutator(&rho_bar.as_operator());
        Ok(comm.scale(c(0.0, -1.0)).add(&self.f))
    }
}

/// Bloch components of a one-qubit state, read off the matrix elements.
pub fn bloch_components(rho_bar: &DensityMatrix) -> Result<[f64; 3]> {
    if rho_bar.dim() != 2 {
        return Err(OpenSystemError::NotOneQubit(rho_bar.dim()));
    }
    let m = rho_bar.matrix();
    Ok([
        2.0 * m[(0, 1)].re,
        -2.0 * m[(0, 1)].im,
        m[(0, 0)].re - m[(1, 1)].re,
    ])
}

/// Purity of a one-qubit state: squared length of the Bloch vector.
pub fn purity(rho_bar: &DensityMatrix) -> Result<f64> {
    let r = bloch_components(rho_bar)?;
    Ok(r[0] * r[0] + r[1] * r[1] + r[2] * r[2])
}

/// Instantaneous purity rate of the subsystem under the environment
/// couplings `a` and `b`.
pub fn purity_rate(rho_bar: &DensityMatrix, a: f64, b: Complex64) -> Result<f64> {
    let r = bloch_components(rho_bar)?;
    Ok(4.0 * (r[0] * b.re - r[1] * b.im + r[2] * a))
}

/// One sampled point of the subsystem trajectory.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TrajectoryPoint {
    pub t: f64,
    pub p: f64,
    pub rho1: f64,
    pub rho2: f64,
    pub rho3: f64,
    pub a: f64,
    pub re_b: f64,
    pub im_b: f64,
}

/// Sample the exact trajectory of the subsystem starting from the given full
/// state at the given times.
pub fn trajectory(rho4: &DensityMatrix, omega: f64, times: &[f64]) -> Result<Vec<TrajectoryPoint>> {
    times
        .iter()
        .map(|&t| {
            let full = full_evolution(rho4, t, omega)?;
            let bar = subsystem(&full)?;
            let gen = subsystem_generator(&full, omega)?;
            let r = bloch_components(&bar)?;
            Ok(TrajectoryPoint {
                t,
                p: purity(&bar)?,
                rho1: r[0],
                rho2: r[1],
                rho3: r[2],
                a: gen.a,
                re_b: gen.b.re,
                im_b: gen.b.im,
            })
        })
        .collect()
}

/// CSV export of a trajectory as `t,P,rho1,rho2,rho3,A,ReB,ImB`.
pub fn write_trajectory_csv<W: std::io::Write>(points: &[TrajectoryPoint], w: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(["t", "P", "rho1", "rho2", "rho3", "A", "ReB", "ImB"])
        .map_err(|e| OpenSystemError::Io(e.to_string()))?;
    for p in points {
        wtr.write_record([
            format!("{:.16e}", p.t),
            format!("{:.16e}", p.p),
            format!("{:.16e}", p.rho1),
            format!("{:.16e}", p.rho2),
            format!("{:.16e}", p.rho3),
            format!("{:.16e}", p.a),
            format!("{:.16e}", p.re_b),
            format!("{:.16e}", p.im_b),
        ])
        .map_err(|e| OpenSystemError::Io(e.to_string()))?;
    }
    wtr.flush().map_err(|e| OpenSystemError::Io(e.to_string()))?;
    Ok(())
}
