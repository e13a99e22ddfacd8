//! Hamiltonian extraction from a discrete unitary step.

use nalgebra::DMatrix;
use num_complex::Complex64;
use qembed_core::{unitary_eigen, OperatorMatrix};

use crate::{GateError, Result};

/// Result of extracting generators from a single evolution step `U`.
#[derive(Debug, Clone)]
pub struct EffectiveHamiltonian {
    /// exact generator: `exp(-i eps H)` equals the det-normalized `U`
    pub h: OperatorMatrix,
    /// two-step average `(i/2eps)(U - U^dagger)` for a time-constant step
    pub hbar: OperatorMatrix,
    /// anti-Hermitian defect; identically zero for a time-constant step
    pub j: OperatorMatrix,
    /// `U` with its global phase removed by det normalization
    pub normalized_u: OperatorMatrix,
    /// some eigenvalue sits exactly at the log branch cut (-1)
    pub branch_ambiguous: bool,
}

/// Matrix logarithm Hamiltonian of a unitary step: `H = (i/eps) ln U` on the
/// principal branch, with the arbitrary overall phase of `U` removed first.
pub fn effective_hamiltonian(u: &OperatorMatrix, eps: f64) -> Result<EffectiveHamiltonian> {
    if eps <= 0.0 {
        return Err(GateError::BadStep(eps));
    }
    u.check_unitary(1e-10)?;
    let dim = u.dim();
    let det = u.matrix().determinant();
    let global = det.arg() / dim as f64;
    let normalized = u.scale(Complex64::from_polar(1.0, -global));

    let (evals, basis) = unitary_eigen(normalized.matrix());
    let mut branch_ambiguous = false;
    let mut diag = DMatrix::zeros(dim, dim);
    for (i, lambda) in evals.iter().enumerate() {
        if (lambda + Complex64::new(1.0, 0.0)).norm() < 1e-9 {
            branch_ambiguous = true;
        }
        // lambda = exp(i theta), theta in (-pi, pi]; H eigenvalue is -theta/eps
        diag[(i, i)] = Complex64::new(-lambda.arg() / eps, 0.0);
    }
    let h_raw = &basis * diag * basis.adjoint();
    let h = OperatorMatrix::from_matrix((&h_raw + h_raw.adjoint()) * Complex64::new(0.5, 0.0));

    let hbar = u
        .sub(&u.dagger())
        .scale(Complex64::new(0.0, 1.0 / (2.0 * eps)));
    let j = OperatorMatrix::zeros(dim);
    Ok(EffectiveHamiltonian {
        h,
        hbar,
        j,
        normalized_u: normalized,
        branch_ambiguous,
    })
}

/// `exp(-i eps H)` for Hermitian `H`, used to round-trip the extraction.
pub fn evolution_from_hamiltonian(h: &OperatorMatrix, eps: f64) -> OperatorMatrix {
    let (evals, basis) = qembed_core::herm_eigen(h.matrix());
    let dim = h.dim();
    let diag = DMatrix::from_fn(dim, dim, |i, j| {
        if i == j {
            Complex64::from_polar(1.0, -eps * evals[i])
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    OperatorMatrix::from_matrix(&basis * diag * basis.adjoint())
}
