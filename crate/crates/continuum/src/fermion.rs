//! A single fermionic mode as a qubit: occupation number, ladder operators
//! and their Hermitian quadratures.

use num_complex::Complex64;
use qembed_core::{CMatrix, DensityMatrix, OperatorMatrix};

use crate::{ContinuumError, Result};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Occupation number operator n = diag(1, 0) in the (occupied, empty) basis.
pub fn number_operator() -> OperatorMatrix {
    OperatorMatrix::from_matrix(CMatrix::from_row_slice(
        2,
        2,
        &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
    ))
}

/// Annihilation operator a.
pub fn annihilation_operator() -> OperatorMatrix {
    OperatorMatrix::from_matrix(CMatrix::from_row_slice(
        2,
        2,
        &[c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
    ))
}

/// Creation operator a†.
pub fn creation_operator() -> OperatorMatrix {
    annihilation_operator().dagger()
}

/// Fermion Hamiltonian H = ω(n - 1/2) = ω τ₃ / 2.
pub fn fermion_hamiltonian(omega: f64) -> OperatorMatrix {
    let half = OperatorMatrix::identity(2).scale(c(0.5, 0.0));
    number_operator().sub(&half).scale(c(omega, 0.0))
}

/// Expectation values of the fermionic observables in a one-qubit state.
#[derive(Debug, Clone, Copy)]
pub struct FermionExpectations {
    /// ⟨n⟩
    pub occupation: f64,
    /// ⟨a + a†⟩ = ⟨τ₁⟩
    pub quadrature_re: f64,
    /// ⟨i(a - a†)⟩ = ⟨τ₂⟩
    pub quadrature_im: f64,
}

pub fn fermion_observables(rho: &DensityMatrix) -> Result<FermionExpectations> {
    if rho.dim() != 2 {
        return Err(ContinuumError::NotOneQubit(rho.dim()));
    }
    let a = annihilation_operator();
    let adag = creation_operator();
    let x = a.add(&adag);
    let y = a.sub(&adag).scale(c(0.0, 1.0));
    Ok(FermionExpectations {
        occupation: rho.expectation(&number_operator())?,
        quadrature_re: rho.expectation(&x)?,
        quadrature_im: rho.expectation(&y)?,
    })
}
