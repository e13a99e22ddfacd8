use nalgebra::linalg::{Schur, SymmetricEigen};
use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::CMatrix;

/// Eigendecomposition of a Hermitian matrix: `(eigenvalues, eigenvectors)`
/// with real eigenvalues sorted ascending and matching eigenvector columns.
pub fn herm_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = m.nrows();
    // enforce exact Hermiticity so round-off cannot leak imaginary parts
    let sym = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());
    let evals: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vecs = DMatrix::zeros(n, n);
    for (col, &i) in order.iter().enumerate() {
        vecs.set_column(col, &eig.eigenvectors.column(i));
    }
    (evals, vecs)
}

/// Apply a real function to the spectrum of a Hermitian matrix.
pub fn herm_func(m: &CMatrix, f: impl Fn(f64) -> f64) -> CMatrix {
    let (evals, vecs) = herm_eigen(m);
    let n = m.nrows();
    let diag = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            Complex64::new(f(evals[i]), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    &vecs * diag * vecs.adjoint()
}

/// Principal square root of a positive semidefinite Hermitian matrix; tiny
/// negative eigenvalues from round-off are clamped to zero.
pub fn sqrtm_psd(m: &CMatrix) -> CMatrix {
    herm_func(m, |l| l.max(0.0).sqrt())
}

/// Spectral decomposition of a normal (in practice: unitary) matrix via the
/// complex Schur form: returns unit-modulus eigenvalues and an orthonormal
/// eigenbasis. Off-diagonal Schur residue is ~1e-15 for unitary input and is
/// dropped.
pub fn unitary_eigen(u: &CMatrix) -> (Vec<Complex64>, CMatrix) {
    let schur = Schur::new(u.clone());
    let (q, t) = schur.unpack();
    let evals: Vec<Complex64> = (0..u.nrows()).map(|i| t[(i, i)]).collect();
    (evals, q)
}
