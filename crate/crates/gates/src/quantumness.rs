//! The quantumness gate: any real 8x8 matrix is projected onto the real
//! embedding of a complex matrix and turned into a valid density matrix.

use nalgebra::DMatrix;
use num_complex::Complex64;
use qembed_core::{CMatrix, DensityMatrix};

use crate::{GateError, Result};

/// Real `2d x 2d` embedding of a complex `d x d` matrix:
/// `[[C_R, -C_I], [C_I, C_R]]`.
pub fn real_embedding(c: &CMatrix) -> DMatrix<f64> {
    let d = c.nrows();
    DMatrix::from_fn(2 * d, 2 * d, |i, j| {
        let (bi, bj) = (i / d, j / d);
        let v = c[(i % d, j % d)];
        match (bi, bj) {
            (0, 0) | (1, 1) => v.re,
            (0, 1) => -v.im,
            (1, 0) => v.im,
            _ => unreachable!(),
        }
    })
}

/// Complex matrix read off the block structure of an embedding (top-left real
/// part, bottom-left imaginary part).
pub fn complex_from_embedding(a: &DMatrix<f64>) -> CMatrix {
    let d = a.nrows() / 2;
    CMatrix::from_fn(d, d, |i, j| Complex64::new(a[(i, j)], a[(i + d, j)]))
}

/// Map an arbitrary real 8x8 matrix to a two-qubit density matrix: symmetrize
/// with the complex structure, read off `C`, and normalize `C C^dagger`.
pub fn quantumness_gate(a: &DMatrix<f64>) -> Result<DensityMatrix> {
    if a.nrows() != 8 || a.ncols() != 8 {
        return Err(GateError::BadShape {
            rows: a.nrows(),
            cols: a.ncols(),
        });
    }
    let d = 4;
    // I = [[0, -1], [1, 0]] in d x d blocks; compatible matrices commute with I
    let i_mat = DMatrix::from_fn(2 * d, 2 * d, |r, c| {
        if r + d == c {
            -1.0
        } else if c + d == r {
            1.0
        } else {
            0.0
        }
    });
    let a_tilde = -(&i_mat * a * &i_mat);
    let cbar = (a + a_tilde) * 0.5;
    let c = complex_from_embedding(&cbar);
    let prod = &c * c.adjoint();
    let trace = prod.trace().re;
    if trace < 1e-30 {
        return Err(GateError::Degenerate);
    }
    Ok(DensityMatrix::new(prod / Complex64::new(trace, 0.0))?)
}
