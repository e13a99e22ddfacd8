use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::{CMatrix, CoreError, Result};

/// A dense complex operator on a 2^q-dimensional Hilbert space.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    mat: CMatrix,
}

impl OperatorMatrix {
    pub fn from_matrix(mat: CMatrix) -> Self {
        assert_eq!(mat.nrows(), mat.ncols(), "operators must be square");
        Self { mat }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            mat: DMatrix::identity(dim, dim),
        }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            mat: DMatrix::zeros(dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> CMatrix {
        self.mat
    }

    pub fn dagger(&self) -> Self {
        Self {
            mat: self.mat.adjoint(),
        }
    }

    pub fn kron(&self, rhs: &Self) -> Self {
        Self {
            mat: self.mat.kronecker(&rhs.mat),
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            mat: &self.mat * s,
        }
    }

    pub fn trace(&self) -> Complex64 {
        self.mat.diagonal().iter().sum()
    }

    /// Largest |A - A†| entry.
    pub fn hermiticity_defect(&self) -> f64 {
        let adj = self.mat.adjoint();
        (&self.mat - adj)
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    /// Largest |U†U - 1| entry.
    pub fn unitarity_defect(&self) -> f64 {
        let dim = self.dim();
        let prod = self.mat.adjoint() * &self.mat;
        let id: CMatrix = DMatrix::identity(dim, dim);
        (prod - id).iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_defect() <= tol
    }

    pub fn check_unitary(&self, tol: f64) -> Result<()> {
        let d = self.unitarity_defect();
        if d <= tol {
            Ok(())
        } else {
            Err(CoreError::NotUnitary(d))
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self {
            mat: &self.mat * &rhs.mat,
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self {
            mat: &self.mat + &rhs.mat,
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self {
            mat: &self.mat - &rhs.mat,
        }
    }

    pub fn commutator(&self, rhs: &Self) -> Self {
        Self {
            mat: &self.mat * &rhs.mat - &rhs.mat * &self.mat,
        }
    }

    pub fn anticommutator(&self, rhs: &Self) -> Self {
        Self {
            mat: &self.mat * &rhs.mat + &rhs.mat * &self.mat,
        }
    }

    /// Largest entry modulus; handy for comparing operators in tests.
    pub fn max_norm(&self) -> f64 {
        self.mat.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, rhs: &Self, tol: f64) -> bool {
        self.dim() == rhs.dim() && self.sub(rhs).max_norm() <= tol
    }
}
