use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::{
    generator_digits, herm_eigen, qubit_count, tensor_generator, CMatrix, CoreError,
    OperatorMatrix, Result, HERM_TOL, POS_TOL,
};

/// Generalized Bloch vector: one real component per non-identity generator,
/// ordered by generator label `z = 1..4^q - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlochVector(pub Vec<f64>);

impl BlochVector {
    pub fn zeros(q: usize) -> Self {
        Self(vec![0.0; (1 << (2 * q)) - 1])
    }

    pub fn qubits(&self) -> Result<usize> {
        let n = self.0.len() + 1;
        let mut q = 0;
        while 1usize << (2 * q) < n {
            q += 1;
        }
        if 1usize << (2 * q) == n {
            Ok(q)
        } else {
            Err(CoreError::NotPowerOfTwo(n))
        }
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

/// Positivity diagnosis of a Hermitian unit-trace matrix.
#[derive(Debug, Clone)]
pub struct PositivityReport {
    pub eigenvalues: Vec<f64>,
    pub min_eigenvalue: f64,
    pub positive: bool,
}

/// Hermitian, unit-trace matrix on 2^q dimensions.
///
/// Positivity is deliberately *not* part of the invariant: the classical maps
/// in this workspace can produce operators that fail it, and reporting that
/// failure is part of their job. Use [`DensityMatrix::check_positive`] when a
/// genuine quantum state is required.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: CMatrix,
}

impl DensityMatrix {
    pub fn new(mat: CMatrix) -> Result<Self> {
        let op = OperatorMatrix::from_matrix(mat);
        let defect = op.hermiticity_defect();
        if defect > HERM_TOL {
            return Err(CoreError::NotHermitian(defect));
        }
        let tr = op.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > HERM_TOL {
            return Err(CoreError::BadTrace(tr));
        }
        qubit_count(op.dim())?;
        Ok(Self {
            mat: op.into_matrix(),
        })
    }

    /// Pure state `|psi><psi|`.
    pub fn from_pure(psi: &[Complex64]) -> Result<Self> {
        let dim = psi.len();
        let norm: f64 = psi.iter().map(|c| c.norm_sqr()).sum();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(CoreError::BadTrace(Complex64::new(norm, 0.0)));
        }
        let mat = DMatrix::from_fn(dim, dim, |i, j| psi[i] * psi[j].conj() / norm);
        Self::new(mat)
    }

    pub fn maximally_mixed(q: usize) -> Self {
        let dim = 1usize << q;
        Self {
            mat: DMatrix::identity(dim, dim) / Complex64::new(dim as f64, 0.0),
        }
    }

    /// `rho = 2^{-q} (1 + sum_z b_z L_z)`. Positivity is not implied.
    pub fn from_bloch(b: &BlochVector) -> Result<Self> {
        let q = b.qubits()?;
        let dim = 1usize << q;
        let mut mat: CMatrix = DMatrix::identity(dim, dim);
        for (idx, &bz) in b.0.iter().enumerate() {
            if bz == 0.0 {
                continue;
            }
            let digits = generator_digits(idx + 1, q)?;
            mat += tensor_generator(&digits).matrix() * Complex64::new(bz, 0.0);
        }
        mat /= Complex64::new(dim as f64, 0.0);
        Ok(Self { mat })
    }

    /// Bloch components `b_z = tr(rho L_z)`.
    pub fn bloch(&self) -> BlochVector {
        let q = self.qubits();
        let n = (1usize << (2 * q)) - 1;
        let mut out = Vec::with_capacity(n);
        for z in 1..=n {
            let digits = generator_digits(z, q).expect("z in range");
            let gen = tensor_generator(&digits);
            out.push(self.expectation_unchecked(&gen));
        }
        BlochVector(out)
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn qubits(&self) -> usize {
        qubit_count(self.dim()).expect("validated at construction")
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn as_operator(&self) -> OperatorMatrix {
        OperatorMatrix::from_matrix(self.mat.clone())
    }

    /// `tr(rho^2)`.
    pub fn purity(&self) -> f64 {
        self.mat
            .iter()
            .zip(self.mat.transpose().iter())
            .map(|(a, b)| (a * b).re)
            .sum::<f64>()
            // transpose iterates the conjugate pairing in column order
            .max(0.0)
    }

    /// `tr(rho A)` for Hermitian `A`; the imaginary part is discarded after a
    /// sanity check in debug builds.
    pub fn expectation(&self, a: &OperatorMatrix) -> Result<f64> {
        if a.dim() != self.dim() {
            return Err(CoreError::DimensionMismatch {
                expected: self.dim(),
                found: a.dim(),
            });
        }
        Ok(self.expectation_unchecked(a))
    }

    fn expectation_unchecked(&self, a: &OperatorMatrix) -> f64 {
        let am = a.matrix();
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..self.dim() {
            for k in 0..self.dim() {
                acc += self.mat[(i, k)] * am[(k, i)];
            }
        }
        debug_assert!(acc.im.abs() < 1e-8, "expectation not real: {acc}");
        acc.re
    }

    /// `U rho U†`; `U` is required to be unitary to 1e-10.
    pub fn apply_unitary(&self, u: &OperatorMatrix) -> Result<Self> {
        if u.dim() != self.dim() {
            return Err(CoreError::DimensionMismatch {
                expected: self.dim(),
                found: u.dim(),
            });
        }
        u.check_unitary(1e-10)?;
        let m = u.matrix() * &self.mat * u.matrix().adjoint();
        // re-symmetrize to keep round-off from accumulating over long chains
        let sym = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
        Ok(Self { mat: sym })
    }

    /// Trace out every qubit not listed in `keep` (indices ascending, qubit 0
    /// is the leftmost tensor factor).
    pub fn partial_trace(&self, keep: &[usize]) -> Result<Self> {
        let q = self.qubits();
        let ok = !keep.is_empty()
            && keep.windows(2).all(|w| w[0] < w[1])
            && keep.iter().all(|&k| k < q);
        if !ok {
            return Err(CoreError::BadSubset(keep.to_vec()));
        }
        let traced: Vec<usize> = (0..q).filter(|i| !keep.contains(i)).collect();
        let kq = keep.len();
        let kdim = 1usize << kq;
        let tdim = 1usize << traced.len();
        // map (kept bits, traced bits) -> full index; qubit i owns bit (q-1-i)
        let build = |kept: usize, tr: usize| -> usize {
            let mut idx = 0usize;
            for (pos, &qi) in keep.iter().enumerate() {
                if kept >> (kq - 1 - pos) & 1 == 1 {
                    idx |= 1 << (q - 1 - qi);
                }
            }
            for (pos, &qi) in traced.iter().enumerate() {
                if tr >> (traced.len() - 1 - pos) & 1 == 1 {
                    idx |= 1 << (q - 1 - qi);
                }
            }
            idx
        };
        let mut out: CMatrix = DMatrix::zeros(kdim, kdim);
        for i in 0..kdim {
            for j in 0..kdim {
                let mut acc = Complex64::new(0.0, 0.0);
                for t in 0..tdim {
                    acc += self.mat[(build(i, t), build(j, t))];
                }
                out[(i, j)] = acc;
            }
        }
        Ok(Self { mat: out })
    }

    /// Eigenvalue check against the positivity floor.
    pub fn check_positive(&self) -> PositivityReport {
        let (evals, _) = herm_eigen(&self.mat);
        let min = evals.iter().cloned().fold(f64::INFINITY, f64::min);
        PositivityReport {
            positive: min >= POS_TOL,
            min_eigenvalue: min,
            eigenvalues: evals,
        }
    }
}
