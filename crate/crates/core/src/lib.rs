//! Dense operator algebra for small multi-qubit systems.
//!
//! Everything is built on `nalgebra::DMatrix<Complex64>` so the same code paths
//! serve one to six qubits. Hermitian eigenproblems go through
//! [`nalgebra::linalg::SymmetricEigen`], which handles complex Hermitian input;
//! no external LAPACK is needed.

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

mod density;
mod linalg;
mod operator;
mod serialize;

pub use density::{BlochVector, DensityMatrix, PositivityReport};
pub use linalg::{herm_eigen, herm_func, sqrtm_psd, unitary_eigen};
pub use operator::OperatorMatrix;

/// Complex dense matrix alias used throughout the workspace.
pub type CMatrix = DMatrix<Complex64>;

/// Tolerance for Hermiticity / trace checks on density matrices.
pub const HERM_TOL: f64 = 1e-12;
/// Eigenvalues above this (negative) floor still count as positive.
pub const POS_TOL: f64 = -1e-10;

pub const I0: Complex64 = Complex64::new(0.0, 0.0);
pub const I1: Complex64 = Complex64::new(1.0, 0.0);
pub const IM: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Error)]
pub enum CoreError {
    #[error("matrix is not Hermitian (max asymmetry {0:.3e})")]
    NotHermitian(f64),
    #[error("trace is {0:?}, expected 1")]
    BadTrace(Complex64),
    #[error("matrix is not unitary (max defect {0:.3e})")]
    NotUnitary(f64),
    #[error("dimension {found} does not match expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("dimension {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("invalid qubit subset {0:?}")]
    BadSubset(Vec<usize>),
    #[error("generator index {0} out of range for {1} qubit(s)")]
    BadGenerator(usize, usize),
    #[error("serialized matrix malformed: {0}")]
    BadSerialization(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;

/// 2x2 basis: identity and the three spin operators, indexed 0..=3.
pub fn tau(mu: usize) -> CMatrix {
    assert!(mu < 4, "basis index must be 0..=3");
    let e = |a: f64, b: f64, c: f64, d: f64, im: [f64; 4]| {
        DMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(a, im[0]),
                Complex64::new(b, im[1]),
                Complex64::new(c, im[2]),
                Complex64::new(d, im[3]),
            ],
        )
    };
    match mu {
        0 => e(1.0, 0.0, 0.0, 1.0, [0.0; 4]),
        1 => e(0.0, 1.0, 1.0, 0.0, [0.0; 4]),
        2 => e(0.0, 0.0, 0.0, 0.0, [0.0, -1.0, 1.0, 0.0]),
        _ => e(1.0, 0.0, 0.0, -1.0, [0.0; 4]),
    }
}

/// Number of qubits for a dim-2^q matrix.
pub fn qubit_count(dim: usize) -> Result<usize> {
    if dim.is_power_of_two() {
        Ok(dim.trailing_zeros() as usize)
    } else {
        Err(CoreError::NotPowerOfTwo(dim))
    }
}

/// Decompose a generator label `z` in `1..4^q` into per-qubit basis digits,
/// first digit = leftmost tensor factor.
pub fn generator_digits(z: usize, q: usize) -> Result<Vec<usize>> {
    if z == 0 || z >= 1 << (2 * q) {
        return Err(CoreError::BadGenerator(z, q));
    }
    Ok((0..q).map(|i| (z >> (2 * (q - 1 - i))) & 3).collect())
}

/// Inverse of [`generator_digits`].
pub fn generator_index(digits: &[usize]) -> usize {
    digits.iter().fold(0, |acc, &d| (acc << 2) | (d & 3))
}

/// Tensor product of single-qubit basis operators, one digit per factor.
pub fn tensor_generator(digits: &[usize]) -> OperatorMatrix {
    assert!(!digits.is_empty());
    let mut m = tau(digits[0]);
    for &d in &digits[1..] {
        m = m.kronecker(&tau(d));
    }
    OperatorMatrix::from_matrix(m)
}

/// Operator acting as `tau(k)` on qubit `pos` of a `q`-qubit system.
pub fn spin_op(q: usize, pos: usize, k: usize) -> OperatorMatrix {
    let mut digits = vec![0usize; q];
    digits[pos] = k;
    tensor_generator(&digits)
}

/// Random density matrix `C C† / tr(C C†)` with i.i.d. standard normal entries.
pub fn random_density(q: usize, rng: &mut impl rand::Rng) -> DensityMatrix {
    use rand::distributions::Distribution;
    let dim = 1usize << q;
    let normal = rand::distributions::Uniform::new(0.0f64, 1.0);
    // Box-Muller keeps us off any particular distribution crate.
    let mut gauss = || {
        let u1: f64 = normal.sample(rng).max(1e-300);
        let u2: f64 = normal.sample(rng);
        (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
    };
    let c = DMatrix::from_fn(dim, dim, |_, _| Complex64::new(gauss(), gauss()));
    let m = &c * c.adjoint();
    let tr: Complex64 = m.diagonal().iter().sum();
    DensityMatrix::new(m / tr).expect("construction is Hermitian with unit trace")
}

/// Random normalized pure state with i.i.d. complex normal amplitudes.
pub fn random_pure_state(q: usize, rng: &mut impl rand::Rng) -> Vec<Complex64> {
    use rand::distributions::Distribution;
    let dim = 1usize << q;
    let normal = rand::distributions::Uniform::new(0.0f64, 1.0);
    let mut gauss = || {
        let u1: f64 = normal.sample(rng).max(1e-300);
        let u2: f64 = normal.sample(rng);
        (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
    };
    let mut v: Vec<Complex64> = (0..dim).map(|_| Complex64::new(gauss(), gauss())).collect();
    let norm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    for c in &mut v {
        *c /= norm;
    }
    v
}

/// Uhlmann fidelity `(tr sqrt(sqrt(a) b sqrt(a)))^2`, clamped to `[0, 1]`.
pub fn fidelity(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(CoreError::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    let sa = sqrtm_psd(a.matrix());
    let inner = &sa * b.matrix() * &sa;
    let (evals, _) = herm_eigen(&inner);
    // Round-off turns exact zero eigenvalues into ~1e-17 noise, and sqrt blows
    // that up to ~3e-9 per mode; a relative cutoff keeps rank-deficient
    // comparisons accurate to ~1e-15.
    let lmax = evals.iter().cloned().fold(0.0f64, f64::max);
    let cutoff = lmax * 1e-13;
    let tr: f64 = evals
        .iter()
        .filter(|&&l| l > cutoff)
        .map(|&l| l.sqrt())
        .sum();
    Ok((tr * tr).clamp(0.0, 1.0))
}

/// `<psi| rho |psi>` — fidelity against a pure state, much cheaper than Uhlmann.
pub fn pure_fidelity(psi: &[Complex64], rho: &DensityMatrix) -> Result<f64> {
    if psi.len() != rho.dim() {
        return Err(CoreError::DimensionMismatch {
            expected: rho.dim(),
            found: psi.len(),
        });
    }
    let m = rho.matrix();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..psi.len() {
        let mut row = Complex64::new(0.0, 0.0);
        for j in 0..psi.len() {
            row += m[(i, j)] * psi[j];
        }
        acc += psi[i].conj() * row;
    }
    Ok(acc.re.clamp(0.0, 1.0))
}
