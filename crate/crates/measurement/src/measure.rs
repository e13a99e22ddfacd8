//! Coherent and decoherent ideal measurements and density-matrix reduction.

use num_complex::Complex64;
use qembed_core::{herm_eigen, CMatrix, DensityMatrix, OperatorMatrix};

use crate::{ConditionalTable, MeasureError, Result};

/// Two exactly degenerate spin eigenvalues may split by round-off; cluster
/// within this gap when building spectral projectors.
const CLUSTER_GAP: f64 = 1e-8;
/// A measurement branch below this probability is treated as absent.
const BRANCH_TOL: f64 = 1e-12;

fn check_dims(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(MeasureError::DimMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    Ok(())
}

/// Heisenberg operator of `a` transported backwards through the evolution
/// `u`: the operator measured after the evolution, expressed at its start.
pub fn heisenberg(a: &OperatorMatrix, u: &OperatorMatrix) -> Result<OperatorMatrix> {
    check_dims(a, u)?;
    Ok(u.dagger().mul(a).mul(u))
}

/// Expectation value of `a` measured after the evolution `u`, from the
/// undisturbed state.
pub fn coherent_mean(rho: &DensityMatrix, a: &OperatorMatrix, u: &OperatorMatrix) -> Result<f64> {
    rho.expectation(&heisenberg(a, u)?).map_err(Into::into)
}

/// Measurement correlation for a coherent ideal sequence: B first, then the
/// evolution `u12`, then A. The symmetrized Heisenberg product keeps the
/// value real for non-commuting operators.
pub fn coherent_correlation(
    rho: &DensityMatrix,
    a: &OperatorMatrix,
    b: &OperatorMatrix,
    u12: &OperatorMatrix,
) -> Result<f64> {
    check_dims(a, b)?;
    let a_h = heisenberg(a, u12)?;
    let sym = a_h.anticommutator(b).scale(Complex64::new(0.5, 0.0));
    rho.expectation(&sym).map_err(Into::into)
}

/// Spectral projectors of a Hermitian operator, one per eigenvalue cluster,
/// ordered by ascending eigenvalue.
pub fn spectral_projectors(op: &OperatorMatrix) -> Result<Vec<(f64, OperatorMatrix)>> {
    let dim = op.dim();
    let (evals, evecs) = herm_eigen(op.matrix());
    let mut out: Vec<(f64, CMatrix, usize)> = Vec::new();
    for (i, &lambda) in evals.iter().enumerate() {
        let v = evecs.column(i);
        let outer = &v * v.adjoint();
        match out.last_mut() {
            Some((head, proj, count)) if (lambda - *head).abs() <= CLUSTER_GAP => {
                *proj += outer;
                *count += 1;
            }
            _ => out.push((lambda, outer, 1)),
        }
    }
    Ok(out
        .into_iter()
        .map(|(lambda, proj, _)| {
            debug_assert_eq!(proj.nrows(), dim);
            (lambda, OperatorMatrix::from_matrix(proj))
        })
        .collect())
}

/// Project the density matrix onto the eigenspaces of the measured operator:
/// the diagonal-in-B blocks survive, coherences between different outcomes
/// are erased, and every outcome probability is unchanged.
pub fn reduce(rho: &DensityMatrix, b_op: &OperatorMatrix) -> Result<DensityMatrix> {
    if rho.dim() != b_op.dim() {
        return Err(MeasureError::DimMismatch {
            left: rho.dim(),
            right: b_op.dim(),
        });
    }
    let mut acc = CMatrix::zeros(rho.dim(), rho.dim());
    for (_, p) in spectral_projectors(b_op)? {
        acc += p.matrix() * rho.matrix() * p.matrix();
    }
    DensityMatrix::new(acc).map_err(Into::into)
}

/// Outcome of a decoherent ideal sequence: B first (with loss of coherence),
/// then the evolution `u12`, then A.
#[derive(Debug, Clone)]
pub struct DecoherentMeasurement {
    pub conditionals: ConditionalTable,
    pub mean_b: f64,
    pub mean_a_b: f64,
    pub correlation: f64,
}

fn two_level_projectors(b: &OperatorMatrix) -> Result<(OperatorMatrix, OperatorMatrix)> {
    let herm = b.hermiticity_defect();
    let invol = b.mul(b).sub(&OperatorMatrix::identity(b.dim())).max_norm();
    let defect = herm.max(invol);
    if defect > 1e-10 {
        return Err(MeasureError::NotTwoLevel(defect));
    }
    let half = Complex64::new(0.5, 0.0);
    let id = OperatorMatrix::identity(b.dim());
    Ok((id.add(b).scale(half), id.sub(b).scale(half)))
}

/// Decoherent ideal measurement of the two-level B followed by A after the
/// evolution `u12`. Conditionals come from the projected states; a branch
/// with vanishing probability for B is absent.
pub fn decoherent_measure(
    rho: &DensityMatrix,
    b_op: &OperatorMatrix,
    a_op: &OperatorMatrix,
    u12: &OperatorMatrix,
) -> Result<DecoherentMeasurement> {
    check_dims(a_op, b_op)?;
    if rho.dim() != b_op.dim() {
        return Err(MeasureError::DimMismatch {
            left: rho.dim(),
            right: b_op.dim(),
        });
    }
    let (p_plus, p_minus) = two_level_projectors(b_op)?;
    let a_h = heisenberg(a_op, u12)?;
    let branch = |p: &OperatorMatrix| -> Result<Option<[f64; 2]>> {
        let piece = p.matrix() * rho.matrix() * p.matrix();
        let w = piece.trace().re;
        if w <= BRANCH_TOL {
            return Ok(None);
        }
        let state = DensityMatrix::new(piece / Complex64::new(w, 0.0))?;
        let mean = state.expectation(&a_h)?;
        Ok(Some([0.5 * (1.0 + mean), 0.5 * (1.0 - mean)]))
    };
    let rho_r = reduce(rho, b_op)?;
    let mean_a_b = rho_r.expectation(&a_h)?;
    // B rho_r is Hermitian because the reduced state commutes with B
    let correlation = (a_h.mul(b_op).matrix() * rho_r.matrix()).trace().re;
    Ok(DecoherentMeasurement {
        conditionals: ConditionalTable {
            given_plus: branch(&p_plus)?,
            given_minus: branch(&p_minus)?,
        },
        mean_b: rho.expectation(b_op)?,
        mean_a_b,
        correlation,
    })
}
