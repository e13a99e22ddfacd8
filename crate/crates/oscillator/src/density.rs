//! Coarse graining to the quantum density matrix through the double
//! position basis.

use nalgebra::DMatrix;
use num_complex::Complex64;
use qembed_core::DensityMatrix;

use crate::grid::PhaseGrid;
use crate::wave::PhaseSpaceWave;
use crate::Result;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Position grid on which the coarse-grained density matrix lives: every
/// second node of the z-grid, so that midpoints of pairs land on the z-grid.
pub fn position_grid(grid: &PhaseGrid) -> Vec<f64> {
    (0..grid.n_z / 2).map(|k| grid.z(2 * k)).collect()
}

/// The coarse-grained quantum density matrix with its grid metadata; matrix
/// entries carry the weight Δx so that the matrix trace is one.
#[derive(Debug, Clone)]
pub struct DoublePositionDensity {
    pub xs: Vec<f64>,
    pub dx: f64,
    pub rho: DensityMatrix,
    /// trace before the unit normalization, in grid-weighted units
    pub raw_trace: f64,
}

/// ψ̃(x, y) by the inverse momentum transform, then ρ(x, x′) = ∫ dy
/// ψ̃(x, y) ψ̃*(x′, y), Hermitian and normalized to unit trace.
pub fn double_position_density(wave: &PhaseSpaceWave) -> Result<DoublePositionDensity> {
    let grid = &wave.grid;
    let xs = position_grid(grid);
    let nx = xs.len();
    let dx = 2.0 * grid.dz();
    let phi = wave.amplitudes();

    // chi(z_i, r_l) = Σ_j e^{i p_j r_l} φ(z_i, p_j) Δp / (2π) at the
    // separations r_l = (l - nx + 1)·Δx reachable on the position grid
    let n_r = 2 * nx - 1;
    let measure = grid.dp() / (2.0 * std::f64::consts::PI);
    let phases: Vec<Vec<Complex64>> = (0..n_r)
        .map(|l| {
            let r = (l as isize - (nx as isize - 1)) as f64 * dx;
            (0..grid.n_p).map(|j| c(0.0, grid.p(j) * r).exp()).collect()
        })
        .collect();
    let mut chi = DMatrix::<Complex64>::zeros(grid.n_z, n_r);
    for i in 0..grid.n_z {
        for l in 0..n_r {
            let mut sum = Complex64::default();
            for j in 0..grid.n_p {
                sum += phases[l][j] * phi[(i, j)];
            }
            chi[(i, l)] = sum * c(measure, 0.0);
        }
    }

    // ψ̃(x_k, y_k') = chi at midpoint index k + k' and separation k - k'
    let psi_tilde = |k: usize, kp: usize| chi[(k + kp, (k as isize - kp as isize + nx as isize - 1) as usize)];

    let mut rho = DMatrix::<Complex64>::zeros(nx, nx);
    for a in 0..nx {
        for b in 0..nx {
            let mut sum = Complex64::default();
            for y in 0..nx {
                sum += psi_tilde(a, y) * psi_tilde(b, y).conj();
            }
            rho[(a, b)] = sum * c(dx, 0.0);
        }
    }

    // symmetrize round-off and normalize the grid-weighted trace
    let herm = (&rho + rho.adjoint()) * c(0.5, 0.0);
    let raw_trace = herm.trace().re * dx;
    let normalized = herm * c(dx / raw_trace, 0.0);
    Ok(DoublePositionDensity {
        xs,
        dx,
        rho: DensityMatrix::new(normalized)?,
        raw_trace,
    })
}
