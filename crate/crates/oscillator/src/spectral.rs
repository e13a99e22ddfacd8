//! Spectral differentiation of grid functions on the periodic phase-space
//! box.

use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::grid::PhaseGrid;

pub type Field = DMatrix<Complex64>;

pub struct SpectralPlan {
    fft_z: Arc<dyn Fft<f64>>,
    ifft_z: Arc<dyn Fft<f64>>,
    fft_p: Arc<dyn Fft<f64>>,
    ifft_p: Arc<dyn Fft<f64>>,
    /// i·k/n factors for first derivatives, inverse normalization included
    kz: Vec<Complex64>,
    kp: Vec<Complex64>,
    /// -k²/n factors for second derivatives
    kz2: Vec<Complex64>,
    kp2: Vec<Complex64>,
}

fn wavenumbers(n: usize, length: f64) -> (Vec<Complex64>, Vec<Complex64>) {
    let mut first = Vec::with_capacity(n);
    let mut second = Vec::with_capacity(n);
    for k in 0..n {
        let idx = if k < n - k { k as f64 } else { k as f64 - n as f64 };
        let kappa = 2.0 * std::f64::consts::PI * idx / length;
        // drop the unmatched Nyquist mode for the odd-order derivative
        let odd = if 2 * k == n { 0.0 } else { kappa };
        first.push(Complex64::new(0.0, odd / n as f64));
        second.push(Complex64::new(-kappa * kappa / n as f64, 0.0));
    }
    (first, second)
}

impl SpectralPlan {
    pub fn new(grid: &PhaseGrid) -> Self {
        let mut planner = FftPlanner::new();
        let (kz, kz2) = wavenumbers(grid.n_z, grid.n_z as f64 * grid.dz());
        let (kp, kp2) = wavenumbers(grid.n_p, grid.n_p as f64 * grid.dp());
        Self {
            fft_z: planner.plan_fft_forward(grid.n_z),
            ifft_z: planner.plan_fft_inverse(grid.n_z),
            fft_p: planner.plan_fft_forward(grid.n_p),
            ifft_p: planner.plan_fft_inverse(grid.n_p),
            kz,
            kp,
            kz2,
            kp2,
        }
    }

    fn along_z(&self, f: &Field, factors: &[Complex64]) -> Field {
        let (nz, np) = (f.nrows(), f.ncols());
        let mut out = Field::zeros(nz, np);
        let mut buf = vec![Complex64::default(); nz];
        for j in 0..np {
            for i in 0..nz {
                buf[i] = f[(i, j)];
            }
            self.fft_z.process(&mut buf);
            for (v, &k) in buf.iter_mut().zip(factors) {
                *v *= k;
            }
            self.ifft_z.process(&mut buf);
            for i in 0..nz {
                out[(i, j)] = buf[i];
            }
        }
        out
    }

    fn along_p(&self, f: &Field, factors: &[Complex64]) -> Field {
        let (nz, np) = (f.nrows(), f.ncols());
        let mut out = Field::zeros(nz, np);
        let mut buf = vec![Complex64::default(); np];
        for i in 0..nz {
            for j in 0..np {
                buf[j] = f[(i, j)];
            }
            self.fft_p.process(&mut buf);
            for (v, &k) in buf.iter_mut().zip(factors) {
                *v *= k;
            }
            self.ifft_p.process(&mut buf);
            for j in 0..np {
                out[(i, j)] = buf[j];
            }
        }
        out
    }

    pub fn d_z(&self, f: &Field) -> Field {
        self.along_z(f, &self.kz)
    }

    pub fn d_p(&self, f: &Field) -> Field {
        self.along_p(f, &self.kp)
    }

    pub fn d2_z(&self, f: &Field) -> Field {
        self.along_z(f, &self.kz2)
    }

    pub fn d2_p(&self, f: &Field) -> Field {
        self.along_p(f, &self.kp2)
    }
}
