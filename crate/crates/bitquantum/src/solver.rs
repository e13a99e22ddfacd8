//! Inverse problem: find a classical wave whose mapped density matrix matches
//! a target.
//!
//! The wave is optimized unconstrained in R^n and projected onto the unit
//! sphere inside the objective, so probabilities stay nonnegative by
//! construction. The objective is `1 - fidelity(map(q^2), target)`; its
//! gradient is estimated by central finite differences (step 1e-5) and fed
//! into a Polak-Ribiere conjugate-gradient update with a doubling/halving
//! line search.

use qembed_automaton::ClassicalWave;
use qembed_core::{fidelity, herm_eigen, sqrtm_psd, BlochVector, CMatrix, DensityMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::{BitQuantumMap, Result};

#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    pub restarts: u64,
    pub seed: u64,
    pub max_iter: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            restarts: 5,
            seed: 0,
            max_iter: 400,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolveResult {
    pub wave: ClassicalWave,
    pub fidelity: f64,
    pub converged: bool,
    pub iterations: u64,
    pub seed: u64,
}

/// JSON shape of a solver run.
#[derive(Debug, Serialize)]
pub struct SolveExport {
    pub map: String,
    pub target: DensityMatrix,
    pub fidelity: f64,
    pub wave: Vec<f64>,
    pub iterations: u64,
    pub seed: u64,
}

impl SolveResult {
    pub fn export(&self, map: &BitQuantumMap, target: &DensityMatrix) -> SolveExport {
        SolveExport {
            map: map.name(),
            target: target.clone(),
            fidelity: self.fidelity,
            wave: self.wave.amplitudes().to_vec(),
            iterations: self.iterations,
            seed: self.seed,
        }
    }
}

pub const CONVERGENCE_FIDELITY: f64 = 1.0 - 1e-6;
const FD_STEP: f64 = 1e-5;

fn derive_seed(seed: u64, k: u64) -> u64 {
    let mut z = seed.wrapping_add(k.wrapping_mul(0x9e3779b97f4a7c15));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Precomputed data making one objective evaluation cheap.
struct Objective {
    /// observable tables, one row per generator
    tables: Vec<Vec<f64>>,
    dim: usize,
    /// pure targets admit the linear form F = 2^-Q (1 + sum_tau p_tau g_tau)
    pure_gain: Option<Vec<f64>>,
    sqrt_target: CMatrix,
    target: DensityMatrix,
    q: usize,
}

impl Objective {
    fn new(map: &BitQuantumMap, target: &DensityMatrix) -> Result<Self> {
        let tables = map.observable_tables()?;
        let dim = map.space()?.size();
        let q = map.qubits();
        let pure_gain = if target.purity() > 1.0 - 1e-11 {
            // g_tau = sum_z b_z(target) * obs_z(tau)
            let tb = target.bloch();
            let mut g = vec![0.0; dim];
            for (z, row) in tables.iter().enumerate() {
                let bz = tb.0[z];
                if bz != 0.0 {
                    for (tau, v) in row.iter().enumerate() {
                        g[tau] += bz * v;
                    }
                }
            }
            Some(g)
        } else {
            None
        };
        Ok(Self {
            tables,
            dim,
            pure_gain,
            sqrt_target: sqrtm_psd(target.matrix()),
            target: target.clone(),
            q,
        })
    }

    /// Fidelity of the state mapped from the (unnormalized) wave `x`.
    fn fidelity_of(&self, x: &[f64]) -> f64 {
        let norm2: f64 = x.iter().map(|v| v * v).sum();
        match &self.pure_gain {
            Some(g) => {
                // <psi|rho|psi> is linear in the probabilities
                let acc: f64 = x.iter().zip(g).map(|(v, gi)| v * v * gi).sum();
                let f = (1.0 + acc / norm2) / (1u64 << self.q) as f64;
                f.clamp(0.0, 1.0)
            }
            None => {
                let p: Vec<f64> = x.iter().map(|v| v * v / norm2).collect();
                let b: Vec<f64> = self
                    .tables
                    .iter()
                    .map(|row| row.iter().zip(&p).map(|(v, w)| v * w).sum())
                    .collect();
                let rho = DensityMatrix::from_bloch(&BlochVector(b)).expect("well formed");
                let inner = &self.sqrt_target * rho.matrix() * &self.sqrt_target;
                let (evals, _) = herm_eigen(&inner);
                let lmax = evals.iter().cloned().fold(0.0f64, f64::max);
                let tr: f64 = evals
                    .iter()
                    .filter(|&&l| l > lmax * 1e-13)
                    .map(|&l| l.sqrt())
                    .sum();
                (tr * tr).clamp(0.0, 1.0)
            }
        }
    }

    fn loss(&self, x: &[f64]) -> f64 {
        1.0 - self.fidelity_of(x)
    }

    /// Exact fidelity of the normalized wave, for reporting.
    fn report_fidelity(&self, x: &[f64]) -> f64 {
        let norm: f64 = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        let p: Vec<f64> = x.iter().map(|v| (v / norm) * (v / norm)).collect();
        let b: Vec<f64> = self
            .tables
            .iter()
            .map(|row| row.iter().zip(&p).map(|(v, w)| v * w).sum())
            .collect();
        let rho = DensityMatrix::from_bloch(&BlochVector(b)).expect("well formed");
        fidelity(&self.target, &rho).expect("same dimension")
    }
}

fn fd_gradient(obj: &Objective, x: &mut [f64], grad: &mut [f64]) {
    for i in 0..x.len() {
        let xi = x[i];
        x[i] = xi + FD_STEP;
        let up = obj.loss(x);
        x[i] = xi - FD_STEP;
        let down = obj.loss(x);
        x[i] = xi;
        grad[i] = (up - down) / (2.0 * FD_STEP);
    }
}

fn run_single(obj: &Objective, seed: u64, max_iter: u64) -> (Vec<f64>, f64, u64) {
    let n = obj.dim;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() * 2.0 - 1.0).collect();
    let norm: f64 = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    x.iter_mut().for_each(|v| *v /= norm);

    let mut grad = vec![0.0; n];
    let mut prev_grad = vec![0.0; n];
    let mut dir = vec![0.0; n];
    let mut loss = obj.loss(&x);
    let mut step = 0.25;
    let mut iters = 0;

    for it in 0..max_iter {
        iters = it + 1;
        if 1.0 - loss >= CONVERGENCE_FIDELITY {
            break;
        }
        fd_gradient(obj, &mut x, &mut grad);
        let g2: f64 = grad.iter().map(|g| g * g).sum();
        if g2 < 1e-22 {
            break;
        }
        // Polak-Ribiere with automatic reset on loss of descent
        let beta = if it == 0 {
            0.0
        } else {
            let num: f64 = grad
                .iter()
                .zip(&prev_grad)
                .map(|(g, p)| g * (g - p))
                .sum();
            let den: f64 = prev_grad.iter().map(|p| p * p).sum();
            (num / den.max(1e-300)).max(0.0)
        };
        for i in 0..n {
            dir[i] = -grad[i] + beta * dir[i];
        }
        if dir.iter().zip(&grad).map(|(d, g)| d * g).sum::<f64>() >= 0.0 {
            for i in 0..n {
                dir[i] = -grad[i];
            }
        }
        prev_grad.copy_from_slice(&grad);

        // line search: expand while improving, otherwise shrink
        let dnorm: f64 = dir.iter().map(|d| d * d).sum::<f64>().sqrt();
        let trial = |t: f64, buf: &mut Vec<f64>| {
            buf.clear();
            buf.extend(x.iter().zip(&dir).map(|(xi, di)| xi + t * di / dnorm));
            obj.loss(buf)
        };
        let mut buf = Vec::with_capacity(n);
        let mut t = step;
        let mut best_t = 0.0;
        let mut best_loss = loss;
        let mut l = trial(t, &mut buf);
        if l < best_loss {
            while l < best_loss && t < 1e3 {
                best_loss = l;
                best_t = t;
                t *= 2.0;
                l = trial(t, &mut buf);
            }
        } else {
            while t > 1e-14 {
                t *= 0.25;
                l = trial(t, &mut buf);
                if l < best_loss {
                    best_t = t;
                    break;
                }
            }
        }
        if best_t == 0.0 {
            break; // no descent along this direction at any scale
        }
        let _ = trial(best_t, &mut buf);
        std::mem::swap(&mut x, &mut buf);
        // keep the iterate on the sphere so step scales stay meaningful
        let norm: f64 = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        x.iter_mut().for_each(|v| *v /= norm);
        loss = obj.loss(&x);
        step = best_t.clamp(1e-8, 4.0);
    }
    (x, loss, iters)
}

/// Best wave over `restarts` independently seeded runs; deterministic given
/// `(seed, restarts)` regardless of worker count.
pub fn solve_distribution(
    target: &DensityMatrix,
    map: &BitQuantumMap,
    opts: &SolveOptions,
) -> Result<SolveResult> {
    let obj = Objective::new(map, target)?;
    // Restarts are tried in derived-seed order; the reducer keeps the lowest
    // loss and a converged restart ends the sweep early. The outcome depends
    // only on (seed, restarts), never on scheduling.
    let mut best: Option<(Vec<f64>, f64)> = None;
    let mut total_iters = 0;
    for r in 0..opts.restarts.max(1) {
        let (xr, lr, it) = run_single(&obj, derive_seed(opts.seed, r), opts.max_iter);
        total_iters += it;
        let improved = best.as_ref().map_or(true, |(_, lb)| lr < *lb);
        if improved {
            best = Some((xr, lr));
        }
        if best.as_ref().is_some_and(|(_, l)| 1.0 - l >= CONVERGENCE_FIDELITY) {
            break;
        }
    }
    let (x, _) = best.as_ref().expect("at least one restart");
    let norm: f64 = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    let q: Vec<f64> = x.iter().map(|v| v / norm).collect();
    let fid = obj.report_fidelity(&q);
    Ok(SolveResult {
        wave: ClassicalWave::new(map.space()?, q)?,
        fidelity: fid,
        converged: fid >= CONVERGENCE_FIDELITY,
        iterations: total_iters,
        seed: opts.seed,
    })
}
