//! Linear bottleneck learner for two-qubit gates in the real 8x8 embedding.
//!
//! The model is affine, 64 -> m -> 64, trained by full-batch gradient descent
//! and polished by alternating least squares. Conjugation by a fixed unitary
//! is linear in the density matrix, so the reachable loss drops to zero
//! exactly when the bottleneck admits the 15 independent state coordinates.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::{gate, quantumness_gate, real_embedding, GateError, Result};

#[derive(Debug, Clone, Copy, Serialize)]
pub struct LearnerConfig {
    /// bottleneck width m
    pub bottleneck: usize,
    /// training set size
    pub samples: usize,
    /// gradient-descent epochs before the polish
    pub epochs: usize,
    pub learning_rate: f64,
    pub seed: u64,
}

impl LearnerConfig {
    pub fn new(bottleneck: usize) -> Self {
        Self {
            bottleneck,
            samples: 256,
            epochs: 300,
            learning_rate: 0.05,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TrainResult {
    pub final_loss: f64,
    /// per-epoch losses; polish iterations are appended at the end
    pub loss_curve: Vec<f64>,
}

/// Polish runs until the loss stalls; these bound the iteration count.
const POLISH_MIN_ITERS: usize = 10;
const POLISH_MAX_ITERS: usize = 4000;
const POLISH_STALL: f64 = 1e-16;

/// Embedded training pairs (inputs and conjugated targets) as 64 x N column
/// matrices; identical for the trainer and the floor oracle at equal seeds.
pub fn training_data(gate_name: &str, n: usize, seed: u64) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    let spec = gate(gate_name)?;
    if spec.unitary.dim() != 4 {
        return Err(GateError::DimMismatch {
            gate: spec.unitary.dim(),
            map: 4,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut xs = DMatrix::zeros(64, n);
    let mut ys = DMatrix::zeros(64, n);
    for i in 0..n {
        // Box-Muller standard normals for the raw 8x8 input
        let a = DMatrix::from_fn(8, 8, |_, _| {
            let u: f64 = rng.gen::<f64>().max(f64::MIN_POSITIVE);
            let v: f64 = rng.gen();
            (-2.0 * u.ln()).sqrt() * (2.0 * std::f64::consts::PI * v).cos()
        });
        let rho = quantumness_gate(&a)?;
        let out = rho.apply_unitary(&spec.unitary)?;
        xs.column_mut(i)
            .copy_from_slice(real_embedding(rho.matrix()).as_slice());
        ys.column_mut(i)
            .copy_from_slice(real_embedding(out.matrix()).as_slice());
    }
    Ok((xs, ys))
}

fn loss_of(w1: &DMatrix<f64>, b1: &DMatrix<f64>, w2: &DMatrix<f64>, b2: &DMatrix<f64>, xs: &DMatrix<f64>, ys: &DMatrix<f64>) -> f64 {
    let n = xs.ncols();
    let mut z = w1 * xs;
    for j in 0..n {
        z.column_mut(j).iter_mut().zip(b1.iter()).for_each(|(v, b)| *v += b);
    }
    let mut out = w2 * z;
    for j in 0..n {
        out.column_mut(j).iter_mut().zip(b2.iter()).for_each(|(v, b)| *v += b);
    }
    (out - ys).norm_squared() / n as f64
}

fn pinv(m: &DMatrix<f64>) -> DMatrix<f64> {
    m.clone().svd(true, true).pseudo_inverse(1e-12).expect("svd computed")
}

/// Train the bottleneck network on a gate; deterministic given the seed.
pub fn train_bottleneck(gate_name: &str, cfg: &LearnerConfig) -> Result<TrainResult> {
    if cfg.bottleneck == 0 {
        return Err(GateError::BadBottleneck);
    }
    let (xs, ys) = training_data(gate_name, cfg.samples, cfg.seed)?;
    let n = cfg.samples;
    let m = cfg.bottleneck;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(0x6c62_272e_07bb_0142));
    let scale = 1.0 / 8.0;
    let mut w1 = DMatrix::from_fn(m, 64, |_, _| (rng.gen::<f64>() * 2.0 - 1.0) * scale);
    let mut w2 = DMatrix::from_fn(64, m, |_, _| (rng.gen::<f64>() * 2.0 - 1.0) * scale);
    let mut b1 = DMatrix::zeros(m, 1);
    let mut b2 = DMatrix::zeros(64, 1);
    let ones = DMatrix::from_element(n, 1, 1.0);

    let mut curve = Vec::with_capacity(cfg.epochs + POLISH_MIN_ITERS);
    for _ in 0..cfg.epochs {
        let mut z = &w1 * &xs;
        for j in 0..n {
            z.column_mut(j).iter_mut().zip(b1.iter()).for_each(|(v, b)| *v += b);
        }
        let mut out = &w2 * &z;
        for j in 0..n {
            out.column_mut(j).iter_mut().zip(b2.iter()).for_each(|(v, b)| *v += b);
        }
        let err = out - &ys;
        curve.push(err.norm_squared() / n as f64);
        let coef = 2.0 / n as f64;
        let grad_w2 = &err * z.transpose() * coef;
        let grad_b2 = &err * &ones * coef;
        let back = w2.transpose() * &err;
        let grad_w1 = &back * xs.transpose() * coef;
        let grad_b1 = &back * &ones * coef;
        w2 -= grad_w2 * cfg.learning_rate;
        b2 -= grad_b2 * cfg.learning_rate;
        w1 -= grad_w1 * cfg.learning_rate;
        b1 -= grad_b1 * cfg.learning_rate;
    }

    // alternating exact least squares on the two affine factors
    let xb = {
        let mut xb = DMatrix::zeros(65, n);
        xb.view_mut((0, 0), (64, n)).copy_from(&xs);
        xb.row_mut(64).fill(1.0);
        xb
    };
    let xb_pinv = pinv(&xb);
    for it in 0..POLISH_MAX_ITERS {
        let mut z = &w1 * &xs;
        for j in 0..n {
            z.column_mut(j).iter_mut().zip(b1.iter()).for_each(|(v, b)| *v += b);
        }
        let mut zb = DMatrix::zeros(m + 1, n);
        zb.view_mut((0, 0), (m, n)).copy_from(&z);
        zb.row_mut(m).fill(1.0);
        let sol2 = &ys * pinv(&zb);
        w2 = sol2.view((0, 0), (64, m)).clone_owned();
        b2 = DMatrix::from_column_slice(64, 1, sol2.column(m).clone_owned().as_slice());

        let mut resid = ys.clone();
        for j in 0..n {
            resid.column_mut(j).iter_mut().zip(b2.iter()).for_each(|(v, b)| *v -= b);
        }
        let zstar = pinv(&w2) * resid;
        let sol1 = &zstar * &xb_pinv;
        w1 = sol1.view((0, 0), (m, 64)).clone_owned();
        b1 = DMatrix::from_column_slice(m, 1, sol1.column(64).clone_owned().as_slice());
        let loss = loss_of(&w1, &b1, &w2, &b2, &xs, &ys);
        let stalled = it >= POLISH_MIN_ITERS
            && curve.last().is_some_and(|prev| prev - loss < POLISH_STALL);
        curve.push(loss);
        if stalled {
            break;
        }
    }
    let final_loss = *curve.last().expect("nonempty curve");
    Ok(TrainResult {
        final_loss,
        loss_curve: curve,
    })
}

/// Exact least-squares floor of a rank-m affine map on the same training
/// data: center, fit the full linear map, truncate its fitted values.
pub fn bottleneck_floor(gate_name: &str, m: usize, samples: usize, seed: u64) -> Result<f64> {
    let (xs, ys) = training_data(gate_name, samples, seed)?;
    let n = samples;
    let center = |mat: &DMatrix<f64>| {
        let mean = mat.column_mean();
        let mut c = mat.clone();
        for j in 0..n {
            c.column_mut(j).iter_mut().zip(mean.iter()).for_each(|(v, b)| *v -= b);
        }
        c
    };
    let xc = center(&xs);
    let yc = center(&ys);
    let fitted = &yc * pinv(&xc) * &xc;
    let base = (&yc - &fitted).norm_squared();
    let svals = fitted.singular_values();
    let tail: f64 = svals.iter().skip(m).map(|s| s * s).sum();
    Ok((base + tail) / n as f64)
}

/// CSV export of a loss curve as `epoch,loss`.
pub fn write_loss_csv<W: std::io::Write>(curve: &[f64], w: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(["epoch", "loss"]).map_err(|e| GateError::Io(e.to_string()))?;
    for (i, l) in curve.iter().enumerate() {
        wtr.write_record([i.to_string(), format!("{l:.16e}")])
            .map_err(|e| GateError::Io(e.to_string()))?;
    }
    wtr.flush().map_err(|e| GateError::Io(e.to_string()))?;
    Ok(())
}
