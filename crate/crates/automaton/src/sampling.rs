use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::{AutomatonError, Distribution, Result};

/// Monte-Carlo estimate of one observable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    pub std_error: f64,
}

const CHUNK: u64 = 1 << 16;

/// splitmix64; decorrelates per-chunk seeds derived from one user seed.
fn derive_seed(seed: u64, chunk: u64) -> u64 {
    let mut z = seed.wrapping_add(chunk.wrapping_mul(0x9e3779b97f4a7c15));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Unbiased sampling estimates for a set of observables, all evaluated on the
/// same sample stream. Samples are partitioned into fixed-size chunks with
/// derived seeds, so the result is reproducible and independent of how many
/// workers rayon uses.
pub fn sample_estimator(
    p: &Distribution,
    observables: &[Vec<f64>],
    n_samples: u64,
    seed: u64,
) -> Result<Vec<Estimate>> {
    assert!(n_samples >= 1);
    let size = p.space().size();
    for obs in observables {
        if obs.len() != size {
            return Err(AutomatonError::BadObservable(size));
        }
    }
    // inverse-CDF table
    let mut cdf = Vec::with_capacity(size);
    let mut acc = 0.0;
    for &w in p.probabilities() {
        acc += w;
        cdf.push(acc);
    }
    let n_chunks = n_samples.div_ceil(CHUNK);
    let n_obs = observables.len();

    let partials: Vec<(Vec<f64>, Vec<f64>)> = (0..n_chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, c));
            let count = CHUNK.min(n_samples - c * CHUNK);
            let mut sums = vec![0.0; n_obs];
            let mut sq = vec![0.0; n_obs];
            for _ in 0..count {
                let u: f64 = rng.gen();
                let tau = cdf.partition_point(|&x| x < u).min(size - 1);
                for (j, obs) in observables.iter().enumerate() {
                    let v = obs[tau];
                    sums[j] += v;
                    sq[j] += v * v;
                }
            }
            (sums, sq)
        })
        .collect();

    // sequential reduction in chunk order keeps the result bit-stable
    let mut sums = vec![0.0; n_obs];
    let mut sq = vec![0.0; n_obs];
    for (s, q) in partials {
        for j in 0..n_obs {
            sums[j] += s[j];
            sq[j] += q[j];
        }
    }
    let n = n_samples as f64;
    Ok((0..n_obs)
        .map(|j| {
            let mean = sums[j] / n;
            let var = (sq[j] / n - mean * mean).max(0.0);
            Estimate {
                mean,
                std_error: (var / n).sqrt(),
            }
        })
        .collect())
}
