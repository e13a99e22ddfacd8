//! Probabilistic cellular automata over N Ising spins.
//!
//! Configurations are indexed big-endian: spin `k` (0-based) of configuration
//! `tau` is +1 iff bit `N-1-k` of `tau` is set, so for three spins the indices
//! 0..8 run through (---), (--+), (-+-), ..., (+++). The indexing is frozen;
//! serialized distributions depend on it.

use nalgebra::DMatrix;
use thiserror::Error;

mod sampling;
mod transform;

pub use sampling::{sample_estimator, Estimate};
pub use transform::SpinTransform;

#[derive(Debug, Error)]
pub enum AutomatonError {
    #[error("map is not a bijection on {0} configurations")]
    NotBijective(usize),
    #[error("matrix is not orthogonal (max defect {0:.3e})")]
    NotOrthogonal(f64),
    #[error("probabilities must be nonnegative and sum to 1 (sum {0})")]
    BadDistribution(f64),
    #[error("wave is not normalized (norm^2 = {0})")]
    BadWave(f64),
    #[error("operator size {found} does not match space size {expected}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("operation requires a unique-jump operator; general orthogonal steps carry no overall trajectory distribution")]
    RequiresUniqueJump,
    #[error("observable must assign a value to each of {0} configurations")]
    BadObservable(usize),
    #[error("cannot parse transformation '{0}'")]
    Parse(String),
    #[error("csv error: {0}")]
    Csv(String),
}

pub type Result<T> = std::result::Result<T, AutomatonError>;

/// Space of configurations of `n_spins` Ising spins.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConfigSpace {
    n_spins: usize,
}

impl ConfigSpace {
    pub fn new(n_spins: usize) -> Self {
        assert!(n_spins > 0 && n_spins <= 24);
        Self { n_spins }
    }

    pub fn n_spins(&self) -> usize {
        self.n_spins
    }

    pub fn size(&self) -> usize {
        1 << self.n_spins
    }

    /// Value (+1/-1) of spin `k` in configuration `tau`.
    pub fn spin(&self, tau: usize, k: usize) -> i8 {
        debug_assert!(k < self.n_spins && tau < self.size());
        if tau >> (self.n_spins - 1 - k) & 1 == 1 {
            1
        } else {
            -1
        }
    }

    pub fn spins(&self, tau: usize) -> Vec<i8> {
        (0..self.n_spins).map(|k| self.spin(tau, k)).collect()
    }

    pub fn config(&self, spins: &[i8]) -> usize {
        assert_eq!(spins.len(), self.n_spins);
        spins.iter().fold(0, |acc, &s| (acc << 1) | (s > 0) as usize)
    }

    /// Value table of the observable `s_k`.
    pub fn spin_observable(&self, k: usize) -> Vec<f64> {
        (0..self.size()).map(|t| self.spin(t, k) as f64).collect()
    }

    /// Value table of the product `s_{k1} s_{k2} ...`.
    pub fn product_observable(&self, ks: &[usize]) -> Vec<f64> {
        (0..self.size())
            .map(|t| ks.iter().map(|&k| self.spin(t, k) as i32).product::<i32>() as f64)
            .collect()
    }
}

/// Probability distribution over configurations.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    space: ConfigSpace,
    p: Vec<f64>,
}

impl Distribution {
    pub fn new(space: ConfigSpace, p: Vec<f64>) -> Result<Self> {
        if p.len() != space.size() {
            return Err(AutomatonError::SizeMismatch {
                expected: space.size(),
                found: p.len(),
            });
        }
        let sum: f64 = p.iter().sum();
        if p.iter().any(|&x| x < -1e-15) || (sum - 1.0).abs() > 1e-12 {
            return Err(AutomatonError::BadDistribution(sum));
        }
        let p = p.into_iter().map(|x| x.max(0.0)).collect();
        Ok(Self { space, p })
    }

    pub fn uniform(space: ConfigSpace) -> Self {
        let n = space.size();
        Self {
            space,
            p: vec![1.0 / n as f64; n],
        }
    }

    pub fn delta(space: ConfigSpace, tau: usize) -> Self {
        let mut p = vec![0.0; space.size()];
        p[tau] = 1.0;
        Self { space, p }
    }

    pub fn space(&self) -> ConfigSpace {
        self.space
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.p
    }

    /// Wave with the positive root sign convention.
    pub fn sqrt_wave(&self) -> ClassicalWave {
        ClassicalWave {
            space: self.space,
            q: self.p.iter().map(|&x| x.sqrt()).collect(),
        }
    }
}

/// Real classical wave; its squares form a distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalWave {
    space: ConfigSpace,
    q: Vec<f64>,
}

impl ClassicalWave {
    pub fn new(space: ConfigSpace, q: Vec<f64>) -> Result<Self> {
        if q.len() != space.size() {
            return Err(AutomatonError::SizeMismatch {
                expected: space.size(),
                found: q.len(),
            });
        }
        let norm2: f64 = q.iter().map(|x| x * x).sum();
        if (norm2 - 1.0).abs() > 1e-12 {
            return Err(AutomatonError::BadWave(norm2));
        }
        Ok(Self { space, q })
    }

    pub fn space(&self) -> ConfigSpace {
        self.space
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.q
    }

    pub fn to_distribution(&self) -> Distribution {
        Distribution {
            space: self.space,
            p: self.q.iter().map(|x| x * x).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepKind {
    UniqueJump,
    GeneralOrthogonal,
}

/// Orthogonal step evolution operator.
#[derive(Debug, Clone)]
pub struct StepOperator {
    space: ConfigSpace,
    kind: StepKind,
    /// destination config per source config, for unique jumps
    dest: Vec<usize>,
    mat: Option<DMatrix<f64>>,
}

impl StepOperator {
    /// Permutation operator with `S[f(tau), tau] = 1`.
    pub fn unique_jump(space: ConfigSpace, f: &[usize]) -> Result<Self> {
        let n = space.size();
        if f.len() != n {
            return Err(AutomatonError::SizeMismatch {
                expected: n,
                found: f.len(),
            });
        }
        let mut seen = vec![false; n];
        for &d in f {
            if d >= n || seen[d] {
                return Err(AutomatonError::NotBijective(n));
            }
            seen[d] = true;
        }
        Ok(Self {
            space,
            kind: StepKind::UniqueJump,
            dest: f.to_vec(),
            mat: None,
        })
    }

    pub fn identity(space: ConfigSpace) -> Self {
        Self::unique_jump(space, &(0..space.size()).collect::<Vec<_>>()).unwrap()
    }

    pub fn from_spin_transform(space: ConfigSpace, t: &SpinTransform) -> Result<Self> {
        Self::unique_jump(space, &t.config_map(space))
    }

    /// Conditional flip on three spins: exchanges the configurations
    /// (---)<->(-+-) and (--+)<->(-++), i.e. flips s2 whenever s1 = -1.
    pub fn conditional_flip(space: ConfigSpace) -> Result<Self> {
        if space.n_spins() != 3 {
            return Err(AutomatonError::SizeMismatch {
                expected: 8,
                found: space.size(),
            });
        }
        Self::unique_jump(space, &[2, 3, 0, 1, 4, 5, 6, 7])
    }

    /// General orthogonal step; admitted for wave evolution only.
    pub fn general_orthogonal(space: ConfigSpace, mat: DMatrix<f64>) -> Result<Self> {
        let n = space.size();
        if mat.nrows() != n || mat.ncols() != n {
            return Err(AutomatonError::SizeMismatch {
                expected: n,
                found: mat.nrows(),
            });
        }
        let defect = (mat.transpose() * &mat - DMatrix::identity(n, n))
            .iter()
            .map(|x| x.abs())
            .fold(0.0, f64::max);
        if defect > 1e-12 {
            return Err(AutomatonError::NotOrthogonal(defect));
        }
        Ok(Self {
            space,
            kind: StepKind::GeneralOrthogonal,
            dest: Vec::new(),
            mat: Some(mat),
        })
    }

    pub fn kind(&self) -> StepKind {
        self.kind
    }

    pub fn space(&self) -> ConfigSpace {
        self.space
    }

    /// Destination configuration of `tau` (unique jumps only).
    pub fn jump(&self, tau: usize) -> Result<usize> {
        if self.kind == StepKind::UniqueJump {
            Ok(self.dest[tau])
        } else {
            Err(AutomatonError::RequiresUniqueJump)
        }
    }

    pub fn matrix(&self) -> DMatrix<f64> {
        match (&self.mat, self.kind) {
            (Some(m), _) => m.clone(),
            (None, _) => {
                let n = self.space.size();
                let mut m = DMatrix::zeros(n, n);
                for (src, &dst) in self.dest.iter().enumerate() {
                    m[(dst, src)] = 1.0;
                }
                m
            }
        }
    }
}

/// `p'_tau = p_{sigma(tau)}` with `sigma` the inverse jump.
pub fn evolve_distribution(p: &Distribution, s: &StepOperator) -> Result<Distribution> {
    if s.space != p.space {
        return Err(AutomatonError::SizeMismatch {
            expected: p.space.size(),
            found: s.space.size(),
        });
    }
    if s.kind != StepKind::UniqueJump {
        return Err(AutomatonError::RequiresUniqueJump);
    }
    let mut out = vec![0.0; p.p.len()];
    for (src, &dst) in s.dest.iter().enumerate() {
        out[dst] = p.p[src];
    }
    Ok(Distribution {
        space: p.space,
        p: out,
    })
}

/// `q' = S q`.
pub fn evolve_wave(q: &ClassicalWave, s: &StepOperator) -> Result<ClassicalWave> {
    if s.space != q.space {
        return Err(AutomatonError::SizeMismatch {
            expected: q.space.size(),
            found: s.space.size(),
        });
    }
    let out = match s.kind {
        StepKind::UniqueJump => {
            let mut v = vec![0.0; q.q.len()];
            for (src, &dst) in s.dest.iter().enumerate() {
                v[dst] = q.q[src];
            }
            v
        }
        StepKind::GeneralOrthogonal => {
            let m = s.mat.as_ref().expect("general step has a matrix");
            let v = nalgebra::DVector::from_column_slice(&q.q);
            (m * v).iter().cloned().collect()
        }
    };
    Ok(ClassicalWave {
        space: q.space,
        q: out,
    })
}

/// `sum_tau p_tau A_tau`.
pub fn classical_expectation(p: &Distribution, observable: &[f64]) -> Result<f64> {
    if observable.len() != p.space.size() {
        return Err(AutomatonError::BadObservable(p.space.size()));
    }
    Ok(p.p.iter().zip(observable).map(|(a, b)| a * b).sum())
}

/// One trajectory per initial configuration, carrying its initial weight.
#[derive(Debug, Clone)]
pub struct TrajectoryTable {
    /// `(states visited, weight)`; states has length `steps + 1`.
    pub rows: Vec<(Vec<usize>, f64)>,
}

pub fn trajectory_probabilities(
    p0: &Distribution,
    steps: &[StepOperator],
) -> Result<TrajectoryTable> {
    if steps.iter().any(|s| s.kind != StepKind::UniqueJump) {
        return Err(AutomatonError::RequiresUniqueJump);
    }
    for s in steps {
        if s.space != p0.space {
            return Err(AutomatonError::SizeMismatch {
                expected: p0.space.size(),
                found: s.space.size(),
            });
        }
    }
    let rows = (0..p0.space.size())
        .map(|tau0| {
            let mut states = Vec::with_capacity(steps.len() + 1);
            let mut t = tau0;
            states.push(t);
            for s in steps {
                t = s.dest[t];
                states.push(t);
            }
            (states, p0.p[tau0])
        })
        .collect();
    Ok(TrajectoryTable { rows })
}

/// Write `(tau, probability)` rows.
pub fn write_distribution_csv<W: std::io::Write>(p: &Distribution, w: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(["tau", "probability"])
        .map_err(|e| AutomatonError::Csv(e.to_string()))?;
    for (tau, prob) in p.p.iter().enumerate() {
        wtr.write_record([tau.to_string(), format!("{prob:.16e}")])
            .map_err(|e| AutomatonError::Csv(e.to_string()))?;
    }
    wtr.flush().map_err(|e| AutomatonError::Csv(e.to_string()))
}

pub fn read_distribution_csv<R: std::io::Read>(space: ConfigSpace, r: R) -> Result<Distribution> {
    let mut rdr = csv::Reader::from_reader(r);
    let mut p = vec![0.0; space.size()];
    for rec in rdr.records() {
        let rec = rec.map_err(|e| AutomatonError::Csv(e.to_string()))?;
        let tau: usize = rec
            .get(0)
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| AutomatonError::Csv("bad tau".into()))?;
        let prob: f64 = rec
            .get(1)
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| AutomatonError::Csv("bad probability".into()))?;
        if tau >= space.size() {
            return Err(AutomatonError::Csv(format!("tau {tau} out of range")));
        }
        p[tau] = prob;
    }
    Distribution::new(space, p)
}
