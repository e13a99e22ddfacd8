//! Bit-quantum maps: classical Ising-spin distributions mapped to density
//! matrices.
//!
//! A correlation map over `3Q` spins reads off every generator coefficient of
//! the density matrix as a classical expectation value of a (product of)
//! fundamental spins. Spin layout is particle-major and frozen: spin `3i + k`
//! is the Cartesian direction `k` of particle `i` (both 0-based).

use num_complex::Complex64;
use qembed_automaton::{ConfigSpace, Distribution};
use qembed_core::{
    generator_digits, tensor_generator, BlochVector, DensityMatrix, OperatorMatrix,
};
use thiserror::Error;

mod solver;

pub use solver::{solve_distribution, SolveExport, SolveOptions, SolveResult};

#[derive(Debug, Error)]
pub enum BitQuantumError {
    #[error("unsupported qubit count {0} for this map")]
    UnsupportedQ(usize),
    #[error("distribution over {found} states does not fit a map over {expected} states")]
    WrongSpace { expected: usize, found: usize },
    #[error("expectation value {0} outside [-1, 1]")]
    OutOfRange(f64),
    #[error("|delta| = {0} exceeds 1/8: negative probabilities")]
    DeltaRange(f64),
    #[error("core error: {0}")]
    Core(#[from] qembed_core::CoreError),
    #[error("automaton error: {0}")]
    Automaton(#[from] qembed_automaton::AutomatonError),
}

pub type Result<T> = std::result::Result<T, BitQuantumError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    OneQubit,
    Correlation,
    AverageSpin,
}

/// A bit-quantum map: for each generator label, the product of fundamental
/// spins whose classical expectation value supplies that coefficient.
#[derive(Debug, Clone)]
pub struct BitQuantumMap {
    kind: MapKind,
    q: usize,
    /// spin indices entering the product for generator z, index z-1
    assignments: Vec<Vec<usize>>,
}

impl BitQuantumMap {
    /// Single qubit from three spins: `rho_k = <s_k>`.
    pub fn one_qubit() -> Self {
        Self::build(MapKind::OneQubit, 1)
    }

    /// Minimal correlation map: `rho_{mu1..muQ} = <s_mu1^(1) ... s_muQ^(Q)>`.
    pub fn correlation(q: usize) -> Result<Self> {
        if !(2..=3).contains(&q) {
            return Err(BitQuantumError::UnsupportedQ(q));
        }
        Ok(Self::build(MapKind::Correlation, q))
    }

    /// Average spin map: one independent spin per generator; the input is the
    /// vector of their expectation values rather than a joint distribution.
    pub fn average_spin(q: usize) -> Self {
        Self {
            kind: MapKind::AverageSpin,
            q,
            assignments: Vec::new(),
        }
    }

    fn build(kind: MapKind, q: usize) -> Self {
        let n_gen = (1usize << (2 * q)) - 1;
        let assignments = (1..=n_gen)
            .map(|z| {
                let digits = generator_digits(z, q).expect("z in range");
                digits
                    .iter()
                    .enumerate()
                    .filter(|(_, &mu)| mu != 0)
                    .map(|(i, &mu)| 3 * i + (mu - 1))
                    .collect()
            })
            .collect();
        Self { kind, q, assignments }
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn qubits(&self) -> usize {
        self.q
    }

    pub fn name(&self) -> String {
        match self.kind {
            MapKind::OneQubit => "one_qubit".into(),
            MapKind::Correlation => format!("correlation_q{}", self.q),
            MapKind::AverageSpin => format!("average_spin_q{}", self.q),
        }
    }

    /// Number of classical spins of the underlying configuration space.
    pub fn n_spins(&self) -> Result<usize> {
        match self.kind {
            MapKind::AverageSpin => Err(BitQuantumError::UnsupportedQ(self.q)),
            _ => Ok(3 * self.q),
        }
    }

    pub fn space(&self) -> Result<ConfigSpace> {
        Ok(ConfigSpace::new(self.n_spins()?))
    }

    /// Spins whose product supplies generator `z`.
    pub fn assignment(&self, z: usize) -> &[usize] {
        &self.assignments[z - 1]
    }

    /// Signed value table: `obs[z-1][tau]` is the product observable of
    /// generator `z` evaluated on configuration `tau`.
    pub fn observable_tables(&self) -> Result<Vec<Vec<f64>>> {
        let space = self.space()?;
        Ok(self
            .assignments
            .iter()
            .map(|spins| space.product_observable(spins))
            .collect())
    }

    /// Bloch components of the mapped state.
    pub fn bloch_of(&self, p: &Distribution) -> Result<BlochVector> {
        let space = self.space()?;
        if p.space() != space {
            return Err(BitQuantumError::WrongSpace {
                expected: space.size(),
                found: p.space().size(),
            });
        }
        let comps = self
            .assignments
            .iter()
            .map(|spins| {
                let obs = space.product_observable(spins);
                p.probabilities()
                    .iter()
                    .zip(&obs)
                    .map(|(w, v)| w * v)
                    .sum()
            })
            .collect();
        Ok(BlochVector(comps))
    }

    /// Mapped density matrix; Hermitian and unit trace by construction,
    /// positive only when the distribution satisfies the quantum constraint.
    pub fn apply(&self, p: &Distribution) -> Result<DensityMatrix> {
        Ok(DensityMatrix::from_bloch(&self.bloch_of(p)?)?)
    }
}

/// `rho = (1 + <s_k> tau_k) / 2` from a 3-spin distribution.
pub fn one_qubit_map(p: &Distribution) -> Result<DensityMatrix> {
    BitQuantumMap::one_qubit().apply(p)
}

/// Minimal correlation map for `q` in {2, 3}.
pub fn correlation_map(p: &Distribution, q: usize) -> Result<DensityMatrix> {
    BitQuantumMap::correlation(q)?.apply(p)
}

/// `rho = 2^{-Q} (1 + <s_z> L_z)` from independent per-generator spins.
pub fn average_spin_map(expectations: &BlochVector, q: usize) -> Result<DensityMatrix> {
    if expectations.0.len() != (1 << (2 * q)) - 1 {
        return Err(BitQuantumError::WrongSpace {
            expected: (1 << (2 * q)) - 1,
            found: expectations.0.len(),
        });
    }
    for &x in &expectations.0 {
        if !(-1.0..=1.0).contains(&x) {
            return Err(BitQuantumError::OutOfRange(x));
        }
    }
    Ok(DensityMatrix::from_bloch(expectations)?)
}

/// Quantum-constraint diagnosis of a mapped matrix.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ConstraintReport {
    pub min_eigenvalue: f64,
    /// Squared Bloch length `rho_z rho_z`; equals `2^Q - 1` for pure states.
    pub purity: f64,
    pub satisfied: bool,
    pub pure: bool,
}

pub fn constraint_report(rho: &DensityMatrix) -> ConstraintReport {
    let pos = rho.check_positive();
    let b = rho.bloch();
    let purity = b.0.iter().map(|x| x * x).sum::<f64>();
    let pure_target = (1usize << rho.qubits()) as f64 - 1.0;
    ConstraintReport {
        min_eigenvalue: pos.min_eigenvalue,
        purity,
        satisfied: pos.positive,
        pure: pos.positive && (purity - pure_target).abs() < 1e-9,
    }
}

/// One-parameter family of 6-spin distributions carried by the eight fully
/// anticorrelated configurations; every member maps to the singlet.
pub fn entangled_family(delta: f64) -> Result<Distribution> {
    if delta.abs() > 0.125 + 1e-15 {
        return Err(BitQuantumError::DeltaRange(delta.abs()));
    }
    let space = ConfigSpace::new(6);
    let mut p = vec![0.0; 64];
    for tau1 in 0..8usize {
        // partner: all three spins of particle 2 opposite to particle 1
        let tau = (tau1 << 3) | (!tau1 & 0b111);
        // weight 1/8 + delta when s1 s2 s3 = +1, 1/8 - delta otherwise
        let sign = if (tau1.count_ones() + 3) % 2 == 0 {
            1.0
        } else {
            -1.0
        };
        p[tau] = 0.125 + sign * delta;
    }
    Ok(Distribution::new(space, p)?)
}

/// Wave in the three-particle basis: factor `k` holds the sign pair
/// `(s_{k+1}^{(1)}, s_{k+1}^{(2)})` with index order (++), (+-), (-+), (--).
pub fn three_particle_wave(theta: f64) -> Vec<f64> {
    let a = 0.5 * (theta.cos() + theta.sin());
    let b = 0.5 * (theta.cos() - theta.sin());
    let q1 = [a, b, b, a];
    let q3 = [0.0, theta.cos(), theta.sin(), 0.0];
    let mut q = Vec::with_capacity(64);
    for alpha in 0..4 {
        for beta in 0..4 {
            for gamma in 0..4 {
                q.push(q1[alpha] * q1[beta] * q3[gamma]);
            }
        }
    }
    q
}

/// Distribution over 6 spins built from the product wave; its correlation map
/// is the pure state `(0, cos theta, sin theta, 0)`.
pub fn three_particle_product(theta: f64) -> Distribution {
    let space = ConfigSpace::new(6);
    let q = three_particle_wave(theta);
    let mut p = vec![0.0; 64];
    let t1 = [1i8, 1, -1, -1];
    let t2 = [1i8, -1, 1, -1];
    for alpha in 0..4 {
        for beta in 0..4 {
            for gamma in 0..4 {
                // translate (alpha, beta, gamma) into the particle-major layout
                let spins = [
                    t1[alpha], t1[beta], t1[gamma], // s_k^(1)
                    t2[alpha], t2[beta], t2[gamma], // s_k^(2)
                ];
                let tau = space.config(&spins);
                let amp = q[(alpha * 4 + beta) * 4 + gamma];
                p[tau] += amp * amp;
            }
        }
    }
    Distribution::new(space, p).expect("product wave is normalized")
}

/// The target pure state `(0, cos theta, sin theta, 0)` itself.
pub fn entangled_pure_state(theta: f64) -> DensityMatrix {
    let psi = [
        Complex64::new(0.0, 0.0),
        Complex64::new(theta.cos(), 0.0),
        Complex64::new(theta.sin(), 0.0),
        Complex64::new(0.0, 0.0),
    ];
    DensityMatrix::from_pure(&psi).expect("normalized")
}

/// Three-qubit GHZ state `(|↑↑↑> + |↓↓↓>)/sqrt(2)`.
pub fn ghz_state() -> DensityMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut psi = vec![Complex64::new(0.0, 0.0); 8];
    psi[0] = Complex64::new(s, 0.0);
    psi[7] = Complex64::new(s, 0.0);
    DensityMatrix::from_pure(&psi).expect("normalized")
}

/// Generator matrices of the mapped Hilbert space, index `z-1`.
pub fn generator_cache(q: usize) -> Vec<OperatorMatrix> {
    (1..1usize << (2 * q))
        .map(|z| tensor_generator(&generator_digits(z, q).expect("in range")))
        .collect()
}
