use crate::{AutomatonError, ConfigSpace, Result};

/// Signed spin permutation: `s'_k = sign[k] * s_{perm[k]}`.
///
/// The six named three-spin updatings plus the Hadamard map generate the
/// discrete group used throughout; sequences are written left-to-right in time
/// order, e.g. `"T12;T31;T1"` applies T12 first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpinTransform {
    perm: Vec<usize>,
    sign: Vec<i8>,
}

impl SpinTransform {
    pub fn new(perm: Vec<usize>, sign: Vec<i8>) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        let ok = sign.len() == n
            && sign.iter().all(|&s| s == 1 || s == -1)
            && perm.iter().all(|&i| {
                if i >= n || seen[i] {
                    false
                } else {
                    seen[i] = true;
                    true
                }
            });
        if !ok {
            return Err(AutomatonError::NotBijective(n));
        }
        Ok(Self { perm, sign })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            perm: (0..n).collect(),
            sign: vec![1; n],
        }
    }

    pub fn n_spins(&self) -> usize {
        self.perm.len()
    }

    /// Named three-spin updatings: T12, T23, T31 (quarter rotations),
    /// T1, T2, T3 (double reflections), H (the Hadamard map s1<->s3, s2->-s2).
    pub fn named(name: &str) -> Result<Self> {
        let (perm, sign): (Vec<usize>, Vec<i8>) = match name {
            "T12" => (vec![1, 0, 2], vec![1, -1, 1]),
            "T23" => (vec![0, 2, 1], vec![1, 1, -1]),
            "T31" => (vec![2, 1, 0], vec![-1, 1, 1]),
            "T1" => (vec![0, 1, 2], vec![1, -1, -1]),
            "T2" => (vec![0, 1, 2], vec![-1, 1, -1]),
            "T3" => (vec![0, 1, 2], vec![-1, -1, 1]),
            "H" => (vec![2, 1, 0], vec![1, -1, 1]),
            _ => return Err(AutomatonError::Parse(name.to_string())),
        };
        Ok(Self { perm, sign })
    }

    pub const NAMED_BASIS: [&'static str; 6] = ["T12", "T23", "T31", "T1", "T2", "T3"];

    /// Parse `"T12;T31;T1"`; the composite applies the leftmost first.
    pub fn parse_sequence(text: &str) -> Result<Self> {
        let mut acc = Self::identity(3);
        for token in text.split(';') {
            let token = token.trim();
            if token.is_empty() {
                continue;
            }
            acc = acc.then(&Self::named(token)?);
        }
        Ok(acc)
    }

    /// Composite that applies `self` first, then `next`.
    pub fn then(&self, next: &Self) -> Self {
        assert_eq!(self.n_spins(), next.n_spins());
        let n = self.n_spins();
        let mut perm = vec![0; n];
        let mut sign = vec![1i8; n];
        for k in 0..n {
            perm[k] = self.perm[next.perm[k]];
            sign[k] = next.sign[k] * self.sign[next.perm[k]];
        }
        Self { perm, sign }
    }

    pub fn inverse(&self) -> Self {
        let n = self.n_spins();
        let mut perm = vec![0; n];
        let mut sign = vec![1i8; n];
        for k in 0..n {
            perm[self.perm[k]] = k;
            sign[self.perm[k]] = self.sign[k];
        }
        Self { perm, sign }
    }

    /// Embed into a larger spin set, acting on the block starting at `offset`.
    pub fn embed(&self, n_total: usize, offset: usize) -> Self {
        assert!(offset + self.n_spins() <= n_total);
        let mut perm: Vec<usize> = (0..n_total).collect();
        let mut sign = vec![1i8; n_total];
        for k in 0..self.n_spins() {
            perm[offset + k] = offset + self.perm[k];
            sign[offset + k] = self.sign[k];
        }
        Self { perm, sign }
    }

    /// Exchange of two equally sized particle blocks (e.g. the 6-spin swap).
    pub fn block_swap(block: usize) -> Self {
        let perm = (0..2 * block).map(|k| (k + block) % (2 * block)).collect();
        Self {
            perm,
            sign: vec![1; 2 * block],
        }
    }

    /// Image of spin `k`: `(source index, sign)`.
    pub fn action(&self, k: usize) -> (usize, i8) {
        (self.perm[k], self.sign[k])
    }

    /// Destination configuration per source configuration.
    pub fn config_map(&self, space: ConfigSpace) -> Vec<usize> {
        assert_eq!(space.n_spins(), self.n_spins());
        (0..space.size())
            .map(|tau| {
                let spins: Vec<i8> = (0..self.n_spins())
                    .map(|k| self.sign[k] * space.spin(tau, self.perm[k]))
                    .collect();
                space.config(&spins)
            })
            .collect()
    }

    /// Action on expectation values: `<s'_k> = sign[k] <s_{perm[k]}>`.
    pub fn apply_expectations(&self, vals: &[f64]) -> Vec<f64> {
        assert_eq!(vals.len(), self.n_spins());
        (0..self.n_spins())
            .map(|k| self.sign[k] as f64 * vals[self.perm[k]])
            .collect()
    }
}
