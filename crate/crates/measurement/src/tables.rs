//! Outcome tables for a sequence of two two-level measurements.

use serde::Serialize;

use crate::{MeasureError, Result};

const TABLE_TOL: f64 = 1e-12;

/// Probabilities for the four outcomes of a sequence (B first, A second).
/// `w_pm` is the probability to find A = +1 after B = -1, and so on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JointTable {
    pub w_pp: f64,
    pub w_pm: f64,
    pub w_mp: f64,
    pub w_mm: f64,
}

impl JointTable {
    pub fn new(w_pp: f64, w_pm: f64, w_mp: f64, w_mm: f64) -> Result<Self> {
        let t = Self {
            w_pp,
            w_pm,
            w_mp,
            w_mm,
        };
        for v in t.entries() {
            if v < -TABLE_TOL {
                return Err(MeasureError::BadTable(format!("negative entry {v}")));
            }
        }
        let sum: f64 = t.entries().iter().sum();
        if (sum - 1.0).abs() > TABLE_TOL {
            return Err(MeasureError::BadTable(format!("sum {sum} != 1")));
        }
        Ok(t)
    }

    pub fn entries(&self) -> [f64; 4] {
        [self.w_pp, self.w_pm, self.w_mp, self.w_mm]
    }

    /// Expectation value of the first measurement, B.
    pub fn mean_b(&self) -> f64 {
        self.w_pp - self.w_pm + self.w_mp - self.w_mm
    }

    /// Expectation value of the second measurement, A, in the presence of the
    /// first one.
    pub fn mean_a_b(&self) -> f64 {
        self.w_pp + self.w_pm - self.w_mp - self.w_mm
    }

    /// The measurement correlation of the sequence.
    pub fn correlation(&self) -> f64 {
        self.w_pp - self.w_pm - self.w_mp + self.w_mm
    }

    /// Conditional probabilities for A given each B outcome; a branch with
    /// zero probability for B is undefined and returned as absent.
    pub fn conditionals(&self) -> ConditionalTable {
        let branch = |wa: f64, wna: f64| {
            let w = wa + wna;
            (w > TABLE_TOL).then(|| [wa / w, wna / w])
        };
        ConditionalTable {
            given_plus: branch(self.w_pp, self.w_mp),
            given_minus: branch(self.w_pm, self.w_mm),
        }
    }
}

/// Conditional probabilities `[w_+^A, w_-^A]` given B = +1 and B = -1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConditionalTable {
    pub given_plus: Option<[f64; 2]>,
    pub given_minus: Option<[f64; 2]>,
}

impl ConditionalTable {
    /// Largest deviation of a defined column sum from 1.
    pub fn column_defect(&self) -> f64 {
        [self.given_plus, self.given_minus]
            .iter()
            .flatten()
            .map(|c| (c[0] + c[1] - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

/// Reconstruct the joint outcome table from the conditioned second mean, the
/// first mean, and the measurement correlation. An inconsistent triple
/// produces a negative entry and is rejected.
pub fn joint_from_expectations(mean_a_b: f64, mean_b: f64, corr: f64) -> Result<JointTable> {
    let w_pp = 0.25 * (1.0 + mean_a_b + mean_b + corr);
    let w_pm = 0.25 * (1.0 + mean_a_b - mean_b - corr);
    let w_mp = 0.25 * (1.0 - mean_a_b + mean_b - corr);
    let w_mm = 0.25 * (1.0 - mean_a_b - mean_b + corr);
    for v in [w_pp, w_pm, w_mp, w_mm] {
        if v < -TABLE_TOL {
            return Err(MeasureError::Infeasible(v));
        }
    }
    JointTable::new(
        w_pp.max(0.0),
        w_pm.max(0.0),
        w_mp.max(0.0),
        w_mm.max(0.0),
    )
}
