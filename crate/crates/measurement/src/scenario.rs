//! The three-step Stern-Gerlach sequence: spin along 3, then along 1 after a
//! half period, then along 3 again after a full period, contrasting coherent
//! and decoherent ideal measurements.

use std::collections::BTreeMap;

use num_complex::Complex64;
use qembed_core::{tau, CMatrix, DensityMatrix, OperatorMatrix};
use serde::Serialize;

use crate::measure::{heisenberg, spectral_projectors};
use crate::Result;

/// angular frequency of the precession, fixed in internal units
const OMEGA: f64 = 1.0;

#[derive(Debug, Clone, Serialize)]
pub struct ScenarioReport {
    pub mode: String,
    /// probability per outcome string such as "+-+"
    pub probabilities: BTreeMap<String, f64>,
    pub expectations: BTreeMap<String, f64>,
    pub correlations: BTreeMap<String, f64>,
}

impl ScenarioReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable report")
    }
}

/// Precession around the 3-axis from `t1` to `t2`.
fn evolution(t1: f64, t2: f64) -> OperatorMatrix {
    let phase = OMEGA * (t2 - t1);
    let mut m = CMatrix::zeros(2, 2);
    m[(0, 0)] = Complex64::from_polar(1.0, phase);
    m[(1, 1)] = Complex64::from_polar(1.0, -phase);
    OperatorMatrix::from_matrix(m)
}

fn steps() -> [(String, OperatorMatrix, f64); 3] {
    let pi = std::f64::consts::PI;
    [
        ("S_z(0)".to_string(), OperatorMatrix::from_matrix(tau(3)), 0.0),
        (
            "S_x(pi/w)".to_string(),
            OperatorMatrix::from_matrix(tau(1)),
            pi / OMEGA,
        ),
        (
            "S_z(2pi/w)".to_string(),
            OperatorMatrix::from_matrix(tau(3)),
            2.0 * pi / OMEGA,
        ),
    ]
}

fn initial_state() -> DensityMatrix {
    let psi = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
    DensityMatrix::from_pure(&psi).expect("normalized state")
}

const SIGNS: [(f64, char); 2] = [(1.0, '+'), (-1.0, '-')];

fn decoherent_run(rho0: &DensityMatrix) -> Result<ScenarioReport> {
    let steps = steps();
    // branches: outcome string so far, its probability, projected state
    let mut branches: Vec<(String, f64, DensityMatrix, Vec<f64>)> =
        vec![(String::new(), 1.0, rho0.clone(), Vec::new())];
    let mut t_prev = 0.0;
    for (_, op, t) in &steps {
        let u = evolution(t_prev, *t);
        let mut next = Vec::new();
        for (prefix, prob, state, signs) in &branches {
            let evolved = state.apply_unitary(&u)?;
            for (lambda, p) in spectral_projectors(op)? {
                let piece = p.matrix() * evolved.matrix() * p.matrix();
                let w = piece.trace().re;
                if w <= 1e-12 {
                    continue;
                }
                let sign = if lambda > 0.0 { '+' } else { '-' };
                let mut signs = signs.clone();
                signs.push(lambda.signum());
                next.push((
                    format!("{prefix}{sign}"),
                    prob * w,
                    DensityMatrix::new(piece / Complex64::new(w, 0.0))?,
                    signs,
                ));
            }
        }
        branches = next;
        t_prev = *t;
    }

    let mut probabilities = BTreeMap::new();
    let mut expectations = BTreeMap::new();
    let mut correlations = BTreeMap::new();
    for (outcome, prob, _, _) in &branches {
        probabilities.insert(outcome.clone(), *prob);
    }
    for (i, (label, _, _)) in steps.iter().enumerate() {
        let mean: f64 = branches.iter().map(|(_, p, _, s)| p * s[i]).sum();
        expectations.insert(label.clone(), mean);
        for (j, (label2, _, _)) in steps.iter().enumerate().skip(i + 1) {
            let corr: f64 = branches.iter().map(|(_, p, _, s)| p * s[i] * s[j]).sum();
            correlations.insert(format!("{label} {label2}"), corr);
        }
    }
    Ok(ScenarioReport {
        mode: "decoherent".to_string(),
        probabilities,
        expectations,
        correlations,
    })
}

fn coherent_run(rho0: &DensityMatrix) -> Result<ScenarioReport> {
    let steps = steps();
    // Heisenberg operators of the three measurements at t = 0
    let heis: Vec<OperatorMatrix> = steps
        .iter()
        .map(|(_, op, t)| heisenberg(op, &evolution(0.0, *t)))
        .collect::<Result<_>>()?;
    let mut expectations = BTreeMap::new();
    let mut marginals = Vec::new();
    for ((label, _, _), h) in steps.iter().zip(&heis) {
        let mean = rho0.expectation(h)?;
        expectations.insert(label.clone(), mean);
        marginals.push([(1.0 + mean) / 2.0, (1.0 - mean) / 2.0]);
    }
    let mut correlations = BTreeMap::new();
    for i in 0..3 {
        for j in (i + 1)..3 {
            let sym = heis[j]
                .anticommutator(&heis[i])
                .scale(Complex64::new(0.5, 0.0));
            correlations.insert(
                format!("{} {}", steps[i].0, steps[j].0),
                rho0.expectation(&sym)?,
            );
        }
    }
    // The undisturbed first and last outcomes are deterministic here, so the
    // sequence probabilities factorize into the per-step marginals.
    let mut probabilities = BTreeMap::new();
    for (w1, c1) in SIGNS.iter().enumerate() {
        for (w2, c2) in SIGNS.iter().enumerate() {
            for (w3, c3) in SIGNS.iter().enumerate() {
                let p = marginals[0][w1] * marginals[1][w2] * marginals[2][w3];
                if p > 1e-12 {
                    probabilities.insert(format!("{}{}{}", c1.1, c2.1, c3.1), p);
                }
            }
        }
    }
    Ok(ScenarioReport {
        mode: "coherent".to_string(),
        probabilities,
        expectations,
        correlations,
    })
}

/// Run the fixed three-measurement sequence starting from the spin-up state.
pub fn stern_gerlach(coherent: bool) -> Result<ScenarioReport> {
    let rho0 = initial_state();
    if coherent {
        coherent_run(&rho0)
    } else {
        decoherent_run(&rho0)
    }
}
