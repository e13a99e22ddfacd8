//! Automaton realizations: deterministic spin operations that reproduce a
//! gate's action on the mapped density matrix.

use qembed_automaton::SpinTransform;
use qembed_bitquantum::BitQuantumMap;
use qembed_core::{generator_digits, qubit_count, tensor_generator, OperatorMatrix};

use crate::{GateError, Result};

/// Signed permutation acting on a vector of expectation values:
/// `out[z] = sign[z] * in[perm[z]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SignedPermutation {
    pub perm: Vec<usize>,
    pub sign: Vec<f64>,
}

impl SignedPermutation {
    pub fn apply(&self, vals: &[f64]) -> Vec<f64> {
        assert_eq!(vals.len(), self.perm.len());
        (0..vals.len())
            .map(|z| self.sign[z] * vals[self.perm[z]])
            .collect()
    }
}

/// A deterministic realization of a gate for a particular bit-quantum map.
#[derive(Debug, Clone)]
pub enum Realization {
    /// signed spin permutation acting on the configuration space
    Spins(SpinTransform),
    /// exchange/sign table acting directly on the per-generator averages
    Averages(SignedPermutation),
}

/// Real matrix of the conjugation action on generator coefficients:
/// `b'[z] = sum_w M[z][w] b[w]` for `rho' = U rho U^dagger`.
pub fn bloch_action(u: &OperatorMatrix) -> Result<Vec<Vec<f64>>> {
    let q = qubit_count(u.dim())?;
    let n = (1usize << (2 * q)) - 1;
    let gens: Vec<OperatorMatrix> = (1..=n)
        .map(|z| tensor_generator(&generator_digits(z, q).expect("in range")))
        .collect();
    let scale = 1.0 / (1u64 << q) as f64;
    let ud = u.dagger();
    Ok((0..n)
        .map(|zi| {
            // row z of the action: tr(L_z U L_w U^dagger) = tr((U^dagger L_z U) L_w)
            let conj = ud.mul(&gens[zi]).mul(u);
            (0..n)
                .map(|wi| (conj.mul(&gens[wi]).trace().re) * scale)
                .collect()
        })
        .collect())
}

/// Extract a signed permutation from a real matrix, if it is one.
pub fn signed_permutation(m: &[Vec<f64>], tol: f64) -> Option<SignedPermutation> {
    let n = m.len();
    let mut perm = vec![0usize; n];
    let mut sign = vec![0.0f64; n];
    let mut used = vec![false; n];
    for z in 0..n {
        let mut hit = None;
        for w in 0..n {
            let v = m[z][w];
            if (v.abs() - 1.0).abs() <= tol {
                if hit.is_some() {
                    return None;
                }
                hit = Some((w, v.signum()));
            } else if v.abs() > tol {
                return None;
            }
        }
        let (w, s) = hit?;
        if used[w] {
            return None;
        }
        used[w] = true;
        perm[z] = w;
        sign[z] = s;
    }
    Some(SignedPermutation { perm, sign })
}

/// The 24-element discrete group of three-spin rotations, generated by the
/// quarter-turn updatings.
fn discrete_group() -> Vec<SpinTransform> {
    let gens: Vec<SpinTransform> = ["T12", "T23", "T31"]
        .iter()
        .map(|n| SpinTransform::named(n).unwrap())
        .collect();
    let mut group = vec![SpinTransform::identity(3)];
    loop {
        let mut grew = false;
        let snapshot = group.clone();
        for t in &snapshot {
            for g in &gens {
                let c = t.then(g);
                if !group.contains(&c) {
                    group.push(c);
                    grew = true;
                }
            }
        }
        if !grew {
            return group;
        }
    }
}

/// Action of a six-spin transform on the 15 correlation-map coefficients, or
/// `None` when some product observable leaves the tracked set (cannot happen
/// for signed spin permutations).
fn induced_action(t: &SpinTransform, map: &BitQuantumMap) -> Option<SignedPermutation> {
    let space = map.space().ok()?;
    let tables = map.observable_tables().ok()?;
    let dest = t.config_map(space);
    let n = tables.len();
    let mut perm = vec![0usize; n];
    let mut sign = vec![0.0f64; n];
    for z in 0..n {
        // transported observable: obs_z evaluated on the destination config
        let moved: Vec<f64> = (0..space.size()).map(|s| tables[z][dest[s]]).collect();
        let mut hit = None;
        for w in 0..n {
            if moved.iter().zip(&tables[w]).all(|(a, b)| a == b) {
                hit = Some((w, 1.0));
                break;
            }
            if moved.iter().zip(&tables[w]).all(|(a, b)| *a == -b) {
                hit = Some((w, -1.0));
                break;
            }
        }
        let (w, s) = hit?;
        perm[z] = w;
        sign[z] = s;
    }
    Some(SignedPermutation { perm, sign })
}

fn one_qubit_realization(u: &OperatorMatrix) -> Result<Option<Realization>> {
    let m = bloch_action(u)?;
    Ok(signed_permutation(&m, 1e-12).map(|sp| {
        let sign: Vec<i8> = sp.sign.iter().map(|&s| s as i8).collect();
        Realization::Spins(SpinTransform::new(sp.perm, sign).expect("bijective"))
    }))
}

fn correlation_realization(u: &OperatorMatrix) -> Result<Option<Realization>> {
    let target = match signed_permutation(&bloch_action(u)?, 1e-12) {
        Some(sp) => sp,
        None => return Ok(None),
    };
    let map = BitQuantumMap::correlation(2).expect("q=2");
    let group = discrete_group();
    for swap in [false, true] {
        for g1 in &group {
            for g2 in &group {
                let mut t = g1.embed(6, 0).then(&g2.embed(6, 3));
                if swap {
                    t = t.then(&SpinTransform::block_swap(3));
                }
                if induced_action(&t, &map).as_ref() == Some(&target) {
                    return Ok(Some(Realization::Spins(t)));
                }
            }
        }
    }
    Ok(None)
}

/// Deterministic automaton realization of `gate_name` under `map_name`
/// (`one_qubit`, `correlation_q2` or `average_spin_q2`); `None` when the gate
/// cannot be realized by unique jumps for that map.
pub fn automaton_realization(gate_name: &str, map_name: &str) -> Result<Option<Realization>> {
    let spec = crate::gate(gate_name)?;
    let dim = match map_name {
        "one_qubit" => 2,
        "correlation_q2" | "average_spin_q2" => 4,
        other => return Err(GateError::UnknownMap(other.to_string())),
    };
    if spec.unitary.dim() != dim {
        return Err(GateError::DimMismatch {
            gate: spec.unitary.dim(),
            map: dim,
        });
    }
    match map_name {
        "one_qubit" => one_qubit_realization(&spec.unitary),
        "correlation_q2" => correlation_realization(&spec.unitary),
        "average_spin_q2" => Ok(signed_permutation(&bloch_action(&spec.unitary)?, 1e-12)
            .map(Realization::Averages)),
        _ => unreachable!(),
    }
}
