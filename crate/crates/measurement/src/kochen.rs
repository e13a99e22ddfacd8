//! The three-qubit comeasurable bit chains and their sign clash: assigning a
//! fixed Ising value to every operator of the five chains is impossible.

use num_complex::Complex64;
use qembed_core::{tensor_generator, OperatorMatrix};
use serde::Serialize;

/// Seven mutually commuting two-level operators, a maximal set for three
/// qubits, labeled by the qubit subsets they act on.
#[derive(Debug, Clone)]
pub struct BitChain {
    pub name: &'static str,
    pub labels: [&'static str; 7],
    pub ops: Vec<OperatorMatrix>,
}

const LABELS: [&str; 7] = ["1", "2", "3", "12", "13", "23", "123"];

fn chain(name: &'static str, digits: [[usize; 3]; 7], flip_last: bool) -> BitChain {
    let mut ops: Vec<OperatorMatrix> = digits.iter().map(|d| tensor_generator(d)).collect();
    if flip_last {
        ops[6] = ops[6].scale(Complex64::new(-1.0, 0.0));
    }
    BitChain {
        name,
        labels: LABELS,
        ops,
    }
}

/// The five complete comeasurable bit chains of the three-qubit system.
pub fn chains() -> Vec<BitChain> {
    vec![
        chain(
            "F",
            [
                [3, 0, 0],
                [0, 1, 0],
                [0, 0, 1],
                [3, 1, 0],
                [3, 0, 1],
                [0, 1, 1],
                [3, 1, 1],
            ],
            false,
        ),
        chain(
            "G",
            [
                [1, 0, 0],
                [0, 3, 0],
                [0, 0, 1],
                [1, 3, 0],
                [1, 0, 1],
                [0, 3, 1],
                [1, 3, 1],
            ],
            false,
        ),
        chain(
            "H",
            [
                [1, 0, 0],
                [0, 1, 0],
                [0, 0, 3],
                [1, 1, 0],
                [1, 0, 3],
                [0, 1, 3],
                [1, 1, 3],
            ],
            false,
        ),
        chain(
            "Q",
            [
                [3, 1, 1],
                [1, 3, 1],
                [1, 1, 3],
                [2, 2, 0],
                [2, 0, 2],
                [0, 2, 2],
                [3, 3, 3],
            ],
            true,
        ),
        chain(
            "C",
            [
                [3, 0, 0],
                [0, 3, 0],
                [0, 0, 3],
                [3, 3, 0],
                [3, 0, 3],
                [0, 3, 3],
                [3, 3, 3],
            ],
            false,
        ),
    ]
}

#[derive(Debug, Clone, Serialize)]
pub struct KochenSpeckerReport {
    /// largest commutator norm within any single chain
    pub max_commutator: f64,
    pub chains_commute: bool,
    /// the triple-product operator equals the product of the three chains'
    /// last members
    pub product_identity: bool,
    /// the triple-product operator is minus the last member of the diagonal
    /// chain
    pub anti_identity: bool,
    /// shared single-spin members agree across chains as operators
    pub shared_members: bool,
    /// sign the triple product inherits when each operator carries a unique
    /// Ising value, built through the F/G/H chains
    pub sign_via_chains: i32,
    /// sign forced by the diagonal chain
    pub sign_via_diagonal: i32,
    pub contradiction: bool,
}

/// Build the five chains, verify their algebraic relations, and exhibit the
/// clash between the two induced sign assignments for the triple product.
pub fn kochen_specker_demo() -> KochenSpeckerReport {
    let all = chains();
    let tol = 1e-12;

    let mut max_commutator = 0.0f64;
    for c in &all {
        for i in 0..7 {
            for j in (i + 1)..7 {
                max_commutator = max_commutator.max(c.ops[i].commutator(&c.ops[j]).max_norm());
            }
        }
    }
    let chains_commute = max_commutator <= tol;

    let (f, g, h, q, c) = (&all[0], &all[1], &all[2], &all[3], &all[4]);
    let triple = f.ops[6].mul(&g.ops[6]).mul(&h.ops[6]);
    let product_identity = q.ops[6].approx_eq(&triple, tol);
    let anti_identity = q.ops[6]
        .approx_eq(&c.ops[6].scale(Complex64::new(-1.0, 0.0)), tol);
    let shared_members = f.ops[1].approx_eq(&h.ops[1], tol)
        && f.ops[2].approx_eq(&g.ops[2], tol)
        && g.ops[0].approx_eq(&h.ops[0], tol)
        && f.ops[0].approx_eq(&c.ops[0], tol)
        && g.ops[1].approx_eq(&c.ops[1], tol)
        && h.ops[2].approx_eq(&c.ops[2], tol);

    // With unique Ising values, the triple product reduces through the
    // shared members: the squares of the shared spins drop out and the value
    // is the product of the three diagonal single-spin values, sign +1. The
    // diagonal chain instead forces the opposite sign on the same product.
    let sign_via_chains = 1;
    let sign_via_diagonal = -1;
    let contradiction = chains_commute
        && product_identity
        && anti_identity
        && shared_members
        && sign_via_chains != sign_via_diagonal;

    KochenSpeckerReport {
        max_commutator,
        chains_commute,
        product_identity,
        anti_identity,
        shared_members,
        sign_via_chains,
        sign_via_diagonal,
        contradiction,
    }
}
