//! The gate catalog: discrete one-qubit group, two-qubit gates, diagonal
//! gates, the four-phase family, and the icosahedron spin set.

use nalgebra::DMatrix;
use num_complex::Complex64;
use qembed_core::{OperatorMatrix, I0, I1, IM};

use crate::{GateError, Result};

/// A catalog entry: a named unitary.
#[derive(Debug, Clone)]
pub struct GateSpec {
    pub name: String,
    pub unitary: OperatorMatrix,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn mat2(rows: [[Complex64; 2]; 2]) -> OperatorMatrix {
    OperatorMatrix::from_matrix(DMatrix::from_fn(2, 2, |i, j| rows[i][j]))
}

fn mat4(rows: [[Complex64; 4]; 4]) -> OperatorMatrix {
    OperatorMatrix::from_matrix(DMatrix::from_fn(4, 4, |i, j| rows[i][j]))
}

fn diag4(d: [Complex64; 4]) -> OperatorMatrix {
    OperatorMatrix::from_matrix(DMatrix::from_fn(
        4,
        4,
        |i, j| if i == j { d[i] } else { I0 },
    ))
}

const S: f64 = std::f64::consts::FRAC_1_SQRT_2;

fn fixed_gate(name: &str) -> Option<OperatorMatrix> {
    let m = match name {
        "ID2" => OperatorMatrix::identity(4),
        "U12" => mat2([[c(S, S), I0], [I0, c(S, -S)]]),
        "U23" => mat2([[c(S, 0.0), c(0.0, S)], [c(0.0, S), c(S, 0.0)]]),
        "U31" => mat2([[c(S, 0.0), c(S, 0.0)], [c(-S, 0.0), c(S, 0.0)]]),
        "U1" => mat2([[I0, IM], [IM, I0]]),
        "U2" => mat2([[I0, I1], [-I1, I0]]),
        "U3" => mat2([[IM, I0], [I0, -IM]]),
        "UH" => mat2([[c(S, 0.0), c(S, 0.0)], [c(S, 0.0), c(-S, 0.0)]]),
        "UT" => mat2([[I1, I0], [I0, c(S, S)]]),
        "CNOT" => mat4([
            [I1, I0, I0, I0],
            [I0, I1, I0, I0],
            [I0, I0, I0, I1],
            [I0, I0, I1, I0],
        ]),
        "SWAP" => mat4([
            [I1, I0, I0, I0],
            [I0, I0, I1, I0],
            [I0, I1, I0, I0],
            [I0, I0, I0, I1],
        ]),
        "D3" => diag4([I1, I1, -I1, I1]),
        "Z1" => diag4([I1, I1, -I1, -I1]),
        "Z2" => diag4([I1, -I1, I1, -I1]),
        "ZZ" => diag4([I1, -I1, -I1, I1]),
        "UH1" => fixed_gate("UH").unwrap().kron(&OperatorMatrix::identity(2)),
        "UT2" => OperatorMatrix::identity(2).kron(&fixed_gate("UT").unwrap()),
        "UHR" => fixed_gate("UH1").unwrap().mul(&fixed_gate("UT2").unwrap()),
        _ => return None,
    };
    Some(m)
}

/// Names of the fixed catalog entries (the phase family is parameterized and
/// spelled `PHASE(a,b,c,d)`).
pub const FIXED_NAMES: [&str; 18] = [
    "U12", "U23", "U31", "U1", "U2", "U3", "UH", "UT", "CNOT", "SWAP", "D3", "Z1", "Z2", "ZZ",
    "UH1", "UT2", "UHR", "ID2",
];

fn parse_phase(token: &str) -> Result<Complex64> {
    match token.trim() {
        "1" => Ok(I1),
        "-1" => Ok(-I1),
        "i" => Ok(IM),
        "-i" => Ok(-IM),
        t => t
            .parse::<f64>()
            .map(|theta| Complex64::from_polar(1.0, theta))
            .map_err(|_| GateError::Unknown(format!("phase token {t}"))),
    }
}

/// The four-phase family: a unitary that rotates the 3-axes of the two spins
/// into each other for arbitrary unit phases a, b, c, d.
pub fn phase_gate(a: Complex64, b: Complex64, c4: Complex64, d: Complex64) -> OperatorMatrix {
    mat4([
        [I0, I0, c4.conj(), I0],
        [a.conj(), I0, I0, I0],
        [I0, I0, I0, d.conj()],
        [I0, b.conj(), I0, I0],
    ])
}

/// Look up a gate by name. Phase-family members are written
/// `PHASE(a,b,c,d)` with components `1`, `-1`, `i`, `-i` or a phase angle in
/// radians.
pub fn gate(name: &str) -> Result<GateSpec> {
    if let Some(unitary) = fixed_gate(name) {
        return Ok(GateSpec {
            name: name.to_string(),
            unitary,
        });
    }
    if let Some(args) = name
        .strip_prefix("PHASE(")
        .and_then(|rest| rest.strip_suffix(')'))
    {
        let parts: Vec<&str> = args.split(',').collect();
        if parts.len() != 4 {
            return Err(GateError::Unknown(name.to_string()));
        }
        let p: Vec<Complex64> = parts
            .iter()
            .map(|t| parse_phase(t))
            .collect::<Result<_>>()?;
        return Ok(GateSpec {
            name: name.to_string(),
            unitary: phase_gate(p[0], p[1], p[2], p[3]),
        });
    }
    Err(GateError::Unknown(name.to_string()))
}

/// Icosahedron constant `a`.
pub fn icosahedron_a() -> f64 {
    ((1.0 + 5.0f64.sqrt()) / (2.0 * 5.0f64.sqrt())).sqrt()
}

/// Icosahedron constant `b = 2a/(1+sqrt 5)`.
pub fn icosahedron_b() -> f64 {
    (2.0 / (5.0 + 5.0f64.sqrt())).sqrt()
}

/// The six spin directions pointing to icosahedron corners; the other six
/// corners are the antipodes.
pub fn icosahedron_directions() -> [[f64; 3]; 6] {
    let a = icosahedron_a();
    let b = icosahedron_b();
    [
        [a, 0.0, b],
        [a, 0.0, -b],
        [b, a, 0.0],
        [-b, a, 0.0],
        [0.0, b, a],
        [0.0, -b, a],
    ]
}

/// Expectation values of the six icosahedron Ising spins for a one-qubit
/// Bloch vector, ordered (1+, 1-, 2+, 2-, 3+, 3-).
pub fn icosahedron_spins(bloch: &[f64; 3]) -> [f64; 6] {
    let a = icosahedron_a();
    let b = icosahedron_b();
    [
        a * bloch[0] + b * bloch[2],
        a * bloch[0] - b * bloch[2],
        a * bloch[1] + b * bloch[0],
        a * bloch[1] - b * bloch[0],
        a * bloch[2] + b * bloch[1],
        a * bloch[2] - b * bloch[1],
    ]
}

/// Largest violation of the three linear constraints tying the six
/// icosahedron spins to the three underlying Bloch components.
pub fn icosahedron_constraint_defect(spins: &[f64; 6]) -> f64 {
    let r = 2.0 / (1.0 + 5.0f64.sqrt());
    let [s1p, s1m, s2p, s2m, s3p, s3m] = *spins;
    // the difference of each +- pair is fixed by the sum of the previous pair
    [
        s2p - s2m - r * (s1p + s1m),
        s3p - s3m - r * (s2p + s2m),
        s1p - s1m - r * (s3p + s3m),
    ]
    .iter()
    .fold(0.0f64, |acc, d| acc.max(d.abs()))
}
