//! JSON shape for operators: `{"dim": n, "entries": [[re, im], ...]}` with
//! entries in row-major order.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{CMatrix, DensityMatrix, OperatorMatrix};

#[derive(Serialize, Deserialize)]
struct Raw {
    dim: usize,
    entries: Vec<[f64; 2]>,
}

fn to_raw(mat: &CMatrix) -> Raw {
    let dim = mat.nrows();
    let mut entries = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            let c = mat[(i, j)];
            entries.push([c.re, c.im]);
        }
    }
    Raw { dim, entries }
}

fn from_raw<E: serde::de::Error>(raw: Raw) -> Result<CMatrix, E> {
    if raw.entries.len() != raw.dim * raw.dim {
        return Err(E::custom(format!(
            "expected {} entries, got {}",
            raw.dim * raw.dim,
            raw.entries.len()
        )));
    }
    Ok(DMatrix::from_fn(raw.dim, raw.dim, |i, j| {
        let [re, im] = raw.entries[i * raw.dim + j];
        Complex64::new(re, im)
    }))
}

impl Serialize for OperatorMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        to_raw(self.matrix()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for OperatorMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Raw::deserialize(d)?;
        Ok(OperatorMatrix::from_matrix(from_raw::<D::Error>(raw)?))
    }
}

impl Serialize for DensityMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        to_raw(self.matrix()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for DensityMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Raw::deserialize(d)?;
        let mat = from_raw::<D::Error>(raw)?;
        DensityMatrix::new(mat).map_err(|e| D::Error::custom(e.to_string()))
    }
}
