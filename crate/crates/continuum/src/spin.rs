//! Half-space Ising observables: the spin in direction e takes the value +1
//! on the half space where e·φ is positive and -1 on the other half.

use crate::{ContinuumError, Result, UNIT_TOL};

/// An Ising spin observable labeled by a unit direction with 2 or 3
/// components; its value at a classical point φ is the sign of e·φ.
#[derive(Debug, Clone)]
pub struct DirectionSpin {
    e: Vec<f64>,
}

impl DirectionSpin {
    pub fn new(e: &[f64]) -> Result<Self> {
        if e.len() != 2 && e.len() != 3 {
            return Err(ContinuumError::BadDimension(e.len()));
        }
        let norm: f64 = e.iter().map(|x| x * x).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > UNIT_TOL {
            return Err(ContinuumError::NotUnit((norm - 1.0).abs()));
        }
        Ok(Self { e: e.to_vec() })
    }

    /// Build from a planar angle ψ: e = (cos ψ, sin ψ).
    pub fn from_angle(psi: f64) -> Self {
        Self {
            e: vec![psi.cos(), psi.sin()],
        }
    }

    pub fn direction(&self) -> &[f64] {
        &self.e
    }

    /// Spin value at the point φ; the measure-zero boundary e·φ = 0 is
    /// assigned +1.
    pub fn value(&self, phi: &[f64]) -> Result<f64> {
        if phi.len() != self.e.len() {
            return Err(ContinuumError::DimMismatch {
                expected: self.e.len(),
                found: phi.len(),
            });
        }
        let dot: f64 = self.e.iter().zip(phi).map(|(a, b)| a * b).sum();
        Ok(if dot >= 0.0 { 1.0 } else { -1.0 })
    }

    /// Spin value at the circle point with angle φ (2-component directions
    /// only).
    pub fn value_at_angle(&self, phi: f64) -> Result<f64> {
        self.value(&[phi.cos(), phi.sin()])
    }
}
