//! The periodic phase-space grid.

/// A uniform periodic grid over a phase-space box. Points are z_i = z_min +
/// i Δz (the right endpoint is the periodic image of the left one), and
/// likewise for p.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseGrid {
    pub n_z: usize,
    pub n_p: usize,
    pub z_min: f64,
    pub z_max: f64,
    pub p_min: f64,
    pub p_max: f64,
}

impl PhaseGrid {
    pub fn new(n_z: usize, n_p: usize, z_half: f64, p_half: f64) -> Self {
        Self {
            n_z,
            n_p,
            z_min: -z_half,
            z_max: z_half,
            p_min: -p_half,
            p_max: p_half,
        }
    }

    /// 128 × 128 points over z, p ∈ [-8, 8) in natural oscillator units.
    pub fn default_grid() -> Self {
        Self::new(128, 128, 8.0, 8.0)
    }

    pub fn dz(&self) -> f64 {
        (self.z_max - self.z_min) / self.n_z as f64
    }

    pub fn dp(&self) -> f64 {
        (self.p_max - self.p_min) / self.n_p as f64
    }

    pub fn z(&self, i: usize) -> f64 {
        self.z_min + i as f64 * self.dz()
    }

    pub fn p(&self, j: usize) -> f64 {
        self.p_min + j as f64 * self.dp()
    }

    /// phase-space cell area
    pub fn cell(&self) -> f64 {
        self.dz() * self.dp()
    }

    /// largest |p| represented on the grid
    pub fn p_abs_max(&self) -> f64 {
        self.p_min.abs().max((self.p_max - self.dp()).abs())
    }

    /// largest |z| represented on the grid
    pub fn z_abs_max(&self) -> f64 {
        self.z_min.abs().max((self.z_max - self.dz()).abs())
    }
}
