//! The sphere one-qubit model: a classical distribution over ℝ³ supported on
//! a half space, with an arbitrary radial profile, whose half-space spin
//! expectations reproduce the quantum spin in every direction.

use std::f64::consts::{FRAC_PI_2, PI};

use qembed_core::{BlochVector, DensityMatrix};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::quad::{gauss_legendre, integrate, GaussRule};
use crate::{ContinuumError, Result, UNIT_TOL};

/// number of quadrature nodes per smooth subinterval
const NODES: usize = 256;
/// radial cutoff for the Gaussian profile quadrature; the integrand decays
/// as r³ exp(-r²/2) and is far below round-off at the cutoff
const RADIAL_CUTOFF: f64 = 16.0;

/// Built-in radial profiles p̄(r); both are normalized numerically so that
/// the full distribution integrates to one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadialProfile {
    /// all weight on the unit shell r = 1
    UnitShell,
    /// weight exp(-r²/2)
    Gaussian,
}

impl RadialProfile {
    /// ∫ dr r³ p̄₀(r) for the unnormalized profile shape.
    fn radial_moment(&self, rule: &GaussRule) -> f64 {
        match self {
            RadialProfile::UnitShell => 1.0,
            RadialProfile::Gaussian => integrate(rule, 0.0, RADIAL_CUTOFF, |r| {
                r.powi(3) * (-0.5 * r * r).exp()
            }),
        }
    }

    /// Draw a radius with density ∝ r³ p̄₀(r).
    fn sample_radius(&self, rng: &mut impl Rng) -> f64 {
        match self {
            RadialProfile::UnitShell => 1.0,
            // r² is a sum of two exponentials of mean 2 for this density
            RadialProfile::Gaussian => {
                let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
                let u2: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
                (-2.0 * (u1 * u2).ln()).sqrt()
            }
        }
    }
}

/// A classical sphere state: Bloch direction ρ and a radial profile. The
/// distribution is p(φ) = N p̄(r) (φ·ρ) Θ(φ·ρ).
#[derive(Debug, Clone)]
pub struct SphereState {
    rho: [f64; 3],
    pub profile: RadialProfile,
}

fn check_unit3(v: &[f64; 3]) -> Result<()> {
    let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    if (norm - 1.0).abs() > UNIT_TOL {
        return Err(ContinuumError::NotUnit((norm - 1.0).abs()));
    }
    Ok(())
}

fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Orthonormal pair completing v to a right-handed frame (u, w, v).
fn frame(v: &[f64; 3]) -> ([f64; 3], [f64; 3]) {
    let pick = if v[0].abs() < 0.9 {
        [1.0, 0.0, 0.0]
    } else {
        [0.0, 1.0, 0.0]
    };
    let mut u = cross(&pick, v);
    let n = dot(&u, &u).sqrt();
    u = [u[0] / n, u[1] / n, u[2] / n];
    let w = cross(v, &u);
    (u, w)
}

impl SphereState {
    pub fn new(rho: [f64; 3], profile: RadialProfile) -> Result<Self> {
        check_unit3(&rho)?;
        Ok(Self { rho, profile })
    }

    pub fn bloch(&self) -> [f64; 3] {
        self.rho
    }

    /// Quantum state of the subsystem: ρ = (1 + ρ_k τ_k)/2.
    pub fn density_matrix(&self) -> Result<DensityMatrix> {
        DensityMatrix::from_bloch(&BlochVector(self.rho.to_vec())).map_err(ContinuumError::from)
    }

    /// Normalization constant N of the distribution, computed by quadrature:
    /// N π ∫ dr r³ p̄₀(r) = 1.
    pub fn normalization(&self) -> f64 {
        let rule = gauss_legendre(NODES);
        1.0 / (PI * self.profile.radial_moment(&rule))
    }

    /// Numerical check of the full normalization integral ∫ d³φ p(φ).
    pub fn normalization_integral(&self) -> f64 {
        let rule = gauss_legendre(NODES);
        let radial = self.normalization() * self.profile.radial_moment(&rule);
        // angular part in the frame where ρ is the pole: ∫dΩ cos θ Θ(cos θ)
        let angular = integrate(&rule, 0.0, FRAC_PI_2, |theta| {
            2.0 * PI * theta.sin() * theta.cos()
        });
        radial * angular
    }
}

/// Quadrature expectation of the half-space spin s(e) in a sphere state;
/// equals e·ρ. The polar integral runs over the supported hemisphere and the
/// azimuthal integral is split at the zero circle of e·φ.
pub fn sphere_expectation(state: &SphereState, e: &[f64; 3]) -> Result<f64> {
    check_unit3(e)?;
    let rule = gauss_legendre(NODES);
    let radial = state.normalization() * state.profile.radial_moment(&rule);

    // frame with the Bloch direction as pole
    let (u, w) = frame(&state.rho);
    let ep = [dot(e, &u), dot(e, &w), dot(e, &state.rho)];
    let planar = (ep[0] * ep[0] + ep[1] * ep[1]).sqrt();
    let phi0 = ep[1].atan2(ep[0]);

    let band = |theta: f64| {
        let (sin_t, cos_t) = theta.sin_cos();
        // e·f = d + a cos(φ - φ0) on the circle at polar angle θ
        let d = ep[2] * cos_t;
        let a = planar * sin_t;
        let inner = if a <= d.abs() {
            // no sign change around the circle
            let s = if d >= 0.0 { 1.0 } else { -1.0 };
            integrate(&rule, phi0 - PI, phi0 + PI, |_| s)
        } else {
            // split at the two roots of d + a cos(φ - φ0)
            let x = (-d / a).acos();
            let s = |phi: f64| if d + a * (phi - phi0).cos() >= 0.0 { 1.0 } else { -1.0 };
            integrate(&rule, phi0 - x, phi0 + x, s)
                + integrate(&rule, phi0 + x, phi0 + 2.0 * PI - x, s)
        };
        sin_t * cos_t * inner
    };

    // the zero circle of e·φ crosses into the hemisphere at tan θ* =
    // |e₃'|/|e_planar'|; the azimuthal crossing angle behaves like a square
    // root there, so integrate each side with the singular end flattened by
    // a quadratic substitution
    let theta_star = if planar > 0.0 {
        ep[2].abs().atan2(planar)
    } else {
        FRAC_PI_2
    };
    let mut angular = 0.0;
    if theta_star > 0.0 {
        let width = theta_star.sqrt();
        angular += integrate(&rule, 0.0, width, |u| band(theta_star - u * u) * 2.0 * u);
    }
    if theta_star < FRAC_PI_2 {
        let width = (FRAC_PI_2 - theta_star).sqrt();
        angular += integrate(&rule, 0.0, width, |u| band(theta_star + u * u) * 2.0 * u);
    }
    Ok(radial * angular)
}

/// A Monte-Carlo estimate with its standard error.
#[derive(Debug, Clone, Copy)]
pub struct MonteCarloEstimate {
    pub mean: f64,
    pub std_error: f64,
}

/// Monte-Carlo expectation of the half-space spin s(e): sample points from
/// the distribution and average the sign of e·φ.
pub fn sphere_expectation_monte_carlo(
    state: &SphereState,
    e: &[f64; 3],
    n: usize,
    seed: u64,
) -> Result<MonteCarloEstimate> {
    check_unit3(e)?;
    if n < 2 {
        return Err(ContinuumError::EmptySample);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (u, w) = frame(&state.rho);
    let mut sum = 0.0;
    for _ in 0..n {
        // polar angle with density 2 sin θ cos θ on [0, π/2]
        let cos_t = rng.gen_range(0.0f64..1.0).sqrt();
        let sin_t = (1.0 - cos_t * cos_t).sqrt();
        let phi = rng.gen_range(0.0..2.0 * PI);
        let r = state.profile.sample_radius(&mut rng);
        let f = [
            r * (sin_t * phi.cos() * u[0] + sin_t * phi.sin() * w[0] + cos_t * state.rho[0]),
            r * (sin_t * phi.cos() * u[1] + sin_t * phi.sin() * w[1] + cos_t * state.rho[1]),
            r * (sin_t * phi.cos() * u[2] + sin_t * phi.sin() * w[2] + cos_t * state.rho[2]),
        ];
        sum += if dot(e, &f) >= 0.0 { 1.0 } else { -1.0 };
    }
    let mean = sum / n as f64;
    // spin values are ±1, so the sample variance is 1 - mean² up to the
    // small-sample correction
    let var = ((1.0 - mean * mean) * n as f64 / (n as f64 - 1.0)).max(0.0);
    Ok(MonteCarloEstimate {
        mean,
        std_error: (var / n as f64).sqrt(),
    })
}

/// Rotate a Bloch vector by γ around the axis b, with the orientation that
/// matches conjugation by exp(iγ(τ·b)/2) on the quantum side.
pub fn rotate_bloch(v: &[f64; 3], b: &[f64; 3], gamma: f64) -> [f64; 3] {
    let (s, c) = gamma.sin_cos();
    let bxv = cross(b, v);
    let bv = dot(b, v);
    [
        v[0] * c - bxv[0] * s + b[0] * bv * (1.0 - c),
        v[1] * c - bxv[1] * s + b[1] * bv * (1.0 - c),
        v[2] * c - bxv[2] * s + b[2] * bv * (1.0 - c),
    ]
}

/// Rotation update of the sphere state: ρ ← R(b, γ)ρ, keeping the radial
/// profile.
pub fn rotate_update(state: &SphereState, b: &[f64; 3], gamma: f64) -> Result<SphereState> {
    check_unit3(b)?;
    let mut rho = rotate_bloch(&state.rho, b, gamma);
    // renormalize away the rotation round-off so repeated updates stay unit
    let n = dot(&rho, &rho).sqrt();
    rho = [rho[0] / n, rho[1] / n, rho[2] / n];
    SphereState::new(rho, state.profile)
}
