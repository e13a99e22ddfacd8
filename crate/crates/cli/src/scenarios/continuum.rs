//! Continuum scenarios: the periodic clock and the sphere of direction
//! spins.

use std::f64::consts::{FRAC_PI_2, PI};

use qembed_continuum::{
    clock_evolve, clock_expectation, sphere_expectation, sphere_expectation_monte_carlo,
    ClockState, RadialProfile, SphereState,
};

use crate::{numeric, CliError, Params, Result, RunOutput, Table, Value};

pub fn clock(p: &mut Params) -> Result<RunOutput> {
    let beta0 = p.get_f64("beta0", 0.0)?;
    let omega = p.get_f64("omega", 1.0)?;
    let tmax = p.get_f64("tmax", 2.0 * PI)?;
    let dt = p.get_f64("dt", 0.01)?;
    let psis = p.get_f64_list("psi_list", &[0.0, FRAC_PI_2, PI])?;
    if dt <= 0.0 || tmax < 0.0 {
        return Err(CliError::Config("tmax must be >= 0 and dt > 0".into()));
    }

    let state0 = ClockState::new(beta0, omega);
    let mut rows = Vec::new();
    let steps = (tmax / dt).floor() as usize;
    for k in 0..=steps {
        let t = k as f64 * dt;
        let state = clock_evolve(&state0, t);
        for &psi in &psis {
            rows.push(vec![t, psi, clock_expectation(&state, psi)]);
        }
    }

    let mut summary = Value::map();
    summary.insert("beta_final".into(), Value::Num(beta0 + omega * steps as f64 * dt));
    summary.insert("omega".into(), Value::Num(omega));
    summary.insert("samples".into(), Value::Int(rows.len() as i64));
    Ok(RunOutput {
        summary,
        table: Some(Table {
            columns: vec!["t".into(), "psi".into(), "expectation".into()],
            rows,
        }),
    })
}

pub fn sphere(p: &mut Params) -> Result<RunOutput> {
    let rho = p.get_f64_list("rho", &[0.6, 0.0, 0.8])?;
    let e = p.get_f64_list("direction", &[0.0, 0.0, 1.0])?;
    let profile_name = p.get_str("profile", "unit-shell")?;
    let n = p.get_u64("n", 100_000)?;
    let seed = p.require_seed()?;

    let rho: [f64; 3] = rho
        .try_into()
        .map_err(|_| CliError::Config("rho needs exactly three components".into()))?;
    let e: [f64; 3] = e
        .try_into()
        .map_err(|_| CliError::Config("direction needs exactly three components".into()))?;
    let norm = (e[0] * e[0] + e[1] * e[1] + e[2] * e[2]).sqrt();
    if norm < 1e-14 {
        return Err(CliError::Config("direction must be nonzero".into()));
    }
    let e = [e[0] / norm, e[1] / norm, e[2] / norm];
    let profile = match profile_name.as_str() {
        "unit-shell" => RadialProfile::UnitShell,
        "gaussian" => RadialProfile::Gaussian,
        other => {
            return Err(CliError::Config(format!(
                "unknown profile '{other}' (use unit-shell or gaussian)"
            )))
        }
    };
    let state = SphereState::new(rho, profile).map_err(|e| CliError::Config(e.to_string()))?;

    let quadrature = sphere_expectation(&state, &e).map_err(numeric)?;
    let exact = e[0] * rho[0] + e[1] * rho[1] + e[2] * rho[2];
    let mc = sphere_expectation_monte_carlo(&state, &e, n as usize, seed).map_err(numeric)?;
    let sigma = if mc.std_error > 0.0 {
        (mc.mean - quadrature).abs() / mc.std_error
    } else {
        0.0
    };

    let mut summary = Value::map();
    summary.insert("quadrature".into(), Value::Num(quadrature));
    summary.insert("scalar_product".into(), Value::Num(exact));
    summary.insert("mc_mean".into(), Value::Num(mc.mean));
    summary.insert("mc_std_error".into(), Value::Num(mc.std_error));
    summary.insert("mc_sigma_distance".into(), Value::Num(sigma));
    summary.insert("samples".into(), Value::Int(n as i64));
    Ok(RunOutput {
        summary,
        table: None,
    })
}
