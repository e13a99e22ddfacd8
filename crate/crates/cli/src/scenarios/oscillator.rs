//! The oscillator scenario: evolve a phase-space mode pair and export the
//! final wave with its scalar observables.

use std::f64::consts::PI;

use qembed_oscillator::{
    liouville_evolve, wave_from_modes, wave_summary, ModePair, OscillatorError, PhaseGrid,
};

use crate::{CliError, Params, Result, RunOutput, Table, Value};

fn map_err(e: OscillatorError) -> CliError {
    match e {
        OscillatorError::ModeTooHigh(_)
        | OscillatorError::BadOscillator { .. }
        | OscillatorError::GridCoverage { .. }
        | OscillatorError::BadStep(_) => CliError::Config(e.to_string()),
        other => CliError::Numeric(other.to_string()),
    }
}

pub fn oscillator(p: &mut Params) -> Result<RunOutput> {
    let modes = p.get_str("modes", "1,0")?;
    let parts: Vec<&str> = modes.split(',').map(str::trim).collect();
    let (n, n_prime) = match parts.as_slice() {
        [a, b] => (
            a.parse::<usize>()
                .map_err(|_| CliError::Config(format!("bad mode index '{a}'")))?,
            b.parse::<usize>()
                .map_err(|_| CliError::Config(format!("bad mode index '{b}'")))?,
        ),
        _ => return Err(CliError::Config("modes must be 'n,n_prime'".into())),
    };
    let grid_n = p.get_usize("grid", 128)?;
    let tmax = p.get_f64("tmax", 2.0 * PI)?;
    let mass = p.get_f64("mass", 1.0)?;
    let spring = p.get_f64("spring", 1.0)?;
    let dt = p.get_f64("dt", 0.0)?;
    if grid_n < 8 || tmax < 0.0 {
        return Err(CliError::Config("grid must be >= 8 and tmax >= 0".into()));
    }

    let pair = ModePair::new(n, n_prime, mass, spring).map_err(map_err)?;
    let grid = PhaseGrid::new(grid_n, grid_n, 8.0, 8.0);
    let wave0 = wave_from_modes(&pair, &grid).map_err(map_err)?;
    let step = if dt > 0.0 { Some(dt) } else { None };
    let wave = liouville_evolve(&wave0, mass, spring, tmax, step).map_err(map_err)?;

    let ws = wave_summary(&wave, tmax, mass, spring);
    let mut summary = Value::map();
    summary.insert("t".into(), Value::Num(ws.t));
    summary.insert("norm".into(), Value::Num(ws.norm));
    summary.insert("energy".into(), Value::Num(ws.energy));
    summary.insert("color_re".into(), Value::Num(ws.color_re));
    summary.insert("color_im".into(), Value::Num(ws.color_im));
    summary.insert("beat_frequency".into(), Value::Num(pair.beat()));

    let amp = wave.amplitudes();
    let mut rows = Vec::with_capacity(grid_n * grid_n);
    for i in 0..grid.n_z {
        for j in 0..grid.n_p {
            let v = amp[(i, j)];
            rows.push(vec![grid.z(i), grid.p(j), v.re, v.im]);
        }
    }
    Ok(RunOutput {
        summary,
        table: Some(Table {
            columns: vec!["z".into(), "p".into(), "re".into(), "im".into()],
            rows,
        }),
    })
}
