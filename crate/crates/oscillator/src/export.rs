//! Serialization of phase-space waves for the command-line tools.

use std::io::Write;

use serde::Serialize;

use crate::wave::{quantum_energy_expectation, PhaseSpaceWave};
use crate::{OscillatorError, Result};

/// Scalar observables of a wave at one instant.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct WaveSummary {
    pub t: f64,
    pub norm: f64,
    pub energy: f64,
    pub color_re: f64,
    pub color_im: f64,
}

/// Summarize a wave: norm, quantum energy, and the two color populations.
pub fn wave_summary(wave: &PhaseSpaceWave, t: f64, m: f64, spring: f64) -> WaveSummary {
    let (color_re, color_im) = wave.color_populations();
    WaveSummary {
        t,
        norm: wave.norm(),
        energy: quantum_energy_expectation(wave, m, spring),
        color_re,
        color_im,
    }
}

/// Write the wave amplitudes as CSV rows `z,p,re,im` in row-major grid
/// order.
pub fn write_wave_csv(wave: &PhaseSpaceWave, out: impl Write) -> Result<()> {
    let io_err = |e: csv::Error| OscillatorError::Io(e.to_string());
    let mut writer = csv::Writer::from_writer(out);
    writer
        .write_record(["z", "p", "re", "im"])
        .map_err(io_err)?;
    let grid = &wave.grid;
    let amp = wave.amplitudes();
    for i in 0..grid.n_z {
        for j in 0..grid.n_p {
            let v = amp[(i, j)];
            writer
                .write_record([
                    format!("{:.16e}", grid.z(i)),
                    format!("{:.16e}", grid.p(j)),
                    format!("{:.16e}", v.re),
                    format!("{:.16e}", v.im),
                ])
                .map_err(io_err)?;
        }
    }
    writer.flush().map_err(|e| OscillatorError::Io(e.to_string()))
}
