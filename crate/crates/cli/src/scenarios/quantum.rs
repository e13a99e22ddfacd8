//! Deterministic quantum scenarios: gate sequences, the Stern-Gerlach
//! contrast, the sign-contradiction chains, and the decoherence trajectory.

use std::f64::consts::PI;

use qembed_core::{BlochVector, DensityMatrix};
use qembed_gates::apply_sequence;
use qembed_measurement::{kochen_specker_demo, stern_gerlach as sg_run};
use qembed_opensystem::{entangled_state, initial_product_state, trajectory};

use crate::{numeric, CliError, Params, Result, RunOutput, Table, Value};

pub fn gates(p: &mut Params) -> Result<RunOutput> {
    let sequence = p.get_str("sequence", "UH,UT")?;
    let names: Vec<String> = sequence
        .split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect();
    if names.is_empty() {
        return Err(CliError::Config("sequence must name at least one gate".into()));
    }
    let default_bloch = vec![0.0, 0.0, 1.0];
    let bloch = p.get_f64_list("bloch", &default_bloch)?;
    if bloch.len() != 3 && bloch.len() != 15 {
        return Err(CliError::Config(
            "bloch needs 3 components (one qubit) or 15 (two qubits)".into(),
        ));
    }
    let k = bloch.len();
    let mut rho = DensityMatrix::from_bloch(&BlochVector(bloch))
        .map_err(|e| CliError::Config(e.to_string()))?;

    let mut columns = vec!["step".to_string()];
    columns.extend((1..=k).map(|i| format!("b{i}")));
    let mut rows = Vec::new();
    let mut record = |step: usize, rho: &DensityMatrix| {
        let mut row = vec![step as f64];
        row.extend(rho.bloch().0);
        rows.push(row);
    };
    record(0, &rho);
    for (i, name) in names.iter().enumerate() {
        rho = apply_sequence(&rho, &[name.as_str()]).map_err(|e| CliError::Config(e.to_string()))?;
        record(i + 1, &rho);
    }

    let mut summary = Value::map();
    summary.insert("gates".into(), Value::Int(names.len() as i64));
    summary.insert("purity".into(), Value::Num(rho.purity()));
    Ok(RunOutput {
        summary,
        table: Some(Table { columns, rows }),
    })
}

pub fn stern_gerlach(p: &mut Params) -> Result<RunOutput> {
    let mode = p.get_str("mode", "decoherent")?;
    let coherent = match mode.as_str() {
        "coherent" => true,
        "decoherent" => false,
        other => {
            return Err(CliError::Config(format!(
                "unknown mode '{other}' (use coherent or decoherent)"
            )))
        }
    };
    let report = sg_run(coherent).map_err(numeric)?;

    let mut summary = Value::map();
    summary.insert("mode".into(), Value::Str(report.mode.clone()));
    for (k, v) in &report.probabilities {
        summary.insert(format!("prob_{k}"), Value::Num(*v));
    }
    for (k, v) in &report.expectations {
        summary.insert(format!("mean_{k}"), Value::Num(*v));
    }
    for (k, v) in &report.correlations {
        summary.insert(format!("corr_{k}"), Value::Num(*v));
    }
    Ok(RunOutput {
        summary,
        table: None,
    })
}

pub fn kochen_specker(_p: &mut Params) -> Result<RunOutput> {
    let report = kochen_specker_demo();
    let mut summary = Value::map();
    summary.insert("max_commutator".into(), Value::Num(report.max_commutator));
    summary.insert("chains_commute".into(), Value::Bool(report.chains_commute));
    summary.insert("product_identity".into(), Value::Bool(report.product_identity));
    summary.insert("anti_identity".into(), Value::Bool(report.anti_identity));
    summary.insert("shared_members".into(), Value::Bool(report.shared_members));
    summary.insert("sign_via_chains".into(), Value::Int(report.sign_via_chains as i64));
    summary.insert(
        "sign_via_diagonal".into(),
        Value::Int(report.sign_via_diagonal as i64),
    );
    summary.insert("contradiction".into(), Value::Bool(report.contradiction));
    let statement = if report.contradiction {
        "no single Ising-value assignment satisfies both sign rules"
    } else {
        "the sign assignments agree"
    };
    summary.insert("statement".into(), Value::Str(statement.into()));
    Ok(RunOutput {
        summary,
        table: None,
    })
}

pub fn decoherence(p: &mut Params) -> Result<RunOutput> {
    let omega = p.get_f64("omega", 1.0)?;
    if omega <= 0.0 {
        return Err(CliError::Config("omega must be positive".into()));
    }
    let state = p.get_str("state", "product")?;
    let tmax = p.get_f64("tmax", PI / omega)?;
    let steps = p.get_usize("steps", 96)?;
    if steps == 0 || tmax < 0.0 {
        return Err(CliError::Config("steps must be >= 1 and tmax >= 0".into()));
    }
    let rho4 = match state.as_str() {
        "product" => initial_product_state(),
        "entangled" => entangled_state(),
        other => {
            return Err(CliError::Config(format!(
                "unknown state '{other}' (use product or entangled)"
            )))
        }
    };
    let times: Vec<f64> = (0..=steps).map(|k| tmax * k as f64 / steps as f64).collect();
    let points = trajectory(&rho4, omega, &times).map_err(numeric)?;

    let rows: Vec<Vec<f64>> = points
        .iter()
        .map(|pt| vec![pt.t, pt.p, pt.rho1, pt.rho2, pt.rho3, pt.a, pt.re_b, pt.im_b])
        .collect();
    let min_purity = points.iter().map(|pt| pt.p).fold(f64::INFINITY, f64::min);

    let mut summary = Value::map();
    summary.insert("purity_initial".into(), Value::Num(points[0].p));
    summary.insert("purity_final".into(), Value::Num(points[points.len() - 1].p));
    summary.insert("purity_min".into(), Value::Num(min_purity));
    Ok(RunOutput {
        summary,
        table: Some(Table {
            columns: [
                "t", "purity", "rho1", "rho2", "rho3", "a", "re_b", "im_b",
            ]
            .iter()
            .map(|s| s.to_string())
            .collect(),
            rows,
        }),
    })
}
