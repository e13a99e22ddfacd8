//! Scenario runner binding the toolkit's modules into reproducible
//! command-line experiments: every run is a pure function of (config, seed),
//! outputs use canonical formatting, and a manifest records the config echo,
//! crate versions, and output checksums.

use std::collections::BTreeMap;
use std::path::Path;

use sha2::{Digest, Sha256};

pub mod config;
pub mod json;
pub mod scenarios;

pub use config::Params;
pub use json::Value;

/// exit code 2
pub const EXIT_CONFIG: i32 = 2;
/// exit code 3
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug)]
pub enum CliError {
    /// invalid configuration or usage; exit code 2
    Config(String),
    /// numerical or runtime failure inside a scenario; exit code 3
    Numeric(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "config error: {msg}"),
            CliError::Numeric(msg) => write!(f, "numerical failure: {msg}"),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Numeric(_) => EXIT_NUMERIC,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

/// Adapter used by the scenario modules to turn library errors into the
/// numerical-failure exit path.
pub fn numeric(err: impl std::fmt::Display) -> CliError {
    CliError::Numeric(err.to_string())
}

/// Tabular scenario output; every cell is a float.
#[derive(Debug, Clone)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&x| json::fmt_float(x)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_value(&self) -> Value {
        let mut map = Value::map();
        map.insert(
            "columns".into(),
            Value::List(self.columns.iter().map(|c| Value::Str(c.clone())).collect()),
        );
        map.insert(
            "rows".into(),
            Value::List(
                self.rows
                    .iter()
                    .map(|r| Value::List(r.iter().map(|&x| Value::Num(x)).collect()))
                    .collect(),
            ),
        );
        Value::Map(map)
    }
}

/// What one scenario run produced: scalar summary plus an optional table.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub summary: BTreeMap<String, Value>,
    pub table: Option<Table>,
}

/// The full result document for a run.
pub fn result_document(scenario: &str, params: &Params, output: &RunOutput) -> Value {
    let mut doc = Value::map();
    doc.insert("scenario".into(), Value::Str(scenario.to_string()));
    doc.insert("config".into(), config_echo(params));
    doc.insert("summary".into(), Value::Map(output.summary.clone()));
    if let Some(table) = &output.table {
        doc.insert("table".into(), table.to_value());
    }
    Value::Map(doc)
}

fn config_echo(params: &Params) -> Value {
    Value::Map(
        params
            .values()
            .iter()
            .map(|(k, v)| (k.clone(), json::from_serde(v)))
            .collect(),
    )
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Manifest: config echo, crate versions, and checksums of the outputs.
pub fn manifest_document(
    scenario: &str,
    params: &Params,
    outputs: &[(&Path, &[u8])],
) -> Value {
    let mut doc = Value::map();
    doc.insert("scenario".into(), Value::Str(scenario.to_string()));
    doc.insert("config".into(), config_echo(params));
    let version = env!("CARGO_PKG_VERSION");
    let crates = [
        "qembed-automaton",
        "qembed-bitquantum",
        "qembed-cli",
        "qembed-continuum",
        "qembed-core",
        "qembed-gates",
        "qembed-measurement",
        "qembed-opensystem",
        "qembed-oscillator",
    ];
    doc.insert(
        "versions".into(),
        Value::Map(
            crates
                .iter()
                .map(|c| (c.to_string(), Value::Str(version.to_string())))
                .collect(),
        ),
    );
    doc.insert(
        "outputs".into(),
        Value::Map(
            outputs
                .iter()
                .map(|(path, bytes)| {
                    let name = path
                        .file_name()
                        .map(|n| n.to_string_lossy().into_owned())
                        .unwrap_or_default();
                    (name, Value::Str(sha256_hex(bytes)))
                })
                .collect(),
        ),
    );
    Value::Map(doc)
}
