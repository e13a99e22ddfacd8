//! The `qembed` binary: run, list, and export reproducible scenarios.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{ArgAction, Args, Parser, Subcommand};

use qembed_cli::config::{load_config_file, Params};
use qembed_cli::scenarios::{catalog, run_scenario};
use qembed_cli::{
    json, manifest_document, result_document, CliError, Result, RunOutput, Table, Value,
};

const SCENARIOS_HELP: &str = "Scenarios (alphabetical): chsh, clock, completeness, decoherence, \
gates, ghz, kochen-specker, learner, oscillator, qubit-chain, sphere, stern-gerlach. \
Run 'qembed list' for one-line descriptions.";

#[derive(Parser)]
#[command(
    name = "qembed",
    version,
    about = "Classical-statistics embeddings of quantum subsystems",
    after_help = SCENARIOS_HELP
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run one scenario and write its result document
    #[command(after_help = SCENARIOS_HELP)]
    Run(Box<RunArgs>),
    /// List the scenario catalog
    List,
    /// Re-export a result document in another format
    Export(ExportArgs),
}

#[derive(Args)]
struct RunArgs {
    /// scenario name (see `qembed list`)
    #[arg(long)]
    scenario: String,
    /// JSON config file; flags override its keys
    #[arg(long)]
    config: Option<PathBuf>,
    /// RNG seed; mandatory for stochastic scenarios
    #[arg(long)]
    seed: Option<u64>,
    /// output path; stdout when omitted (a manifest is written next to files)
    #[arg(long)]
    out: Option<PathBuf>,
    /// output format: json or csv
    #[arg(long, default_value = "json")]
    format: String,
    /// generic key=value parameter override (repeatable)
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,

    // scenario parameters; each maps to the config key of the same name
    #[arg(long)]
    mode: Option<String>,
    #[arg(long)]
    state: Option<String>,
    #[arg(long, action = ArgAction::SetTrue)]
    optimize: bool,
    #[arg(long)]
    map: Option<String>,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    modes: Option<String>,
    #[arg(long)]
    grid: Option<u64>,
    #[arg(long)]
    tmax: Option<f64>,
    #[arg(long)]
    dt: Option<f64>,
    #[arg(long)]
    beta0: Option<f64>,
    #[arg(long)]
    omega: Option<f64>,
    #[arg(long)]
    psi_list: Option<String>,
    #[arg(long)]
    sequence: Option<String>,
    #[arg(long = "m")]
    m: Option<u64>,
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long)]
    epochs: Option<u64>,
    #[arg(long)]
    restarts: Option<u64>,
    #[arg(long)]
    length: Option<u64>,
    #[arg(long)]
    profile: Option<String>,
    #[arg(long)]
    rho: Option<String>,
    #[arg(long)]
    direction: Option<String>,
    #[arg(long)]
    steps: Option<u64>,
    #[arg(long)]
    gate: Option<String>,
    #[arg(long)]
    bloch: Option<String>,
}

#[derive(Args)]
struct ExportArgs {
    /// result JSON produced by `qembed run`
    #[arg(long)]
    input: PathBuf,
    /// output format: json or csv
    #[arg(long, default_value = "json")]
    format: String,
    /// output path; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("{e}");
        std::process::exit(e.exit_code());
    }
    let result = match cli.cmd {
        Cmd::Run(args) => run(*args),
        Cmd::List => list(),
        Cmd::Export(args) => export(args),
    };
    if let Err(e) = result {
        eprintln!("{e}");
        std::process::exit(e.exit_code());
    }
}

/// QEMBED_THREADS caps scenario-internal parallelism.
fn configure_threads() -> Result<()> {
    if let Ok(raw) = std::env::var("QEMBED_THREADS") {
        let n: usize = raw
            .parse()
            .ok()
            .filter(|&n| n >= 1)
            .ok_or_else(|| CliError::Config(format!("QEMBED_THREADS must be a positive integer, got '{raw}'")))?;
        // a second initialization (e.g. in tests) is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

fn build_params(args: &RunArgs) -> Result<Params> {
    let mut values: BTreeMap<String, serde_json::Value> = match &args.config {
        Some(path) => load_config_file(path)?,
        None => BTreeMap::new(),
    };
    for pair in &args.set {
        let (key, raw) = pair
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("--set needs KEY=VALUE, got '{pair}'")))?;
        let value = serde_json::from_str(raw)
            .unwrap_or_else(|_| serde_json::Value::String(raw.to_string()));
        values.insert(key.to_string(), value);
    }
    let mut params = Params::new(values);

    let num = |x: f64| serde_json::Value::from(x);
    if let Some(v) = &args.mode {
        params.set("mode", v.clone().into());
    }
    if let Some(v) = &args.state {
        params.set("state", v.clone().into());
    }
    if args.optimize {
        params.set("optimize", true.into());
    }
    if let Some(v) = &args.map {
        params.set("map", v.clone().into());
    }
    if let Some(v) = args.n {
        params.set("n", v.into());
    }
    if let Some(v) = &args.modes {
        params.set("modes", v.clone().into());
    }
    if let Some(v) = args.grid {
        params.set("grid", v.into());
    }
    if let Some(v) = args.tmax {
        params.set("tmax", num(v));
    }
    if let Some(v) = args.dt {
        params.set("dt", num(v));
    }
    if let Some(v) = args.beta0 {
        params.set("beta0", num(v));
    }
    if let Some(v) = args.omega {
        params.set("omega", num(v));
    }
    if let Some(v) = &args.psi_list {
        params.set("psi_list", v.clone().into());
    }
    if let Some(v) = &args.sequence {
        params.set("sequence", v.clone().into());
    }
    if let Some(v) = args.m {
        params.set("m", v.into());
    }
    if let Some(v) = args.samples {
        params.set("samples", v.into());
    }
    if let Some(v) = args.epochs {
        params.set("epochs", v.into());
    }
    if let Some(v) = args.restarts {
        params.set("restarts", v.into());
    }
    if let Some(v) = args.length {
        params.set("length", v.into());
    }
    if let Some(v) = &args.profile {
        params.set("profile", v.clone().into());
    }
    if let Some(v) = &args.rho {
        params.set("rho", v.clone().into());
    }
    if let Some(v) = &args.direction {
        params.set("direction", v.clone().into());
    }
    if let Some(v) = args.steps {
        params.set("steps", v.into());
    }
    if let Some(v) = &args.gate {
        params.set("gate", v.clone().into());
    }
    if let Some(v) = &args.bloch {
        params.set("bloch", v.clone().into());
    }
    if let Some(seed) = args.seed {
        params.set("seed", seed.into());
    }
    Ok(params)
}

fn render(format: &str, doc: &Value, output: &RunOutput) -> Result<String> {
    match format {
        "json" => Ok(doc.render()),
        "csv" => Ok(match &output.table {
            Some(table) => table.to_csv(),
            None => summary_csv(output),
        }),
        other => Err(CliError::Config(format!(
            "unknown format '{other}' (use json or csv)"
        ))),
    }
}

fn summary_csv(output: &RunOutput) -> String {
    let mut out = String::from("key,value\n");
    for (k, v) in &output.summary {
        let cell = match v {
            Value::Num(x) => json::fmt_float(*x),
            Value::Int(i) => i.to_string(),
            Value::Bool(b) => b.to_string(),
            Value::Str(s) => s.clone(),
            other => other.render().trim_end().to_string(),
        };
        out.push_str(&format!("{k},{cell}\n"));
    }
    out
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::write(path, bytes)
        .map_err(|e| CliError::Numeric(format!("cannot write {}: {e}", path.display())))
}

fn run(args: RunArgs) -> Result<()> {
    let mut params = build_params(&args)?;
    let output = run_scenario(&args.scenario, &mut params)?;
    let doc = result_document(&args.scenario, &params, &output);
    let rendered = render(&args.format, &doc, &output)?;
    match &args.out {
        Some(out) => {
            write_file(out, rendered.as_bytes())?;
            let manifest = manifest_document(
                &args.scenario,
                &params,
                &[(out.as_path(), rendered.as_bytes())],
            );
            let manifest_path = PathBuf::from(format!("{}.manifest.json", out.display()));
            write_file(&manifest_path, manifest.render().as_bytes())?;
        }
        None => print!("{rendered}"),
    }
    Ok(())
}

fn list() -> Result<()> {
    for scenario in catalog() {
        println!("{:<16} {}", scenario.name, scenario.doc);
    }
    Ok(())
}

fn export(args: ExportArgs) -> Result<()> {
    let text = std::fs::read_to_string(&args.input)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", args.input.display())))?;
    let parsed: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Config(format!("invalid result JSON: {e}")))?;
    let doc = json::from_serde(&parsed);

    let rendered = match args.format.as_str() {
        "json" => doc.render(),
        "csv" => exported_csv(&parsed)?,
        other => {
            return Err(CliError::Config(format!(
                "unknown format '{other}' (use json or csv)"
            )))
        }
    };
    match &args.out {
        Some(out) => write_file(out, rendered.as_bytes())?,
        None => print!("{rendered}"),
    }
    Ok(())
}

fn exported_csv(parsed: &serde_json::Value) -> Result<String> {
    let table = parsed.get("table").ok_or_else(|| {
        CliError::Config("result document has no table; export it as json".into())
    })?;
    let columns: Vec<String> = table
        .get("columns")
        .and_then(|c| c.as_array())
        .map(|items| {
            items
                .iter()
                .map(|v| v.as_str().unwrap_or_default().to_string())
                .collect()
        })
        .ok_or_else(|| CliError::Config("table has no columns".into()))?;
    let rows: Vec<Vec<f64>> = table
        .get("rows")
        .and_then(|r| r.as_array())
        .map(|items| {
            items
                .iter()
                .map(|row| {
                    row.as_array()
                        .map(|cells| cells.iter().filter_map(|c| c.as_f64()).collect())
                        .unwrap_or_default()
                })
                .collect()
        })
        .ok_or_else(|| CliError::Config("table has no rows".into()))?;
    Ok(Table { columns, rows }.to_csv())
}
