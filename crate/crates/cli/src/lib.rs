//! Batch front end for `twistcoh`: resolves a run configuration, evaluates
//! it over a weight grid (in parallel when allowed) and renders a
//! deterministic JSON or CSV report.

pub mod commands;
pub mod config;
pub mod error;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};
use twistcoh::format;
use twistcoh::model::ValidationReport;

pub use config::{Command, OutputFormat, RunConfig};
pub use error::CliError;

pub const THREADS_ENV: &str = "TWISTCOH_THREADS";

/// Maps over `items` in parallel, keeping input order. On failure the error
/// of the lowest index is returned, so reruns fail identically.
pub(crate) fn par_map<T, R, F>(items: &[T], f: F) -> Result<Vec<R>, CliError>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> twistcoh::Result<R> + Sync + Send,
{
    let all: Vec<twistcoh::Result<R>> = items.par_iter().map(f).collect();
    all.into_iter().map(|r| r.map_err(CliError::from)).collect()
}

#[derive(Serialize)]
struct Report<'a> {
    config: &'a RunConfig,
    model_digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    validation: Option<&'a ValidationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    summary: Option<Value>,
    results: Vec<Value>,
}

fn sha256_hex(parts: &[&str]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update(p.as_bytes());
        h.update(b"\n");
    }
    hex::encode(h.finalize())
}

fn threads() -> Result<usize, CliError> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(CliError::Parse(format!("{THREADS_ENV}={v:?} is not a positive integer"))),
        },
        Err(_) => Ok(0),
    }
}

/// Runs `cfg` and returns the rendered report.
pub fn run(cfg: &RunConfig) -> Result<Vec<u8>, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads()?)
        .build()
        .map_err(|e| CliError::Internal(e.to_string()))?;
    pool.install(|| render(cfg))
}

fn render(cfg: &RunConfig) -> Result<Vec<u8>, CliError> {
    let mut validation = None;
    let (digest, output) = if cfg.command.uses_model() {
        let source = cfg.model.as_deref().ok_or_else(|| CliError::Parse("--model is required".into()))?;
        let mut model = config::load_model(source)?;
        if let Some(theta) = &cfg.theta {
            model = model.with_theta(theta.clone())?;
        }
        let report = model.validate();
        if !report.passed() {
            let msgs: Vec<String> = report
                .failures()
                .iter()
                .map(|c| format!("{}: {}", c.constraint, c.witnesses.join("; ")))
                .collect();
            return Err(CliError::Validation(format!("model {} fails validation: {}", model.name, msgs.join(" | "))));
        }
        let digest = sha256_hex(&[&format::serialize(&model), &serde_json::to_string(&report).unwrap()]);
        validation = Some(report);
        let out = match cfg.command {
            Command::Mn => commands::mn(cfg, &model)?,
            Command::Dolbeault => commands::dolbeault_cmd(cfg, &model)?,
            Command::Bc => commands::bc(cfg, &model)?,
            Command::Frolicher => commands::frolicher(cfg, &model)?,
            Command::Spectrum => commands::spectrum_cmd(cfg, &model)?,
            Command::Hopf | Command::Jets => unreachable!(),
        };
        (digest, out)
    } else {
        let out = match cfg.command {
            Command::Hopf => commands::hopf(cfg)?,
            _ => commands::jets(cfg)?,
        };
        // no model file here; hash the inputs that play its role
        let inputs = serde_json::to_string(&(&cfg.beta, &cfg.diag, &cfg.linear, &cfg.y, cfg.jet_degree)).unwrap();
        (sha256_hex(&[&inputs]), out)
    };

    match cfg.format {
        OutputFormat::Json => {
            let report = Report { config: cfg, model_digest: digest, validation: validation.as_ref(), summary: output.summary, results: output.results };
            let mut bytes = serde_json::to_vec_pretty(&report).map_err(|e| CliError::Internal(e.to_string()))?;
            bytes.push(b'\n');
            Ok(bytes)
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| CliError::Io(e.to_string());
            w.write_record(&output.csv_header).map_err(io)?;
            for row in &output.csv_rows {
                w.write_record(row).map_err(io)?;
            }
            w.into_inner().map_err(|e| CliError::Io(e.to_string()))
        }
    }
}
