//! Batch front door for the `homcat` engine: JSON problem files in, deterministic reports out.
//!
//! A problem file is `{"version": "1", "command": "...", "payload": {...}}`; `version` may be
//! omitted. Reports carry a SHA-256 digest of the canonicalized problem so that a report can be
//! matched to its input, and they are byte-identical across runs unless timings are requested.

pub mod commands;
pub mod payload;
pub mod text;
pub mod verify;

use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: &str = "1";

/// Seed for the verify suites when neither the payload nor `HOMCAT_SEED` sets one.
pub const DEFAULT_SEED: u64 = 20_240_611;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Cohomology,
    Cone,
    Hom,
    Koszul,
    D0,
    Cech,
    Hyper,
    Spectral,
    Ext,
    Yoneda,
    Extension,
    Obstruction,
    Les,
    Correlate,
    Verify,
}

impl Command {
    pub const ALL: [Command; 15] = [
        Command::Cohomology,
        Command::Cone,
        Command::Hom,
        Command::Koszul,
        Command::D0,
        Command::Cech,
        Command::Hyper,
        Command::Spectral,
        Command::Ext,
        Command::Yoneda,
        Command::Extension,
        Command::Obstruction,
        Command::Les,
        Command::Correlate,
        Command::Verify,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Cohomology => "cohomology",
            Command::Cone => "cone",
            Command::Hom => "hom",
            Command::Koszul => "koszul",
            Command::D0 => "d0",
            Command::Cech => "cech",
            Command::Hyper => "hyper",
            Command::Spectral => "spectral",
            Command::Ext => "ext",
            Command::Yoneda => "yoneda",
            Command::Extension => "extension",
            Command::Obstruction => "obstruction",
            Command::Les => "les",
            Command::Correlate => "correlate",
            Command::Verify => "verify",
        }
    }

    pub fn from_name(name: &str) -> Option<Command> {
        Command::ALL.into_iter().find(|c| c.name() == name)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub version: Option<String>,
    pub command: Command,
    pub payload: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timings {
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: Command,
    pub schema_version: &'static str,
    pub engine_version: &'static str,
    /// `sha256:` + hex digest of the canonical JSON of the problem.
    pub input_digest: String,
    pub results: Value,
    /// `null` unless requested; wall-clock numbers would break byte-identical reruns.
    pub timings: Option<Timings>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("malformed JSON: {0}")]
    Parse(String),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error(transparent)]
    Engine(#[from] homcat::Error),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Parse(_) => "E_PARSE",
            CliError::Schema(_) => "E_SCHEMA",
            CliError::Engine(e) => e.code(),
        }
    }

    /// The structured error document written on failure.
    pub fn to_json(&self) -> Value {
        serde_json::json!({ "error": { "code": self.code(), "message": self.to_string() } })
    }
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    /// Overrides the verify-suite seed (from `HOMCAT_SEED`).
    pub seed: Option<u64>,
    pub timings: bool,
}

pub fn parse_problem(bytes: &[u8]) -> Result<ProblemFile, CliError> {
    let value: Value = serde_json::from_slice(bytes).map_err(|e| CliError::Parse(e.to_string()))?;
    let problem: ProblemFile =
        serde_json::from_value(value).map_err(|e| CliError::Schema(e.to_string()))?;
    if let Some(v) = &problem.version {
        if v != SCHEMA_VERSION {
            return Err(CliError::Schema(format!(
                "unsupported schema version {v:?}, expected {SCHEMA_VERSION:?}"
            )));
        }
    }
    Ok(problem)
}

/// `sha256:<hex>` of the problem with object keys sorted.
pub fn digest(problem: &ProblemFile) -> String {
    // serde_json's default map is ordered, so this serialization is canonical
    let canonical = serde_json::to_vec(&serde_json::to_value(problem).expect("problem serializes"))
        .expect("value serializes");
    format!("sha256:{}", hex::encode(Sha256::digest(&canonical)))
}

pub fn run(problem: &ProblemFile, opts: &Options) -> Result<Report, CliError> {
    let start = Instant::now();
    let results = commands::dispatch(problem.command, &problem.payload, opts)?;
    Ok(Report {
        command: problem.command,
        schema_version: SCHEMA_VERSION,
        engine_version: homcat::VERSION,
        input_digest: digest(problem),
        results,
        timings: opts.timings.then(|| Timings {
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        }),
    })
}

/// Parse and run; `expected` is the subcommand given on the command line, if any.
pub fn run_bytes(
    bytes: &[u8],
    expected: Option<Command>,
    opts: &Options,
) -> Result<Report, CliError> {
    let problem = parse_problem(bytes)?;
    if let Some(c) = expected {
        if c != problem.command {
            return Err(CliError::Schema(format!(
                "problem file is a {:?} problem but the {:?} command was invoked",
                problem.command.name(),
                c.name()
            )));
        }
    }
    run(&problem, opts)
}

pub fn to_json_string(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}
