use std::fmt;
use std::path::Path;
use std::process::ExitCode;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

/// How a command's answer maps onto the process exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Answered,
    /// The answer is "no" (not a hull set, some check failed, ...).
    Negative,
    /// A search budget ran out; the payload holds what was found so far.
    Budget,
}

impl Status {
    pub fn code(self) -> ExitCode {
        match self {
            Status::Answered => ExitCode::SUCCESS,
            Status::Negative => ExitCode::from(1),
            Status::Budget => ExitCode::from(3),
        }
    }
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Io { path: String, source: std::io::Error },
    Lib(hullkit::Error),
}

impl Failure {
    pub fn code(&self) -> ExitCode {
        use hullkit::Error as E;
        match self {
            Failure::Usage(_) | Failure::Io { .. } => ExitCode::from(2),
            Failure::Lib(e) => match e {
                E::BudgetExceeded { .. } | E::UniverseTooLarge { .. } => ExitCode::from(3),
                E::Infeasible(_) | E::NotPartialCube => ExitCode::from(1),
                _ => ExitCode::from(2),
            },
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) => f.write_str(m),
            Failure::Io { path, source } => write!(f, "{path}: {source}"),
            Failure::Lib(e) => write!(f, "{e}"),
        }
    }
}

impl From<hullkit::Error> for Failure {
    fn from(e: hullkit::Error) -> Self {
        Failure::Lib(e)
    }
}

pub type CliResult<T> = Result<T, Failure>;

#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

/// Reads an input file (`-` is standard input) and records its digest.
pub fn read_input(path: &Path, inputs: &mut Vec<InputDigest>) -> CliResult<String> {
    let shown = path.display().to_string();
    let text = if shown == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    }
    .map_err(|source| Failure::Io { path: shown.clone(), source })?;
    let digest = Sha256::digest(text.as_bytes());
    inputs.push(InputDigest {
        path: shown,
        sha256: digest.iter().map(|b| format!("{b:02x}")).collect(),
    });
    Ok(text)
}

pub fn write_output(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|source| Failure::Io {
        path: path.display().to_string(),
        source,
    })
}

/// The JSON document every command prints on standard output. The `result`
/// payload depends only on the inputs and the seed; `elapsed_ms` does not.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub version: &'static str,
    pub inputs: Vec<InputDigest>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub elapsed_ms: f64,
    pub result: Value,
}
