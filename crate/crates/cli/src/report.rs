use std::fmt;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug)]
pub enum CliError {
    /// Bad files, bad flags, inputs outside the solver's preconditions.
    Input(String),
    /// A certificate was checked and rejected.
    Rejected(Vec<String>),
    /// The library broke one of its own invariants.
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Rejected(_) => ExitCode::from(1),
            CliError::Input(_) => ExitCode::from(2),
            CliError::Internal(_) => ExitCode::from(3),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "{m}"),
            CliError::Rejected(r) => write!(f, "certificate rejected: {}", r.join("; ")),
            CliError::Internal(m) => write!(f, "internal invariant violated: {m}"),
        }
    }
}

impl From<quasidom::Error> for CliError {
    fn from(e: quasidom::Error) -> Self {
        use quasidom::Error as E;
        match e.root_cause() {
            E::VertexOutOfRange { .. }
            | E::ColorOutOfRange { .. }
            | E::SelfLoop { .. }
            | E::NotComplete { .. }
            | E::InvalidConfig(_)
            | E::Domain(_)
            | E::TooLarge { .. }
            | E::Format(_)
            | E::Json(_) => CliError::Input(e.to_string()),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Everything needed to replay a run, plus its result.
#[derive(Debug, Serialize)]
pub struct RunReport<P: Serialize, C: Serialize = ()> {
    pub command: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance_hash: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub config: Option<C>,
    pub payload: P,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<serde_json::Value>,
}

/// The invocation with the program path normalized, so reports do not
/// depend on where the binary lives.
pub fn command_echo(argv: &[String]) -> Vec<String> {
    std::iter::once("quasidom".to_string())
        .chain(argv.iter().skip(1).cloned())
        .collect()
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn emit<P: Serialize, C: Serialize>(report: &RunReport<P, C>) -> CliResult<()> {
    let mut text = serde_json::to_string(report).map_err(|e| CliError::Internal(e.to_string()))?;
    text.push('\n');
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    lock.write_all(text.as_bytes())
        .and_then(|_| lock.flush())
        .map_err(|e| CliError::Input(format!("writing report: {e}")))
}

/// Writes through a sibling temporary file and renames into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> CliResult<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = Path::new(&tmp);
    std::fs::write(tmp, bytes)
        .and_then(|_| std::fs::rename(tmp, path))
        .map_err(|e| CliError::Input(format!("writing {}: {e}", path.display())))
}

pub fn read_file(path: &Path) -> CliResult<Vec<u8>> {
    std::fs::read(path).map_err(|e| CliError::Input(format!("reading {}: {e}", path.display())))
}
