//! Provenance headers and output-file plumbing.
//!
//! Every file the tool writes starts with `#`-prefixed header lines: tool
//! version, command, and the full resolved configuration. Reruns with an
//! identical configuration produce byte-identical files, so nothing
//! time- or path-dependent belongs here.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Io(m) | CliError::Numeric(m) => write!(f, "{m}"),
        }
    }
}

impl From<gapbench_core::GraphError> for CliError {
    fn from(e: gapbench_core::GraphError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<gapbench_core::OperatorError> for CliError {
    fn from(e: gapbench_core::OperatorError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<gapbench_core::SpectraError> for CliError {
    fn from(e: gapbench_core::SpectraError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<gapbench_core::PageRankError> for CliError {
    fn from(e: gapbench_core::PageRankError) -> Self {
        match e {
            gapbench_core::PageRankError::MaxIterationsExceeded { .. } => {
                CliError::Numeric(e.to_string())
            }
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<gapbench_core::ExperimentError> for CliError {
    fn from(e: gapbench_core::ExperimentError) -> Self {
        CliError::Usage(e.to_string())
    }
}

/// Ordered key=value pairs echoed into every output header.
pub struct Provenance {
    command: &'static str,
    entries: Vec<(String, String)>,
}

impl Provenance {
    pub fn new(command: &'static str) -> Self {
        Self {
            command,
            entries: Vec::new(),
        }
    }

    pub fn push(&mut self, key: &str, value: impl std::fmt::Display) -> &mut Self {
        self.entries.push((key.to_string(), value.to_string()));
        self
    }

    pub fn header(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# gapbench {VERSION}");
        let _ = writeln!(s, "# command: {}", self.command);
        let config: Vec<String> = self
            .entries
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        let _ = writeln!(s, "# config: {}", config.join(" "));
        s
    }
}

/// Writes `body` prefixed by the provenance header to `path`, or to stdout
/// when no path is given.
pub fn emit(path: &Option<PathBuf>, prov: &Provenance, body: &str) -> Result<(), CliError> {
    let full = format!("{}{}", prov.header(), body);
    match path {
        Some(p) => write_file(p, &full),
        None => {
            std::io::stdout()
                .write_all(full.as_bytes())
                .map_err(|e| CliError::Io(format!("writing stdout: {e}")))?;
            Ok(())
        }
    }
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents)
        .map_err(|e| CliError::Io(format!("writing {}: {e}", path.display())))
}

pub fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("reading {}: {e}", path.display())))
}

/// Dense-solver cutoff, overridable through GAPBENCH_DENSE_THRESHOLD.
pub fn dense_threshold() -> Result<usize, CliError> {
    match std::env::var("GAPBENCH_DENSE_THRESHOLD") {
        Ok(v) => v.trim().parse().map_err(|_| {
            CliError::Usage(format!(
                "GAPBENCH_DENSE_THRESHOLD must be a positive integer, got {v:?}"
            ))
        }),
        Err(_) => Ok(gapbench_core::DEFAULT_DENSE_THRESHOLD),
    }
}
