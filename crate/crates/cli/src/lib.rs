//! Command line front end and local session service for `mutata`.

pub mod commands;
pub mod input;
pub mod service;

use std::fmt;
use std::path::Path;

use serde::Serialize;

/// Exit code for malformed or invalid input.
pub const EXIT_INVALID: i32 = 1;
/// Exit code when an exploration cap stopped the computation.
pub const EXIT_CAP: i32 = 2;

/// Error reported on stderr as `{"error": kind, "message": ..}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliError {
    pub error: String,
    pub message: String,
    #[serde(skip)]
    pub code: i32,
}

impl CliError {
    pub fn invalid(kind: &str, message: impl Into<String>) -> Self {
        CliError { error: kind.to_string(), message: message.into(), code: EXIT_INVALID }
    }

    pub fn parse(message: impl Into<String>) -> Self {
        Self::invalid("Parse", message)
    }

    pub fn io(path: &Path, e: std::io::Error) -> Self {
        Self::invalid("Io", format!("{}: {e}", path.display()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("error serializes")
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.error, self.message)
    }
}

impl std::error::Error for CliError {}

impl From<mutata::Error> for CliError {
    fn from(e: mutata::Error) -> Self {
        let code = if matches!(e, mutata::Error::CapExceeded(_)) { EXIT_CAP } else { EXIT_INVALID };
        CliError { error: e.kind().to_string(), message: e.to_string(), code }
    }
}
