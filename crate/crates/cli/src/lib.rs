//! Front end for the `doublevec` binary: property suites and one-shot
//! computations over JSON inputs.

pub mod compute;
pub mod suites;

use std::path::Path;

use serde_json::Value;

/// Exit status 1: a check failed or an operation could not be carried out.
/// Exit status 2: the input could not be read or understood.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Operation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Operation(_) => 1,
        }
    }

    /// Wraps a library error raised while decoding input.
    pub fn input(e: doublevec::Error) -> Self {
        CliError::Input(e.to_string())
    }

    pub fn op(e: doublevec::Error) -> Self {
        CliError::Operation(e.to_string())
    }
}

pub fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("malformed JSON in {}: {e}", path.display())))
}

/// Pretty JSON with a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}
