//! Report envelope, error classes and output routing.

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde_json::{Map, Value};

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Budget(String),
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) | CliError::Budget(m) => f.write_str(m),
        }
    }
}

impl From<hypermatch::Error> for CliError {
    fn from(e: hypermatch::Error) -> Self {
        match e {
            hypermatch::Error::BudgetExhausted { .. } => CliError::Budget(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

/// What a subcommand produced.
pub struct Outcome {
    pub report: Value,
    /// False when an asserted property failed.
    pub passed: bool,
    /// Primary output that takes over stdout; the report then goes to stderr.
    pub stdout_payload: Option<String>,
}

impl Outcome {
    /// Wraps `fields` in the versioned envelope.
    pub fn new(command: &str, fields: Value, passed: bool) -> Self {
        let mut map = Map::new();
        map.insert("schema".into(), SCHEMA_VERSION.into());
        map.insert("command".into(), command.into());
        if let Value::Object(rest) = fields {
            map.extend(rest);
        }
        map.insert("passed".into(), passed.into());
        Self {
            report: Value::Object(map),
            passed,
            stdout_payload: None,
        }
    }
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display())))
}

pub fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))
}

/// Prints the report, tolerating a closed stdout (e.g. piped into `head`).
pub fn emit(outcome: &Outcome, json: Option<&Path>) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(&outcome.report)?;
    if let Some(path) = json {
        write_file(path, &(text.clone() + "\n"))?;
    }
    let written = match &outcome.stdout_payload {
        Some(payload) => {
            eprintln!("{text}");
            io::stdout().write_all(payload.as_bytes())
        }
        None => writeln!(io::stdout(), "{text}"),
    };
    match written.and_then(|()| io::stdout().flush()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => {
            Err(CliError::input(format!("cannot write to stdout: {e}")))
        }
        _ => Ok(()),
    }
}
