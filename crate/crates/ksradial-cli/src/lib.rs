//! Command-line front end: construct, sweep, verify and evolve radial steady states.

pub mod args;
pub mod commands;
pub mod descriptor;
pub mod output;

use std::fmt;

/// Failure classes, each with its own exit status.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// A computed object failed a check, or a run could not complete.
    Invariant(String),
    /// The requested solution does not exist for these parameters.
    Admissibility(String),
    /// Malformed arguments or input files.
    Parse(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Invariant(_) => 1,
            CliError::Admissibility(_) => 2,
            CliError::Parse(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Invariant(m) => write!(f, "invariant failure: {m}"),
            CliError::Admissibility(m) => write!(f, "admissibility error: {m}"),
            CliError::Parse(m) => write!(f, "parse error: {m}"),
        }
    }
}

impl From<ksradial::Error> for CliError {
    fn from(e: ksradial::Error) -> Self {
        use ksradial::Error as E;
        match e {
            E::Admissibility(m) => CliError::Admissibility(m),
            E::NoRoot(_) | E::SearchExhausted(_) | E::Specfun(_) => {
                CliError::Admissibility(e.to_string())
            }
            E::InvalidInput(_) => CliError::Parse(e.to_string()),
            E::Integration(_) => CliError::Invariant(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Invariant(format!("i/o: {e}"))
    }
}
