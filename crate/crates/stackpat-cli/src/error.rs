use thiserror::Error;

use stackpat::bijections::BijectionError;
use stackpat::enumeration::golden::GoldenError;
use stackpat::enumeration::{CountError, SequenceError};
use stackpat::machine::MachineError;
use stackpat::oracles::OracleError;
use stackpat::paths::PathError;
use stackpat::patterns::PatternError;
use stackpat::words::WordError;

/// Errors sorted by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Input outside the domain or a failed precondition.
    #[error("{0}")]
    Domain(String),
    /// Text that could not be parsed.
    #[error("{0}")]
    Parse(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Parse(_) => 2,
        }
    }
}

macro_rules! domain_errors {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Domain(e.to_string())
            }
        }
    )*};
}

domain_errors!(MachineError, OracleError, BijectionError, serde_json::Error);

impl From<PatternError> for CliError {
    fn from(e: PatternError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<WordError> for CliError {
    fn from(e: WordError) -> Self {
        match e {
            WordError::Parse(_) | WordError::ZeroLetter | WordError::UnknownDomain(_) => CliError::Parse(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<PathError> for CliError {
    fn from(e: PathError) -> Self {
        match e {
            PathError::BadStep(_) => CliError::Parse(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<CountError> for CliError {
    fn from(e: CountError) -> Self {
        match e {
            CountError::UnknownMethod(_) => CliError::Parse(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<SequenceError> for CliError {
    fn from(e: SequenceError) -> Self {
        match e {
            SequenceError::UnknownId(_) | SequenceError::Arity { .. } => CliError::Parse(e.to_string()),
            SequenceError::Invalid { .. } => CliError::Domain(e.to_string()),
        }
    }
}

impl From<GoldenError> for CliError {
    fn from(e: GoldenError) -> Self {
        match e {
            GoldenError::UnknownTable(_) | GoldenError::Parse { .. } => CliError::Parse(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}
