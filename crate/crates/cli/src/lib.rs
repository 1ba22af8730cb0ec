//! Scenario-driven front end for the plasmonic beam-shift library.
//!
//! Everything the binary does is reachable through this crate so tests
//! can drive the exact code paths: scenario loading and validation,
//! angle scans, figure reproduction, the oracle self-check, and the
//! deterministic CSV/JSON writers.

pub mod commands;
pub mod figures;
pub mod oracle_check;
pub mod output;
pub mod scenario;

use thiserror::Error;

/// Categorized CLI failures; the binary maps all of these to a nonzero
/// exit code with the category visible in the message.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("computation error: {0}")]
    Computation(String),
    #[error("unknown figure id '{id}'; valid ids: {valid}")]
    UnknownFigure { id: String, valid: String },
    #[error("oracle error: {0}")]
    Oracle(String),
    #[error("oracle mismatch: {0} comparison(s) out of tolerance; see report")]
    OracleMismatch(usize),
}

impl From<sprshift_core::optics::StackError> for CliError {
    fn from(e: sprshift_core::optics::StackError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<sprshift_core::optics::OpticsError> for CliError {
    fn from(e: sprshift_core::optics::OpticsError) -> Self {
        CliError::Computation(e.to_string())
    }
}

impl From<sprshift_core::ifshift::ShiftError> for CliError {
    fn from(e: sprshift_core::ifshift::ShiftError) -> Self {
        CliError::Computation(e.to_string())
    }
}

impl From<sprshift_core::metrology::MetrologyError> for CliError {
    fn from(e: sprshift_core::metrology::MetrologyError) -> Self {
        CliError::Computation(e.to_string())
    }
}
