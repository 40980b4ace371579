//! IO companion for `clasp-core`: JSON/CSV file formats, the σ-table cache,
//! the command implementations behind the `clasp` binary, and the
//! paper-value reproduction report.

pub mod cache;
pub mod commands;
pub mod error;
pub mod format;
pub mod reproduce;

pub use error::{CliError, ExitCode};
