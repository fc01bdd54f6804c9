//! File formats and subcommands behind the `isospec` binary.

pub mod commands;
pub mod error;
pub mod format;

pub use error::CliError;
