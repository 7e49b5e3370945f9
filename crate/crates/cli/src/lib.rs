//! Library side of the `subord` command: the distribution file format,
//! the pipeline language of `compute`, and the subcommand bodies.

pub mod commands;
pub mod error;
pub mod format;
pub mod pipeline;

pub use error::CliError;
pub use format::{DistributionFile, Kind};
