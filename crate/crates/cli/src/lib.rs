//! File formats and the command-line pipeline around `polymult-core`.

pub mod export;
pub mod format;
pub mod run;
pub mod system_file;

pub use run::{run, Command, Failure, OutputFormat, RunConfig};
