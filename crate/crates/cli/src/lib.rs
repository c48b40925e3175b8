//! Configuration, file formats and commands behind the `isomorph` binary.

pub mod config;
pub mod error;
pub mod output;
pub mod report;
pub mod run;
pub mod target;

pub use config::RunConfig;
pub use error::CliError;
pub use report::RunReport;
pub use run::{probe, sample, SampleOptions};
