//! Job parsing, dispatch and reports for the `sweedler` command line.

pub mod commands;
pub mod error;
pub mod inputs;
pub mod job;
pub mod report;

pub use commands::run;
pub use error::CliError;
pub use job::{default_bound, parse_input, Command, JobSpec};
pub use report::{exit_code, Report, Status};
