//! Library side of the `tadic` command: configuration parsing, command
//! dispatch and JSON encoding.

pub mod config;
pub mod json;
pub mod run;

pub use config::{parse_config, ConfigError, RunConfig};
pub use run::{run, Outcome, RunError};
