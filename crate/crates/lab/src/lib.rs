//! Configuration-driven runs of the `stark-ep-core` pipelines, with CSV and
//! JSON artifacts.

pub mod cli;
pub mod config;
pub mod format;
pub mod presets;
pub mod run;

pub use config::{emit, parse_config, ConfigError, RunConfig};
pub use run::{run, RunError};
