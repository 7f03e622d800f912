//! Command-line front end: TOML recipes, the `simulate`, `wave`, `riemann`
//! and `check` workflows, and their CSV/JSON outputs.

pub mod check;
pub mod config;
pub mod error;
pub mod output;

pub use config::{parse_config, RunConfig};
pub use error::CliError;
