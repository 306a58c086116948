//! Command-line front end for the `H₃(1)` verification toolkit.

pub mod commands;
pub mod config;
pub mod report;

pub use commands::run;
pub use config::{Command, RunConfig};
