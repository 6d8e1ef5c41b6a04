//! Command-line front end for the `dgstab` calculator.

pub mod app;
pub mod expr;
pub mod output;

pub use app::{execute, run, Cli, CliError};
