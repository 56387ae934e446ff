//! Command-line front end: spec loading, report generation and
//! verification runs over the built-in corpus.

pub mod checks;
pub mod cli;
pub mod commands;
pub mod config;
pub mod failure;
pub mod input;
pub mod report;

pub use cli::{execute, Cli};
pub use config::{Format, Mode, RunConfig};
pub use failure::Failure;
