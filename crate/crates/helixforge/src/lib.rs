//! Command-line front end for `helixforge-core`: job configuration, NC/CSV/SVG
//! file output and the `helixforge` subcommands.

pub mod cli;
pub mod config;
mod error;
pub mod io;

pub use config::{JobConfig, Shape};
pub use error::CliError;
