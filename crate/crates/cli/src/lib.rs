//! Command-line front end for the `geomean` library: matrix file I/O and the
//! `mean`, `check` and `gen` subcommands.

pub mod commands;
pub mod error;
pub mod io;

pub use commands::{run, Cli, Command};
pub use error::CliError;
pub use io::{Format, MatrixFile};
