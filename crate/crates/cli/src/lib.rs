//! Library side of the `bfs` command: argument definitions, subcommands and
//! the mapping from failures to exit codes.

pub mod args;
mod commands;

use std::io::Write;
use std::path::{Path, PathBuf};

use bfs_core::Error as CoreError;
use thiserror::Error;

pub use args::{Cli, Command};

/// Environment variable holding the worker thread count.
pub const THREADS_ENV: &str = "BFS_THREADS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io { path: path.to_path_buf(), source }
    }

    /// 2 for bad input, 3 for numerical failures, 1 for I/O on outputs.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Io { .. } => 1,
            CliError::Core(e) => match e {
                CoreError::NonFiniteDof { .. }
                | CoreError::NonFiniteNodal { .. }
                | CoreError::NonFiniteIntegrand { .. }
                | CoreError::NonFiniteExact(_) => 3,
                CoreError::Io(_) => 1,
                _ => 2,
            },
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Core(CoreError::Io(e))
    }
}

impl From<bfs_core::MeshError> for CliError {
    fn from(e: bfs_core::MeshError) -> Self {
        CliError::Core(e.into())
    }
}

/// Reads the thread count from [`THREADS_ENV`]; unset means rayon's default.
pub fn thread_count(value: Option<&str>) -> Result<Option<usize>, CliError> {
    match value {
        None => Ok(None),
        Some(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::Config(format!("{THREADS_ENV} must be a positive integer, got '{s}'"))),
        },
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Basis(a) => commands::basis(a, out),
        Command::Shape(a) => commands::shape(a, out),
        Command::Field(a) => commands::field(a, out),
        Command::Ips(a) => commands::ips(a, out),
        Command::Integrate(a) => commands::integrate(a, out),
    }
}
