//! Command-line front end: input formats, run configuration and reports.

pub mod commands;
pub mod config;
pub mod edgelist;
pub mod error;
pub mod graph6;
pub mod output;

pub use commands::{execute, run, Outcome, Output};
pub use config::{Command, HostSource, RunConfig, Suite, SuiteParams};
pub use edgelist::{parse_edgelist, write_edgelist};
pub use error::{CliError, CliResult};
pub use graph6::{encode_graph6, parse_graph6};
pub use output::{render, write_report, Document, Format};

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "SPECTRAL_TURAN_THREADS";
