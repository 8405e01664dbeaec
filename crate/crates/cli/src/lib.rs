//! File formats, commands and batch reports for the `semifact` binary.

pub mod commands;
pub mod document;
pub mod report;

use std::path::Path;

use thiserror::Error;

pub use commands::{run, Cli};
pub use document::GraphDocument;
pub use report::Report;

/// JSON schema of graph documents, as shipped.
pub const GRAPH_SCHEMA: &str = include_str!("../schema/graph.schema.json");
/// JSON schema of reports, as shipped.
pub const REPORT_SCHEMA: &str = include_str!("../schema/report.schema.json");

/// Exit code for bad input.
pub const EXIT_INPUT: i32 = 2;
/// Exit code for an infeasible descent or a failed internal check.
pub const EXIT_INFEASIBLE: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid graph at {field}: {message}")]
    Validation { field: String, message: String },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Graph(semifact::Error),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("internal check failed: {0}")]
    Internal(String),
    #[error("{file}: {source}")]
    InFile { file: String, source: Box<CliError> },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Infeasible(_) | CliError::Internal(_) => EXIT_INFEASIBLE,
            CliError::InFile { source, .. } => source.exit_code(),
            _ => EXIT_INPUT,
        }
    }

    pub fn from_graph(e: semifact::Error) -> CliError {
        CliError::Graph(e)
    }

    pub fn in_file(self, path: &Path) -> CliError {
        CliError::InFile { file: path.display().to_string(), source: Box::new(self) }
    }
}
