//! Command-layer errors.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Scenario file problem, with its 1-based line number (0 when the
    /// problem is a missing section rather than a bad line).
    #[error("line {line}: {message}")]
    Scenario { line: usize, message: String },

    #[error(transparent)]
    Core(#[from] lagado_core::Error),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    /// An instance spec argument that does not parse.
    #[error("bad instance spec: {0}")]
    InstanceSpec(String),
}
