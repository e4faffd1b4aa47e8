//! Scenario loading, reports, and the pipelines behind the `lagado` binary.

pub mod error;
pub mod report;
pub mod repro;
pub mod run;
pub mod scenario;

pub use error::CliError;
pub use report::{Report, ReportFormat, write_report};
pub use repro::{ReproOutcome, repro_paper};
pub use run::{run_check, run_table, run_trace};
pub use scenario::{Expectation, InstanceSpec, Scenario};
