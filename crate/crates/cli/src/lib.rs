//! Batch front end over the core library: construct complexes, run the
//! verification suites across parameter ranges, export facet files, and emit
//! deterministic JSON or text reports.

pub mod commands;
pub mod error;
pub mod report;
pub mod suites;

pub use commands::{cmd_build, cmd_degree, cmd_export, cmd_homology, parse_range, Family};
pub use error::CliError;
pub use report::{Report, Status};
pub use suites::{run_suites, Suite, SuiteConfig};
