//! Experiment driver for the `convdiff` discretizations: single solves,
//! pairwise comparisons and convergence sweeps, reported as CSV or JSON.

pub mod error;
pub mod experiment;
pub mod problems;
pub mod report;

pub use error::{LabError, Result};
pub use experiment::{compare_solutions, run_convergence, Config, RhsChoice, SchemeChoice, SweepOptions};
pub use problems::ProblemRegistry;
pub use report::{ExperimentReport, Format, ReportRow};
