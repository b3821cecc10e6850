//! Verification suites and reports for hyperelliptic higher Chow precycles
//! and their regulator integrals.

pub mod config;
pub mod report;
pub mod scan;
pub mod suites;

pub use config::{CurveFile, CurveSetup, UsageError};
pub use report::{Format, Record, Report, Status};
