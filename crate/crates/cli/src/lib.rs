//! Verification suites and report plumbing behind the `witt` binary.

pub mod reference;
pub mod report;
pub mod suites;

pub use report::{Check, Status, SuiteReport};
pub use suites::{run_suite, OmegaArg, Params, SuiteError, SUITES};
