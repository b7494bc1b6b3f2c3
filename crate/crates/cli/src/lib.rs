//! Command-line front end: evaluation, compilation stages, relation checks
//! and the acceptance suite.

pub mod app;
pub mod suite;

pub use app::{run, Cli, EXIT_CHECK_FAILED, EXIT_EVAL, EXIT_INPUT, EXIT_OK};
