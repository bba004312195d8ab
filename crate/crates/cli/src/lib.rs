//! Report plumbing, subcommands and verification suites behind the
//! `locc-rates` binary.

pub mod commands;
pub mod report;
pub mod suites;

pub use report::{Record, Report, Table, SCHEMA};
pub use suites::{run_suite, Suite};
