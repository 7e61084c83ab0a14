//! Batch front end for `thetastab-core`: JSON instance files, subcommand
//! dispatch and deterministic reports.

pub mod commands;
pub mod instance;
pub mod report;

pub use commands::{run, Command, ModeChoice, Options};
pub use instance::{parse_instance, parse_instance_str, Instance};
pub use report::Report;
