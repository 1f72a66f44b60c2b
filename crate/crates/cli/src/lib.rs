//! Command-line front end: file formats, JSON reports and the commands
//! behind the `extform` binary.

pub mod args;
pub mod commands;
pub mod format;
pub mod report;
