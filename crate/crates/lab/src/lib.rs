//! Configuration, text formats, reports and the command-line front end for
//! `kazlab-core`.

pub mod cli;
pub mod config;
pub mod parse;
pub mod report;
pub mod suites;
