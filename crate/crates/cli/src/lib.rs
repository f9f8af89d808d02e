//! Library surface of the `mkse` command-line tool, exposed for
//! integration tests.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod report;
pub mod runner;
pub mod svg;
