//! Scenario files, indicator names, command implementations and report
//! rendering behind the `condind` binary.

pub mod commands;
pub mod names;
pub mod output;
pub mod scenario;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
}
