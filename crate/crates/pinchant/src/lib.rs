//! Scenario files, Monte-Carlo oracles and the `pinchant` command-line tool
//! built on [`pinchant_core`].

pub mod cli;
pub mod oracle;
pub mod records;
pub mod scenario_file;

pub use pinchant_core as core;
