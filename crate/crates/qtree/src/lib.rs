//! File formats, table reconciliation and the `qtree` command line on top of
//! [`qtree_core`].

pub mod cli;
pub mod edgelist;
pub mod error;
pub mod fixtures;
pub mod formats;
pub mod report;

pub use error::{CliError, CliResult};
