//! File formats, corpus, reports and command implementations for the
//! `fanlab` tool, on top of `fanlab-core`.

pub mod commands;
pub mod corpus;
pub mod error;
pub mod report;
pub mod schema;

pub use error::CliError;
