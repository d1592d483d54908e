//! Library surface of the command-line front end: the run configuration
//! and the report envelopes, reused by the binary and its tests.

pub mod config;
pub mod output;
