//! Harness library behind the `probe-engine` command-line interface:
//! configuration, dataset serialization, figure generation, parameter sweeps
//! and invariant reports.

pub mod config;
pub mod dataset;
pub mod figures;
pub mod pipeline;
pub mod report;
pub mod sweep;
