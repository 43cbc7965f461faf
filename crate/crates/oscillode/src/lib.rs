//! File formats, configuration, parallel drivers and report assembly for the
//! `oscillode` command-line tool. The numerics live in `oscillode-core`.

pub mod config;
mod error;
pub mod figure;
pub mod formats;
pub mod parallel;
pub mod report;

pub use error::{exit_code, Error, Result};
