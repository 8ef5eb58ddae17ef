//! Command line, file formats and a parallel trial runner for `hyperwalk-core`.

pub mod cli;
pub mod config;
pub mod manifest;
pub mod output;
pub mod parallel;

pub use hyperwalk_core as core;
