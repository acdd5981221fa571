//! File formats, result rendering, benchmarking and the command-line driver
//! for the `quditsim-core` simulator.

pub mod bench;
pub mod cli;
pub mod qasm;
pub mod render;

pub use quditsim_core as core;
