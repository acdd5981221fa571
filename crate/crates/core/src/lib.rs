//! Simulation kernels for circuits over mixed-dimension registers of qubits
//! and qudits.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, timing and the
//! command line live in the `quditsim` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod backends;
pub mod circuit;
pub mod error;
pub mod gates;
pub mod linalg;
pub mod register;
pub mod templates;

pub use backends::{Backend, BackendKind};
pub use circuit::{QuantumCircuit, ResultSet, ValueKind};
pub use error::{Error, Result};
pub use linalg::Complex;
