//! Readout statistics for a qubit whose state is copied onto ancillas by
//! CNOT fan-out before all qubits are read out by photon counting.

pub mod cli;
pub mod cnot;
pub mod decay;
pub mod dist;
pub mod error;
pub mod mc;
pub mod optimize;
pub mod quadrature;
pub mod rates;
pub mod scheme;
pub mod sweep;
pub mod wiring;

pub use error::{Error, Result};
