//! Simulation of EPR-steering witnesses for qubit and single-photon
//! polarization systems with detector loss, loophole-free benchmarks for
//! entanglement-swapping teleportation, and numerical checks of the
//! monogamy relations for steering.

pub mod bounds;
pub mod cli;
pub mod config;
pub mod error;
pub mod linalg;
pub mod mc;
pub mod monogamy;
pub mod observables;
pub mod sampling;
pub mod states;
pub mod steering;
pub mod teleport;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, QuantumState, C64};
