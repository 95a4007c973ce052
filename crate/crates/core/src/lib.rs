//! Netlist compiler for small quantum programs.
//!
//! Takes one of four inputs -- a unitary matrix, a target state vector, a
//! basis-state permutation, or an existing OpenQASM 2.0 circuit -- and
//! produces an OpenQASM 2.0 netlist over the {u3, cx} basis, optionally
//! routed onto a hardware coupling graph, peephole-optimized, and annotated
//! with a pulse-level execution-time estimate.
//!
//! The pipeline: [`decompose`] factors operators into two-level matrices
//! along a Gray-coded basis walk, [`synth`] lowers those to gates via
//! multi-controlled expansions, [`layout`] legalizes CX gates against a
//! topology, [`optimize`] coalesces adjacent gates, and [`timing`] scores
//! the result against a coherence budget. [`sim`] provides the exact
//! statevector oracle used for verification throughout.

pub mod circuit;
pub mod decompose;
pub mod encoding;
pub mod error;
pub mod formats;
pub mod layout;
pub mod linalg;
pub mod optimize;
pub mod pipeline;
pub mod sim;
pub mod synth;
pub mod timing;

#[cfg(test)]
pub(crate) mod testmat;

pub use error::{Error, Result};
