//! Basis-state orderings for the column elimination.
//!
//! The decomposition walks matrix columns in a chosen order and pairs each
//! row with its predecessor in that order. Under the Gray order consecutive
//! codes differ in exactly one bit, so every emitted two-level rotation
//! couples basis states one bit flip apart and lowers to a single
//! multi-controlled gate with no basis-relabeling CX chains around it.

use crate::error::{Error, Result};

pub const MAX_QUBITS: usize = 12;

/// Reflected binary code of `i`.
pub fn gray_code(i: usize) -> usize {
    i ^ (i >> 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    /// Plain numeric order 0, 1, 2, ...
    Natural,
    /// Reflected binary order; adjacent codes differ in one bit.
    Gray,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisOrder {
    pub scheme: Scheme,
    /// codes[p] is the basis index visited at order position p.
    pub codes: Vec<usize>,
}

/// Basis order over all 2^n indices for the given scheme.
pub fn basis_order(n_qubits: usize, scheme: Scheme) -> Result<BasisOrder> {
    if !(1..=MAX_QUBITS).contains(&n_qubits) {
        return Err(Error::QubitRange {
            n: n_qubits,
            min: 1,
            max: MAX_QUBITS,
        });
    }
    let dim = 1usize << n_qubits;
    let codes = match scheme {
        Scheme::Natural => (0..dim).collect(),
        Scheme::Gray => (0..dim).map(gray_code).collect(),
    };
    Ok(BasisOrder { scheme, codes })
}
