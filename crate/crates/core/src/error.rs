//! Error type shared across the compiler.

use thiserror::Error;

/// Everything that can go wrong while parsing inputs or compiling a netlist.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },

    #[error("malformed token '{token}': {msg}")]
    MalformedToken { token: String, msg: String },

    #[error("token count {count} is not a perfect square")]
    NonSquareTokenCount { count: usize },

    #[error("dimension {dim} is not a power of two (>= 2)")]
    NotPowerOfTwo { dim: usize },

    #[error("matrix is not unitary: max deviation {deviation:.3e} exceeds {tolerance:.1e}")]
    NotUnitary { deviation: f64, tolerance: f64 },

    #[error("state vector norm {norm} deviates from 1 by more than {tolerance:.1e}")]
    NotNormalized { norm: f64, tolerance: f64 },

    #[error("permutation is not a bijection: {msg}")]
    NotBijection { msg: String },

    #[error("topology error: {0}")]
    Topology(String),

    #[error("mapping error: {0}")]
    Mapping(String),

    #[error("qubit count {n} out of supported range {min}..={max}")]
    QubitRange { n: usize, min: usize, max: usize },

    #[error("gate references qubit {index} but the circuit has {n_qubits} qubits")]
    QubitOutOfRange { index: usize, n_qubits: usize },

    #[error("gate references classical bit {index} but the circuit has {n_clbits} bits")]
    ClbitOutOfRange { index: usize, n_clbits: usize },

    #[error("invalid gate: {0}")]
    InvalidGate(String),

    #[error("timing config error: {0}")]
    TimingConfig(String),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
