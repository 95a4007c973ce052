//! Parsers for the compiler's plain-text input formats.
//!
//! Operators and states are whitespace-separated token lists where each
//! token is a real literal or a bracketed complex pair "(re,im)"; brackets
//! may contain spaces and tokens may span lines. Permutations are one line
//! of integers (single-line permutation notation), topologies are a qubit
//! count followed by edge lines, and mappings are one line of physical
//! indices, one per logical qubit. The OpenQASM subset lives in [`qasm`].
//!
//! Validation happens at the boundary: a parsed unitary is actually unitary,
//! a parsed state has unit norm (no silent renormalization), a parsed
//! permutation is a bijection, and a parsed topology is connected.

pub mod qasm;

pub use qasm::{emit_qasm, parse_qasm};

use num_complex::Complex64;

use crate::decompose::Permutation;
use crate::error::{Error, Result};
use crate::layout::{LayoutMap, Topology};
use crate::linalg::{CMatrix, Ket};

/// Unitarity acceptance tolerance for parsed operators.
pub const PARSE_UNITARY_TOL: f64 = 1e-6;
/// Norm acceptance tolerance for parsed states.
pub const PARSE_NORM_TOL: f64 = 1e-6;

fn parse_real(token: &str) -> Result<f64> {
    token.trim().parse::<f64>().map_err(|_| Error::MalformedToken {
        token: token.trim().to_string(),
        msg: "not a real number".into(),
    })
}

/// Lexes a token stream of real literals and "(re,im)" pairs.
fn lex_complex_tokens(text: &str) -> Result<Vec<Complex64>> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(start, ch)) = chars.peek() {
        if ch.is_whitespace() {
            chars.next();
            continue;
        }
        if ch == '(' {
            chars.next();
            let mut inner = String::new();
            let mut closed = false;
            for (_, c) in chars.by_ref() {
                if c == ')' {
                    closed = true;
                    break;
                }
                inner.push(c);
            }
            if !closed {
                return Err(Error::MalformedToken {
                    token: format!("({inner}"),
                    msg: "unterminated complex pair".into(),
                });
            }
            let parts: Vec<&str> = inner.split(',').collect();
            if parts.len() != 2 {
                return Err(Error::MalformedToken {
                    token: format!("({inner})"),
                    msg: "complex pair needs exactly one comma".into(),
                });
            }
            out.push(Complex64::new(parse_real(parts[0])?, parse_real(parts[1])?));
        } else {
            let mut end = start;
            while let Some(&(i, c)) = chars.peek() {
                if c.is_whitespace() || c == '(' {
                    break;
                }
                end = i + c.len_utf8();
                chars.next();
            }
            let token = &text[start..end];
            out.push(Complex64::new(parse_real(token)?, 0.0));
        }
    }
    Ok(out)
}

fn power_of_two_dim(len: usize) -> Result<usize> {
    if len >= 2 && len.is_power_of_two() {
        Ok(len)
    } else {
        Err(Error::NotPowerOfTwo { dim: len })
    }
}

/// Parses a row-major square operator and verifies it is unitary.
pub fn parse_unitary(text: &str) -> Result<CMatrix> {
    let tokens = lex_complex_tokens(text)?;
    let dim = (tokens.len() as f64).sqrt().round() as usize;
    if dim * dim != tokens.len() {
        return Err(Error::NonSquareTokenCount {
            count: tokens.len(),
        });
    }
    power_of_two_dim(dim)?;
    let m = CMatrix::from_vec(tokens)?;
    let deviation = m.unitarity_deviation();
    if deviation > PARSE_UNITARY_TOL {
        return Err(Error::NotUnitary {
            deviation,
            tolerance: PARSE_UNITARY_TOL,
        });
    }
    Ok(m)
}

/// Parses a state vector and verifies unit norm.
pub fn parse_state(text: &str) -> Result<Ket> {
    let tokens = lex_complex_tokens(text)?;
    power_of_two_dim(tokens.len())?;
    let ket = Ket::new(tokens);
    let norm = ket.norm();
    if (norm - 1.0).abs() > PARSE_NORM_TOL {
        return Err(Error::NotNormalized {
            norm,
            tolerance: PARSE_NORM_TOL,
        });
    }
    Ok(ket)
}

fn lex_integers(text: &str) -> Result<Vec<usize>> {
    text.split_whitespace()
        .map(|token| {
            token.parse::<usize>().map_err(|_| Error::MalformedToken {
                token: token.to_string(),
                msg: "not a non-negative integer".into(),
            })
        })
        .collect()
}

/// Parses single-line permutation notation: position i holds the image of i.
pub fn parse_permutation(text: &str) -> Result<Permutation> {
    let images = lex_integers(text)?;
    power_of_two_dim(images.len())?;
    Permutation::new(images)
}

/// Parses a topology file: first integer is the qubit count, the rest are
/// "a b" edge pairs.
pub fn parse_topology(text: &str) -> Result<Topology> {
    let numbers = lex_integers(text)?;
    let Some((&n, rest)) = numbers.split_first() else {
        return Err(Error::Topology("topology file is empty".into()));
    };
    if rest.len() % 2 != 0 {
        return Err(Error::Topology(
            "edge list has an odd number of endpoints".into(),
        ));
    }
    let edges: Vec<(usize, usize)> = rest.chunks(2).map(|pair| (pair[0], pair[1])).collect();
    Topology::new(n, &edges)
}

/// Parses a mapping file: one physical index per logical qubit.
pub fn parse_mapping(text: &str) -> Result<LayoutMap> {
    let entries = lex_integers(text)?;
    if entries.is_empty() {
        return Err(Error::Mapping("mapping file is empty".into()));
    }
    LayoutMap::new(entries)
}
