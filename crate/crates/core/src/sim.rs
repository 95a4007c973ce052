//! Exact statevector simulation of {u3, cx} circuits.
//!
//! Qubit 0 is the most significant basis bit. u3 gates are applied as dense
//! 2x2 updates on amplitude pairs; cx is a pure amplitude swap, so routing
//! and permutation circuits evolve without any floating-point arithmetic.
//! Barriers are scheduling hints and measures are recorded classically, so
//! the simulator treats both as no-ops on the state.

use num_complex::Complex64;

use crate::circuit::{u3_matrix, Circuit, Gate};
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, Ket};

/// Largest register for which a dense circuit unitary is built.
pub const MAX_UNITARY_QUBITS: usize = 10;

fn apply_u3(amps: &mut [Complex64], n_qubits: usize, qubit: usize, m: &[[Complex64; 2]; 2]) {
    let mask = 1usize << (n_qubits - 1 - qubit);
    for b in 0..amps.len() {
        if b & mask == 0 {
            let a0 = amps[b];
            let a1 = amps[b | mask];
            amps[b] = m[0][0] * a0 + m[0][1] * a1;
            amps[b | mask] = m[1][0] * a0 + m[1][1] * a1;
        }
    }
}

fn apply_cx(amps: &mut [Complex64], n_qubits: usize, control: usize, target: usize) {
    let cmask = 1usize << (n_qubits - 1 - control);
    let tmask = 1usize << (n_qubits - 1 - target);
    for b in 0..amps.len() {
        if b & cmask != 0 && b & tmask == 0 {
            amps.swap(b, b | tmask);
        }
    }
}

fn apply_gate(amps: &mut [Complex64], n_qubits: usize, gate: &Gate) {
    match gate {
        Gate::U3 {
            qubit,
            theta,
            phi,
            lambda,
        } => apply_u3(amps, n_qubits, *qubit, &u3_matrix(*theta, *phi, *lambda)),
        Gate::Cx { control, target } => apply_cx(amps, n_qubits, *control, *target),
        Gate::Measure { .. } | Gate::Barrier { .. } => {}
    }
}

/// Runs the circuit on `initial` (|0...0> when absent) and returns the final
/// state.
pub fn simulate(circuit: &Circuit, initial: Option<&Ket>) -> Result<Ket> {
    let dim = 1usize << circuit.n_qubits;
    let mut state = match initial {
        Some(ket) => {
            if ket.dim() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "initial state has dimension {}, circuit needs {}",
                    ket.dim(),
                    dim
                )));
            }
            ket.clone()
        }
        None => Ket::basis(dim, 0),
    };
    for gate in &circuit.gates {
        apply_gate(&mut state.amps, circuit.n_qubits, gate);
    }
    Ok(state)
}

/// Builds the dense unitary the circuit implements by simulating every basis
/// state. Guarded to `MAX_UNITARY_QUBITS` since the result is 4^n complex
/// numbers.
pub fn circuit_unitary(circuit: &Circuit) -> Result<CMatrix> {
    if circuit.n_qubits > MAX_UNITARY_QUBITS {
        return Err(Error::QubitRange {
            n: circuit.n_qubits,
            min: 1,
            max: MAX_UNITARY_QUBITS,
        });
    }
    let dim = 1usize << circuit.n_qubits;
    let mut out = CMatrix::zeros(dim);
    let mut column = vec![Complex64::new(0.0, 0.0); dim];
    for b in 0..dim {
        for a in column.iter_mut() {
            *a = Complex64::new(0.0, 0.0);
        }
        column[b] = Complex64::new(1.0, 0.0);
        for gate in &circuit.gates {
            apply_gate(&mut column, circuit.n_qubits, gate);
        }
        for (r, a) in column.iter().enumerate() {
            out.set(r, b, *a);
        }
    }
    Ok(out)
}

/// |<a|b>|^2, the measurement-basis-independent overlap of two states.
pub fn fidelity(a: &Ket, b: &Ket) -> Result<f64> {
    Ok(a.inner(b)?.norm_sqr())
}
