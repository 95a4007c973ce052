//! Peephole optimization of {u3, cx} circuits.
//!
//! Three local rewrites run to a fixpoint:
//!   * adjacent u3 gates on the same qubit fuse into one (2x2 product
//!     refactored through ZYZ),
//!   * an identical CX immediately repeated cancels,
//!   * u3 gates whose matrix is the identity are dropped.
//!
//! "Adjacent" means no gate in between touches any of the qubits involved.
//! Barriers count as touching every qubit they list and measures count as
//! touching their qubit, so nothing fuses across either. Every rewrite
//! preserves the circuit unitary up to global phase, and each applied
//! rewrite strictly shrinks the gate list, so the fixpoint terminates.

use crate::circuit::{u3_matrix, Circuit, Gate};
use crate::error::Result;
use crate::synth::{euler_to_u3, zyz, Mat2};

/// Matrices closer to the identity than this are dropped.
const IDENTITY_TOL: f64 = 1e-10;

/// Per-kind gate totals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct GateCounts {
    pub u3: usize,
    pub cx: usize,
    pub measure: usize,
    pub barrier: usize,
}

impl GateCounts {
    pub fn total(&self) -> usize {
        self.u3 + self.cx + self.measure + self.barrier
    }
}

pub fn gate_counts(circuit: &Circuit) -> GateCounts {
    let mut counts = GateCounts::default();
    for gate in &circuit.gates {
        match gate {
            Gate::U3 { .. } => counts.u3 += 1,
            Gate::Cx { .. } => counts.cx += 1,
            Gate::Measure { .. } => counts.measure += 1,
            Gate::Barrier { .. } => counts.barrier += 1,
        }
    }
    counts
}

fn is_identity_u3(theta: f64, phi: f64, lambda: f64) -> bool {
    let m = u3_matrix(theta, phi, lambda);
    let one = num_complex::Complex64::new(1.0, 0.0);
    (m[0][0] - one).norm() <= IDENTITY_TOL
        && (m[1][1] - one).norm() <= IDENTITY_TOL
        && m[0][1].norm() <= IDENTITY_TOL
        && m[1][0].norm() <= IDENTITY_TOL
}

/// One left-to-right rewrite pass. Returns the new gate list and whether
/// anything changed. `slots` holds `None` tombstones for removed gates;
/// `last_touch[q]` tracks the newest surviving slot touching qubit `q`.
fn pass(gates: &[Gate], n_qubits: usize) -> Result<(Vec<Gate>, bool)> {
    let mut slots: Vec<Option<Gate>> = Vec::with_capacity(gates.len());
    let mut last_touch: Vec<Option<usize>> = vec![None; n_qubits];
    let mut changed = false;

    for gate in gates {
        match gate {
            Gate::U3 {
                qubit,
                theta,
                phi,
                lambda,
            } => {
                if is_identity_u3(*theta, *phi, *lambda) {
                    changed = true;
                    continue;
                }
                if let Some(i) = last_touch[*qubit] {
                    if let Some(Gate::U3 {
                        theta: t0,
                        phi: p0,
                        lambda: l0,
                        ..
                    }) = slots[i]
                    {
                        let a = u3_matrix(t0, p0, l0);
                        let b = u3_matrix(*theta, *phi, *lambda);
                        // The earlier gate acts first, so it sits on the right.
                        let mut prod: Mat2 = Default::default();
                        for r in 0..2 {
                            for c in 0..2 {
                                prod[r][c] = b[r][0] * a[0][c] + b[r][1] * a[1][c];
                            }
                        }
                        changed = true;
                        let e = zyz(&prod)?;
                        let (nt, np, nl) = euler_to_u3(&e);
                        if is_identity_u3(nt, np, nl) {
                            slots[i] = None;
                            last_touch[*qubit] = None;
                        } else {
                            slots[i] = Some(Gate::u3(*qubit, nt, np, nl));
                        }
                        continue;
                    }
                }
                last_touch[*qubit] = Some(slots.len());
                slots.push(Some(gate.clone()));
            }
            Gate::Cx { control, target } => {
                if let (Some(i), Some(j)) = (last_touch[*control], last_touch[*target]) {
                    if i == j && slots[i].as_ref() == Some(gate) {
                        slots[i] = None;
                        last_touch[*control] = None;
                        last_touch[*target] = None;
                        changed = true;
                        continue;
                    }
                }
                last_touch[*control] = Some(slots.len());
                last_touch[*target] = Some(slots.len());
                slots.push(Some(gate.clone()));
            }
            Gate::Measure { qubit, .. } => {
                last_touch[*qubit] = Some(slots.len());
                slots.push(Some(gate.clone()));
            }
            Gate::Barrier { qubits } => {
                for &q in qubits {
                    last_touch[q] = Some(slots.len());
                }
                slots.push(Some(gate.clone()));
            }
        }
    }

    Ok((slots.into_iter().flatten().collect(), changed))
}

/// Runs the rewrite passes until nothing changes.
pub fn coalesce(circuit: &Circuit) -> Result<Circuit> {
    let mut gates = circuit.gates.clone();
    loop {
        let (next, changed) = pass(&gates, circuit.n_qubits)?;
        gates = next;
        if !changed {
            break;
        }
    }
    let mut out = Circuit::new(circuit.n_qubits, circuit.n_clbits);
    for gate in gates {
        out.push(gate)?;
    }
    Ok(out)
}
