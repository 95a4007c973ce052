//! End-to-end compile driver: source -> decompose -> synth -> layout ->
//! optimize -> timing, plus the simulation-backed verifier.
//!
//! The driver is the single entry point shared by the command line tool and
//! the Python bindings. A source is one of: a unitary operator, a target
//! state, a basis permutation, or an existing circuit (which skips the
//! decomposition stage entirely). Routing runs only when a topology is
//! given; the mapping defaults to the identity placement.

use num_complex::Complex64;

use crate::circuit::{Circuit, Gate};
use crate::decompose::{
    givens_decompose, permutation_decompose, state_prep_decompose, Permutation,
};
use crate::encoding::{basis_order, Scheme, MAX_QUBITS};
use crate::error::{Error, Result};
use crate::layout::{route_circuit, LayoutMap, Topology};
use crate::linalg::{phase_dist, CMatrix, Ket};
use crate::optimize::{coalesce, gate_counts, GateCounts};
use crate::sim::{circuit_unitary, fidelity, simulate, MAX_UNITARY_QUBITS};
use crate::synth::synth_circuit;
use crate::timing::{check_coherence, estimate_time, Coherence, TimingModel};

/// Gate-applications budget (gates x dimension) above which dense operator
/// verification is skipped rather than ground through.
pub const VERIFY_BUDGET: usize = 50_000_000;

/// What the compiler is asked to realize.
#[derive(Debug, Clone)]
pub enum Source {
    /// Realize this operator exactly (up to global phase).
    Unitary(CMatrix),
    /// Prepare this state from |0..0>.
    State(Ket),
    /// Realize this basis-state permutation.
    Permutation(Permutation),
    /// Re-target an existing circuit; decomposition is skipped.
    Qasm(Circuit),
}

impl Source {
    /// Logical register width of the source.
    pub fn n_qubits(&self) -> Result<usize> {
        let from_dim = |dim: usize| -> Result<usize> {
            if dim >= 2 && dim.is_power_of_two() {
                Ok(dim.trailing_zeros() as usize)
            } else {
                Err(Error::NotPowerOfTwo { dim })
            }
        };
        match self {
            Source::Unitary(u) => from_dim(u.dim()),
            Source::State(s) => from_dim(s.dim()),
            Source::Permutation(p) => Ok(p.n_qubits()),
            Source::Qasm(c) => Ok(c.n_qubits),
        }
    }
}

/// Pipeline knobs. Defaults: Gray encoding, optimization on, no routing,
/// default timing model, no measurements.
#[derive(Debug, Clone)]
pub struct CompileOptions {
    pub scheme: Scheme,
    pub optimize: bool,
    pub topology: Option<Topology>,
    pub mapping: Option<LayoutMap>,
    pub timing: TimingModel,
    pub measure: bool,
}

impl Default for CompileOptions {
    fn default() -> Self {
        CompileOptions {
            scheme: Scheme::Gray,
            optimize: true,
            topology: None,
            mapping: None,
            timing: TimingModel::default(),
            measure: false,
        }
    }
}

/// Numbers the CLI report and the acceptance checks read off.
#[derive(Debug, Clone)]
pub struct CompileReport {
    pub logical_qubits: usize,
    pub physical_qubits: usize,
    /// Two-level factors produced by decomposition; 0 for circuit sources.
    pub two_level_ops: usize,
    /// Gate counts after synthesis and routing, before optimization.
    pub counts_pre: GateCounts,
    pub counts_final: GateCounts,
    pub est_time_ns: f64,
    pub coherence: Coherence,
}

#[derive(Debug, Clone)]
pub struct CompileOutput {
    pub circuit: Circuit,
    pub report: CompileReport,
    /// Global phase between the emitted circuit's state and the requested
    /// state (state sources only; 1 elsewhere). Recorded, never synthesized.
    pub residual_phase: Complex64,
}

/// The layout the pipeline uses: the explicit mapping, or identity.
fn effective_layout(options: &CompileOptions, n_logical: usize) -> Result<LayoutMap> {
    match (&options.mapping, &options.topology) {
        (Some(_), None) => Err(Error::Mapping(
            "a qubit mapping needs a topology to map onto".into(),
        )),
        (Some(m), Some(_)) => Ok(m.clone()),
        (None, _) => Ok(LayoutMap::identity(n_logical)),
    }
}

pub fn compile(source: &Source, options: &CompileOptions) -> Result<CompileOutput> {
    let n_logical = source.n_qubits()?;
    if n_logical > MAX_QUBITS {
        return Err(Error::QubitRange {
            n: n_logical,
            min: 1,
            max: MAX_QUBITS,
        });
    }

    // Stage 1: operator/state/permutation -> two-level ops -> gates.
    let (mut circuit, two_level_ops, residual_phase) = match source {
        Source::Unitary(u) => {
            let order = basis_order(n_logical, options.scheme)?;
            let decomp = givens_decompose(u, &order)?;
            let ops = decomp.ops.len();
            (synth_circuit(&decomp, n_logical)?, ops, decomp.residual_phase)
        }
        Source::State(s) => {
            let order = basis_order(n_logical, options.scheme)?;
            let decomp = state_prep_decompose(s, &order)?;
            let ops = decomp.ops.len();
            (synth_circuit(&decomp, n_logical)?, ops, decomp.residual_phase)
        }
        Source::Permutation(p) => {
            let decomp = permutation_decompose(p)?;
            let ops = decomp.ops.len();
            (synth_circuit(&decomp, n_logical)?, ops, decomp.residual_phase)
        }
        Source::Qasm(c) => (c.clone(), 0, Complex64::new(1.0, 0.0)),
    };

    // Stage 2: placement and routing.
    let layout = effective_layout(options, n_logical)?;
    if let Some(topology) = &options.topology {
        circuit = route_circuit(&circuit, topology, &layout)?;
    }
    let physical_qubits = circuit.n_qubits;
    let counts_pre = gate_counts(&circuit);

    // Stage 3: peephole optimization.
    if options.optimize {
        circuit = coalesce(&circuit)?;
    }

    // Optional readout of every physical qubit.
    if options.measure {
        let n_clbits = circuit.n_clbits.max(physical_qubits);
        let mut measured = Circuit::new(physical_qubits, n_clbits);
        for gate in &circuit.gates {
            measured.push(gate.clone())?;
        }
        measured.push(Gate::Barrier {
            qubits: (0..physical_qubits).collect(),
        })?;
        for q in 0..physical_qubits {
            measured.push(Gate::Measure { qubit: q, clbit: q })?;
        }
        circuit = measured;
    }

    let counts_final = gate_counts(&circuit);
    let est_time_ns = estimate_time(&circuit, &options.timing);
    let coherence = check_coherence(est_time_ns, &options.timing);

    Ok(CompileOutput {
        circuit,
        report: CompileReport {
            logical_qubits: n_logical,
            physical_qubits,
            two_level_ops,
            counts_pre,
            counts_final,
            est_time_ns,
            coherence,
        },
        residual_phase,
    })
}

/// Maps a logical basis index to the physical basis index where the layout
/// places it (unused physical qubits read 0).
pub fn physical_index(
    logical_index: usize,
    layout: &LayoutMap,
    n_logical: usize,
    n_physical: usize,
) -> usize {
    let mut out = 0usize;
    for q in 0..n_logical {
        let bit = (logical_index >> (n_logical - 1 - q)) & 1;
        out |= bit << (n_physical - 1 - layout.physical(q));
    }
    out
}

/// Result of checking a compiled circuit against its source.
#[derive(Debug, Clone)]
pub enum Verification {
    /// Dense operator comparison; `error` is phase_dist between the circuit
    /// unitary (restricted to the mapped logical subspace) and the target.
    Operator { error: f64 },
    /// State comparison; `error` is the global-phase-free l2 distance and
    /// `success_rate` the Born overlap with the target.
    State { error: f64, success_rate: f64 },
    /// Verification was not attempted; the reason says why.
    Skipped { reason: String },
}

/// Simulation-backed check that the compiled circuit realizes the source.
pub fn verify(
    source: &Source,
    output: &CompileOutput,
    options: &CompileOptions,
) -> Result<Verification> {
    let n_logical = source.n_qubits()?;
    let n_physical = output.circuit.n_qubits;
    let layout = effective_layout(options, n_logical)?;

    if let Source::State(target) = source {
        let got = simulate(&output.circuit, None)?;
        let mut expected = vec![Complex64::new(0.0, 0.0); 1 << n_physical];
        for (i, amp) in target.amps.iter().enumerate() {
            expected[physical_index(i, &layout, n_logical, n_physical)] = *amp;
        }
        let expected = Ket::new(expected);
        return Ok(Verification::State {
            error: got.phase_dist(&expected)?,
            success_rate: fidelity(&expected, &got)?,
        });
    }

    // Operator sources need the full circuit unitary.
    if n_physical > MAX_UNITARY_QUBITS {
        return Ok(Verification::Skipped {
            reason: format!(
                "dense verification needs at most {MAX_UNITARY_QUBITS} qubits, circuit has {n_physical}"
            ),
        });
    }
    let work = output.circuit.gates.len().saturating_mul(1 << n_physical);
    if work > VERIFY_BUDGET {
        return Ok(Verification::Skipped {
            reason: format!(
                "dense verification would take {work} gate applications (budget {VERIFY_BUDGET}); simulate specific inputs instead"
            ),
        });
    }

    let target = match source {
        Source::Unitary(u) => u.clone(),
        Source::Permutation(p) => p.matrix(),
        Source::Qasm(c) => circuit_unitary(c)?,
        Source::State(_) => unreachable!("handled above"),
    };
    let full = circuit_unitary(&output.circuit)?;
    let dim = 1usize << n_logical;
    let mut block = CMatrix::zeros(dim);
    for a in 0..dim {
        let pa = physical_index(a, &layout, n_logical, n_physical);
        for b in 0..dim {
            let pb = physical_index(b, &layout, n_logical, n_physical);
            block.set(a, b, full.get(pa, pb));
        }
    }
    Ok(Verification::Operator {
        error: phase_dist(&block, &target)?,
    })
}
