//! Python bindings for the netlist compiler: compile a unitary, state,
//! permutation, or QASM circuit and get back the emitted netlist together
//! with the report numbers; a statevector entry point covers verification
//! from the Python side.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use qsynth::circuit::Circuit;
use qsynth::decompose::Permutation;
use qsynth::encoding::Scheme;
use qsynth::error::Error;
use qsynth::formats::qasm::{emit_qasm, parse_qasm};
use qsynth::layout::{LayoutMap, Topology};
use qsynth::linalg::{CMatrix, Ket};
use qsynth::pipeline::{compile, CompileOptions, Source};
use qsynth::timing::Coherence;

fn value_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Compiled netlist plus the report the pipeline produced for it.
#[pyclass(frozen)]
struct CompileResult {
    /// OpenQASM 2.0 text of the compiled circuit.
    #[pyo3(get)]
    qasm: String,
    #[pyo3(get)]
    logical_qubits: usize,
    #[pyo3(get)]
    physical_qubits: usize,
    #[pyo3(get)]
    two_level_ops: usize,
    #[pyo3(get)]
    u3_count: usize,
    #[pyo3(get)]
    cx_count: usize,
    #[pyo3(get)]
    est_time_ns: f64,
    /// Estimated time over the coherence budget, or None when it fits.
    #[pyo3(get)]
    coherence_ratio: Option<f64>,
}

#[pymethods]
impl CompileResult {
    fn __repr__(&self) -> String {
        format!(
            "CompileResult(logical_qubits={}, physical_qubits={}, u3={}, cx={}, est_time_ns={})",
            self.logical_qubits, self.physical_qubits, self.u3_count, self.cx_count, self.est_time_ns
        )
    }
}

struct Knobs {
    optimize: bool,
    encoding: String,
    measure: bool,
    topology: Option<(usize, Vec<(usize, usize)>)>,
    mapping: Option<Vec<usize>>,
}

fn build_options(knobs: Knobs) -> PyResult<CompileOptions> {
    let scheme = match knobs.encoding.as_str() {
        "gray" => Scheme::Gray,
        "natural" => Scheme::Natural,
        other => {
            return Err(PyValueError::new_err(format!(
                "encoding must be \"gray\" or \"natural\", got {other:?}"
            )))
        }
    };
    let topology = match knobs.topology {
        Some((n, edges)) => Some(Topology::new(n, &edges).map_err(value_err)?),
        None => None,
    };
    let mapping = match knobs.mapping {
        Some(physical) => Some(LayoutMap::new(physical).map_err(value_err)?),
        None => None,
    };
    Ok(CompileOptions {
        scheme,
        optimize: knobs.optimize,
        topology,
        mapping,
        measure: knobs.measure,
        ..CompileOptions::default()
    })
}

fn run(source: Source, knobs: Knobs) -> PyResult<CompileResult> {
    let options = build_options(knobs)?;
    let output = compile(&source, &options).map_err(value_err)?;
    let r = &output.report;
    Ok(CompileResult {
        qasm: emit_qasm(&output.circuit),
        logical_qubits: r.logical_qubits,
        physical_qubits: r.physical_qubits,
        two_level_ops: r.two_level_ops,
        u3_count: r.counts_final.u3,
        cx_count: r.counts_final.cx,
        est_time_ns: r.est_time_ns,
        coherence_ratio: match r.coherence {
            Coherence::Pass => None,
            Coherence::Warn(ratio) => Some(ratio),
        },
    })
}

/// Compile a unitary given as a list of rows of complex entries.
#[pyfunction]
#[pyo3(signature = (rows, *, optimize=true, encoding="gray", measure=false, topology=None, mapping=None))]
fn compile_unitary(
    rows: Vec<Vec<Complex64>>,
    optimize: bool,
    encoding: &str,
    measure: bool,
    topology: Option<(usize, Vec<(usize, usize)>)>,
    mapping: Option<Vec<usize>>,
) -> PyResult<CompileResult> {
    let dim = rows.len();
    if rows.iter().any(|r| r.len() != dim) {
        return Err(PyValueError::new_err("matrix rows must all have length equal to the row count"));
    }
    let data: Vec<Complex64> = rows.into_iter().flatten().collect();
    let m = CMatrix::from_vec(data).map_err(value_err)?;
    if !m.is_unitary(1e-6) {
        return Err(PyValueError::new_err("matrix is not unitary within 1e-6"));
    }
    run(
        Source::Unitary(m),
        Knobs { optimize, encoding: encoding.into(), measure, topology, mapping },
    )
}

/// Compile a state preparation from a list of complex amplitudes.
#[pyfunction]
#[pyo3(signature = (amplitudes, *, optimize=true, encoding="gray", measure=false, topology=None, mapping=None))]
fn compile_state(
    amplitudes: Vec<Complex64>,
    optimize: bool,
    encoding: &str,
    measure: bool,
    topology: Option<(usize, Vec<(usize, usize)>)>,
    mapping: Option<Vec<usize>>,
) -> PyResult<CompileResult> {
    let ket = Ket::new(amplitudes);
    if (ket.norm() - 1.0).abs() > 1e-6 {
        return Err(PyValueError::new_err(format!(
            "state norm is {}, must be 1 within 1e-6",
            ket.norm()
        )));
    }
    run(
        Source::State(ket),
        Knobs { optimize, encoding: encoding.into(), measure, topology, mapping },
    )
}

/// Compile a basis permutation given in one-line notation.
#[pyfunction]
#[pyo3(signature = (images, *, optimize=true, encoding="gray", measure=false, topology=None, mapping=None))]
fn compile_permutation(
    images: Vec<usize>,
    optimize: bool,
    encoding: &str,
    measure: bool,
    topology: Option<(usize, Vec<(usize, usize)>)>,
    mapping: Option<Vec<usize>>,
) -> PyResult<CompileResult> {
    let p = Permutation::new(images).map_err(value_err)?;
    run(
        Source::Permutation(p),
        Knobs { optimize, encoding: encoding.into(), measure, topology, mapping },
    )
}

/// Re-optimize (and optionally route) an existing OpenQASM 2.0 circuit.
#[pyfunction]
#[pyo3(signature = (qasm, *, optimize=true, measure=false, topology=None, mapping=None))]
fn reoptimize_qasm(
    qasm: &str,
    optimize: bool,
    measure: bool,
    topology: Option<(usize, Vec<(usize, usize)>)>,
    mapping: Option<Vec<usize>>,
) -> PyResult<CompileResult> {
    let circuit: Circuit = parse_qasm(qasm).map_err(value_err)?;
    run(
        Source::Qasm(circuit),
        Knobs {
            optimize,
            encoding: "gray".into(),
            measure,
            topology,
            mapping,
        },
    )
}

/// Exact statevector of the circuit applied to |0...0>, as a list of
/// complex amplitudes indexed with qubit 0 as the most significant bit.
#[pyfunction]
fn simulate_qasm(qasm: &str) -> PyResult<Vec<Complex64>> {
    let circuit = parse_qasm(qasm).map_err(value_err)?;
    let state = qsynth::sim::simulate(&circuit, None).map_err(value_err)?;
    Ok(state.amps)
}

#[pymodule]
fn qsynth_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<CompileResult>()?;
    m.add_function(wrap_pyfunction!(compile_unitary, m)?)?;
    m.add_function(wrap_pyfunction!(compile_state, m)?)?;
    m.add_function(wrap_pyfunction!(compile_permutation, m)?)?;
    m.add_function(wrap_pyfunction!(reoptimize_qasm, m)?)?;
    m.add_function(wrap_pyfunction!(simulate_qasm, m)?)?;
    Ok(())
}
