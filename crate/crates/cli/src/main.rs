//! Command-line driver for the netlist compiler: reads one input source,
//! compiles it to an OpenQASM 2.0 circuit, and reports gate counts, the
//! timing estimate, and (on request) a simulation-backed verification.
//!
//! The QASM text goes to --out, or to standard output when --out is absent;
//! in the latter case the report moves to standard error so the emitted
//! netlist stays machine-readable. Identical inputs and flags produce byte
//! identical QASM.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, ValueEnum};

use qsynth::encoding::Scheme;
use qsynth::error::Error;
use qsynth::formats::qasm::{emit_qasm, parse_qasm};
use qsynth::formats::{
    parse_mapping, parse_permutation, parse_state, parse_topology, parse_unitary,
};
use qsynth::pipeline::{compile, verify, CompileOptions, CompileOutput, Source, Verification};
use qsynth::timing::{Coherence, TimingModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Encoding {
    Natural,
    Gray,
}

#[derive(Debug, Parser)]
#[command(
    name = "qsynth",
    about = "Compile a unitary, state, permutation, or QASM circuit into an optimized OpenQASM 2.0 netlist",
    group(ArgGroup::new("source").required(true).args(["unitary", "state", "perm", "qasm_in"]))
)]
struct Cli {
    /// Unitary matrix file: N*N complex entries in row-major order.
    #[arg(long, value_name = "FILE")]
    unitary: Option<PathBuf>,

    /// State vector file: N complex amplitudes, unit norm.
    #[arg(long, value_name = "FILE")]
    state: Option<PathBuf>,

    /// Permutation file: the images of 0..N-1 in one-line notation.
    #[arg(long, value_name = "FILE")]
    perm: Option<PathBuf>,

    /// OpenQASM 2.0 circuit to re-optimize (skips matrix decomposition).
    #[arg(long, value_name = "FILE")]
    qasm_in: Option<PathBuf>,

    /// Coupling graph file: qubit count followed by edge pairs.
    #[arg(long, value_name = "FILE")]
    topology: Option<PathBuf>,

    /// Logical-to-physical placement: space-separated physical indices
    /// ("2 0 1"), or a file containing them. Requires --topology.
    #[arg(long, value_name = "MAP")]
    mapping: Option<String>,

    /// Basis ordering for the column sweep.
    #[arg(long, value_enum, default_value = "gray")]
    encoding: Encoding,

    /// Emit the raw synthesized circuit without gate coalescing.
    #[arg(long)]
    no_optimize: bool,

    /// Pulse timing parameters as key = value lines; defaults otherwise.
    #[arg(long, value_name = "FILE")]
    timing_config: Option<PathBuf>,

    /// Simulate the compiled circuit and report how well it matches the
    /// source.
    #[arg(long)]
    verify: bool,

    /// Write the QASM here instead of standard output.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Append a barrier and a measurement of every qubit.
    #[arg(long)]
    measure: bool,
}

fn read_file(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

/// A mapping argument is inline when every whitespace-separated token is a
/// number; anything else is treated as a file name.
fn mapping_text(arg: &str) -> Result<String, String> {
    let inline = !arg.trim().is_empty()
        && arg
            .split_whitespace()
            .all(|tok| tok.chars().all(|c| c.is_ascii_digit()));
    if inline {
        Ok(arg.to_string())
    } else {
        read_file(Path::new(arg))
    }
}

fn build_source(cli: &Cli) -> Result<Source, String> {
    if let Some(path) = &cli.unitary {
        let m = parse_unitary(&read_file(path)?).map_err(|e| e.to_string())?;
        Ok(Source::Unitary(m))
    } else if let Some(path) = &cli.state {
        let v = parse_state(&read_file(path)?).map_err(|e| e.to_string())?;
        Ok(Source::State(v))
    } else if let Some(path) = &cli.perm {
        let p = parse_permutation(&read_file(path)?).map_err(|e| e.to_string())?;
        Ok(Source::Permutation(p))
    } else if let Some(path) = &cli.qasm_in {
        let c = parse_qasm(&read_file(path)?).map_err(|e| e.to_string())?;
        Ok(Source::Qasm(c))
    } else {
        Err("exactly one input source is required".into())
    }
}

fn build_options(cli: &Cli) -> Result<CompileOptions, String> {
    let topology = match &cli.topology {
        Some(path) => Some(parse_topology(&read_file(path)?).map_err(|e| e.to_string())?),
        None => None,
    };
    if cli.mapping.is_some() && topology.is_none() {
        return Err(Error::Mapping("--mapping requires --topology".into()).to_string());
    }
    let mapping = match &cli.mapping {
        Some(arg) => Some(parse_mapping(&mapping_text(arg)?).map_err(|e| e.to_string())?),
        None => None,
    };
    let timing = match &cli.timing_config {
        Some(path) => TimingModel::from_config(&read_file(path)?).map_err(|e| e.to_string())?,
        None => TimingModel::default(),
    };
    Ok(CompileOptions {
        scheme: match cli.encoding {
            Encoding::Natural => Scheme::Natural,
            Encoding::Gray => Scheme::Gray,
        },
        optimize: !cli.no_optimize,
        topology,
        mapping,
        timing,
        measure: cli.measure,
    })
}

fn format_report(output: &CompileOutput) -> String {
    let r = &output.report;
    let mut s = String::new();
    let _ = writeln!(s, "logical qubits:    {}", r.logical_qubits);
    let _ = writeln!(s, "physical qubits:   {}", r.physical_qubits);
    let _ = writeln!(s, "two-level factors: {}", r.two_level_ops);
    let _ = writeln!(
        s,
        "gates synthesized: {} u3, {} cx ({} total)",
        r.counts_pre.u3,
        r.counts_pre.cx,
        r.counts_pre.total()
    );
    let _ = writeln!(
        s,
        "gates emitted:     {} u3, {} cx ({} total)",
        r.counts_final.u3,
        r.counts_final.cx,
        r.counts_final.total()
    );
    let _ = writeln!(s, "estimated time:    {} ns", r.est_time_ns);
    match r.coherence {
        Coherence::Pass => {
            let _ = writeln!(s, "coherence:         pass");
        }
        Coherence::Warn(ratio) => {
            let _ = writeln!(
                s,
                "coherence:         warn ({ratio:.2}x the coherence time)"
            );
        }
    }
    s
}

fn format_verification(v: &Verification) -> String {
    match v {
        Verification::Operator { error } => {
            format!("verify:            operator error {error:.3e}\n")
        }
        Verification::State {
            error,
            success_rate,
        } => format!(
            "verify:            state error {error:.3e}, success rate {success_rate:.6}\n"
        ),
        Verification::Skipped { reason } => format!("verify:            skipped ({reason})\n"),
    }
}

fn run(cli: &Cli) -> Result<(), String> {
    let source = build_source(cli)?;
    let options = build_options(cli)?;
    let output = compile(&source, &options).map_err(|e| e.to_string())?;

    let mut report = format_report(&output);
    if cli.verify {
        let v = verify(&source, &output, &options).map_err(|e| e.to_string())?;
        report.push_str(&format_verification(&v));
    }

    let qasm = emit_qasm(&output.circuit);
    match &cli.out {
        Some(path) => {
            fs::write(path, qasm)
                .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            print!("{report}");
        }
        None => {
            print!("{qasm}");
            eprint!("{report}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
