//! Lowering two-level operators to {u3, cx} gates.
//!
//! Three layers, each built on the previous:
//!   * ZYZ Euler factorization of a 2x2 unitary,
//!   * controlled-U expansion (two CX plus three single-qubit gates, with a
//!     phase gate on the control carrying det(U)), generalized to any number
//!     of controls by the square-root recursion: with V*V = U,
//!     controlled-V on the last control, a multi-controlled X over the rest,
//!     controlled-V-dagger, the multi-controlled X again, then V controlled
//!     on the rest,
//!   * two-level lowering: a rotation coupling basis states j and k becomes
//!     one multi-controlled single-qubit gate when j and k differ in one bit
//!     (always the case for Gray-order rotations); otherwise a chain of
//!     fully-controlled X transpositions walks k next to j first and is
//!     undone afterwards.

use num_complex::Complex64;

use crate::circuit::{u3_matrix, Circuit, Gate};
use crate::decompose::{DecompResult, TwoLevelOp};
use crate::error::{Error, Result};

pub type Mat2 = [[Complex64; 2]; 2];

/// Angle/matrix agreement tolerance for recognizing special gates.
const RECOGNIZE_TOL: f64 = 1e-12;
/// Unitarity requirement on blocks entering the lowering.
const BLOCK_UNITARY_TOL: f64 = 1e-9;

/// ZYZ Euler angles: u = e^{i alpha} Rz(beta) Ry(gamma) Rz(delta).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Euler {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
}

fn mat2_unitarity_deviation(u: &Mat2) -> f64 {
    let mut worst = 0.0f64;
    for r in 0..2 {
        for c in 0..2 {
            let acc = u[r][0] * u[c][0].conj() + u[r][1] * u[c][1].conj();
            let expected = if r == c { 1.0 } else { 0.0 };
            worst = worst.max((acc - expected).norm());
        }
    }
    worst
}

fn mat2_close(a: &Mat2, b: &Mat2, tol: f64) -> bool {
    (0..2).all(|r| (0..2).all(|c| (a[r][c] - b[r][c]).norm() <= tol))
}

fn mat2_identity() -> Mat2 {
    [
        [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
    ]
}

fn mat2_x() -> Mat2 {
    [
        [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
        [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
    ]
}

fn mat2_dagger(u: &Mat2) -> Mat2 {
    [
        [u[0][0].conj(), u[1][0].conj()],
        [u[0][1].conj(), u[1][1].conj()],
    ]
}

/// ZYZ factorization. The angle extraction needs no case split: gamma comes
/// from the moduli, and when either diagonal or off-diagonal vanishes the
/// corresponding angle combination is unobservable, so the atan2 of a zero
/// entry (which returns 0) is still a valid choice.
pub fn zyz(u: &Mat2) -> Result<Euler> {
    let dev = mat2_unitarity_deviation(u);
    if dev > BLOCK_UNITARY_TOL {
        return Err(Error::NotUnitary {
            deviation: dev,
            tolerance: BLOCK_UNITARY_TOL,
        });
    }
    let det = u[0][0] * u[1][1] - u[0][1] * u[1][0];
    let alpha = det.arg() / 2.0;
    let unphase = Complex64::from_polar(1.0, -alpha);
    let g00 = u[0][0] * unphase;
    let g01 = u[0][1] * unphase;
    let g10 = u[1][0] * unphase;
    // g = [[e^{-i(b+d)/2} cos(g/2), -e^{-i(b-d)/2} sin(g/2)],
    //      [e^{ i(b-d)/2} sin(g/2),  e^{ i(b+d)/2} cos(g/2)]]
    let gamma = 2.0 * g01.norm().atan2(g00.norm());
    let sum = -2.0 * g00.arg();
    let diff = 2.0 * g10.arg();
    Ok(Euler {
        alpha,
        beta: (sum + diff) / 2.0,
        gamma,
        delta: (sum - diff) / 2.0,
    })
}

/// u3 parameters realizing `e` up to global phase: (theta, phi, lambda).
pub fn euler_to_u3(e: &Euler) -> (f64, f64, f64) {
    (e.gamma, e.beta, e.delta)
}

/// Number of gates `multi_control_expand` emits for `c` controls on a
/// generic target unitary (one whose recursion never hits a special case):
///
///   f(0) = 1                    bare u3
///   f(1) = 6                    4 u3 + 2 cx
///   f(c) = 12 + 2 g(c-1) + f(c-1)  for c >= 2, where g counts the inner
///          multi-controlled X: g(1) = 1 and g matches f from c = 2 up.
///
/// Solving: f(c) = 26 * 3^(c-2) - 6 for c >= 2. Special-case recognition
/// (identity rotations, X blocks) only ever removes gates, so this is also
/// an upper bound for arbitrary unitaries.
pub fn mc_gate_count_bound(controls: usize) -> usize {
    match controls {
        0 => 1,
        1 => 6,
        c => 26 * 3usize.pow((c - 2) as u32) - 6,
    }
}

/// Principal square root of a 2x2 unitary via its spectral decomposition.
fn sqrt_2x2(u: &Mat2) -> Mat2 {
    let zero = Complex64::new(0.0, 0.0);
    if u[0][1].norm().max(u[1][0].norm()) <= 1e-14 {
        return [[u[0][0].sqrt(), zero], [zero, u[1][1].sqrt()]];
    }
    let tr = u[0][0] + u[1][1];
    let det = u[0][0] * u[1][1] - u[0][1] * u[1][0];
    let disc = (tr * tr - det.scale(4.0)).sqrt();
    let l1 = (tr + disc).unscale(2.0);
    let l2 = (tr - disc).unscale(2.0);
    // Eigenvector for l1; a unitary is normal, so the orthogonal complement
    // is the other eigenvector.
    let cand_a = (u[0][1], l1 - u[0][0]);
    let cand_b = (l1 - u[1][1], u[1][0]);
    let (v0, v1) = if cand_a.0.norm_sqr() + cand_a.1.norm_sqr()
        >= cand_b.0.norm_sqr() + cand_b.1.norm_sqr()
    {
        cand_a
    } else {
        cand_b
    };
    let norm = (v0.norm_sqr() + v1.norm_sqr()).sqrt();
    let (v0, v1) = (v0 / norm, v1 / norm);
    let (w0, w1) = (-v1.conj(), v0.conj());
    let s1 = l1.sqrt();
    let s2 = l2.sqrt();
    [
        [
            s1 * v0 * v0.conj() + s2 * w0 * w0.conj(),
            s1 * v0 * v1.conj() + s2 * w0 * w1.conj(),
        ],
        [
            s1 * v1 * v0.conj() + s2 * w1 * w0.conj(),
            s1 * v1 * v1.conj() + s2 * w1 * w1.conj(),
        ],
    ]
}

/// Pushes a u3 gate unless its matrix is the identity within 1e-12.
fn push_u3(out: &mut Vec<Gate>, qubit: usize, theta: f64, phi: f64, lambda: f64) {
    let m = u3_matrix(theta, phi, lambda);
    if mat2_close(&m, &mat2_identity(), RECOGNIZE_TOL) {
        return;
    }
    out.push(Gate::u3(qubit, theta, phi, lambda));
}

/// Controlled-U from Euler angles: with u = e^{ia} Rz(b) Ry(g) Rz(d) and
/// A = Rz(b) Ry(g/2), B = Ry(-g/2) Rz(-(d+b)/2), C = Rz((d-b)/2), we have
/// A B C = I and A X B X C = Rz(b) Ry(g) Rz(d), so the gate sequence
/// C, CX, B, CX, A on the target plus a phase a on the control realizes
/// controlled-U. Written as u3 gates the SU(2) phase slack cancels exactly.
fn controlled_u_into(control: usize, target: usize, u: &Mat2, out: &mut Vec<Gate>) -> Result<()> {
    if mat2_close(u, &mat2_identity(), RECOGNIZE_TOL) {
        return Ok(());
    }
    if mat2_close(u, &mat2_x(), RECOGNIZE_TOL) {
        out.push(Gate::cx(control, target));
        return Ok(());
    }
    let e = zyz(u)?;
    let theta_c = (e.delta - e.beta) / 2.0;
    let theta_b = -(e.delta + e.beta) / 2.0;
    push_u3(out, target, 0.0, 0.0, theta_c);
    out.push(Gate::cx(control, target));
    push_u3(out, target, -e.gamma / 2.0, 0.0, theta_b);
    out.push(Gate::cx(control, target));
    push_u3(out, target, e.gamma / 2.0, e.beta, 0.0);
    push_u3(out, control, 0.0, 0.0, e.alpha);
    Ok(())
}

fn multi_control_expand_into(
    controls: &[usize],
    target: usize,
    u: &Mat2,
    out: &mut Vec<Gate>,
) -> Result<()> {
    let mut seen = controls.to_vec();
    seen.push(target);
    seen.sort_unstable();
    if seen.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidGate(
            "controls and target must be distinct qubits".into(),
        ));
    }
    let dev = mat2_unitarity_deviation(u);
    if dev > BLOCK_UNITARY_TOL {
        return Err(Error::NotUnitary {
            deviation: dev,
            tolerance: BLOCK_UNITARY_TOL,
        });
    }
    if mat2_close(u, &mat2_identity(), RECOGNIZE_TOL) {
        return Ok(());
    }
    match controls.len() {
        0 => {
            let e = zyz(u)?;
            let (theta, phi, lambda) = euler_to_u3(&e);
            push_u3(out, target, theta, phi, lambda);
            Ok(())
        }
        1 => controlled_u_into(controls[0], target, u, out),
        _ => {
            let v = sqrt_2x2(u);
            let last = controls[controls.len() - 1];
            let rest = &controls[..controls.len() - 1];
            controlled_u_into(last, target, &v, out)?;
            multi_control_expand_into(rest, last, &mat2_x(), out)?;
            controlled_u_into(last, target, &mat2_dagger(&v), out)?;
            multi_control_expand_into(rest, last, &mat2_x(), out)?;
            multi_control_expand_into(rest, target, &v, out)
        }
    }
}

/// Expands a single-qubit unitary controlled on every qubit in `controls`
/// (all conditioned on |1>) into {u3, cx} gates.
pub fn multi_control_expand(controls: &[usize], target: usize, u: &Mat2) -> Result<Vec<Gate>> {
    let mut out = Vec::new();
    multi_control_expand_into(controls, target, u, &mut out)?;
    Ok(out)
}

/// Emits `u` on `target_qubit` controlled on every other qubit matching the
/// bits of `pattern` (qubit 0 is the high bit). Zero bits are conditioned
/// through X conjugation.
fn controlled_on_pattern_into(
    n_qubits: usize,
    pattern: usize,
    target_qubit: usize,
    u: &Mat2,
    out: &mut Vec<Gate>,
) -> Result<()> {
    let mut controls = Vec::with_capacity(n_qubits - 1);
    let mut flipped = Vec::new();
    for q in 0..n_qubits {
        if q == target_qubit {
            continue;
        }
        controls.push(q);
        if (pattern >> (n_qubits - 1 - q)) & 1 == 0 {
            flipped.push(q);
        }
    }
    for &q in &flipped {
        out.push(Gate::x(q));
    }
    multi_control_expand_into(&controls, target_qubit, u, out)?;
    for &q in &flipped {
        out.push(Gate::x(q));
    }
    Ok(())
}

fn two_level_to_gates_into(op: &TwoLevelOp, n_qubits: usize, out: &mut Vec<Gate>) -> Result<()> {
    let dim = 1usize << n_qubits;
    match op {
        TwoLevelOp::Phase { index, phase } => {
            if *index >= dim {
                return Err(Error::Invalid(format!(
                    "phase index {index} out of range for {n_qubits} qubits"
                )));
            }
            if (phase - Complex64::new(1.0, 0.0)).norm() <= RECOGNIZE_TOL {
                return Ok(());
            }
            let zero = Complex64::new(0.0, 0.0);
            let one = Complex64::new(1.0, 0.0);
            // Condition on a set bit when there is one so the local gate is
            // a plain phase gate; |0..0> needs the inverted form.
            let (target_qubit, local) = if *index == 0 {
                (n_qubits - 1, [[*phase, zero], [zero, one]])
            } else {
                let bit = index.trailing_zeros() as usize;
                (n_qubits - 1 - bit, [[one, zero], [zero, *phase]])
            };
            controlled_on_pattern_into(n_qubits, *index, target_qubit, &local, out)
        }
        TwoLevelOp::Rotation { j, k, block } => {
            if *j >= dim || *k >= dim {
                return Err(Error::Invalid(format!(
                    "rotation indices ({j}, {k}) out of range for {n_qubits} qubits"
                )));
            }
            if j == k {
                return Err(Error::Invalid("rotation needs two distinct indices".into()));
            }
            let diff = j ^ k;
            // Bits where j and k disagree, highest first; all but the last
            // are walked by transposition chains, the last carries the block.
            let mut bits: Vec<usize> = (0..n_qubits).filter(|b| (diff >> b) & 1 == 1).collect();
            bits.sort_unstable_by(|a, b| b.cmp(a));
            let low = *bits.last().expect("j != k so diff has a set bit");

            // Walk k toward j one bit at a time: h_0 = k, flip bits[0], ...
            let mut chain_states = Vec::new();
            let mut h = *k;
            for &b in &bits[..bits.len() - 1] {
                chain_states.push(h);
                h ^= 1usize << b;
            }
            let j_prime = h;
            debug_assert_eq!(j_prime ^ (1usize << low), *j);

            let chain_gate = |state: usize, flip_bit: usize, out: &mut Vec<Gate>| {
                controlled_on_pattern_into(
                    n_qubits,
                    state,
                    n_qubits - 1 - flip_bit,
                    &mat2_x(),
                    out,
                )
            };

            for (i, &b) in bits[..bits.len() - 1].iter().enumerate() {
                chain_gate(chain_states[i], b, out)?;
            }

            // Orient the block onto the target qubit: row 0 of the block
            // belongs to basis state j.
            let target_qubit = n_qubits - 1 - low;
            let local = if (*j >> low) & 1 == 0 {
                *block
            } else {
                [
                    [block[1][1], block[1][0]],
                    [block[0][1], block[0][0]],
                ]
            };
            controlled_on_pattern_into(n_qubits, *j, target_qubit, &local, out)?;

            for (i, &b) in bits[..bits.len() - 1].iter().enumerate().rev() {
                chain_gate(chain_states[i], b, out)?;
            }
            Ok(())
        }
    }
}

/// Lowers one two-level op on an `n_qubits` register to gates.
pub fn two_level_to_gates(op: &TwoLevelOp, n_qubits: usize) -> Result<Vec<Gate>> {
    let mut out = Vec::new();
    two_level_to_gates_into(op, n_qubits, &mut out)?;
    Ok(out)
}

/// Lowers a whole decomposition to a circuit. The op list is a left-to-right
/// matrix product, so gates are emitted from the last op backwards; the
/// residual phase (state preparations only) is global and not synthesized.
pub fn synth_circuit(decomp: &DecompResult, n_qubits: usize) -> Result<Circuit> {
    if decomp.n_qubits != n_qubits {
        return Err(Error::DimensionMismatch(format!(
            "decomposition is over {} qubits, requested {}",
            decomp.n_qubits, n_qubits
        )));
    }
    let mut gates = Vec::new();
    for op in decomp.ops.iter().rev() {
        two_level_to_gates_into(op, n_qubits, &mut gates)?;
    }
    let mut circuit = Circuit::new(n_qubits, 0);
    for gate in gates {
        circuit.push(gate)?;
    }
    Ok(circuit)
}
