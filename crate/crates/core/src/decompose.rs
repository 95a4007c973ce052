//! Factoring operators into two-level matrices.
//!
//! A unitary is reduced to the identity by a sweep of Givens rotations, one
//! basis-order column at a time; the inverses of those rotations, read in
//! the same order, multiply back to the original operator. State
//! preparation runs the same elimination on a single vector, and
//! permutations skip the numerics entirely and decompose into transpositions
//! along their cycles.
//!
//! Ordering contract used by every result here: `ops[0]` is the leftmost
//! matrix factor, so `ops[0] * ops[1] * ... * ops[m-1]` reconstructs the
//! input, and a circuit realizes `ops` by executing them from the end of
//! the list backwards.

use num_complex::Complex64;

use crate::encoding::BasisOrder;
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, Ket};

/// Entries below this are treated as already eliminated.
pub const ZERO_TOL: f64 = 1e-12;
/// Unitarity requirement on operators entering the decomposition.
pub const UNITARY_TOL: f64 = 1e-6;

/// A unitary acting on at most two basis states.
#[derive(Debug, Clone, PartialEq)]
pub enum TwoLevelOp {
    /// Nontrivial 2x2 action on basis states `j` and `k`. Block rows and
    /// columns are ordered (j, k): `block[0][0]` is the (j, j) entry.
    Rotation {
        j: usize,
        k: usize,
        block: [[Complex64; 2]; 2],
    },
    /// Diagonal fix: multiplies basis state `index` by a unit-modulus phase.
    Phase { index: usize, phase: Complex64 },
}

impl TwoLevelOp {
    /// Embeds the op into the full `dim`-dimensional identity.
    pub fn embed(&self, dim: usize) -> CMatrix {
        let mut m = CMatrix::identity(dim);
        match self {
            TwoLevelOp::Rotation { j, k, block } => {
                m.set(*j, *j, block[0][0]);
                m.set(*j, *k, block[0][1]);
                m.set(*k, *j, block[1][0]);
                m.set(*k, *k, block[1][1]);
            }
            TwoLevelOp::Phase { index, phase } => {
                m.set(*index, *index, *phase);
            }
        }
        m
    }

    pub fn dagger(&self) -> TwoLevelOp {
        match self {
            TwoLevelOp::Rotation { j, k, block } => TwoLevelOp::Rotation {
                j: *j,
                k: *k,
                block: [
                    [block[0][0].conj(), block[1][0].conj()],
                    [block[0][1].conj(), block[1][1].conj()],
                ],
            },
            TwoLevelOp::Phase { index, phase } => TwoLevelOp::Phase {
                index: *index,
                phase: phase.conj(),
            },
        }
    }

    /// Max deviation of block * block^dagger from the identity.
    pub fn unitarity_deviation(&self) -> f64 {
        match self {
            TwoLevelOp::Rotation { block, .. } => {
                let b = block;
                let mut worst = 0.0f64;
                for r in 0..2 {
                    for c in 0..2 {
                        let acc = b[r][0] * b[c][0].conj() + b[r][1] * b[c][1].conj();
                        let expected = if r == c { 1.0 } else { 0.0 };
                        worst = worst.max((acc - expected).norm());
                    }
                }
                worst
            }
            TwoLevelOp::Phase { phase, .. } => (phase.norm() - 1.0).abs(),
        }
    }
}

/// Decomposition result: `residual_phase * ops[0] * ... * ops[m-1]`
/// reconstructs the input operator, or reproduces the input state when
/// applied to |0..0>. The phase is always 1 for operator inputs.
#[derive(Debug, Clone)]
pub struct DecompResult {
    pub n_qubits: usize,
    pub ops: Vec<TwoLevelOp>,
    pub residual_phase: Complex64,
}

/// The 2x2 rotation that zeroes `u_ji` against `u_ki`:
///
/// (1/r) * [[conj(u_ki), conj(u_ji)], [-u_ji, u_ki]],   r = sqrt(|u_ji|^2 + |u_ki|^2)
///
/// Rows and columns of the returned block are ordered (k, j), matching the
/// formula's presentation; left-applying it sends the (u_ki, u_ji) pair to
/// (r, 0).
pub fn givens_rotation(u_ji: Complex64, u_ki: Complex64) -> Result<[[Complex64; 2]; 2]> {
    let r = (u_ji.norm_sqr() + u_ki.norm_sqr()).sqrt();
    if r <= ZERO_TOL {
        return Err(Error::Invalid(
            "givens rotation needs a pair with nonzero norm".into(),
        ));
    }
    Ok([
        [u_ki.conj() / r, u_ji.conj() / r],
        [-u_ji / r, u_ki / r],
    ])
}

/// Same rotation re-laid with rows and columns ordered (j, k), the layout
/// `TwoLevelOp::Rotation` stores.
fn givens_block_jk(u_ji: Complex64, u_ki: Complex64) -> Result<[[Complex64; 2]; 2]> {
    let p = givens_rotation(u_ji, u_ki)?;
    Ok([[p[1][1], p[1][0]], [p[0][1], p[0][0]]])
}

/// Applies a forward rotation (j, k layout) to rows `j` and `k` of `w`.
fn rotate_rows(w: &mut CMatrix, j: usize, k: usize, block: &[[Complex64; 2]; 2]) {
    for c in 0..w.dim() {
        let wj = w.get(j, c);
        let wk = w.get(k, c);
        w.set(j, c, block[0][0] * wj + block[0][1] * wk);
        w.set(k, c, block[1][0] * wj + block[1][1] * wk);
    }
}

/// Givens decomposition of a unitary along a basis order.
///
/// Columns are visited in order positions; within a column every row below
/// the pivot (in order position) is paired with its immediate predecessor in
/// the order, walking the column's weight up to the pivot. Under the Gray
/// order each pair differs in a single bit. Pivots are normalized to +1 as
/// part of the walk, so after the sweep only the last-in-order diagonal
/// entry can differ from unity; it is emitted as a phase op.
pub fn givens_decompose(u: &CMatrix, order: &BasisOrder) -> Result<DecompResult> {
    let dim = u.dim();
    if dim != order.codes.len() {
        return Err(Error::DimensionMismatch(format!(
            "operator dimension {} does not match basis order length {}",
            dim,
            order.codes.len()
        )));
    }
    let n_qubits = dim.trailing_zeros() as usize;
    if !dim.is_power_of_two() || dim < 2 {
        return Err(Error::NotPowerOfTwo { dim });
    }
    let deviation = u.unitarity_deviation();
    if deviation > UNITARY_TOL {
        return Err(Error::NotUnitary {
            deviation,
            tolerance: UNITARY_TOL,
        });
    }

    let codes = &order.codes;
    let mut w = u.clone();
    let mut ops: Vec<TwoLevelOp> = Vec::new();
    let one = Complex64::new(1.0, 0.0);

    for ci in 0..dim {
        let col = codes[ci];
        for p in ((ci + 1)..dim).rev() {
            let j = codes[p];
            let k = codes[p - 1];
            let u_j = w.get(j, col);
            let pivot_needs_fix =
                p == ci + 1 && (w.get(k, col) - one).norm() > ZERO_TOL;
            if u_j.norm() <= ZERO_TOL && !pivot_needs_fix {
                continue;
            }
            let block = givens_block_jk(u_j, w.get(k, col))?;
            rotate_rows(&mut w, j, k, &block);
            ops.push(TwoLevelOp::Rotation { j, k, block }.dagger());
        }
    }

    let last = codes[dim - 1];
    let tail = w.get(last, last);
    if (tail - one).norm() > ZERO_TOL {
        let phase = tail / tail.norm();
        ops.push(TwoLevelOp::Phase { index: last, phase });
    }

    Ok(DecompResult {
        n_qubits,
        ops,
        residual_phase: one,
    })
}

/// Reduces a state to |0..0> by the same pair walk; the inverse rotations
/// prepare the state from |0..0>. A leftover phase on the pivot amplitude is
/// reported in `residual_phase` rather than synthesized.
pub fn state_prep_decompose(s: &Ket, order: &BasisOrder) -> Result<DecompResult> {
    let dim = s.dim();
    if dim != order.codes.len() {
        return Err(Error::DimensionMismatch(format!(
            "state length {} does not match basis order length {}",
            dim,
            order.codes.len()
        )));
    }
    if !dim.is_power_of_two() || dim < 2 {
        return Err(Error::NotPowerOfTwo { dim });
    }
    let norm = s.norm();
    if (norm - 1.0).abs() > UNITARY_TOL {
        return Err(Error::NotNormalized {
            norm,
            tolerance: UNITARY_TOL,
        });
    }

    let codes = &order.codes;
    let mut v = s.amps.clone();
    let mut ops: Vec<TwoLevelOp> = Vec::new();

    for p in (1..dim).rev() {
        let j = codes[p];
        let k = codes[p - 1];
        if v[j].norm() <= ZERO_TOL {
            continue;
        }
        let block = givens_block_jk(v[j], v[k])?;
        let (vj, vk) = (v[j], v[k]);
        v[j] = block[0][0] * vj + block[0][1] * vk;
        v[k] = block[1][0] * vj + block[1][1] * vk;
        ops.push(TwoLevelOp::Rotation { j, k, block }.dagger());
    }

    let pivot = v[codes[0]];
    let residual_phase = if pivot.norm() > ZERO_TOL {
        pivot / pivot.norm()
    } else {
        Complex64::new(1.0, 0.0)
    };

    Ok(DecompResult {
        n_qubits: dim.trailing_zeros() as usize,
        ops,
        residual_phase,
    })
}

/// A permutation of basis states in one-line (Cauchy) notation:
/// `images[x]` is where basis state x is sent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if !n.is_power_of_two() || n < 2 {
            return Err(Error::NotPowerOfTwo { dim: n });
        }
        let mut seen = vec![false; n];
        for &img in &images {
            if img >= n {
                return Err(Error::NotBijection {
                    msg: format!("image {img} out of range 0..{n}"),
                });
            }
            if seen[img] {
                return Err(Error::NotBijection {
                    msg: format!("image {img} repeats"),
                });
            }
            seen[img] = true;
        }
        Ok(Permutation { images })
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn n_qubits(&self) -> usize {
        self.images.len().trailing_zeros() as usize
    }

    /// Matrix sending |x> to |images[x]>.
    pub fn matrix(&self) -> CMatrix {
        let n = self.images.len();
        let mut m = CMatrix::zeros(n);
        for (x, &img) in self.images.iter().enumerate() {
            m.set(img, x, Complex64::new(1.0, 0.0));
        }
        m
    }
}

/// Decomposes a permutation into transpositions along its cycles; a cycle of
/// length k contributes k-1 ops, so at most N-1 in total.
pub fn permutation_decompose(p: &Permutation) -> Result<DecompResult> {
    let n = p.len();
    let mut ops: Vec<TwoLevelOp> = Vec::new();
    let swap_block = [
        [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
        [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
    ];
    let mut visited = vec![false; n];
    for start in 0..n {
        if visited[start] {
            continue;
        }
        let mut cycle = vec![start];
        visited[start] = true;
        let mut cur = p.images()[start];
        while cur != start {
            visited[cur] = true;
            cycle.push(cur);
            cur = p.images()[cur];
        }
        // (c0 c1 .. ck-1) = (c0 ck-1)(c0 ck-2)...(c0 c1), rightmost first.
        for i in (1..cycle.len()).rev() {
            ops.push(TwoLevelOp::Rotation {
                j: cycle[0],
                k: cycle[i],
                block: swap_block,
            });
        }
    }
    Ok(DecompResult {
        n_qubits: p.n_qubits(),
        ops,
        residual_phase: Complex64::new(1.0, 0.0),
    })
}

/// Multiplies the ops back together (with the residual phase) for
/// verification.
pub fn reconstruct(result: &DecompResult) -> CMatrix {
    let dim = 1usize << result.n_qubits;
    let mut acc = CMatrix::identity(dim);
    for op in &result.ops {
        acc = acc.mul(&op.embed(dim)).expect("dims fixed by construction");
    }
    if (result.residual_phase - Complex64::new(1.0, 0.0)).norm() > 0.0 {
        let mut scaled = CMatrix::zeros(dim);
        for r in 0..dim {
            for c in 0..dim {
                scaled.set(r, c, acc.get(r, c) * result.residual_phase);
            }
        }
        acc = scaled;
    }
    acc
}
