//! Shared fixtures for the integration suites: a tiny deterministic RNG,
//! random unitaries and states, and the standard benchmark constructions.

use num_complex::Complex64;
use qsynth::circuit::Circuit;
use qsynth::decompose::Permutation;
use qsynth::formats::qasm::parse_qasm;
use qsynth::linalg::{CMatrix, Ket};
use qsynth::pipeline::Source;

/// SplitMix64: a small deterministic generator, good enough for fixtures.
pub struct SplitMix(pub u64);

impl SplitMix {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in [-1, 1).
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 52) as f64 - 1.0
    }

    pub fn next_complex(&mut self) -> Complex64 {
        Complex64::new(self.next_f64(), self.next_f64())
    }
}

/// Haar-ish random unitary via modified Gram-Schmidt on a random matrix.
#[allow(clippy::needless_range_loop)]
pub fn random_unitary(dim: usize, seed: u64) -> CMatrix {
    let mut rng = SplitMix(seed.wrapping_mul(0x5851f42d4c957f2d).wrapping_add(1));
    let mut cols: Vec<Vec<Complex64>> = (0..dim)
        .map(|_| (0..dim).map(|_| rng.next_complex()).collect())
        .collect();
    for i in 0..dim {
        for j in 0..i {
            let proj: Complex64 = (0..dim).map(|r| cols[j][r].conj() * cols[i][r]).sum();
            for r in 0..dim {
                let correction = proj * cols[j][r];
                cols[i][r] -= correction;
            }
        }
        let norm: f64 = cols[i].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for r in 0..dim {
            cols[i][r] /= norm;
        }
    }
    let mut m = CMatrix::zeros(dim);
    for c in 0..dim {
        for r in 0..dim {
            m.set(r, c, cols[c][r]);
        }
    }
    m
}

/// Random normalized state vector.
pub fn random_state(dim: usize, seed: u64) -> Ket {
    let mut rng = SplitMix(seed.wrapping_mul(0x2545f4914f6cdd1d).wrapping_add(7));
    let mut amps: Vec<Complex64> = (0..dim).map(|_| rng.next_complex()).collect();
    let norm: f64 = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for a in amps.iter_mut() {
        *a /= norm;
    }
    Ket::new(amps)
}

/// Discrete Fourier transform on n qubits, entries omega^(r c) / sqrt(N).
pub fn fourier(n: usize) -> CMatrix {
    let dim = 1usize << n;
    let scale = 1.0 / (dim as f64).sqrt();
    let mut m = CMatrix::zeros(dim);
    for r in 0..dim {
        for c in 0..dim {
            let angle = 2.0 * std::f64::consts::PI * ((r * c) % dim) as f64 / dim as f64;
            m.set(r, c, Complex64::from_polar(scale, angle));
        }
    }
    m
}

/// GHZ state (|0...0> + |1...1>)/sqrt(2).
pub fn ghz(n: usize) -> Ket {
    let dim = 1usize << n;
    let r = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    amps[0] = r;
    amps[dim - 1] = r;
    Ket::new(amps)
}

/// Basis permutation matrix for a function on indices.
pub fn permutation_matrix(n_qubits: usize, f: impl Fn(usize) -> usize) -> CMatrix {
    let dim = 1usize << n_qubits;
    let mut m = CMatrix::zeros(dim);
    for b in 0..dim {
        m.set(f(b), b, Complex64::new(1.0, 0.0));
    }
    m
}

pub fn swap_matrix() -> CMatrix {
    permutation_matrix(2, |b| (b >> 1) | ((b & 1) << 1))
}

/// Toffoli: qubits 0, 1 control an X on qubit 2 (qubit 0 is the index MSB).
pub fn toffoli_matrix() -> CMatrix {
    permutation_matrix(3, |b| if b & 0b110 == 0b110 { b ^ 1 } else { b })
}

/// Fredkin: qubit 0 controls a swap of qubits 1 and 2.
pub fn fredkin_matrix() -> CMatrix {
    permutation_matrix(3, |b| {
        if b & 0b100 != 0 {
            (b & 0b100) | ((b & 0b010) >> 1) | ((b & 0b001) << 1)
        } else {
            b
        }
    })
}

/// Hidden-string circuit as a basis permutation: with the query register in
/// |x> and the LSB ancilla in |y>, maps |x, y> to |x xor s*(y xor 1), y xor 1>,
/// so the all-zeros input lands exactly on |s, 1>.
pub fn hidden_string_permutation(n_data: usize) -> Permutation {
    let s = (1usize << n_data) - 1;
    let dim = 1usize << (n_data + 1);
    let images = (0..dim)
        .map(|b| {
            let (x, y) = (b >> 1, b & 1);
            let x_out = if y == 0 { x ^ s } else { x };
            (x_out << 1) | (y ^ 1)
        })
        .collect();
    Permutation::new(images).unwrap()
}

/// Index of the hidden-string outcome |s, 1> for `hidden_string_permutation`.
pub fn hidden_string_outcome(n_data: usize) -> usize {
    (((1usize << n_data) - 1) << 1) | 1
}

pub fn bell_circuit() -> Circuit {
    parse_qasm(
        "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\nh q[0];\ncx q[0],q[1];\n",
    )
    .unwrap()
}

pub fn bell_ket() -> Ket {
    let r = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    Ket::new(vec![r, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), r])
}

/// Two-qubit amplitude amplification marking |11>: one round reaches the
/// marked state with certainty.
pub fn grover2_circuit() -> Circuit {
    parse_qasm(concat!(
        "OPENQASM 2.0;\n",
        "include \"qelib1.inc\";\n",
        "qreg q[2];\n",
        "h q[0];\n",
        "h q[1];\n",
        "h q[1];\n",
        "cx q[0],q[1];\n",
        "h q[1];\n",
        "h q[0];\n",
        "h q[1];\n",
        "x q[0];\n",
        "x q[1];\n",
        "h q[1];\n",
        "cx q[0],q[1];\n",
        "h q[1];\n",
        "x q[0];\n",
        "x q[1];\n",
        "h q[0];\n",
        "h q[1];\n",
    ))
    .unwrap()
}

/// The benchmark set: name, source, and the expected outcome of running the
/// compiled circuit from |0...0> (None when the expected state is the source
/// state itself or needs a custom start).
pub struct Benchmark {
    pub name: &'static str,
    pub source: Source,
    /// (initial state, ideal final state) for the success-rate check.
    pub start: Option<Ket>,
    pub ideal: Ket,
}

pub fn benchmarks() -> Vec<Benchmark> {
    let mut list = Vec::new();

    list.push(Benchmark {
        name: "Bell",
        source: Source::Qasm(bell_circuit()),
        start: None,
        ideal: bell_ket(),
    });
    list.push(Benchmark {
        name: "GHZ3",
        source: Source::State(ghz(3)),
        start: None,
        ideal: ghz(3),
    });
    for n_data in [2usize, 4, 6] {
        let name: &'static str = match n_data {
            2 => "BV2",
            4 => "BV4",
            _ => "BV6",
        };
        list.push(Benchmark {
            name,
            source: Source::Permutation(hidden_string_permutation(n_data)),
            start: None,
            ideal: Ket::basis(1 << (n_data + 1), hidden_string_outcome(n_data)),
        });
    }
    for n in [2usize, 3, 4] {
        let name: &'static str = match n {
            2 => "QFT2",
            3 => "QFT3",
            _ => "QFT4",
        };
        let f = fourier(n);
        let ideal = f.apply(&Ket::basis(1 << n, 0)).unwrap();
        list.push(Benchmark {
            name,
            source: Source::Unitary(f),
            start: None,
            ideal,
        });
    }
    list.push(Benchmark {
        name: "Grover-2",
        source: Source::Qasm(grover2_circuit()),
        start: None,
        ideal: Ket::basis(4, 3),
    });
    list.push(Benchmark {
        name: "SWAP",
        source: Source::Unitary(swap_matrix()),
        start: Some(Ket::basis(4, 0b01)),
        ideal: Ket::basis(4, 0b10),
    });
    list.push(Benchmark {
        name: "Toffoli",
        source: Source::Unitary(toffoli_matrix()),
        start: Some(Ket::basis(8, 0b110)),
        ideal: Ket::basis(8, 0b111),
    });
    list.push(Benchmark {
        name: "Fredkin",
        source: Source::Unitary(fredkin_matrix()),
        start: Some(Ket::basis(8, 0b110)),
        ideal: Ket::basis(8, 0b101),
    });
    for n in [2usize, 3, 4] {
        let name: &'static str = match n {
            2 => "AS2",
            3 => "AS3",
            _ => "AS4",
        };
        let state = random_state(1 << n, 40 + n as u64);
        list.push(Benchmark {
            name,
            source: Source::State(state.clone()),
            start: None,
            ideal: state,
        });
    }
    list
}
