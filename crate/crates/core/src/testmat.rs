//! Matrix fixtures shared by unit tests across modules.

use num_complex::Complex64;

use crate::linalg::{CMatrix, Ket};

/// Two-qubit SWAP: exchanges basis indices 1 and 2 (qubit 0 is the high bit).
pub fn swap_matrix() -> CMatrix {
    CMatrix::from_real(&[
        &[1.0, 0.0, 0.0, 0.0],
        &[0.0, 0.0, 1.0, 0.0],
        &[0.0, 1.0, 0.0, 0.0],
        &[0.0, 0.0, 0.0, 1.0],
    ])
}

/// Two-qubit discrete Fourier transform, entries i^(r*c) / 2.
pub fn fourier2() -> CMatrix {
    let mut m = CMatrix::zeros(4);
    for r in 0..4 {
        for c in 0..4 {
            let w = match (r * c) % 4 {
                0 => Complex64::new(0.5, 0.0),
                1 => Complex64::new(0.0, 0.5),
                2 => Complex64::new(-0.5, 0.0),
                _ => Complex64::new(0.0, -0.5),
            };
            m.set(r, c, w);
        }
    }
    m
}

/// Discrete Fourier transform on n qubits, entries omega^(r*c) / sqrt(N).
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

/// GHZ state (|0..0> + |1..1>)/sqrt(2) on n qubits.
pub fn ghz(n: usize) -> Ket {
    let dim = 1usize << n;
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    let a = Complex64::new(1.0 / 2f64.sqrt(), 0.0);
    amps[0] = a;
    amps[dim - 1] = a;
    Ket::new(amps)
}

/// Deterministic random unitary via modified Gram-Schmidt on a pseudo-random
/// complex matrix. Good to ~1e-14 unitarity for the dimensions used in tests.
#[allow(clippy::needless_range_loop)]
pub fn random_unitary(dim: usize, seed: u64) -> CMatrix {
    let mut rng = SplitMix(seed);
    let mut cols: Vec<Vec<Complex64>> = (0..dim)
        .map(|_| {
            (0..dim)
                .map(|_| Complex64::new(rng.next_f64() - 0.5, rng.next_f64() - 0.5))
                .collect()
        })
        .collect();
    for i in 0..dim {
        for j in 0..i {
            let proj: Complex64 = cols[j]
                .iter()
                .zip(&cols[i])
                .map(|(a, b)| a.conj() * b)
                .sum();
            for k in 0..dim {
                let adj = proj * cols[j][k];
                cols[i][k] -= adj;
            }
        }
        let norm: f64 = cols[i].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in cols[i].iter_mut() {
            *z /= norm;
        }
    }
    let mut m = CMatrix::zeros(dim);
    for (c, col) in cols.iter().enumerate() {
        for (r, &z) in col.iter().enumerate() {
            m.set(r, c, z);
        }
    }
    m
}

/// Deterministic random normalized state.
pub fn random_state(dim: usize, seed: u64) -> Ket {
    let mut rng = SplitMix(seed ^ 0x9e3779b97f4a7c15);
    let amps: Vec<Complex64> = (0..dim)
        .map(|_| Complex64::new(rng.next_f64() - 0.5, rng.next_f64() - 0.5))
        .collect();
    let norm: f64 = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    Ket::new(amps.into_iter().map(|z| z / norm).collect())
}

/// splitmix64, enough randomness for test fixtures without pulling rand in.
pub struct SplitMix(pub u64);

impl SplitMix {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }
}
