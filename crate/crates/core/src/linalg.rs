//! Dense complex matrices and state vectors.
//!
//! Everything in the compiler works on small dense operators (dimension
//! 2^n for n qubits), so a flat row-major `Vec<Complex64>` is all we need.
//! No external linear-algebra crate is involved; the handful of operations
//! used by the decomposition and verification paths live here.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        CMatrix {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = CMatrix::zeros(dim);
        for i in 0..dim {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    /// Builds a matrix from a row-major element list. `data.len()` must be a
    /// perfect square.
    pub fn from_vec(data: Vec<Complex64>) -> Result<Self> {
        let dim = (data.len() as f64).sqrt().round() as usize;
        if dim * dim != data.len() {
            return Err(Error::NonSquareTokenCount { count: data.len() });
        }
        Ok(CMatrix { dim, data })
    }

    /// Convenience constructor from real entries (used heavily in tests).
    pub fn from_real(rows: &[&[f64]]) -> Self {
        let dim = rows.len();
        let mut m = CMatrix::zeros(dim);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), dim, "ragged row in matrix literal");
            for (c, &x) in row.iter().enumerate() {
                m.set(r, c, Complex64::new(x, 0.0));
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.data[row * self.dim + col] = value;
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> CMatrix {
        let mut out = CMatrix::zeros(self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                out.set(c, r, self.get(r, c).conj());
            }
        }
        out
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &CMatrix) -> Result<CMatrix> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.dim, self.dim, other.dim, other.dim
            )));
        }
        let n = self.dim;
        let mut out = CMatrix::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for c in 0..n {
                    let v = out.get(r, c) + a * other.get(k, c);
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &Ket) -> Result<Ket> {
        if self.dim != v.dim() {
            return Err(Error::DimensionMismatch(format!(
                "cannot apply {}x{} matrix to vector of length {}",
                self.dim,
                self.dim,
                v.dim()
            )));
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim];
        for (r, slot) in out.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for c in 0..self.dim {
                acc += self.get(r, c) * v.amps[c];
            }
            *slot = acc;
        }
        Ok(Ket { amps: out })
    }

    /// Checks `self * self.dagger() == identity` entry-wise within `tol`.
    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_deviation() <= tol
    }

    /// Max entry-wise deviation of `self * self.dagger()` from the identity.
    pub fn unitarity_deviation(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for r in 0..n {
            for c in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    acc += self.get(r, k) * self.get(c, k).conj();
                }
                let expected = if r == c { 1.0 } else { 0.0 };
                let dev = (acc - expected).norm();
                worst = worst.max(dev);
            }
        }
        worst
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn sub(&self, other: &CMatrix) -> Result<CMatrix> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(format!(
                "cannot subtract {}x{} from {}x{}",
                other.dim, other.dim, self.dim, self.dim
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Ok(CMatrix {
            dim: self.dim,
            data,
        })
    }

    pub fn trace_of_product_with_dagger_of(&self, other: &CMatrix) -> Result<Complex64> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(
                "trace of product needs equal dimensions".into(),
            ));
        }
        // tr(other^dagger * self) = sum_{r,c} conj(other[r][c]) * self[r][c]
        let mut acc = Complex64::new(0.0, 0.0);
        for (a, b) in self.data.iter().zip(&other.data) {
            acc += b.conj() * a;
        }
        Ok(acc)
    }
}

/// Global-phase-insensitive distance between two operators:
/// min over phi of ||a - e^{i phi} b||_F. The minimizer is
/// phi = arg tr(b^dagger a); when that trace vanishes the expression is
/// phase-independent and phi = 0 serves. The difference is accumulated
/// entrywise rather than via norms and the trace, which would cancel
/// catastrophically and floor the result near sqrt(machine epsilon) even
/// for identical inputs.
pub fn phase_dist(a: &CMatrix, b: &CMatrix) -> Result<f64> {
    let t = a.trace_of_product_with_dagger_of(b)?;
    let p = if t.norm() > 0.0 {
        t / t.norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    let mut d2 = 0.0;
    for (x, y) in a.data.iter().zip(&b.data) {
        d2 += (x - p * y).norm_sqr();
    }
    Ok(d2.sqrt())
}

/// Complex state vector of length 2^n.
#[derive(Debug, Clone, PartialEq)]
pub struct Ket {
    pub amps: Vec<Complex64>,
}

impl Ket {
    pub fn new(amps: Vec<Complex64>) -> Self {
        Ket { amps }
    }

    /// Computational basis state |index> in a space of size `dim`.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Ket { amps }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn inner(&self, other: &Ket) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(
                "inner product needs equal lengths".into(),
            ));
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (a, b) in self.amps.iter().zip(&other.amps) {
            acc += a.conj() * b;
        }
        Ok(acc)
    }

    /// l2 distance minimized over a global phase on `other`, accumulated
    /// entrywise for the same numerical reason as the operator variant.
    pub fn phase_dist(&self, other: &Ket) -> Result<f64> {
        let t = other.inner(self)?;
        let p = if t.norm() > 0.0 {
            t / t.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let mut d2 = 0.0;
        for (x, y) in self.amps.iter().zip(&other.amps) {
            d2 += (x - p * y).norm_sqr();
        }
        Ok(d2.sqrt())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testmat::{fourier2, swap_matrix};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn mul_identity_is_identity() {
        let i4 = CMatrix::identity(4);
        let p = i4.mul(&i4).unwrap();
        assert_eq!(p, i4);
    }

    #[test]
    fn mul_x_by_x_is_identity() {
        let x = CMatrix::from_real(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let p = x.mul(&x).unwrap();
        assert_eq!(p, CMatrix::identity(2));
    }

    #[test]
    fn mul_dimension_mismatch_is_an_error() {
        let a = CMatrix::identity(2);
        let b = CMatrix::identity(4);
        assert!(a.mul(&b).is_err());
        assert!(a.apply(&Ket::basis(4, 0)).is_err());
    }

    #[test]
    fn apply_identity_fixes_vectors() {
        let v = Ket::new(vec![c(0.5, 0.1), c(0.0, -0.3), c(0.2, 0.0), c(0.7, 0.2)]);
        let w = CMatrix::identity(4).apply(&v).unwrap();
        assert_eq!(v, w);
    }

    #[test]
    fn apply_swap_exchanges_middle_basis_states() {
        let v = swap_matrix().apply(&Ket::basis(4, 1)).unwrap();
        assert_eq!(v, Ket::basis(4, 2));
        let w = swap_matrix().apply(&Ket::basis(4, 2)).unwrap();
        assert_eq!(w, Ket::basis(4, 1));
    }

    #[test]
    fn identity_and_fourier_are_unitary() {
        assert!(CMatrix::identity(8).is_unitary(1e-12));
        assert!(fourier2().is_unitary(1e-12));
    }

    #[test]
    fn zeroing_an_entry_breaks_unitarity() {
        let mut m = fourier2();
        m.set(2, 1, c(0.0, 0.0));
        assert!(!m.is_unitary(1e-6));
    }

    #[test]
    fn phase_dist_of_equal_operators_is_zero() {
        let f = fourier2();
        assert!(phase_dist(&f, &f).unwrap() < 1e-12);
    }

    #[test]
    fn phase_dist_ignores_global_phase() {
        let f = fourier2();
        let mut g = CMatrix::zeros(4);
        let phase = Complex64::from_polar(1.0, 1.234);
        for r in 0..4 {
            for col in 0..4 {
                g.set(r, col, f.get(r, col) * phase);
            }
        }
        assert!(phase_dist(&f, &g).unwrap() < 1e-12);
        let mut neg = CMatrix::zeros(4);
        for r in 0..4 {
            for col in 0..4 {
                neg.set(r, col, -f.get(r, col));
            }
        }
        assert!(phase_dist(&f, &neg).unwrap() < 1e-12);
    }

    #[test]
    fn phase_dist_identity_vs_x_is_two() {
        let i2 = CMatrix::identity(2);
        let x = CMatrix::from_real(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let d = phase_dist(&i2, &x).unwrap();
        assert!((d - 2.0).abs() < 1e-12, "got {d}");
    }

    #[test]
    fn mul_is_associative_within_float_noise() {
        // Deterministic pseudo-random complex matrices, dim 16.
        let mut seed = 0x243f6a8885a308d3u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (seed >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let mut mk = || {
            let mut m = CMatrix::zeros(16);
            for r in 0..16 {
                for c_i in 0..16 {
                    m.set(r, c_i, c(next(), next()));
                }
            }
            m
        };
        let (a, b, cc) = (mk(), mk(), mk());
        let left = a.mul(&b).unwrap().mul(&cc).unwrap();
        let right = a.mul(&b.mul(&cc).unwrap()).unwrap();
        let diff = left.sub(&right).unwrap().frobenius_norm();
        assert!(diff < 1e-12, "associativity residue {diff}");
    }

    #[test]
    fn ket_norm_and_inner() {
        let v = Ket::new(vec![c(0.6, 0.0), c(0.0, 0.8)]);
        assert!((v.norm() - 1.0).abs() < 1e-15);
        let w = Ket::basis(2, 0);
        let ip = w.inner(&v).unwrap();
        assert_eq!(ip, c(0.6, 0.0));
    }

    #[test]
    fn ket_phase_dist_ignores_global_phase() {
        let v = Ket::new(vec![c(0.6, 0.0), c(0.0, 0.8)]);
        let phase = Complex64::from_polar(1.0, -0.7);
        let w = Ket::new(v.amps.iter().map(|a| a * phase).collect());
        assert!(v.phase_dist(&w).unwrap() < 1e-12);
    }
}
