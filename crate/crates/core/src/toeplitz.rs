//! `T_N(f)`: the `(N+1)×(N+1)` Toeplitz matrix with entries `â(k − l)`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::symbol::TrigSymbol;

#[derive(Debug, Clone, PartialEq)]
pub struct ToeplitzMatrix {
    order: usize,
    coeffs: Vec<Complex64>,
    bandwidth: usize,
}

impl ToeplitzMatrix {
    /// `T_N(f)`; coefficients past the symbol degree are zero (or quadrature for sampled symbols).
    pub fn build(sym: &TrigSymbol, n: usize) -> Self {
        let coeffs = sym.coefficients_up_to(n);
        let bandwidth = if sym.is_sampled() { n } else { sym.degree().min(n) };
        Self { order: n, coeffs, bandwidth }
    }

    /// From `â(−N..=N)` directly.
    pub fn from_coeffs(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() % 2 == 0 {
            return Err(Error::InvalidInput("coefficient sequence must have odd length".into()));
        }
        let order = coeffs.len() / 2;
        let bandwidth = (0..=order)
            .rev()
            .find(|&j| coeffs[order + j] != Complex64::new(0.0, 0.0) || coeffs[order - j] != Complex64::new(0.0, 0.0))
            .unwrap_or(0);
        Ok(Self { order, coeffs, bandwidth })
    }

    /// N; the matrix has N+1 rows.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.order + 1
    }

    pub fn bandwidth(&self) -> usize {
        self.bandwidth
    }

    /// `â(j)` for `|j| ≤ N`.
    pub fn coeff(&self, j: i64) -> Complex64 {
        self.coeffs[(j + self.order as i64) as usize]
    }

    /// Entry (k, l), 0-based.
    pub fn entry(&self, k: usize, l: usize) -> Complex64 {
        self.coeff(k as i64 - l as i64)
    }

    pub fn to_dense(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.dim(), self.dim(), |k, l| self.entry(k, l))
    }

    pub fn is_hermitian(&self) -> bool {
        (1..=self.order as i64).all(|j| self.coeff(-j) == self.coeff(j).conj()) && self.coeff(0).im == 0.0
    }

    /// `y_k = Σ_l â(k − l) x_l`, touching only the band.
    pub fn matvec(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        let n = self.dim();
        if x.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: x.len() });
        }
        let b = self.bandwidth;
        Ok((0..n)
            .map(|k| {
                let lo = k.saturating_sub(b);
                let hi = (k + b).min(n - 1);
                (lo..=hi).map(|l| self.entry(k, l) * x[l]).sum()
            })
            .collect())
    }

    pub fn determinant(&self) -> Result<Complex64> {
        self.to_dense().determinant()
    }
}

/// Dense inverse through pivoted LU.
pub fn dense_invert(t: &ToeplitzMatrix) -> Result<DenseMatrix> {
    t.to_dense().inverse()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn tridiagonal_laplacian() {
        let t = ToeplitzMatrix::build(&TrigSymbol::cosine(&[2.0, -2.0]), 2);
        let d = t.to_dense();
        let want = [[2.0, -1.0, 0.0], [-1.0, 2.0, -1.0], [0.0, -1.0, 2.0]];
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(d[(i, j)], c(want[i][j]));
            }
        }
        assert_eq!(t.bandwidth(), 1);
    }

    #[test]
    fn constant_is_scaled_identity() {
        let t = ToeplitzMatrix::build(&TrigSymbol::constant(2.5), 5);
        assert_eq!(t.to_dense(), DenseMatrix::identity(6).scale(c(2.5)));
        let inv = dense_invert(&t).unwrap();
        assert!(inv.sub(&DenseMatrix::identity(6).scale(c(0.4))).unwrap().max_abs() < 1e-16);
    }

    #[test]
    fn laplacian_green_kernel() {
        let n = 3;
        let inv = dense_invert(&ToeplitzMatrix::build(&TrigSymbol::cosine(&[2.0, -2.0]), n)).unwrap();
        for k in 1..=n + 1 {
            for l in 1..=n + 1 {
                let want = (k.min(l) * (n + 2 - k.max(l))) as f64 / (n + 2) as f64;
                assert!((inv[(k - 1, l - 1)] - c(want)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn matvec_ones() {
        let t = ToeplitzMatrix::build(&TrigSymbol::cosine(&[2.0, -2.0]), 4);
        let y = t.matvec(&[c(1.0); 5]).unwrap();
        assert_eq!(y, vec![c(1.0), c(0.0), c(0.0), c(0.0), c(1.0)]);
        assert!(t.matvec(&[c(1.0); 3]).is_err());
    }

    #[test]
    fn small_inverse() {
        let t = ToeplitzMatrix::build(&TrigSymbol::cosine(&[1.25, -1.0]), 1);
        let inv = dense_invert(&t).unwrap();
        assert!((inv[(0, 0)].re - 0.952381).abs() < 1e-6);
        assert!((inv[(0, 1)].re - 0.380952).abs() < 1e-6);
    }
}
