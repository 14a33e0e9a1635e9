//! Toeplitz matrices with rational and trigonometric-polynomial symbols.
//!
//! The crate inverts `T_N(f)` through Hankel operators built from a Wiener–Hopf
//! factorization of the symbol, localizes eigenvalues on the grid `kπ/(N+2)`,
//! studies predictor polynomials and measures how fast band inverses decay.
//! Every structured result can be compared against the dense oracle in
//! [`linalg`] and [`spectra::hermitian_eigen`].
//!
//! ```
//! use toeplitz_spectra::{symbol::TrigSymbol, hankel::HankelInverse, symbol::wiener_hopf_factor};
//!
//! let f = TrigSymbol::cosine(&[1.25, -1.0]);
//! let factor = wiener_hopf_factor(&f).unwrap();
//! let inv = HankelInverse::new(&factor, 1).unwrap();
//! assert!((inv.entry(0, 0).re - 1.25 / 1.3125).abs() < 1e-12);
//! ```

pub mod cli;
pub mod decay;
pub mod error;
pub mod hankel;
pub mod linalg;
pub mod poly;
pub mod predictor;
pub mod series;
pub mod spectra;
pub mod symbol;
pub mod toeplitz;

pub use error::{Error, Result};
pub use linalg::DenseMatrix;
pub use num_complex::Complex64;
pub use symbol::{wiener_hopf_factor, SpectralFactorization, TrigSymbol};
pub use toeplitz::ToeplitzMatrix;

/// Formats a complex number as `re+imi` with 17 significant digits.
pub fn fmt_complex(z: Complex64) -> String {
    format!("{:.16e}{:+.16e}i", z.re, z.im)
}

/// Formats a real number with 17 significant digits.
pub fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

/// Least-squares slope of `y` against `x`.
pub fn ls_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}
