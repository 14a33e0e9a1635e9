//! Predictor polynomials: Levinson recursion, the moment identity and the convergence rate.

use num_complex::Complex64;
use toeplitz_spectra::predictor::{levinson, lemma1_rate, property1_check, symbol_from_inverse_factor};
use toeplitz_spectra::TrigSymbol;

fn main() -> toeplitz_spectra::Result<()> {
    let h = TrigSymbol::cosine(&[1.25, -1.0]);
    let p = levinson(&h, 6)?;
    println!("β = {:.6?}", p.coeffs.iter().map(|c| c.re).collect::<Vec<_>>());
    println!("smallest root modulus {:.4}", p.min_root_modulus()?);
    println!("moment residual at M = 12: {:.2e}", property1_check(&h, 12)?);

    // 1/|b|² with b_u = (1+u)^{-4}: a symbol with algebraically decaying coefficients.
    let b: Vec<Complex64> = (0..4096).map(|u| Complex64::new((1.0 + u as f64).powi(-4), 0.0)).collect();
    let slow = symbol_from_inverse_factor(&b, 256, 8192)?;
    let rep = lemma1_rate(&slow, &b, &[32, 64, 128, 256])?;
    for (n, err) in &rep.rows {
        println!("N = {n:3}: err = {err:.3e}");
    }
    println!("fitted slope {:.3}", rep.slope.unwrap_or(f64::NAN));
    Ok(())
}
