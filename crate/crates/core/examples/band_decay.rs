//! Off-diagonal decay of band Toeplitz inverses.

use num_complex::Complex64;
use toeplitz_spectra::decay::{band_decay_report, BandSymbol};
use toeplitz_spectra::TrigSymbol;

fn main() -> toeplitz_spectra::Result<()> {
    let cases = [
        ("1.25 − cos θ", TrigSymbol::cosine(&[1.25, -1.0]), 60),
        (
            "roots {0.5, 0.8}",
            TrigSymbol::from_inside_roots(&[(Complex64::new(0.5, 0.0), 1), (Complex64::new(0.8, 0.0), 1)], 1.0),
            80,
        ),
    ];
    for (name, f, n) in cases {
        let r = band_decay_report(&BandSymbol::new(f)?, n)?;
        println!(
            "{name}: N = {n}, window {:?}, slope {:.4}, log ρ = {:.4}, oracle error {:.1e}, pass {}",
            r.window,
            r.slope.unwrap_or(f64::NAN),
            r.target,
            r.oracle_error.unwrap_or(f64::NAN),
            r.pass
        );
    }
    Ok(())
}
