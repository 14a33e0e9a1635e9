//! Inverse entries from the Hankel-operator formula against the dense inverse.

use num_complex::Complex64;
use toeplitz_spectra::hankel::{hankel_product_matrix, HankelInverse};
use toeplitz_spectra::symbol::{wiener_hopf_factor, TrigSymbol};
use toeplitz_spectra::toeplitz::{dense_invert, ToeplitzMatrix};

fn main() -> toeplitz_spectra::Result<()> {
    let f = TrigSymbol::from_inside_roots(&[(Complex64::new(0.6, 0.3), 2), (Complex64::new(-0.4, 0.0), 1)], 1.0);
    let g = wiener_hopf_factor(&f)?;
    for n in [4, 8, 16, 24] {
        println!("N = {n:2}: ‖H̃H‖ = {:.3e}", hankel_product_matrix(&g, n)?.norm.unwrap_or(f64::NAN));
    }

    let n = 30;
    let inv = HankelInverse::new(&g, n)?;
    let dense = dense_invert(&ToeplitzMatrix::build(&f, n))?;
    println!("entry (5, 20): {:.12} (dense {:.12})", inv.entry(5, 20), dense[(5, 20)]);
    println!("max deviation over the matrix: {:.2e}", inv.full()?.sub(&dense)?.max_abs());

    let mut q = vec![Complex64::new(0.0, 0.0); n + 1];
    q[3] = Complex64::new(1.0, 0.0);
    let col = inv.apply(&q)?;
    println!("T⁻¹χ³ first entries: {:.6?}", &col[..4]);
    Ok(())
}
