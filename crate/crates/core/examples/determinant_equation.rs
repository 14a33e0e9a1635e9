//! Eigenvalues as zeros of the small characteristic determinant built from Hankel products.

use toeplitz_spectra::spectra::{characterize, characteristic_matrix, det_equation_roots, toeplitz_eigen};
use toeplitz_spectra::TrigSymbol;

fn main() -> toeplitz_spectra::Result<()> {
    let f = TrigSymbol::cosine(&[2.1, -2.0, -0.1]);
    let n = 8;

    let chr = characterize(&f, 1.9)?;
    println!("λ = 1.9: {} antecedents on the circle, ω = {:?}", chr.r, chr.omegas);
    println!("characteristic matrix is {}×{}", characteristic_matrix(&chr, n)?.rows(), chr.omegas.len());

    let roots = det_equation_roots(&f, n, (0.05, 3.95), 4000)?;
    let eig = toeplitz_eigen(&f, n)?;
    for (r, e) in roots.roots.iter().zip(&eig.values) {
        println!("root {r:.12}  eigenvalue {e:.12}  diff {:.1e}", (r - e).abs());
    }
    println!("excluded bands: {:?}", roots.excluded);
    Ok(())
}
