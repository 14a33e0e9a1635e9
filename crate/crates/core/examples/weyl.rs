//! Weyl equidistribution gap between the spectrum and the grid samples of f.

use toeplitz_spectra::spectra::{weyl_gaps, TestFn};
use toeplitz_spectra::TrigSymbol;

fn main() -> toeplitz_spectra::Result<()> {
    let f = TrigSymbol::cosine(&[1.25, -1.0]);
    let fns = TestFn::library();
    for n in [16, 64, 256] {
        let gaps = weyl_gaps(&f, n, &fns)?;
        let row: Vec<String> = fns.iter().zip(&gaps).map(|(h, g)| format!("{h:?} {g:.2e}")).collect();
        println!("N = {n:3}: {}", row.join(", "));
    }
    Ok(())
}
