//! Wiener–Hopf split of a rational symbol and its partial fractions.

use num_complex::Complex64;
use toeplitz_spectra::symbol::{eval_fractions, wiener_hopf_factor, TrigSymbol};

fn main() -> toeplitz_spectra::Result<()> {
    let roots = [(Complex64::new(0.5, 0.2), 2), (Complex64::new(-0.3, 0.0), 1)];
    let f = TrigSymbol::from_inside_roots(&roots, 1.7);
    let g = wiener_hopf_factor(&f)?;

    println!("C = {}, n0 = {}, rho = {:.4}", g.scale(), g.n0(), g.rho());
    for r in &g.root_set().expect("polynomial symbol").roots {
        println!("  {:?} root {:.6} (multiplicity {})", r.location, r.value, r.multiplicity);
    }
    println!("reconstruction error {:.2e}", g.reconstruction_error(&f, 1024));

    let chi = Complex64::from_polar(1.0, 0.7);
    let direct = Complex64::new(1.0, 0.0) / g.eval_g1(0.7);
    println!("1/g1 at θ = 0.7: {direct:.12} vs partial fractions {:.12}", eval_fractions(g.pf_g1_inv(), chi) * g.unit().conj());
    Ok(())
}
