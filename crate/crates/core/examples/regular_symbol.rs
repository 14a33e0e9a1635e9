//! A regular symbol: cepstral polynomial surrogate, decay of the inverse and the perturbation bound.

use toeplitz_spectra::decay::{approx_regular, corollary_decay_check, perturbation_check, RegularSymbol};

fn main() -> toeplitz_spectra::Result<()> {
    let f = RegularSymbol::new(|t: f64| t.cos().exp(), (1.0 / 1.5, 1.5))?;
    for eps in [1e-3, 1e-6, 1e-10] {
        let p = approx_regular(&f, eps)?;
        println!("ε = {eps:.0e}: degree {}, achieved {:.2e}", p.degree(), p.achieved);
    }

    let r = corollary_decay_check(&f, 60, 1.5)?;
    println!(
        "N = 60: slope {:.4}, C = {:.3e}, pass {}",
        r.slope.unwrap_or(f64::NAN),
        r.constant.unwrap_or(f64::NAN),
        r.pass
    );

    let p = approx_regular(&f, 1e-6)?;
    let pert = perturbation_check(&f, &p, 40)?;
    println!("‖T⁻¹(f) − T⁻¹(|P|²)‖ = {:.2e} ≤ {:.2e} (q = {:.2e})", pert.lhs, pert.rhs, pert.q);
    Ok(())
}
