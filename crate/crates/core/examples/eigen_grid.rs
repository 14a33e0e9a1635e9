//! Eigenvalues of T_N(f) written as f(kπ/(N+2) + θπ/N) for a non-monotone even symbol.

use toeplitz_spectra::spectra::{grid_localize, min_eigen_sweep, toeplitz_eigen};
use toeplitz_spectra::TrigSymbol;

fn main() -> toeplitz_spectra::Result<()> {
    let f = TrigSymbol::cosine(&[1.0, 0.3, -0.4, 0.2]);
    for n in [32, 64, 128] {
        let eig = toeplitz_eigen(&f, n)?;
        let locs = grid_localize(&f, n, &eig)?;
        let worst = locs.iter().map(|l| l.theta_shift.abs()).fold(0.0, f64::max);
        let branches = locs.iter().map(|l| l.branch).max().unwrap_or(0) + 1;
        println!("N = {n:3}: {} eigenvalues over {branches} monotone branches, max |θ| = {worst:.3}", locs.len());
    }
    let sweep = min_eigen_sweep(&f, &[32, 64, 128, 256])?;
    for r in &sweep.reports {
        println!("N = {:3}: λ_min = {:.8}, k = {}, |kπ/(N+2) − θ₀| = {:.4}", r.n, r.lambda_min, r.location.k, r.grid_distance());
    }
    println!("min f = {:.8}, converging: {}", sweep.reports[0].f_theta0, sweep.converging);
    Ok(())
}
