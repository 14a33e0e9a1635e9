//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use toeplitz_spectra::decay::{
    approx_regular, band_decay_report, corollary_decay_check, perturbation_check, BandSymbol, RegularSymbol,
};
use toeplitz_spectra::hankel::{hankel_product_matrix, HankelInverse};
use toeplitz_spectra::predictor::{lemma1_rate, property1_check, symbol_from_inverse_factor};
use toeplitz_spectra::spectra::{
    det_equation_roots, grid_localize, hermitian_eigen, min_eigen_sweep, toeplitz_eigen, unique_minimizer, weyl_gap,
    TestFn,
};
use toeplitz_spectra::symbol::{wiener_hopf_factor, TrigSymbol};
use toeplitz_spectra::toeplitz::{dense_invert, ToeplitzMatrix};
use toeplitz_spectra::{ls_slope, Result};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn exact_spectrum() -> Result<Outcome> {
    let n = 50;
    let start = Instant::now();
    let eig = toeplitz_eigen(&TrigSymbol::cosine(&[2.0, -2.0]), n)?;
    let elapsed = start.elapsed();
    let err = eig
        .values
        .iter()
        .enumerate()
        .map(|(j, v)| (v - (2.0 - 2.0 * ((j + 1) as f64 * PI / (n + 2) as f64).cos())).abs())
        .fold(0.0, f64::max);
    Ok(outcome(
        err <= 1e-10 && elapsed < Duration::from_secs(1),
        format!("max error {err:.2e} at N = 50 in {elapsed:.2?}"),
    ))
}

fn random_even_symbol(rng: &mut ChaCha8Rng) -> Option<TrigSymbol> {
    let d = rng.gen_range(1..=3);
    let mut c = vec![0.0f64];
    c.extend((0..d).map(|_| rng.gen_range(-1.0..1.0)));
    if c[d].abs() < 0.05 {
        return None;
    }
    let f = TrigSymbol::cosine(&c);
    unique_minimizer(&f).ok().map(|_| f)
}

fn grid_form() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let ns = [32usize, 64, 128];
    let start = Instant::now();
    let mut symbols = 0;
    let mut localized = 0usize;
    let mut total = 0usize;
    let mut converging = 0;
    while symbols < 10 {
        let Some(f) = random_even_symbol(&mut rng) else { continue };
        symbols += 1;
        for &n in &ns {
            let eig = toeplitz_eigen(&f, n)?;
            let locs = grid_localize(&f, n, &eig)?;
            total += locs.len();
            localized += locs.iter().filter(|l| l.theta_shift.abs() < 1.0 && !l.shared).count();
        }
        if min_eigen_sweep(&f, &ns)?.converging {
            converging += 1;
        }
    }
    let elapsed = start.elapsed();
    Ok(outcome(
        localized == total && converging == symbols && elapsed < Duration::from_secs(30),
        format!("{localized}/{total} eigenvalues on distinct grid slots with |θ| < 1, {converging}/{symbols} minimum sweeps converge, {elapsed:.2?}"),
    ))
}

fn determinant_equation() -> Result<Outcome> {
    let cases = [
        (TrigSymbol::cosine(&[2.0, -2.0]), 3usize, (0.05, 3.95)),
        (TrigSymbol::cosine(&[2.0, -2.0]), 8, (0.05, 3.95)),
        (TrigSymbol::cosine(&[2.1, -2.0, -0.1]), 8, (0.05, 3.95)),
    ];
    let mut pass = true;
    let mut worst = 0.0f64;
    let mut notes = Vec::new();
    for (f, n, window) in cases {
        let eig = hermitian_eigen(&ToeplitzMatrix::build(&f, n).to_dense(), false)?;
        let roots = det_equation_roots(&f, n, window, 4000)?;
        let inside: Vec<f64> = eig.values.iter().copied().filter(|v| *v > window.0 && *v < window.1).collect();
        if inside.len() != roots.roots.len() {
            pass = false;
            notes.push(format!("N = {n}: {} eigenvalues vs {} roots", inside.len(), roots.roots.len()));
            continue;
        }
        for (a, b) in inside.iter().zip(&roots.roots) {
            worst = worst.max((a - b).abs());
        }
    }
    pass &= worst <= 1e-5;
    notes.insert(0, format!("max |λ − root| = {worst:.2e} over 3 cases"));
    Ok(outcome(pass, notes.join("; ")))
}

fn random_rational(rng: &mut ChaCha8Rng) -> Vec<(Complex64, usize)> {
    loop {
        let n0 = rng.gen_range(1..=3);
        let mut roots: Vec<(Complex64, usize)> = Vec::new();
        let mut left = n0;
        while left > 0 {
            let m = if left >= 2 && rng.gen_bool(0.3) { 2 } else { 1 };
            let z = Complex64::from_polar(rng.gen_range(0.2..0.85), rng.gen_range(0.0..2.0 * PI));
            roots.push((z, m));
            left -= m;
        }
        if roots.iter().enumerate().all(|(i, a)| roots[i + 1..].iter().all(|b| (a.0 - b.0).norm() > 0.05)) {
            return roots;
        }
    }
}

fn hankel_formula() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst = 0.0f64;
    let mut norm_ok = true;
    for _ in 0..20 {
        let roots = random_rational(&mut rng);
        let f = TrigSymbol::from_inside_roots(&roots, rng.gen_range(0.5..2.0));
        let g = wiener_hopf_factor(&f)?;
        for n in 8..=40 {
            norm_ok &= hankel_product_matrix(&g, n)?.norm.is_some_and(|x| x < 1.0);
        }
        let n = rng.gen_range(8..=40);
        let inv = HankelInverse::new(&g, n)?.full()?;
        let dense = dense_invert(&ToeplitzMatrix::build(&f, n))?;
        worst = worst.max(inv.sub(&dense)?.max_abs());
    }
    Ok(outcome(
        worst <= 1e-8 && norm_ok,
        format!("max entry discrepancy {worst:.2e} over 20 symbols; norm < 1 for all N in 8..=40: {norm_ok}"),
    ))
}

fn band_decay() -> Result<Outcome> {
    let one = band_decay_report(&BandSymbol::new(TrigSymbol::cosine(&[1.25, -1.0]))?, 60)?;
    let two_roots = TrigSymbol::from_inside_roots(&[(Complex64::new(0.5, 0.0), 1), (Complex64::new(0.8, 0.0), 1)], 1.0);
    let two = band_decay_report(&BandSymbol::new(two_roots)?, 80)?;
    let s1 = one.slope.unwrap_or(f64::NAN);
    let s2 = two.slope.unwrap_or(f64::NAN);
    let pass = (s1 - 0.5f64.ln()).abs() <= 0.05 && (s2 - 0.8f64.ln()).abs() <= 0.05;
    Ok(outcome(
        pass,
        format!("slope {s1:.4} vs log 0.5 = {:.4}; slope {s2:.4} vs log 0.8 = {:.4}", 0.5f64.ln(), 0.8f64.ln()),
    ))
}

fn norm_decay() -> Result<Outcome> {
    let symbols = [
        (TrigSymbol::cosine(&[1.25, -1.0]), 0.5),
        (TrigSymbol::from_inside_roots(&[(Complex64::new(0.5, 0.0), 1), (Complex64::new(0.8, 0.0), 1)], 1.0), 0.8),
    ];
    let mut pass = true;
    let mut notes = Vec::new();
    for (f, rho) in symbols {
        let g = wiener_hopf_factor(&f)?;
        let mut x = Vec::new();
        let mut y = Vec::new();
        for n in 8..=24 {
            x.push(n as f64);
            y.push(hankel_product_matrix(&g, n)?.norm.unwrap_or(f64::NAN).ln());
        }
        let slope = ls_slope(&x, &y);
        let target = 2.0 * f64::ln(rho);
        pass &= (slope - target).abs() <= 0.1 * target.abs();
        notes.push(format!("ρ = {rho}: slope {slope:.4} vs {target:.4}"));
    }
    Ok(outcome(pass, notes.join("; ")))
}

fn property1() -> Result<Outcome> {
    let ar1 = symbol_from_inverse_factor(&[Complex64::new(1.0, 0.0), Complex64::new(-0.5, 0.0)], 64, 4096)?;
    let residuals = [
        property1_check(&TrigSymbol::constant(1.0), 12)?,
        property1_check(&TrigSymbol::cosine(&[1.25, -1.0]), 12)?,
        property1_check(&ar1, 12)?,
    ];
    let worst = residuals.iter().copied().fold(0.0, f64::max);
    Ok(outcome(worst <= 1e-8, format!("residuals {:.2e}, {:.2e}, {:.2e} at M = 12", residuals[0], residuals[1], residuals[2])))
}

fn lemma1() -> Result<Outcome> {
    let b: Vec<Complex64> = (0..4096).map(|u| Complex64::new((1.0 + u as f64).powi(-4), 0.0)).collect();
    let h = symbol_from_inverse_factor(&b, 256, 8192)?;
    let ns = [32usize, 64, 128, 256];
    let slow = lemma1_rate(&h, &b, &ns)?;
    let non_increasing = slow.rows.windows(2).all(|w| w[1].1 <= w[0].1);
    let slope = slow.slope.unwrap_or(f64::NAN);

    let r = [Complex64::new(1.0, 0.0), Complex64::new(-0.5, 0.0)];
    let ar1 = symbol_from_inverse_factor(&r, 64, 4096)?;
    let fast = lemma1_rate(&ar1, &r, &[16])?;
    let err16 = fast.rows[0].1;
    Ok(outcome(
        non_increasing && slope <= -2.4 && err16 <= 1e-10,
        format!("err(N) non-increasing: {non_increasing}, slope {slope:.3}; rational err(16) = {err16:.2e}"),
    ))
}

fn corollary() -> Result<Outcome> {
    let f = RegularSymbol::new(|t: f64| t.cos().exp(), (1.0 / 1.5, 1.5))?;
    let rep = corollary_decay_check(&f, 60, 1.5)?;
    let slope = rep.slope.unwrap_or(f64::NAN);
    let c = rep.constant.unwrap_or(f64::INFINITY);
    let p = approx_regular(&f, 1e-6)?;
    let pert = perturbation_check(&f, &p, 40)?;
    Ok(outcome(
        rep.pass && c.is_finite() && slope <= -(1.5f64.ln()) + 0.1 && pert.holds,
        format!(
            "slope {slope:.4} vs bound {:.4}, C = {c:.3e}; perturbation {:.2e} ≤ {:.2e} (q = {:.2e})",
            -(1.5f64.ln()) + 0.1,
            pert.lhs,
            pert.rhs,
            pert.q
        ),
    ))
}

fn weyl() -> Result<Outcome> {
    let f = TrigSymbol::cosine(&[1.25, -1.0]);
    let id = [TestFn::Power(1)];
    let g64 = weyl_gap(&f, 64, &id)?;
    let g256 = weyl_gap(&f, 256, &id)?;
    Ok(outcome(g256 < g64 && g256 <= 0.05, format!("gap(64) = {g64:.3e}, gap(256) = {g256:.3e}")))
}

fn main() {
    let criteria: [(&str, fn() -> Result<Outcome>); 10] = [
        ("exact spectrum of 2 − 2cos θ", exact_spectrum),
        ("grid localization of random even symbols", grid_form),
        ("determinant equation vs dense eigenvalues", determinant_equation),
        ("Hankel inversion formula vs dense inverse", hankel_formula),
        ("band inverse decay slope", band_decay),
        ("Hankel product norm decay", norm_decay),
        ("predictor moment identity", property1),
        ("predictor convergence rate", lemma1),
        ("regular symbol decay and perturbation bound", corollary),
        ("Weyl gap", weyl),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let (pass, detail) = match check() {
            Ok(o) => (o.pass, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !pass {
            failed += 1;
        }
        println!("criterion {:>2} {}: {name}: {detail}", i + 1, if pass { "PASS" } else { "FAIL" });
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
