//! Predictor polynomials: the normalized first column of `T_M(h)^{-1}`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::poly::{self, RootOptions};
use crate::symbol::TrigSymbol;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// `P_M(χ) = Σ_{u≤M} β_{u,M} χ^u` with `β_{u,M} = (T_M^{-1})_{u,0} / √((T_M^{-1})_{0,0})`.
#[derive(Debug, Clone)]
pub struct PredictorPoly {
    pub coeffs: Vec<Complex64>,
    /// Final prediction error variance, `1/(T_M^{-1})_{0,0}`.
    pub error_variance: f64,
    pub reflections: Vec<Complex64>,
    pub source: TrigSymbol,
}

impl PredictorPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, theta: f64) -> Complex64 {
        poly::eval(&self.coeffs, Complex64::from_polar(1.0, theta))
    }

    pub fn roots(&self) -> Result<Vec<Complex64>> {
        poly::aberth_roots(&self.coeffs, &RootOptions::default())
    }

    /// Smallest root modulus (infinite for a constant predictor).
    pub fn min_root_modulus(&self) -> Result<f64> {
        Ok(self.roots()?.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min))
    }
}

/// Levinson–Durbin on `r(0..=m)` with `r(−j) = conj(r(j))`. Returns the monic
/// solution `a` of `T_m a = σ² e_0`, σ² and the reflection coefficients.
pub fn levinson_durbin(r: &[Complex64], m: usize) -> Result<(Vec<Complex64>, f64, Vec<Complex64>)> {
    if r.len() <= m {
        return Err(Error::DimensionMismatch { expected: m + 1, found: r.len() });
    }
    let r0 = r[0].re;
    if r0 <= 0.0 {
        return Err(Error::NotPositiveDefinite { order: 0, reflection: f64::INFINITY });
    }
    let mut a = vec![ONE];
    let mut sigma2 = r0;
    let mut refl = Vec::with_capacity(m);
    for k in 0..m {
        let delta: Complex64 = (0..=k).map(|l| r[k + 1 - l] * a[l]).sum();
        let kappa = -delta / sigma2;
        if kappa.norm() >= 1.0 {
            return Err(Error::NotPositiveDefinite { order: k + 1, reflection: kappa.norm() });
        }
        let mut next = a.clone();
        next.push(ZERO);
        for l in 1..=k + 1 {
            next[l] += kappa * a[k + 1 - l].conj();
        }
        a = next;
        sigma2 *= 1.0 - kappa.norm_sqr();
        refl.push(kappa);
    }
    Ok((a, sigma2, refl))
}

pub fn levinson(h: &TrigSymbol, m: usize) -> Result<PredictorPoly> {
    let (lo, _) = h.grid_range(1024);
    if lo <= 0.0 {
        return Err(Error::NotPositiveDefinite { order: 0, reflection: f64::INFINITY });
    }
    let centred = h.coefficients_up_to(m);
    let r: Vec<Complex64> = centred[m..].to_vec();
    let (a, sigma2, reflections) = levinson_durbin(&r, m)?;
    let s = sigma2.sqrt();
    Ok(PredictorPoly { coeffs: a.iter().map(|c| c / s).collect(), error_variance: sigma2, reflections, source: h.clone() })
}

/// `max_{|s|≤M} |ĥ(s) − F̂(s)|` with `F = 1/|P_M|²`.
pub fn property1_check(h: &TrigSymbol, m: usize) -> Result<f64> {
    let p = levinson(h, m)?;
    let g = (16 * m).max(4096).next_power_of_two();
    let mut buf: Vec<Complex64> = Vec::with_capacity(g);
    let mut min_mod = f64::INFINITY;
    for k in 0..g {
        let v = p.eval(TAU * k as f64 / g as f64).norm();
        min_mod = min_mod.min(v);
        buf.push(Complex64::new(1.0 / (v * v), 0.0));
    }
    if min_mod <= 1e-12 {
        return Err(Error::PredictorRootOnCircle { min_modulus: min_mod });
    }
    FftPlanner::new().plan_fft_forward(g).process(&mut buf);
    let hh = h.coefficients_up_to(m);
    let mut worst = 0.0f64;
    for s in -(m as i64)..=m as i64 {
        let f = buf[s.rem_euclid(g as i64) as usize] / g as f64;
        worst = worst.max((hh[(s + m as i64) as usize] - f).norm());
    }
    Ok(worst)
}

/// The limit of `β_{k,N}`: `conj(b_0)·b_k/|b_0|` for `1/g = Σ b_k χ^k`.
pub fn lemma1_limit(g_inv: &[Complex64], k: usize) -> Complex64 {
    let b0 = g_inv[0];
    b0.conj() * g_inv.get(k).copied().unwrap_or(ZERO) / b0.norm()
}

/// Taylor coefficients `b_0..b_{len-1}` of the analytic b with `|b|² = 1/h`, b_0 > 0,
/// from the cepstrum of h.
pub fn inverse_outer_coeffs(h: &TrigSymbol, len: usize) -> Result<Vec<Complex64>> {
    let g = (8 * len).max(4096).next_power_of_two();
    let mut buf = Vec::with_capacity(g);
    for k in 0..g {
        let v = h.eval(TAU * k as f64 / g as f64);
        if v <= 0.0 {
            return Err(Error::NotPositiveDefinite { order: 0, reflection: f64::INFINITY });
        }
        buf.push(Complex64::new(v.ln(), 0.0));
    }
    FftPlanner::new().plan_fft_forward(g).process(&mut buf);
    let cep: Vec<Complex64> = buf.iter().map(|c| -c / g as f64).collect();
    let mut b = vec![Complex64::new((cep[0].re / 2.0).exp(), 0.0)];
    for n in 1..len {
        let s: Complex64 = (1..=n.min(g / 2 - 1)).map(|k| cep[k] * k as f64 * b[n - k]).sum();
        b.push(s / n as f64);
    }
    Ok(b)
}

#[derive(Debug, Clone)]
pub struct Lemma1Report {
    /// (N, max_{k≤N/2} |β_{k,N} − limit_k|).
    pub rows: Vec<(usize, f64)>,
    /// Least-squares slope of log err against log N; `None` if some error vanishes.
    pub slope: Option<f64>,
    /// err never grows by more than 10% from one N to the next.
    pub monotone: bool,
}

pub fn lemma1_rate(h: &TrigSymbol, g_inv: &[Complex64], ns: &[usize]) -> Result<Lemma1Report> {
    if g_inv.is_empty() || g_inv[0] == ZERO {
        return Err(Error::InvalidInput("the inverse outer factor needs a nonzero constant term".into()));
    }
    let mut rows = Vec::with_capacity(ns.len());
    for &n in ns {
        let p = levinson(h, n)?;
        let err = (0..=n / 2)
            .map(|k| (p.coeffs[k] - lemma1_limit(g_inv, k)).norm())
            .fold(0.0, f64::max);
        log::debug!("lemma 1: N = {n}, err = {err:e}");
        rows.push((n, err));
    }
    let monotone = rows.windows(2).all(|w| w[1].1 <= 1.1 * w[0].1);
    let slope = if rows.len() >= 2 && rows.iter().all(|r| r.1 > 0.0) {
        let x: Vec<f64> = rows.iter().map(|r| (r.0 as f64).ln()).collect();
        let y: Vec<f64> = rows.iter().map(|r| r.1.ln()).collect();
        Some(crate::ls_slope(&x, &y))
    } else {
        None
    };
    Ok(Lemma1Report { rows, slope, monotone })
}

/// `h = 1/|b(e^{iθ})|²` for a finite sequence b, with coefficients up to `degree` computed on
/// a `grid`-point FFT grid.
pub fn symbol_from_inverse_factor(b: &[Complex64], degree: usize, grid: usize) -> Result<TrigSymbol> {
    if grid < 8 * degree || !grid.is_power_of_two() || grid < b.len() {
        return Err(Error::AliasingRisk { grid_size: grid, degree });
    }
    let mut buf = vec![ZERO; grid];
    buf[..b.len()].copy_from_slice(b);
    let mut planner = FftPlanner::new();
    // Σ b_k e^{ikθ_j} is an inverse (unnormalized) DFT.
    planner.plan_fft_inverse(grid).process(&mut buf);
    for v in buf.iter_mut() {
        let m = v.norm_sqr();
        if m <= 1e-300 {
            return Err(Error::InvalidSymbol("the factor vanishes on the circle".into()));
        }
        *v = Complex64::new(1.0 / m, 0.0);
    }
    planner.plan_fft_forward(grid).process(&mut buf);
    let g = grid as f64;
    let at = |j: i64| buf[j.rem_euclid(grid as i64) as usize] / g;
    let coeffs: Vec<Complex64> = (-(degree as i64)..=degree as i64).map(at).collect();
    let bb = b.to_vec();
    TrigSymbol::with_sampler(coeffs, move |t| 1.0 / poly::eval(&bb, Complex64::from_polar(1.0, t)).norm_sqr())
}

/// Constants K, K′ with `|β_u| ≤ K/u^s` and `|γ_u| ≤ K′/|u|^s` on the given ranges.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WienerClassEstimate {
    pub s: f64,
    pub k: f64,
    pub k_prime: f64,
}

impl WienerClassEstimate {
    /// Smallest constants valid for `beta[1..]` and `gamma[1..]` (index u).
    pub fn fit(beta: &[Complex64], gamma: &[Complex64], s: f64) -> Self {
        let bound = |c: &[Complex64]| {
            c.iter().enumerate().skip(1).map(|(u, v)| v.norm() * (u as f64).powf(s)).fold(0.0, f64::max)
        };
        Self { s, k: bound(beta), k_prime: bound(gamma) }
    }

    pub fn holds(&self, beta: &[Complex64], gamma: &[Complex64]) -> bool {
        let ok = |c: &[Complex64], k: f64| {
            c.iter().enumerate().skip(1).all(|(u, v)| v.norm() <= k / (u as f64).powf(self.s) * (1.0 + 1e-12))
        };
        ok(beta, self.k) && ok(gamma, self.k_prime)
    }
}
