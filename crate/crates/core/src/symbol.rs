//! Symbols, their Fourier coefficients, Laurent roots and the Wiener–Hopf split.

use std::f64::consts::TAU;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::poly::{self, ClusteredRoot, RootOptions};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Evaluation map θ ↦ f(θ) for symbols that are not trigonometric polynomials.
pub type Sampler = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A real symbol given by Fourier coefficients `â(-d..=d)`, optionally backed by a sampler.
#[derive(Clone)]
pub struct TrigSymbol {
    coeffs: Vec<Complex64>,
    degree: usize,
    even: bool,
    sampler: Option<Sampler>,
}

impl fmt::Debug for TrigSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TrigSymbol")
            .field("degree", &self.degree)
            .field("even", &self.even)
            .field("sampled", &self.sampler.is_some())
            .field("coeffs", &self.coeffs)
            .finish()
    }
}

impl TrigSymbol {
    /// Coefficients starting at frequency `offset`: `coeffs[i]` is `â(offset + i)`.
    pub fn from_coeffs(coeffs: &[Complex64], offset: i64) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidSymbol("empty coefficient list".into()));
        }
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidSymbol("non-finite coefficient".into()));
        }
        let last = offset + coeffs.len() as i64 - 1;
        let d = offset.unsigned_abs().max(last.unsigned_abs()) as usize;
        let mut full = vec![ZERO; 2 * d + 1];
        for (i, &c) in coeffs.iter().enumerate() {
            full[(offset + i as i64 + d as i64) as usize] = c;
        }
        Self::from_centered(full, None)
    }

    /// Σ c_j cos(jθ).
    pub fn cosine(c: &[f64]) -> Self {
        let d = c.len().saturating_sub(1);
        let mut full = vec![ZERO; 2 * d + 1];
        for (j, &v) in c.iter().enumerate() {
            if j == 0 {
                full[d] = Complex64::new(v, 0.0);
            } else {
                full[d + j] = Complex64::new(v / 2.0, 0.0);
                full[d - j] = Complex64::new(v / 2.0, 0.0);
            }
        }
        Self::from_centered(full, None).expect("cosine coefficients are Hermitian")
    }

    pub fn constant(c: f64) -> Self {
        Self::cosine(&[c])
    }

    /// Sampled symbol with coefficients up to `degree` from a `grid_size`-point quadrature.
    pub fn from_fn(
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        degree: usize,
        grid_size: usize,
    ) -> Result<Self> {
        let coeffs = fourier_coeffs(&f, degree, grid_size)?;
        let sampler: Sampler = Arc::new(f);
        let mut s = Self::from_centered(coeffs, Some(sampler))?;
        s.degree = degree;
        Ok(s)
    }

    /// `scale · Π |1 − α_i e^{-iθ}|^{2 s_i}`; its Laurent roots inside the disk are the α_i.
    pub fn from_inside_roots(roots: &[(Complex64, usize)], scale: f64) -> Self {
        let p: Vec<Complex64> = poly::from_factors(roots).into_iter().map(|c| c.conj()).collect();
        Self::modulus_squared(&p).scale(scale)
    }

    /// `|P(e^{iθ})|²` for `P = Σ p_k χ^k`.
    pub fn modulus_squared(p: &[Complex64]) -> Self {
        let d = p.len().saturating_sub(1);
        let mut full = vec![ZERO; 2 * d + 1];
        for j in -(d as i64)..=d as i64 {
            let mut s = ZERO;
            for k in 0..p.len() as i64 {
                let l = k + j;
                if l >= 0 && (l as usize) < p.len() {
                    s += p[l as usize] * p[k as usize].conj();
                }
            }
            full[(j + d as i64) as usize] = s;
        }
        Self::from_centered(full, None).expect("modulus squared is Hermitian")
    }

    /// Coefficients `â(-d..=d)` together with an exact sampler; the degree is kept as given.
    pub fn with_sampler(
        coeffs: Vec<Complex64>,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        if coeffs.len() % 2 == 0 {
            return Err(Error::InvalidSymbol("coefficient sequence must have odd length".into()));
        }
        let d = coeffs.len() / 2;
        let mut s = Self::from_centered(coeffs, Some(Arc::new(f)))?;
        s.degree = d;
        Ok(s)
    }

    fn from_centered(mut full: Vec<Complex64>, sampler: Option<Sampler>) -> Result<Self> {
        let d = (full.len() - 1) / 2;
        let scale = full.iter().map(|c| c.norm()).fold(0.0, f64::max);
        for j in 1..=d {
            let (p, m) = (full[d + j], full[d - j]);
            if (m - p.conj()).norm() > 1e-12 * (1.0 + scale) {
                return Err(Error::InvalidSymbol(format!(
                    "coefficients at ±{j} are not conjugate, the symbol is not real"
                )));
            }
            let avg = 0.5 * (p + m.conj());
            full[d + j] = avg;
            full[d - j] = avg.conj();
        }
        if full[d].im.abs() > 1e-12 * (1.0 + scale) {
            return Err(Error::InvalidSymbol("mean coefficient must be real".into()));
        }
        full[d].im = 0.0;
        let mut deg = d;
        if sampler.is_none() {
            while deg > 0 && full[d + deg] == ZERO {
                deg -= 1;
            }
        }
        let coeffs = full[d - deg..=d + deg].to_vec();
        let even = coeffs.iter().all(|c| c.im.abs() <= 1e-14 * (1.0 + scale));
        Ok(Self { coeffs, degree: deg, even, sampler })
    }

    /// Parses `{"coeffs": [[re,im],...], "offset": -d}` or `{"cosine": [c0, c1, ...]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text)
            .map_err(|e| Error::InvalidSymbol(format!("malformed JSON: {e}")))?;
        let obj = v
            .as_object()
            .ok_or_else(|| Error::InvalidSymbol("symbol literal must be a JSON object".into()))?;
        if let Some(c) = obj.get("cosine") {
            let arr = c
                .as_array()
                .ok_or_else(|| Error::InvalidSymbol("\"cosine\" must be an array".into()))?;
            let vals = arr
                .iter()
                .map(|x| x.as_f64().ok_or_else(|| Error::InvalidSymbol("cosine entries must be numbers".into())))
                .collect::<Result<Vec<f64>>>()?;
            if vals.is_empty() {
                return Err(Error::InvalidSymbol("\"cosine\" is empty".into()));
            }
            return Ok(Self::cosine(&vals));
        }
        if let Some(c) = obj.get("coeffs") {
            let arr = c
                .as_array()
                .ok_or_else(|| Error::InvalidSymbol("\"coeffs\" must be an array".into()))?;
            let vals = arr
                .iter()
                .map(|pair| {
                    let p = pair.as_array().filter(|p| p.len() == 2).ok_or_else(|| {
                        Error::InvalidSymbol("each coefficient must be a [re, im] pair".into())
                    })?;
                    match (p[0].as_f64(), p[1].as_f64()) {
                        (Some(re), Some(im)) => Ok(Complex64::new(re, im)),
                        _ => Err(Error::InvalidSymbol("coefficient parts must be numbers".into())),
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            let offset = match obj.get("offset") {
                Some(o) => o
                    .as_i64()
                    .ok_or_else(|| Error::InvalidSymbol("\"offset\" must be an integer".into()))?,
                None => -((vals.len() as i64 - 1) / 2),
            };
            return Self::from_coeffs(&vals, offset);
        }
        Err(Error::InvalidSymbol("expected a \"coeffs\" or \"cosine\" key".into()))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_even(&self) -> bool {
        self.even
    }

    pub fn is_sampled(&self) -> bool {
        self.sampler.is_some()
    }

    pub fn is_constant(&self) -> bool {
        self.degree == 0 && self.sampler.is_none()
    }

    /// `â(j)`, zero beyond the stored degree.
    pub fn coeff(&self, j: i64) -> Complex64 {
        let d = self.degree as i64;
        if j.abs() > d {
            ZERO
        } else {
            self.coeffs[(j + d) as usize]
        }
    }

    /// Stored coefficients `â(-d..=d)`.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// `â(-n..=n)`; sampled symbols fall back to quadrature beyond the stored degree.
    pub fn coefficients_up_to(&self, n: usize) -> Vec<Complex64> {
        if n > self.degree {
            if let Some(s) = &self.sampler {
                let grid = (8 * n).max(1024).next_power_of_two();
                return fourier_coeffs(&|t| s(t), n, grid).expect("grid sized for degree");
            }
        }
        (-(n as i64)..=n as i64).map(|j| self.coeff(j)).collect()
    }

    /// Cosine coefficients `c_j` with `f = Σ c_j cos(jθ)`, for even symbols.
    pub fn cosine_coeffs(&self) -> Option<Vec<f64>> {
        if !self.even {
            return None;
        }
        Some(
            (0..=self.degree)
                .map(|j| if j == 0 { self.coeff(0).re } else { 2.0 * self.coeff(j as i64).re })
                .collect(),
        )
    }

    /// Value at θ: the sampler when present, otherwise the trigonometric sum.
    pub fn eval(&self, theta: f64) -> f64 {
        match &self.sampler {
            Some(s) => s(theta),
            None => self.eval_trig(theta),
        }
    }

    /// Σ â(j) e^{ijθ} over the stored coefficients.
    pub fn eval_trig(&self, theta: f64) -> f64 {
        let mut s = self.coeff(0).re;
        for j in 1..=self.degree {
            let a = self.coeff(j as i64);
            let e = Complex64::from_polar(1.0, j as f64 * theta);
            s += 2.0 * (a * e).re;
        }
        s
    }

    /// Derivative of the trigonometric sum.
    pub fn eval_trig_derivative(&self, theta: f64) -> f64 {
        let mut s = 0.0;
        for j in 1..=self.degree {
            let a = self.coeff(j as i64);
            let e = Complex64::from_polar(1.0, j as f64 * theta);
            s += 2.0 * (a * e * Complex64::new(0.0, j as f64)).re;
        }
        s
    }

    /// (min, max) over an `n`-point uniform grid.
    pub fn grid_range(&self, n: usize) -> (f64, f64) {
        (0..n).map(|k| self.eval(TAU * k as f64 / n as f64)).fold(
            (f64::INFINITY, f64::NEG_INFINITY),
            |(lo, hi), v| (lo.min(v), hi.max(v)),
        )
    }

    pub fn sup_norm(&self, n: usize) -> f64 {
        let (lo, hi) = self.grid_range(n);
        lo.abs().max(hi.abs())
    }

    /// `K(z) = z^d Σ â(n) z^n`.
    pub fn laurent_poly(&self) -> LaurentPoly {
        LaurentPoly { coeffs: self.coeffs.clone(), n0: self.degree }
    }

    /// Coefficientwise sum of the trigonometric parts; samplers are dropped.
    pub fn add(&self, other: &Self) -> Self {
        let d = self.degree.max(other.degree);
        let full = (-(d as i64)..=d as i64).map(|j| self.coeff(j) + other.coeff(j)).collect();
        Self::from_centered(full, None).expect("sum of real symbols is real")
    }

    pub fn scale(&self, s: f64) -> Self {
        let full = self.coeffs.iter().map(|c| c * s).collect();
        let sampler = self.sampler.clone().map(|f| Arc::new(move |t: f64| s * f(t)) as Sampler);
        let mut out = Self::from_centered(full, sampler).expect("scaled real symbol is real");
        out.degree = self.degree;
        out
    }

    /// `f − λ`.
    pub fn shift(&self, lambda: f64) -> Self {
        let mut full = self.coeffs.clone();
        full[self.degree] -= lambda;
        let sampler = self.sampler.clone().map(|f| Arc::new(move |t: f64| f(t) - lambda) as Sampler);
        let mut out = Self::from_centered(full, sampler).expect("shift keeps symbol real");
        if out.sampler.is_some() {
            out.degree = self.degree;
        }
        out
    }
}

/// `â(j) = (1/G) Σ_k f(θ_k) e^{-ijθ_k}` for `|j| ≤ d`, returned in order `-d..=d`.
pub fn fourier_coeffs(f: &dyn Fn(f64) -> f64, d: usize, grid_size: usize) -> Result<Vec<Complex64>> {
    if grid_size < 8 * d || grid_size == 0 {
        return Err(Error::AliasingRisk { grid_size, degree: d });
    }
    if !grid_size.is_power_of_two() {
        return Err(Error::InvalidInput(format!("grid size {grid_size} is not a power of two")));
    }
    let mut buf: Vec<Complex64> = (0..grid_size)
        .map(|k| {
            let v = f(TAU * k as f64 / grid_size as f64);
            Complex64::new(v, 0.0)
        })
        .collect();
    if buf.iter().any(|v| !v.re.is_finite()) {
        return Err(Error::InvalidSymbol("symbol is not finite on the grid".into()));
    }
    FftPlanner::new().plan_fft_forward(grid_size).process(&mut buf);
    let g = grid_size as f64;
    let at = |j: i64| buf[j.rem_euclid(grid_size as i64) as usize] / g;
    let mut out = vec![ZERO; 2 * d + 1];
    for j in 0..=d as i64 {
        let p = 0.5 * (at(j) + at(-j).conj());
        out[(d as i64 + j) as usize] = p;
        out[(d as i64 - j) as usize] = p.conj();
    }
    out[d].im = 0.0;
    Ok(out)
}

/// `K(z) = Σ_{n=-n0}^{n0} a_n z^{n+n0}`, stored with ascending powers of z.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentPoly {
    pub coeffs: Vec<Complex64>,
    pub n0: usize,
}

impl LaurentPoly {
    /// Leading coefficient `a_{n0}`.
    pub fn leading(&self) -> Complex64 {
        self.coeffs[2 * self.n0]
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        poly::eval(&self.coeffs, z)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootLocation {
    Inside,
    Outside,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub value: Complex64,
    pub multiplicity: usize,
    pub location: RootLocation,
}

/// Roots of a Laurent polynomial, split by the unit circle.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSet {
    pub roots: Vec<Root>,
}

impl RootSet {
    pub fn inside(&self) -> impl Iterator<Item = &Root> {
        self.roots.iter().filter(|r| r.location == RootLocation::Inside)
    }

    pub fn outside(&self) -> impl Iterator<Item = &Root> {
        self.roots.iter().filter(|r| r.location == RootLocation::Outside)
    }

    pub fn inside_count(&self) -> usize {
        self.inside().map(|r| r.multiplicity).sum()
    }

    pub fn outside_count(&self) -> usize {
        self.outside().map(|r| r.multiplicity).sum()
    }

    pub fn is_balanced(&self) -> bool {
        self.inside_count() == self.outside_count()
    }

    /// Largest modulus among inside roots (0 when there are none).
    pub fn rho(&self) -> f64 {
        self.inside().map(|r| r.value.norm()).fold(0.0, f64::max)
    }
}

/// Tolerances and seed for root finding.
#[derive(Debug, Clone, Copy)]
pub struct FactorOptions {
    pub unit_circle_tol: f64,
    pub cluster_tol: f64,
    pub root_tol: f64,
    pub seed: u64,
}

impl Default for FactorOptions {
    fn default() -> Self {
        Self { unit_circle_tol: 1e-8, cluster_tol: 1e-6, root_tol: 1e-8, seed: 0 }
    }
}

/// Roots of `K`, clustered and classified.
pub fn laurent_roots(k: &LaurentPoly, opts: &FactorOptions) -> Result<RootSet> {
    let p = poly::trim(&k.coeffs, 0.0);
    if p.len() < 2 {
        return Err(Error::InvalidInput("Laurent polynomial has degree 0".into()));
    }
    let raw = poly::aberth_roots(&p, &RootOptions { seed: opts.seed, ..Default::default() })?;
    let clustered: Vec<ClusteredRoot> = poly::cluster_roots(&p, &raw, opts.cluster_tol);
    let abs: Vec<f64> = p.iter().map(|c| c.norm()).collect();
    let mut roots = Vec::with_capacity(clustered.len());
    for c in clustered {
        let r = c.value.norm();
        let size: f64 = abs.iter().rev().fold(0.0, |acc, &a| acc * r + a);
        let residual = poly::eval(&p, c.value).norm() / size;
        if residual > opts.root_tol {
            return Err(Error::RootFindFailure { iterations: 0, residual });
        }
        if (r - 1.0).abs() < opts.unit_circle_tol {
            return Err(Error::UnitModulusRoot { root: c.value, tol: opts.unit_circle_tol });
        }
        let location = if r < 1.0 { RootLocation::Inside } else { RootLocation::Outside };
        roots.push(Root { value: c.value, multiplicity: c.multiplicity, location });
    }
    Ok(RootSet { roots })
}

/// A pole ω of order m, meaning a factor `(1 − ωx)^m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pole {
    pub value: Complex64,
    pub order: usize,
}

/// `coeff / (1 − pole·x)^order`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FracTerm {
    pub pole: Complex64,
    pub order: usize,
    pub coeff: Complex64,
}

/// Coefficients of `1/Π(1 − ω_j x)^{m_j} = Σ_j Σ_{h ≤ m_j} c_{j,h}/(1 − ω_j x)^h`.
pub fn partial_fractions(poles: &[Pole]) -> Result<Vec<FracTerm>> {
    let mut out = Vec::new();
    for (j, pj) in poles.iter().enumerate() {
        if pj.order == 0 {
            continue;
        }
        if pj.value == ZERO {
            return Err(Error::DegeneratePoles { pole: pj.value });
        }
        let m = pj.order;
        // With y = 1 − ω_j x the other factors become (a + b y), a = 1 − ω_i/ω_j, b = ω_i/ω_j.
        let mut series = vec![ZERO; m];
        series[0] = ONE;
        for (i, pi) in poles.iter().enumerate() {
            if i == j || pi.order == 0 {
                continue;
            }
            let b = pi.value / pj.value;
            let a = ONE - b;
            if a.norm() < 1e-12 {
                return Err(Error::DegeneratePoles { pole: pj.value });
            }
            let mi = pi.order;
            let ratio = -b / a;
            let mut fac = vec![ZERO; m];
            let mut term = a.powi(-(mi as i32));
            for (n, f) in fac.iter_mut().enumerate() {
                *f = term;
                term *= ratio * ((n + mi) as f64 / (n + 1) as f64);
            }
            series = poly::mul(&series, &fac);
            series.truncate(m);
        }
        for h in 1..=m {
            out.push(FracTerm { pole: pj.value, order: h, coeff: series[m - h] });
        }
    }
    Ok(out)
}

/// Σ c/(1 − ωx)^h.
pub fn eval_fractions(terms: &[FracTerm], x: Complex64) -> Complex64 {
    terms.iter().map(|t| t.coeff / (ONE - t.pole * x).powi(t.order as i32)).sum()
}

/// `φ = C·g1·g2` with `g1 = u·Π(1 − β_jχ)^{m_j}` analytic and `g2 = Π(1 − α_iχ̄)^{s_i}`.
#[derive(Debug, Clone)]
pub struct SpectralFactorization {
    scale: Complex64,
    unit: Complex64,
    analytic: Vec<Pole>,
    coanalytic: Vec<Pole>,
    pf_g1_inv: Vec<FracTerm>,
    pf_g2_inv: Vec<FracTerm>,
    hermitian: bool,
    roots: Option<RootSet>,
}

impl SpectralFactorization {
    /// Assembles a factorization from independent pole sets. No unit-circle check is made.
    pub fn from_parts(
        scale: Complex64,
        unit: Complex64,
        analytic: Vec<Pole>,
        coanalytic: Vec<Pole>,
    ) -> Result<Self> {
        let pf_g1_inv: Vec<FracTerm> = partial_fractions(&analytic)?
            .into_iter()
            .map(|t| FracTerm { coeff: t.coeff / unit, ..t })
            .collect();
        let pf_g2_inv = partial_fractions(&coanalytic)?;
        let hermitian = analytic.len() == coanalytic.len()
            && analytic
                .iter()
                .zip(&coanalytic)
                .all(|(a, c)| a.order == c.order && a.value == c.value.conj());
        Ok(Self { scale, unit, analytic, coanalytic, pf_g1_inv, pf_g2_inv, hermitian, roots: None })
    }

    pub fn scale(&self) -> Complex64 {
        self.scale
    }

    pub fn unit(&self) -> Complex64 {
        self.unit
    }

    /// Poles β_j of `1/g1`.
    pub fn analytic_poles(&self) -> &[Pole] {
        &self.analytic
    }

    /// Poles α_i of `1/g2` (as a function of χ̄).
    pub fn coanalytic_poles(&self) -> &[Pole] {
        &self.coanalytic
    }

    pub fn pf_g1_inv(&self) -> &[FracTerm] {
        &self.pf_g1_inv
    }

    pub fn pf_g2_inv(&self) -> &[FracTerm] {
        &self.pf_g2_inv
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    pub fn root_set(&self) -> Option<&RootSet> {
        self.roots.as_ref()
    }

    /// Sum of the orders of the analytic poles: the dimension of the stable subspace.
    pub fn n0(&self) -> usize {
        self.analytic.iter().map(|p| p.order).sum()
    }

    pub fn rho(&self) -> f64 {
        self.coanalytic
            .iter()
            .chain(&self.analytic)
            .map(|p| p.value.norm())
            .fold(0.0, f64::max)
    }

    /// Coefficients of g1 in powers of χ (unit included).
    pub fn g1_coeffs(&self) -> Vec<Complex64> {
        poly::from_factors(&pairs(&self.analytic)).into_iter().map(|c| c * self.unit).collect()
    }

    /// Coefficients of g2 in powers of χ̄.
    pub fn g2_coeffs(&self) -> Vec<Complex64> {
        poly::from_factors(&pairs(&self.coanalytic))
    }

    pub fn eval_g1(&self, theta: f64) -> Complex64 {
        poly::eval(&self.g1_coeffs(), Complex64::from_polar(1.0, theta))
    }

    pub fn eval_g2(&self, theta: f64) -> Complex64 {
        poly::eval(&self.g2_coeffs(), Complex64::from_polar(1.0, -theta))
    }

    /// `C·g1·g2` at θ.
    pub fn reconstruct(&self, theta: f64) -> Complex64 {
        self.scale * self.eval_g1(theta) * self.eval_g2(theta)
    }

    /// Taylor coefficients of `1/g1` in χ.
    pub fn inv_g1_taylor(&self, len: usize) -> Vec<Complex64> {
        poly::series_inverse(&self.g1_coeffs(), len)
    }

    /// Taylor coefficients of `1/g2` in χ̄.
    pub fn inv_g2_taylor(&self, len: usize) -> Vec<Complex64> {
        poly::series_inverse(&self.g2_coeffs(), len)
    }

    /// Largest |C·g1·g2 − φ| on an `n`-point grid.
    pub fn reconstruction_error(&self, phi: &TrigSymbol, n: usize) -> f64 {
        (0..n)
            .map(|k| {
                let t = TAU * k as f64 / n as f64;
                (self.reconstruct(t) - Complex64::new(phi.eval_trig(t), 0.0)).norm()
            })
            .fold(0.0, f64::max)
    }
}

fn pairs(p: &[Pole]) -> Vec<(Complex64, usize)> {
    p.iter().map(|p| (p.value, p.order)).collect()
}

pub fn wiener_hopf_factor(phi: &TrigSymbol) -> Result<SpectralFactorization> {
    wiener_hopf_factor_with(phi, &FactorOptions::default())
}

pub fn wiener_hopf_factor_with(phi: &TrigSymbol, opts: &FactorOptions) -> Result<SpectralFactorization> {
    if phi.degree() == 0 {
        let a0 = phi.coeff(0).re;
        if a0 == 0.0 {
            return Err(Error::InvalidSymbol("zero symbol".into()));
        }
        let mut f = SpectralFactorization::from_parts(
            Complex64::new(a0.abs(), 0.0),
            Complex64::new(a0.signum(), 0.0),
            Vec::new(),
            Vec::new(),
        )?;
        f.roots = Some(RootSet { roots: Vec::new() });
        return Ok(f);
    }
    let k = phi.laurent_poly();
    if k.coeffs[0] == ZERO {
        return Err(Error::InvalidSymbol("lowest coefficient vanishes".into()));
    }
    let roots = laurent_roots(&k, opts)?;
    if !roots.is_balanced() {
        return Err(Error::UnbalancedWinding {
            inside: roots.inside_count(),
            outside: roots.outside_count(),
        });
    }
    let coanalytic: Vec<Pole> =
        roots.inside().map(|r| Pole { value: r.value, order: r.multiplicity }).collect();
    let analytic: Vec<Pole> =
        coanalytic.iter().map(|p| Pole { value: p.value.conj(), order: p.order }).collect();
    let mut c = k.leading();
    for p in &coanalytic {
        c *= (-ONE / p.value.conj()).powi(p.order as i32);
    }
    let modulus = c.norm();
    let unit = c / modulus;
    let mut f = SpectralFactorization::from_parts(
        Complex64::new(modulus, 0.0),
        unit,
        analytic,
        coanalytic,
    )?;
    f.roots = Some(roots);
    let err = f.reconstruction_error(phi, 1024);
    let norm = phi.sup_norm(1024);
    if err > 1e-6 * norm {
        return Err(Error::RootFindFailure { iterations: 0, residual: err / norm });
    }
    log::debug!("factorization: n0 = {}, C = {}, reconstruction error {err:e}", f.n0(), f.scale);
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn fourier_of_trivial_symbols() {
        let a = fourier_coeffs(&|t: f64| 2.0 - 2.0 * t.cos(), 1, 8).unwrap();
        assert!((a[0] - c(-1.0)).norm() < 1e-15);
        assert!((a[1] - c(2.0)).norm() < 1e-15);
        assert!((a[2] - c(-1.0)).norm() < 1e-15);
        let a = fourier_coeffs(&|_| 3.5, 0, 8).unwrap();
        assert!((a[0] - c(3.5)).norm() < 1e-15);
        let a = fourier_coeffs(&|t: f64| 1.25 - t.cos(), 1, 16).unwrap();
        assert!((a[1] - c(1.25)).norm() < 1e-15 && (a[2] - c(-0.5)).norm() < 1e-15);
    }

    #[test]
    fn aliasing_guard() {
        assert!(matches!(fourier_coeffs(&|_| 1.0, 4, 16), Err(Error::AliasingRisk { .. })));
    }

    #[test]
    fn json_literals() {
        let s = TrigSymbol::from_json(r#"{"cosine":[2,-2]}"#).unwrap();
        assert_eq!(s.coeff(1), c(-1.0));
        let s = TrigSymbol::from_json(r#"{"coeffs":[[-0.5,0],[1.25,0],[-0.5,0]],"offset":-1}"#).unwrap();
        assert_eq!(s.degree(), 1);
        assert!(s.is_even());
        let err = TrigSymbol::from_json("{\"cosine\": [1,\n 2,}").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        assert!(TrigSymbol::from_json(r#"{"coeffs":[[0,1],[1,0],[0,1]],"offset":-1}"#).is_err());
    }

    #[test]
    fn quadratic_laurent_roots() {
        let k = LaurentPoly { coeffs: vec![c(-0.5), c(1.25), c(-0.5)], n0: 1 };
        let r = laurent_roots(&k, &FactorOptions::default()).unwrap();
        let inside: Vec<_> = r.inside().collect();
        assert_eq!(inside.len(), 1);
        assert!((inside[0].value - c(0.5)).norm() < 1e-14);
        assert!((r.outside().next().unwrap().value - c(2.0)).norm() < 1e-14);
    }

    #[test]
    fn double_laurent_roots() {
        let p = poly::from_roots(&[(c(0.5), 2), (c(2.0), 2)]);
        let r = laurent_roots(&LaurentPoly { coeffs: p, n0: 2 }, &FactorOptions::default()).unwrap();
        assert_eq!(r.roots.len(), 2);
        assert!(r.roots.iter().all(|x| x.multiplicity == 2));
    }

    #[test]
    fn unit_modulus_rejected() {
        let k = LaurentPoly { coeffs: vec![c(-1.0), c(0.0), c(1.0)], n0: 1 };
        assert!(matches!(laurent_roots(&k, &FactorOptions::default()), Err(Error::UnitModulusRoot { .. })));
    }

    #[test]
    fn partial_fraction_examples() {
        let t = partial_fractions(&[Pole { value: c(0.5), order: 1 }, Pole { value: c(1.0 / 3.0), order: 1 }])
            .unwrap();
        assert!((t[0].coeff - c(3.0)).norm() < 1e-13);
        assert!((t[1].coeff - c(-2.0)).norm() < 1e-13);
        let t = partial_fractions(&[Pole { value: c(0.3), order: 1 }]).unwrap();
        assert_eq!(t[0].coeff, c(1.0));
        let t = partial_fractions(&[Pole { value: c(0.5), order: 2 }]).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!((t[0].order, t[0].coeff), (1, c(0.0)));
        assert_eq!((t[1].order, t[1].coeff), (2, c(1.0)));
        assert!(partial_fractions(&[Pole { value: c(0.5), order: 1 }, Pole { value: c(0.5), order: 1 }]).is_err());
    }

    #[test]
    fn factor_simple_symbol() {
        let f = wiener_hopf_factor(&TrigSymbol::cosine(&[1.25, -1.0])).unwrap();
        assert!((f.scale() - c(1.0)).norm() < 1e-14);
        let g1 = f.g1_coeffs();
        let g2 = f.g2_coeffs();
        assert!((g1[0] - c(1.0)).norm() < 1e-14 && (g1[1] - c(-0.5)).norm() < 1e-14);
        assert!((g2[1] - c(-0.5)).norm() < 1e-14);
    }

    #[test]
    fn factor_constant_and_square() {
        let f = wiener_hopf_factor(&TrigSymbol::constant(3.0)).unwrap();
        assert_eq!(f.scale(), c(3.0));
        assert_eq!(f.g1_coeffs(), vec![c(1.0)]);
        let sq = TrigSymbol::from_inside_roots(&[(c(0.5), 2)], 1.0);
        let f = wiener_hopf_factor(&sq).unwrap();
        assert_eq!(f.analytic_poles().len(), 1);
        assert_eq!(f.analytic_poles()[0].order, 2);
        assert!(f.reconstruction_error(&sq, 1024) < 1e-12);
    }

    #[test]
    fn negative_symbol_keeps_positive_scale() {
        let f = wiener_hopf_factor(&TrigSymbol::cosine(&[-1.25, 1.0])).unwrap();
        assert!(f.scale().re > 0.0);
        assert!((f.unit() - c(-1.0)).norm() < 1e-14);
    }

    #[test]
    fn complex_symbol_factor() {
        let roots = [(Complex64::new(0.3, 0.4), 1), (Complex64::new(-0.6, 0.1), 1)];
        let s = TrigSymbol::from_inside_roots(&roots, 2.0);
        assert!(!s.is_even());
        let f = wiener_hopf_factor(&s).unwrap();
        assert!(f.reconstruction_error(&s, 1024) < 1e-12);
        let z = Complex64::from_polar(0.99, 0.7);
        let direct = ONE / poly::eval(&f.g1_coeffs(), z);
        assert!((eval_fractions(f.pf_g1_inv(), z) - direct).norm() < 1e-10);
    }
}
