//! Hermitian eigensolver, grid localization of Toeplitz eigenvalues, the characteristic
//! determinant built from the Hankel product and Weyl equidistribution diagnostics.

use std::collections::{HashMap, HashSet};
use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::poly::{self, RootOptions};
use crate::symbol::TrigSymbol;
use crate::toeplitz::ToeplitzMatrix;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Eigenvalues in ascending order, with eigenvectors as columns when requested.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: Option<DenseMatrix>,
}

/// Householder reduction to a real tridiagonal matrix followed by implicit QL.
pub fn hermitian_eigen(m: &DenseMatrix, want_vectors: bool) -> Result<EigenDecomposition> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch { expected: m.rows(), found: m.cols() });
    }
    let n = m.rows();
    let dev = m.hermitian_deviation();
    if dev > 1e-12 * m.max_abs().max(1.0) {
        return Err(Error::NotHermitian { deviation: dev });
    }
    if n == 0 {
        return Ok(EigenDecomposition { values: Vec::new(), vectors: want_vectors.then(|| DenseMatrix::zeros(0, 0)) });
    }
    let mut a = m.clone();
    a.symmetrize();
    let mut q = want_vectors.then(|| DenseMatrix::identity(n));

    let mut v = vec![ZERO; n];
    let mut p = vec![ZERO; n];
    for k in 0..n.saturating_sub(2) {
        let xnorm = (k + 1..n).map(|i| a[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        let tail = (k + 2..n).map(|i| a[(i, k)].norm_sqr()).sum::<f64>();
        if xnorm == 0.0 || tail == 0.0 {
            continue;
        }
        let x0 = a[(k + 1, k)];
        let phase = if x0 == ZERO { ONE } else { x0 / x0.norm() };
        let alpha = -phase * xnorm;
        for i in k + 1..n {
            v[i] = a[(i, k)];
        }
        v[k + 1] -= alpha;
        let vnorm = (k + 1..n).map(|i| v[i].norm_sqr()).sum::<f64>().sqrt();
        for vi in v[k + 1..n].iter_mut() {
            *vi /= vnorm;
        }
        for i in k + 1..n {
            p[i] = (k + 1..n).map(|j| a[(i, j)] * v[j]).sum();
        }
        let kk: Complex64 = (k + 1..n).map(|i| v[i].conj() * p[i]).sum();
        for i in k + 1..n {
            p[i] -= kk * v[i];
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let upd = v[i] * p[j].conj() + p[i] * v[j].conj();
                a[(i, j)] -= 2.0 * upd;
            }
        }
        a[(k + 1, k)] = alpha;
        a[(k, k + 1)] = alpha.conj();
        for i in k + 2..n {
            a[(i, k)] = ZERO;
            a[(k, i)] = ZERO;
        }
        if let Some(q) = q.as_mut() {
            for r in 0..n {
                let s: Complex64 = (k + 1..n).map(|j| q[(r, j)] * v[j]).sum();
                for j in k + 1..n {
                    let upd = 2.0 * s * v[j].conj();
                    q[(r, j)] -= upd;
                }
            }
        }
    }

    // Diagonal phase scaling turns the complex off-diagonal into |e_k|.
    let mut d: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    let mut e = vec![0.0; n];
    let mut phases = vec![ONE; n];
    for k in 0..n - 1 {
        let off = a[(k + 1, k)];
        e[k] = off.norm();
        let ph = if off == ZERO { ONE } else { off / off.norm() };
        phases[k + 1] = phases[k] * ph;
    }
    let mut z = want_vectors.then(|| {
        let mut z = vec![0.0; n * n];
        for i in 0..n {
            z[i * n + i] = 1.0;
        }
        z
    });
    tql_implicit(&mut d, &mut e, z.as_deref_mut())?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].total_cmp(&d[j]));
    let values = order.iter().map(|&i| d[i]).collect();
    let vectors = match (q, z) {
        (Some(q), Some(z)) => {
            let qd = DenseMatrix::from_fn(n, n, |i, j| q[(i, j)] * phases[j]);
            let zs = DenseMatrix::from_fn(n, n, |i, j| Complex64::new(z[i * n + order[j]], 0.0));
            Some(qd.matmul(&zs)?)
        }
        _ => None,
    };
    Ok(EigenDecomposition { values, vectors })
}

/// Implicit-shift QL on a symmetric tridiagonal matrix; `e[i]` couples rows i and i+1.
fn tql_implicit(d: &mut [f64], e: &mut [f64], mut z: Option<&mut [f64]>) -> Result<()> {
    let n = d.len();
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::EigenFailure { index: l });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = z.as_deref_mut() {
                    for k in 0..n {
                        let f = z[k * n + i + 1];
                        z[k * n + i + 1] = s * z[k * n + i] + c * f;
                        z[k * n + i] = c * z[k * n + i] - s * f;
                    }
                }
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// Eigenvalues of `T_N(f)`.
pub fn toeplitz_eigen(sym: &TrigSymbol, n: usize) -> Result<EigenDecomposition> {
    hermitian_eigen(&ToeplitzMatrix::build(sym, n).to_dense(), false)
}

/// `θ_{N,k}`: an eigenvalue written as `f(kπ/(N+2) + θ_{N,k}π/N)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridLocation {
    pub k: usize,
    pub theta_shift: f64,
    /// The antecedent θ* ∈ [0, π] with f(θ*) = λ.
    pub antecedent: f64,
    /// Index of the monotone branch of f on [0, π] holding θ*.
    pub branch: usize,
    /// Set for constant symbols, where every θ is an antecedent.
    pub degenerate: bool,
    /// No free grid index was left on any branch; k repeats another eigenvalue's.
    pub shared: bool,
}

/// Breakpoints 0 = t_0 < … < t_B = π between which an even symbol is monotone.
pub fn monotone_breakpoints(sym: &TrigSymbol) -> Vec<f64> {
    let g = (64 * sym.degree()).max(4096);
    let h = PI / g as f64;
    let mut pts = vec![0.0];
    let mut prev = sym.eval_trig_derivative(h * 0.5);
    for i in 1..g {
        let t = h * (i as f64 + 0.5);
        let cur = sym.eval_trig_derivative(t);
        if prev != 0.0 && cur != 0.0 && prev.signum() != cur.signum() {
            let (mut lo, mut hi) = (t - h, t);
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                if sym.eval_trig_derivative(mid).signum() == prev.signum() {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            pts.push(0.5 * (lo + hi));
        }
        if cur != 0.0 {
            prev = cur;
        }
    }
    pts.push(PI);
    pts
}

/// Solutions of f(θ) = λ on [0, π], one per monotone branch that reaches λ.
fn antecedents(sym: &TrigSymbol, brk: &[f64], lambda: f64, tol: f64) -> Vec<(f64, usize)> {
    let mut out = Vec::new();
    for (b, w) in brk.windows(2).enumerate() {
        let (a, c) = (w[0], w[1]);
        let (fa, fc) = (sym.eval_trig(a), sym.eval_trig(c));
        let (lo, hi) = (fa.min(fc), fa.max(fc));
        if lambda < lo - tol || lambda > hi + tol {
            continue;
        }
        let increasing = fc >= fa;
        let (mut x0, mut x1) = (a, c);
        for _ in 0..200 {
            let mid = 0.5 * (x0 + x1);
            if mid == x0 || mid == x1 {
                break;
            }
            let below = sym.eval_trig(mid) < lambda;
            if below == increasing {
                x0 = mid;
            } else {
                x1 = mid;
            }
        }
        out.push((0.5 * (x0 + x1), b));
    }
    out
}

/// Places each eigenvalue on the grid kπ/(N+2).
pub fn grid_localize(sym: &TrigSymbol, n: usize, eig: &EigenDecomposition) -> Result<Vec<GridLocation>> {
    if !sym.is_even() {
        return Err(Error::InvalidSymbol("grid localization needs an even symbol".into()));
    }
    if sym.degree() == 0 {
        return Ok((0..eig.values.len())
            .map(|j| GridLocation {
                k: (j + 1).min(n + 1),
                theta_shift: 0.0,
                antecedent: (j + 1) as f64 * PI / (n + 2) as f64,
                branch: 0,
                degenerate: true,
                shared: false,
            })
            .collect());
    }
    let brk = monotone_breakpoints(sym);
    let scale = sym.sup_norm(1024).max(1.0);
    let tol = 1e-9 * scale;
    let step = PI / (n + 2) as f64;
    let reach = PI / n as f64;
    let shift = |t: f64, k: usize| (t - k as f64 * step) / reach;

    // Candidate slots (branch, k) with |θ| < 1, closest first.
    let mut cands: Vec<Vec<(f64, usize, usize)>> = Vec::with_capacity(eig.values.len());
    for &lambda in &eig.values {
        let ante = antecedents(sym, &brk, lambda, tol);
        if ante.is_empty() {
            return Err(Error::LocalizationFailure { lambda });
        }
        let mut c: Vec<(f64, usize, usize)> = Vec::new();
        for &(t, b) in &ante {
            let lo = ((t - reach) / step).ceil().max(0.0) as usize;
            let hi = (((t + reach) / step).floor() as usize).min(n + 1);
            c.extend((lo..=hi).filter(|&k| shift(t, k).abs() < 1.0).map(|k| (t, b, k)));
        }
        if c.is_empty() {
            let (t, b) = ante[0];
            c.push((t, b, ((t / step).round() as usize).min(n + 1)));
        }
        c.sort_by(|x, y| shift(x.0, x.2).abs().total_cmp(&shift(y.0, y.2).abs()));
        cands.push(c);
    }

    // Distinct grid indices per branch: a bottleneck matching of eigenvalues to slots,
    // smallest achievable max |θ| first.
    let mut levels: Vec<f64> = cands.iter().flatten().map(|&(t, _, k)| shift(t, k).abs()).collect();
    levels.sort_by(f64::total_cmp);
    levels.dedup();
    let (mut lo, mut hi) = (0, levels.len() - 1);
    let mut choice = match_slots(&cands, levels[hi], &shift);
    if choice.iter().all(Option::is_some) {
        while lo < hi {
            let mid = (lo + hi) / 2;
            let c = match_slots(&cands, levels[mid], &shift);
            if c.iter().all(Option::is_some) {
                hi = mid;
                choice = c;
            } else {
                lo = mid + 1;
            }
        }
    }

    Ok(cands
        .iter()
        .zip(&choice)
        .map(|(c, pick)| {
            let (t, b, k) = c[pick.unwrap_or(0)];
            GridLocation {
                k,
                theta_shift: (t - k as f64 * step) * n as f64 / PI,
                antecedent: t,
                branch: b,
                degenerate: false,
                shared: pick.is_none(),
            }
        })
        .collect())
}

/// Maximum matching of eigenvalues to (branch, k) slots using edges with |θ| ≤ `cap`.
fn match_slots(
    cands: &[Vec<(f64, usize, usize)>],
    cap: f64,
    shift: &dyn Fn(f64, usize) -> f64,
) -> Vec<Option<usize>> {
    fn augment(
        i: usize,
        edges: &[Vec<(usize, (usize, usize))>],
        owner: &mut HashMap<(usize, usize), usize>,
        choice: &mut [Option<usize>],
        seen: &mut HashSet<(usize, usize)>,
    ) -> bool {
        for &(c, slot) in &edges[i] {
            if !seen.insert(slot) {
                continue;
            }
            let free = match owner.get(&slot).copied() {
                None => true,
                Some(j) => augment(j, edges, owner, choice, seen),
            };
            if free {
                owner.insert(slot, i);
                choice[i] = Some(c);
                return true;
            }
        }
        false
    }
    let edges: Vec<Vec<(usize, (usize, usize))>> = cands
        .iter()
        .map(|c| {
            c.iter()
                .enumerate()
                .filter(|(_, &(t, _, k))| shift(t, k).abs() <= cap)
                .map(|(j, &(_, b, k))| (j, (b, k)))
                .collect()
        })
        .collect();
    let mut owner = HashMap::new();
    let mut choice = vec![None; cands.len()];
    for i in 0..cands.len() {
        augment(i, &edges, &mut owner, &mut choice, &mut HashSet::new());
    }
    choice
}

/// The unique minimizer of an even symbol over [0, 2π).
pub fn unique_minimizer(sym: &TrigSymbol) -> Result<f64> {
    let g = (64 * sym.degree()).max(4096);
    let h = TAU / g as f64;
    let vals: Vec<f64> = (0..g).map(|i| sym.eval(h * i as f64)).collect();
    let (lo, hi) = vals.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
    let range = (hi - lo).max(f64::MIN_POSITIVE);
    let mut mins: Vec<(f64, f64)> = Vec::new();
    for i in 0..g {
        let (a, b, c) = (vals[(i + g - 1) % g], vals[i], vals[(i + 1) % g]);
        if b <= a && b <= c && b <= lo + 0.05 * range {
            let (mut x0, mut x1) = (h * (i as f64 - 1.0), h * (i as f64 + 1.0));
            let phi = 0.5 * (5f64.sqrt() - 1.0);
            for _ in 0..100 {
                let m1 = x1 - phi * (x1 - x0);
                let m2 = x0 + phi * (x1 - x0);
                if sym.eval(m1) < sym.eval(m2) {
                    x1 = m2;
                } else {
                    x0 = m1;
                }
            }
            let t = (0.5 * (x0 + x1)).rem_euclid(TAU);
            mins.push((t, sym.eval(t)));
        }
    }
    let best = mins.iter().map(|m| m.1).fold(f64::INFINITY, f64::min);
    let mut distinct: Vec<f64> = Vec::new();
    for &(t, v) in &mins {
        if v > best + 1e-9 * range {
            continue;
        }
        let cyc = |a: f64, b: f64| {
            let d = (a - b).abs();
            d.min(TAU - d)
        };
        if distinct.iter().all(|&s| cyc(s, t) > 1e-4) {
            distinct.push(t);
        }
    }
    match distinct.len() {
        1 => Ok(distinct[0]),
        count => Err(Error::NonUniqueMinimum { count }),
    }
}

#[derive(Debug, Clone)]
pub struct MinEigenReport {
    pub n: usize,
    pub lambda_min: f64,
    pub location: GridLocation,
    pub theta0: f64,
    pub f_theta0: f64,
}

impl MinEigenReport {
    /// |kπ/(N+2) − θ₀|.
    pub fn grid_distance(&self) -> f64 {
        (self.location.k as f64 * PI / (self.n + 2) as f64 - self.theta0).abs()
    }
}

pub fn min_eigen_report(sym: &TrigSymbol, n: usize) -> Result<MinEigenReport> {
    let eig = toeplitz_eigen(sym, n)?;
    let theta0 = if sym.degree() == 0 { 0.0 } else { unique_minimizer(sym)? };
    let locs = grid_localize(sym, n, &eig)?;
    Ok(MinEigenReport { n, lambda_min: eig.values[0], location: locs[0], theta0, f_theta0: sym.eval(theta0) })
}

#[derive(Debug, Clone)]
pub struct MinEigenSweep {
    pub reports: Vec<MinEigenReport>,
    /// True when |kπ/(N+2) − θ₀| never increases along the sweep and ends below where it
    /// started (or on θ₀ itself).
    pub converging: bool,
}

pub fn min_eigen_sweep(sym: &TrigSymbol, ns: &[usize]) -> Result<MinEigenSweep> {
    let reports = ns.iter().map(|&n| min_eigen_report(sym, n)).collect::<Result<Vec<_>>>()?;
    let d: Vec<f64> = reports.iter().map(MinEigenReport::grid_distance).collect();
    let monotone = d.windows(2).all(|w| w[1] <= w[0] + 1e-12);
    let last = d.last().copied().unwrap_or(0.0);
    let converging = monotone && (d.len() < 2 || last < d[0] || last <= 1e-12);
    Ok(MinEigenSweep { reports, converging })
}

/// Test functions for equidistribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TestFn {
    Power(u32),
    Abs,
    Exp,
}

impl TestFn {
    pub fn apply(self, x: f64) -> f64 {
        match self {
            TestFn::Power(k) => x.powi(k as i32),
            TestFn::Abs => x.abs(),
            TestFn::Exp => x.exp(),
        }
    }

    /// x, x², x³, x⁴, |x|, exp.
    pub fn library() -> Vec<TestFn> {
        vec![TestFn::Power(1), TestFn::Power(2), TestFn::Power(3), TestFn::Power(4), TestFn::Abs, TestFn::Exp]
    }
}

/// Largest `|(1/N) Σ_j [h(λ_j) − h(f(−π + 2jπ/(N+1)))]|` over the test functions, where
/// λ_1..λ_N are the eigenvalues of the N×N section.
pub fn weyl_gap(sym: &TrigSymbol, n: usize, fns: &[TestFn]) -> Result<f64> {
    Ok(weyl_gaps(sym, n, fns)?.into_iter().fold(0.0, f64::max))
}

/// Per-function gaps, in the order of `fns`.
pub fn weyl_gaps(sym: &TrigSymbol, n: usize, fns: &[TestFn]) -> Result<Vec<f64>> {
    if n == 0 {
        return Ok(vec![0.0; fns.len()]);
    }
    let eig = toeplitz_eigen(sym, n - 1)?;
    let samples: Vec<f64> =
        (1..=n).map(|j| sym.eval(-PI + TAU * j as f64 / (n + 1) as f64)).collect();
    Ok(fns
        .iter()
        .map(|&h| {
            let s: f64 = eig.values.iter().zip(&samples).map(|(&l, &f)| h.apply(l) - h.apply(f)).sum();
            (s / n as f64).abs()
        })
        .collect())
}

/// Data attached to a level λ for an even cosine polynomial `f = p(cos θ)`.
///
/// `f − λ = C·Π_j (1 − ω_j χ)(1 − ω_j χ̄)` with one ω per root of `p(x) − λ`: on the circle
/// (`ω = χ̄_{λ'}`) for roots in (−1, 1), strictly inside otherwise.
#[derive(Debug, Clone)]
pub struct EigenCharacterization {
    pub lambda: f64,
    /// `χ_{λ'_j} = e^{iθ_j}` for the antecedents θ_j ∈ (0, π).
    pub antecedent_roots: Vec<Complex64>,
    pub lambda_primes: Vec<f64>,
    /// Roots of the positive factor G_λ, as ω with |ω| < 1.
    pub off_circle: Vec<Complex64>,
    /// Conjugated antecedent roots followed by `off_circle`.
    pub omegas: Vec<Complex64>,
    pub r: usize,
    /// `G_λ = lead · Π_{off}(cos θ − x_j)`.
    pub h_lambda: TrigSymbol,
    pub scale: Complex64,
}

pub fn characterize(sym: &TrigSymbol, lambda: f64) -> Result<EigenCharacterization> {
    let c = sym
        .cosine_coeffs()
        .ok_or_else(|| Error::InvalidSymbol("the determinant pipeline needs an even symbol".into()))?;
    if sym.is_sampled() || c.len() < 2 {
        return Err(Error::InvalidSymbol("the determinant pipeline needs a non-constant cosine polynomial".into()));
    }
    let mut p = poly::chebyshev_to_power(&c);
    p[0] -= lambda;
    while p.len() > 1 && *p.last().unwrap() == 0.0 {
        p.pop();
    }
    let lead = *p.last().unwrap();
    let pc: Vec<Complex64> = p.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    let xs = poly::aberth_roots(&pc, &RootOptions::default())?;
    let excluded = |reason: &str| Error::ExcludedLambda { lambda, reason: reason.into() };

    let mut on = Vec::new();
    let mut primes = Vec::new();
    let mut off = Vec::new();
    let mut off_x = Vec::new();
    for &x in &xs {
        if x.im.abs() <= 1e-9 * x.norm().max(1.0) && x.re.abs() < 1.0 {
            let t = x.re.clamp(-1.0, 1.0);
            on.push(Complex64::new(t, (1.0 - t * t).sqrt()));
            primes.push(1.0 - t);
        } else {
            let s = (x * x - ONE).sqrt();
            let (w1, w2) = (x - s, x + s);
            let w = if w1.norm() < w2.norm() { w1 } else { w2 };
            if (w.norm() - 1.0).abs() < 1e-9 {
                return Err(excluded("a root of p(x) − λ sits at x = ±1"));
            }
            off.push(w);
            off_x.push(x);
        }
    }
    let omegas: Vec<Complex64> = on.iter().map(|z| z.conj()).chain(off.iter().copied()).collect();
    for i in 0..omegas.len() {
        for h in 0..omegas.len() {
            if (ONE - omegas[i] * omegas[h]).norm() < 1e-9 {
                return Err(excluded("χ_i χ_h = 1"));
            }
            if i != h && (omegas[i] - omegas[h]).norm() < 1e-9 {
                return Err(excluded("repeated antecedent"));
            }
        }
    }
    let mut scale = Complex64::new(lead, 0.0);
    for &w in &omegas {
        scale *= -ONE / (2.0 * w);
    }
    let mut g = vec![Complex64::new(lead, 0.0)];
    for &x in &off_x {
        g = poly::mul(&g, &[-x, ONE]);
    }
    let h_lambda = TrigSymbol::cosine(&poly::power_to_chebyshev(&g.iter().map(|z| z.re).collect::<Vec<_>>()));
    Ok(EigenCharacterization {
        lambda,
        r: on.len(),
        antecedent_roots: on,
        lambda_primes: primes,
        off_circle: off,
        omegas,
        h_lambda,
        scale,
    })
}

/// `M_{ij} = A_i Σ_h A_h ω_h^{N+2} ω_i^{N+2} Q_j(ω_h) Q_h(ω_i)`, with
/// `A_j = 1/Π_{n≠j}(1 − ω_n/ω_j)` and `Q_m(z) = Π_{n≠m}(1 − ω_n z)`.
pub fn characteristic_matrix(chr: &EigenCharacterization, n: usize) -> Result<DenseMatrix> {
    omega_matrix(&chr.omegas, n).map_err(|e| match e {
        Error::DegeneratePoles { .. } => {
            Error::ExcludedLambda { lambda: chr.lambda, reason: "coincident roots".into() }
        }
        other => other,
    })
}

/// The same matrix for an arbitrary list of distinct nonzero ω.
pub fn omega_matrix(omegas: &[Complex64], n: usize) -> Result<DenseMatrix> {
    let r = omegas.len();
    let mut a = vec![ONE; r];
    for j in 0..r {
        if omegas[j] == ZERO {
            return Err(Error::DegeneratePoles { pole: ZERO });
        }
        for m in 0..r {
            if m != j {
                let f = ONE - omegas[m] / omegas[j];
                if f.norm() < 1e-14 {
                    return Err(Error::DegeneratePoles { pole: omegas[j] });
                }
                a[j] /= f;
            }
        }
    }
    let q = |m: usize, z: Complex64| -> Complex64 {
        (0..r).filter(|&k| k != m).map(|k| ONE - omegas[k] * z).product()
    };
    let pw: Vec<Complex64> = omegas.iter().map(|w| w.powi(n as i32 + 2)).collect();
    Ok(DenseMatrix::from_fn(r, r, |i, j| {
        let s: Complex64 = (0..r).map(|h| a[h] * pw[h] * q(j, omegas[h]) * q(h, omegas[i])).sum();
        a[i] * pw[i] * s
    }))
}

/// `Π_{i,j}(1 − ω_iω_j)^{-1}`.
fn pair_constant(omegas: &[Complex64]) -> Complex64 {
    let mut e = ONE;
    for &a in omegas {
        for &b in omegas {
            e /= ONE - a * b;
        }
    }
    e
}

/// `det(I − M)` rotated by the phase of `C^{N+1}·Π(1 − ω_iω_j)^{-1}`; real up to rounding,
/// with the sign of `det T_N(f − λ)`.
pub fn characteristic_determinant(chr: &EigenCharacterization, n: usize) -> Result<Complex64> {
    let m = characteristic_matrix(chr, n)?;
    let i_m = DenseMatrix::identity(m.rows()).sub(&m)?;
    let d = i_m.determinant()?;
    let e = pair_constant(&chr.omegas);
    let u = (chr.scale / chr.scale.norm()).powi(n as i32 + 1) * (e / e.norm());
    Ok(u * d)
}

/// `det T_N(f − λ)` reassembled from the characteristic determinant.
pub fn toeplitz_determinant(chr: &EigenCharacterization, n: usize) -> Result<Complex64> {
    let m = characteristic_matrix(chr, n)?;
    let d = DenseMatrix::identity(m.rows()).sub(&m)?.determinant()?;
    Ok(chr.scale.powi(n as i32 + 1) * pair_constant(&chr.omegas) * d)
}

#[derive(Debug, Clone, Default)]
pub struct DetEquationRoots {
    pub roots: Vec<f64>,
    /// λ-intervals skipped: guard bands and samples where the pipeline refused λ.
    pub excluded: Vec<(f64, f64)>,
    /// Largest |Im| of the normalized determinant seen at a sample, relative to 1 + |value|.
    pub max_imag: f64,
}

/// Half-width of the guard band around critical values and f(0), f(π).
pub const CRIT_TOL: f64 = 1e-6;

/// Zeros of the characteristic determinant for λ in `window`.
pub fn det_equation_roots(
    sym: &TrigSymbol,
    n: usize,
    window: (f64, f64),
    n_samples: usize,
) -> Result<DetEquationRoots> {
    let (lo, hi) = window;
    let mut out = DetEquationRoots::default();
    if hi <= lo {
        return Ok(out);
    }
    let brk = monotone_breakpoints(sym);
    let mut bands: Vec<(f64, f64)> = brk
        .iter()
        .map(|&t| sym.eval_trig(t))
        .map(|v| (v - CRIT_TOL, v + CRIT_TOL))
        .filter(|&(a, b)| b > lo && a < hi)
        .collect();
    bands.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut segments = Vec::new();
    let mut start = lo;
    for &(a, b) in &bands {
        if a > start {
            segments.push((start, a));
        }
        out.excluded.push((a.max(lo), b.min(hi)));
        start = start.max(b);
    }
    if start < hi {
        segments.push((start, hi));
    }
    let total: f64 = segments.iter().map(|s| s.1 - s.0).sum();
    let eval = |l: f64| -> Result<Complex64> { characteristic_determinant(&characterize(sym, l)?, n) };
    for (a, b) in segments {
        let count = ((n_samples as f64 * (b - a) / total).ceil() as usize).max(2);
        let mut prev: Option<(f64, f64)> = None;
        for s in 0..=count {
            let l = a + (b - a) * s as f64 / count as f64;
            let v = match eval(l) {
                Ok(v) => v,
                Err(Error::ExcludedLambda { .. }) => {
                    out.excluded.push((l, l));
                    prev = None;
                    continue;
                }
                Err(e) => return Err(e),
            };
            out.max_imag = out.max_imag.max(v.im.abs() / (1.0 + v.norm()));
            if let Some((pl, pv)) = prev {
                if pv == 0.0 {
                    // root exactly at the previous sample, already recorded
                } else if v.re == 0.0 {
                    out.roots.push(l);
                } else if pv.signum() != v.re.signum() {
                    out.roots.push(bisect(&eval, pl, l, pv)?);
                }
            } else if v.re == 0.0 {
                out.roots.push(l);
            }
            prev = Some((l, v.re));
        }
    }
    out.roots.sort_by(f64::total_cmp);
    Ok(out)
}

fn bisect(eval: &dyn Fn(f64) -> Result<Complex64>, mut a: f64, mut b: f64, mut fa: f64) -> Result<f64> {
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = eval(m)?.re;
        if fm == 0.0 {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}
