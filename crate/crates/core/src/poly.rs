//! Polynomial arithmetic (ascending coefficients) and the Aberth root finder.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

pub fn eval(p: &[Complex64], z: Complex64) -> Complex64 {
    p.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
}

/// p(z) and p'(z) by Horner.
pub fn eval_with_derivative(p: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut v = ZERO;
    let mut d = ZERO;
    for &c in p.iter().rev() {
        d = d * z + v;
        v = v * z + c;
    }
    (v, d)
}

pub fn mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn derivative(p: &[Complex64]) -> Vec<Complex64> {
    p.iter().enumerate().skip(1).map(|(k, &c)| c * k as f64).collect()
}

/// Π (1 - ω x)^m as ascending coefficients.
pub fn from_factors(factors: &[(Complex64, usize)]) -> Vec<Complex64> {
    let mut p = vec![ONE];
    for &(w, m) in factors {
        for _ in 0..m {
            p = mul(&p, &[ONE, -w]);
        }
    }
    p
}

/// Π (z - r)^m as ascending coefficients.
pub fn from_roots(roots: &[(Complex64, usize)]) -> Vec<Complex64> {
    let mut p = vec![ONE];
    for &(r, m) in roots {
        for _ in 0..m {
            p = mul(&p, &[-r, ONE]);
        }
    }
    p
}

/// First `len` Taylor coefficients of 1/p, p(0) != 0.
pub fn series_inverse(p: &[Complex64], len: usize) -> Vec<Complex64> {
    let mut d = vec![ZERO; len];
    if len == 0 {
        return d;
    }
    let inv0 = ONE / p[0];
    d[0] = inv0;
    for n in 1..len {
        let mut s = ZERO;
        for k in 1..p.len().min(n + 1) {
            s += p[k] * d[n - k];
        }
        d[n] = -s * inv0;
    }
    d
}

/// Drops trailing coefficients that are exactly zero or negligible relative to the largest.
pub fn trim(p: &[Complex64], rel_tol: f64) -> Vec<Complex64> {
    let scale = p.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut n = p.len();
    while n > 0 && p[n - 1].norm() <= rel_tol * scale {
        n -= 1;
    }
    p[..n].to_vec()
}

#[derive(Debug, Clone, Copy)]
pub struct RootOptions {
    pub max_iter: usize,
    pub seed: u64,
}

impl Default for RootOptions {
    fn default() -> Self {
        Self { max_iter: 1000, seed: 0 }
    }
}

/// All complex roots (with repetition) of a polynomial given by ascending coefficients.
pub fn aberth_roots(p: &[Complex64], opts: &RootOptions) -> Result<Vec<Complex64>> {
    let p = trim(p, 0.0);
    if p.len() <= 1 {
        return Ok(Vec::new());
    }
    let zeros_at_origin = p.iter().take_while(|c| **c == ZERO).count();
    let q: Vec<Complex64> = p[zeros_at_origin..].to_vec();
    let n = q.len() - 1;
    let mut roots = vec![ZERO; zeros_at_origin];
    if n == 0 {
        return Ok(roots);
    }
    let lead = q[n];
    let monic: Vec<Complex64> = q.iter().map(|c| c / lead).collect();
    let abs_coeffs: Vec<f64> = monic.iter().map(|c| c.norm()).collect();

    let mut z = initial_guesses(&abs_coeffs, opts.seed);
    let mut done = vec![false; n];
    let mut iter = 0;
    while iter < opts.max_iter && done.iter().any(|d| !d) {
        iter += 1;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let zi = z[i];
            let (v, d) = eval_with_derivative(&monic, zi);
            let bound = abs_eval(&abs_coeffs, zi.norm()) * f64::EPSILON * 4.0 * (n as f64 + 1.0);
            if v.norm() <= bound {
                done[i] = true;
                continue;
            }
            let ratio = v / d;
            let mut sum = ZERO;
            for (j, &zj) in z.iter().enumerate() {
                if j != i {
                    let diff = zi - zj;
                    if diff != ZERO {
                        sum += ONE / diff;
                    }
                }
            }
            let step = ratio / (ONE - ratio * sum);
            if !step.re.is_finite() || !step.im.is_finite() {
                continue;
            }
            z[i] = zi - step;
            if step.norm() <= 1e-16 * z[i].norm().max(f64::MIN_POSITIVE) {
                done[i] = true;
            }
        }
    }
    if done.iter().any(|d| !d) {
        let residual = z.iter().map(|&zi| eval(&monic, zi).norm()).fold(0.0, f64::max);
        let scale: f64 = abs_coeffs.iter().sum();
        if residual > 1e-6 * scale {
            return Err(Error::RootFindFailure { iterations: iter, residual });
        }
    }
    for zi in z.iter_mut() {
        *zi = newton_polish(&monic, *zi, 3);
    }
    roots.extend(z);
    Ok(roots)
}

fn abs_eval(abs_coeffs: &[f64], r: f64) -> f64 {
    abs_coeffs.iter().rev().fold(0.0, |acc, &c| acc * r + c)
}

/// Newton steps accepted only while they reduce |p|.
pub fn newton_polish(p: &[Complex64], mut z: Complex64, steps: usize) -> Complex64 {
    let mut fz = eval(p, z).norm();
    for _ in 0..steps {
        let (v, d) = eval_with_derivative(p, z);
        if d == ZERO {
            break;
        }
        let cand = z - v / d;
        let fc = eval(p, cand).norm();
        if fc < fz {
            z = cand;
            fz = fc;
        } else {
            break;
        }
    }
    z
}

/// Starting points on circles whose radii follow the upper convex hull of log|a_k|
/// (Bini's Newton polygon rule), rotated by a seeded random angle.
fn initial_guesses(abs_coeffs: &[f64], seed: u64) -> Vec<Complex64> {
    let n = abs_coeffs.len() - 1;
    let pts: Vec<(usize, f64)> = abs_coeffs
        .iter()
        .enumerate()
        .filter(|(_, &a)| a > 0.0)
        .map(|(k, &a)| (k, a.ln()))
        .collect();
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 {
            let (k1, y1) = hull[hull.len() - 2];
            let (k2, y2) = hull[hull.len() - 1];
            let cross = (k2 as f64 - k1 as f64) * (p.1 - y1) - (y2 - y1) * (p.0 as f64 - k1 as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sigma: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let mut out = Vec::with_capacity(n);
    for w in hull.windows(2) {
        let (k1, y1) = w[0];
        let (k2, y2) = w[1];
        let cnt = k2 - k1;
        let radius = ((y1 - y2) / cnt as f64).exp();
        for j in 0..cnt {
            let ang = std::f64::consts::TAU * j as f64 / cnt as f64
                + std::f64::consts::TAU * k2 as f64 / n as f64
                + sigma;
            out.push(Complex64::from_polar(radius, ang));
        }
    }
    out
}

/// A root with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClusteredRoot {
    pub value: Complex64,
    pub multiplicity: usize,
}

/// Groups roots closer than `tol * max(1, |z|)` and refines each group's centre.
pub fn cluster_roots(p: &[Complex64], roots: &[Complex64], tol: f64) -> Vec<ClusteredRoot> {
    let n = roots.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        let mut c = i;
        while parent[c] != r {
            let next = parent[c];
            parent[c] = r;
            c = next;
        }
        r
    }
    let union = |parent: &mut Vec<usize>, radius: &dyn Fn(usize, usize) -> bool| {
        for i in 0..n {
            for j in i + 1..n {
                if radius(i, j) {
                    let (a, b) = (find(parent, i), find(parent, j));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
    };
    union(&mut parent, &|i, j| {
        (roots[i] - roots[j]).norm() <= tol * roots[i].norm().max(roots[j].norm()).max(1.0)
    });

    let mut groups = collect_groups(&mut parent, n, find);

    // A root of multiplicity m scatters roughly like eps^(1/m) around its centre.
    let radius = |m: usize, scale: f64| 20.0 * f64::EPSILON.powf(1.0 / m as f64) * scale;
    let mut merged = true;
    while merged {
        merged = false;
        for a in 0..groups.len() {
            let ca = centre(roots, &groups[a]);
            let mut near: Vec<(f64, usize)> = (0..groups.len())
                .filter(|&b| b != a)
                .map(|b| ((centre(roots, &groups[b]) - ca).norm(), b))
                .collect();
            near.sort_by(|x, y| x.0.total_cmp(&y.0));
            let mut m = groups[a].len();
            let mut take = 0;
            for (j, &(d, b)) in near.iter().enumerate() {
                m += groups[b].len();
                if m >= 3 && d <= radius(m, ca.norm().max(1.0)) {
                    take = j + 1;
                }
            }
            if take > 0 {
                let mut absorb = vec![false; groups.len()];
                absorb[a] = true;
                for &(_, b) in &near[..take] {
                    absorb[b] = true;
                }
                let mut joined = Vec::new();
                let mut rest = Vec::new();
                for (i, g) in groups.drain(..).enumerate() {
                    if absorb[i] {
                        joined.extend(g);
                    } else {
                        rest.push(g);
                    }
                }
                rest.push(joined);
                groups = rest;
                merged = true;
                break;
            }
        }
    }

    let mut out: Vec<ClusteredRoot> = groups
        .iter()
        .map(|g| {
            let c = centre(roots, g);
            let m = g.len();
            let value = if m > 1 {
                let mut dp = p.to_vec();
                for _ in 0..m - 1 {
                    dp = derivative(&dp);
                }
                newton_polish(&dp, c, 4)
            } else {
                c
            };
            ClusteredRoot { value, multiplicity: m }
        })
        .collect();
    out.sort_by(|a, b| {
        a.value
            .norm()
            .total_cmp(&b.value.norm())
            .then(a.value.arg().total_cmp(&b.value.arg()))
    });
    out
}

fn collect_groups(
    parent: &mut [usize],
    n: usize,
    find: fn(&mut [usize], usize) -> usize,
) -> Vec<Vec<usize>> {
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(parent, i);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(i);
    }
    groups
}

fn centre(roots: &[Complex64], idx: &[usize]) -> Complex64 {
    idx.iter().map(|&i| roots[i]).sum::<Complex64>() / idx.len() as f64
}

/// Power-basis coefficients of Σ c_j T_j(x) (Chebyshev polynomials of the first kind).
pub fn chebyshev_to_power(c: &[f64]) -> Vec<f64> {
    let n = c.len();
    if n == 0 {
        return Vec::new();
    }
    let mut out = vec![0.0; n];
    let mut t_prev = vec![0.0; n];
    let mut t_cur = vec![0.0; n];
    t_prev[0] = 1.0;
    out[0] += c[0];
    if n > 1 {
        t_cur[1] = 1.0;
        out[1] += c[1];
    }
    for k in 2..n {
        let mut t_next = vec![0.0; n];
        for i in 0..n - 1 {
            t_next[i + 1] += 2.0 * t_cur[i];
        }
        for i in 0..n {
            t_next[i] -= t_prev[i];
        }
        for i in 0..n {
            out[i] += c[k] * t_next[i];
        }
        t_prev = std::mem::replace(&mut t_cur, t_next);
    }
    out
}

/// Inverse of [`chebyshev_to_power`].
pub fn power_to_chebyshev(p: &[f64]) -> Vec<f64> {
    // x^k = 2^{1-k} Σ_j C(k, j) T_{|k-2j|}, with the T_0 term halved.
    let n = p.len();
    let mut out = vec![0.0; n];
    for (k, &a) in p.iter().enumerate() {
        if a == 0.0 {
            continue;
        }
        if k == 0 {
            out[0] += a;
            continue;
        }
        let f = 2f64.powi(1 - k as i32);
        let mut binom = 1.0;
        for j in 0..=k {
            let idx = (k as i64 - 2 * j as i64).unsigned_abs() as usize;
            let w = if idx == 0 { 0.5 } else { 1.0 };
            if 2 * j <= k {
                out[idx] += a * f * binom * w;
            }
            binom = binom * (k - j) as f64 / (j + 1) as f64;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn sorted_by_modulus(mut r: Vec<Complex64>) -> Vec<Complex64> {
        r.sort_by(|a, b| a.norm().total_cmp(&b.norm()));
        r
    }

    #[test]
    fn quadratic_roots() {
        let r = sorted_by_modulus(aberth_roots(&[c(-0.5), c(1.25), c(-0.5)], &RootOptions::default()).unwrap());
        assert!((r[0] - c(0.5)).norm() < 1e-14);
        assert!((r[1] - c(2.0)).norm() < 1e-14);
    }

    #[test]
    fn spread_moduli() {
        let want = [c(1e-3), c(0.2), Complex64::new(0.3, 0.4), c(5.0), c(-40.0), Complex64::new(0.0, 900.0)];
        let p = from_roots(&want.iter().map(|&r| (r, 1)).collect::<Vec<_>>());
        let got = aberth_roots(&p, &RootOptions::default()).unwrap();
        for w in want {
            let best = got.iter().map(|g| (g - w).norm() / w.norm()).fold(f64::INFINITY, f64::min);
            assert!(best < 1e-10, "{w} {best}");
        }
    }

    #[test]
    fn double_roots_cluster() {
        let p = from_roots(&[(c(0.5), 2), (c(2.0), 2)]);
        let r = aberth_roots(&p, &RootOptions::default()).unwrap();
        let cl = cluster_roots(&p, &r, 1e-6);
        assert_eq!(cl.len(), 2);
        assert_eq!(cl[0].multiplicity, 2);
        assert!((cl[0].value - c(0.5)).norm() < 1e-12);
        assert!((cl[1].value - c(2.0)).norm() < 1e-12);
    }

    #[test]
    fn triple_root_cluster() {
        let p = from_roots(&[(Complex64::new(0.3, 0.2), 3), (c(-3.0), 1)]);
        let r = aberth_roots(&p, &RootOptions::default()).unwrap();
        let cl = cluster_roots(&p, &r, 1e-6);
        assert_eq!(cl.len(), 2);
        assert_eq!(cl[0].multiplicity, 3);
        assert!((cl[0].value - Complex64::new(0.3, 0.2)).norm() < 1e-10);
    }

    #[test]
    fn zero_roots_are_reported() {
        let r = aberth_roots(&[c(0.0), c(0.0), c(-1.0), c(1.0)], &RootOptions::default()).unwrap();
        assert_eq!(r.iter().filter(|z| **z == ZERO).count(), 2);
    }

    #[test]
    fn seeds_agree() {
        let p = from_roots(&[(c(0.1), 1), (c(0.7), 1), (c(3.0), 1)]);
        for seed in 0..5 {
            let r = sorted_by_modulus(aberth_roots(&p, &RootOptions { seed, ..Default::default() }).unwrap());
            assert!((r[1] - c(0.7)).norm() < 1e-13);
        }
    }

    #[test]
    fn series_inverse_geometric() {
        let d = series_inverse(&[c(1.0), c(-0.5)], 6);
        for (n, v) in d.iter().enumerate() {
            assert!((v.re - 0.5f64.powi(n as i32)).abs() < 1e-15);
        }
    }

    #[test]
    fn chebyshev_round_trip() {
        let c = [0.3, -1.2, 0.7, 0.05, 2.0];
        let p = chebyshev_to_power(&c);
        // T_2 = 2x^2 - 1
        assert_eq!(chebyshev_to_power(&[0.0, 0.0, 1.0]), vec![-1.0, 0.0, 2.0]);
        let back = power_to_chebyshev(&p);
        for (a, b) in c.iter().zip(&back) {
            assert!((a - b).abs() < 1e-13);
        }
    }
}
