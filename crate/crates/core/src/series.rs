//! Power series of the form `x^e·(p(x) + Σ c/(1 − ωx)^h)` and the exact tail operator.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::symbol::FracTerm;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Binomial coefficient as a float.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// The polynomials `φ_{k,m}` with `τ_m(w + r) = Σ_k φ_{k,m}(r) τ_k(w)`, where
/// `τ_m(u) = (u+m−1)···(u+1)` and `τ_1 = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct TauExpansion {
    m: usize,
    /// `table[k-1]` holds the ascending coefficients of `φ_{k,m}` in r.
    table: Vec<Vec<i128>>,
}

impl TauExpansion {
    pub fn new(m: usize) -> Self {
        assert!(m >= 1, "order must be positive");
        let table = (1..=m)
            .map(|k| {
                // C(m−1, k−1) · r(r+1)···(r+m−k−1)
                let mut p: Vec<i128> = vec![binom_i128(m - 1, k - 1)];
                for i in 0..m - k {
                    let mut next = vec![0i128; p.len() + 1];
                    for (j, &c) in p.iter().enumerate() {
                        next[j] += c * i as i128;
                        next[j + 1] += c;
                    }
                    p = next;
                }
                p
            })
            .collect();
        Self { m, table }
    }

    pub fn order(&self) -> usize {
        self.m
    }

    /// Coefficients of `φ_{k,m}`.
    pub fn coefficients(&self, k: usize) -> &[i128] {
        &self.table[k - 1]
    }

    pub fn phi_exact(&self, k: usize, r: i128) -> i128 {
        self.table[k - 1].iter().rev().fold(0i128, |acc, &c| acc * r + c)
    }

    pub fn phi(&self, k: usize, r: f64) -> f64 {
        self.table[k - 1].iter().rev().fold(0.0, |acc, &c| acc * r + c as f64)
    }

    /// `τ_m(u)` in exact arithmetic.
    pub fn tau_exact(m: usize, u: i128) -> i128 {
        (1..m as i128).map(|i| u + i).product()
    }

    /// Weight of `1/(1 − ωx)^k` in `S_r[1/(1 − ωx)^m] / ω^r`, namely `φ_{k,m}(r)(k−1)!/(m−1)!`.
    pub fn tail_weight(&self, k: usize, r: usize) -> f64 {
        let mut w = self.phi(k, r as f64);
        for i in k..self.m {
            w /= i as f64;
        }
        w
    }
}

fn binom_i128(n: usize, k: usize) -> i128 {
    let mut b: i128 = 1;
    for i in 0..k {
        b = b * (n - i) as i128 / (i + 1) as i128;
    }
    b
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct RationalSeries {
    pub shift: usize,
    pub poly: Vec<Complex64>,
    pub terms: Vec<FracTerm>,
}

impl RationalSeries {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: Vec<FracTerm>) -> Self {
        Self { shift: 0, poly: Vec::new(), terms }
    }

    pub fn from_poly(poly: Vec<Complex64>, shift: usize) -> Self {
        Self { shift, poly, terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.poly.iter().all(|c| *c == ZERO) && self.terms.iter().all(|t| t.coeff == ZERO)
    }

    /// Coefficient of `x^n`.
    pub fn coefficient(&self, n: usize) -> Complex64 {
        if n < self.shift {
            return ZERO;
        }
        let m = n - self.shift;
        let mut s = self.poly.get(m).copied().unwrap_or(ZERO);
        for t in &self.terms {
            s += t.coeff * binomial(m + t.order - 1, t.order - 1) * t.pole.powi(m as i32);
        }
        s
    }

    pub fn eval(&self, x: Complex64) -> Complex64 {
        let p = crate::poly::eval(&self.poly, x) + crate::symbol::eval_fractions(&self.terms, x);
        p * x.powi(self.shift as i32)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            shift: self.shift,
            poly: self.poly.iter().map(|c| c * s).collect(),
            terms: self.terms.iter().map(|t| FracTerm { coeff: t.coeff * s, ..*t }).collect(),
        }
    }

    /// `S_r`: drop the first r coefficients and shift the rest down.
    pub fn tail(&self, r: usize) -> Self {
        if r <= self.shift {
            return Self { shift: self.shift - r, ..self.clone() };
        }
        let r = r - self.shift;
        let poly = self.poly.get(r..).map(<[Complex64]>::to_vec).unwrap_or_default();
        let mut terms = Vec::new();
        for t in &self.terms {
            let tau = TauExpansion::new(t.order);
            let wr = t.pole.powi(r as i32) * t.coeff;
            for k in 1..=t.order {
                terms.push(FracTerm { pole: t.pole, order: k, coeff: wr * tau.tail_weight(k, r) });
            }
        }
        let mut out = Self { shift: 0, poly, terms };
        out.combine();
        out
    }

    /// Sum of two series with the same shift (either may be zero).
    pub fn add(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if self.shift != other.shift {
            return Err(Error::InvalidInput("cannot add series with different shifts".into()));
        }
        let n = self.poly.len().max(other.poly.len());
        let poly = (0..n)
            .map(|i| self.poly.get(i).copied().unwrap_or(ZERO) + other.poly.get(i).copied().unwrap_or(ZERO))
            .collect();
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        let mut out = Self { shift: self.shift, poly, terms };
        out.combine();
        Ok(out)
    }

    /// Merges terms with identical pole and order; trims trailing zero polynomial coefficients.
    pub fn combine(&mut self) {
        let mut merged: Vec<FracTerm> = Vec::with_capacity(self.terms.len());
        for t in self.terms.drain(..) {
            match merged.iter_mut().find(|m| m.pole == t.pole && m.order == t.order) {
                Some(m) => m.coeff += t.coeff,
                None => merged.push(t),
            }
        }
        merged.retain(|t| t.coeff != ZERO);
        self.terms = merged;
        while self.poly.last() == Some(&ZERO) {
            self.poly.pop();
        }
    }

    /// Distinct poles carrying a nonzero coefficient.
    pub fn poles(&self) -> Vec<Complex64> {
        let mut p: Vec<Complex64> = Vec::new();
        for t in &self.terms {
            if t.coeff != ZERO && !p.contains(&t.pole) {
                p.push(t.pole);
            }
        }
        p
    }
}
