//! Exact rational calculus in the Hardy space, the Hankel operators `H_{Φ_N}`, `H_{Φ̃_N}`
//! with `Φ_N = χ^{N+1}g1/g2` and `Φ̃_N = χ^{−N−1}g2/g1`, and the resulting inverse of `T_N`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{cholesky, solve_lower, DenseMatrix, Lu};
use crate::poly;
use crate::series::{binomial, RationalSeries};
use crate::symbol::{FracTerm, Pole, SpectralFactorization};

pub use crate::series::TauExpansion;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `s(χ)`, an element of H⁺.
    Plus,
    /// `s(χ̄)`, an element of (H⁺)⊥ once the shift is at least one.
    Minus,
}

/// A rational element of `L²(T)`: `s(χ)` or `s(χ̄)` for a [`RationalSeries`] `s`.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalHardyElement {
    pub side: Side,
    pub series: RationalSeries,
}

impl RationalHardyElement {
    /// Validated constructor: every pole strictly inside the disk.
    pub fn new(side: Side, series: RationalSeries) -> Result<Self> {
        if let Some(t) = series.terms.iter().find(|t| t.pole.norm() >= 1.0 - 1e-9) {
            return Err(Error::InvalidInput(format!("pole {} is not inside the unit disk", t.pole)));
        }
        if side == Side::Minus && series.shift == 0 && series.coefficient(0) != ZERO {
            return Err(Error::InvalidInput("a Minus element must vanish at infinity".into()));
        }
        Ok(Self { side, series })
    }

    pub fn zero(side: Side) -> Self {
        Self { side, series: RationalSeries::zero() }
    }

    /// `Σ c/(1 − ωχ)^h` (or in χ̄).
    pub fn from_terms(side: Side, terms: Vec<FracTerm>) -> Self {
        Self { side, series: RationalSeries::from_terms(terms) }
    }

    pub fn is_zero(&self) -> bool {
        self.series.is_zero()
    }

    /// Fourier coefficient at frequency j.
    pub fn fourier_coeff(&self, j: i64) -> Complex64 {
        match (self.side, j >= 0) {
            (Side::Plus, true) => self.series.coefficient(j as usize),
            (Side::Minus, false) => self.series.coefficient((-j) as usize),
            (Side::Minus, true) if j == 0 => self.series.coefficient(0),
            _ => ZERO,
        }
    }

    pub fn eval(&self, theta: f64) -> Complex64 {
        let x = match self.side {
            Side::Plus => Complex64::from_polar(1.0, theta),
            Side::Minus => Complex64::from_polar(1.0, -theta),
        };
        self.series.eval(x)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self { side: self.side, series: self.series.scale(s) }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if self.side != other.side {
            return Err(Error::InvalidInput("cannot add elements of different sides".into()));
        }
        Ok(Self { side: self.side, series: self.series.add(&other.series)? })
    }

    /// `π_+(χ^r · self)`.
    pub fn project_plus(&self, r: i64) -> Self {
        let series = match self.side {
            Side::Plus if r >= 0 => {
                RationalSeries { shift: self.series.shift + r as usize, ..self.series.clone() }
            }
            Side::Plus => self.series.tail((-r) as usize),
            Side::Minus if r >= 0 => {
                let r = r as usize;
                let mut p = vec![ZERO; r + 1];
                for n in 0..=r {
                    p[r - n] = self.series.coefficient(n);
                }
                let mut s = RationalSeries::from_poly(p, 0);
                s.combine();
                s
            }
            Side::Minus => RationalSeries::zero(),
        };
        Self { side: Side::Plus, series }
    }

    /// `π_−(χ^r · self)`.
    pub fn project_minus(&self, r: i64) -> Self {
        let series = match self.side {
            Side::Plus if r >= 0 => RationalSeries::zero(),
            Side::Plus => {
                let q = (-r) as usize;
                let mut p = vec![ZERO; q];
                for n in 0..q {
                    p[q - n - 1] = self.series.coefficient(n);
                }
                let mut s = RationalSeries::from_poly(p, 1);
                s.combine();
                s
            }
            Side::Minus if r >= 0 => {
                let mut s = self.series.tail(r as usize + 1);
                s.shift += 1;
                s
            }
            Side::Minus => {
                RationalSeries { shift: self.series.shift + (-r) as usize, ..self.series.clone() }
            }
        };
        Self { side: Side::Minus, series }
    }

    /// Distinct poles with nonzero weight.
    pub fn poles(&self) -> Vec<Complex64> {
        self.series.poles()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// `H_{Φ_N}: ψ ↦ π_−(Φ_N ψ)`.
    Forward,
    /// `H_{Φ̃_N}: ψ ↦ π_+(Φ̃_N ψ)`.
    Backward,
}

fn find_pole(poles: &[Pole], w: Complex64) -> Option<usize> {
    poles.iter().position(|p| (p.value - w).norm() <= 1e-12 * p.value.norm().max(1.0))
}

/// `g · s` as a polynomial when every pole of `s` is a zero of `g` with enough multiplicity.
fn cancel_into_poly(poles: &[Pole], unit: Complex64, s: &RationalSeries) -> Result<Vec<Complex64>> {
    let pairs: Vec<(Complex64, usize)> = poles.iter().map(|p| (p.value, p.order)).collect();
    let g: Vec<Complex64> = poly::from_factors(&pairs).into_iter().map(|c| c * unit).collect();
    let mut acc = poly::mul(&g, &s.poly);
    for t in &s.terms {
        let j = find_pole(poles, t.pole)
            .filter(|&j| t.order <= poles[j].order)
            .ok_or_else(|| Error::InvalidInput(format!("pole {} of order {} is outside the stable subspace", t.pole, t.order)))?;
        let mut reduced = pairs.clone();
        reduced[j].1 -= t.order;
        let q: Vec<Complex64> = poly::from_factors(&reduced).into_iter().map(|c| c * unit * t.coeff).collect();
        if acc.len() < q.len() {
            acc.resize(q.len(), ZERO);
        }
        for (a, b) in acc.iter_mut().zip(q) {
            *a += b;
        }
    }
    let mut out = vec![ZERO; s.shift];
    out.extend(acc);
    Ok(out)
}

/// Applies `H_{Φ_N}` (to a Plus element built on the poles of `1/g1`) or `H_{Φ̃_N}`
/// (to a Minus element built on the poles of `1/g2`). The result is exact.
pub fn hankel_apply(
    factor: &SpectralFactorization,
    n: usize,
    x: &RationalHardyElement,
    direction: Direction,
) -> Result<RationalHardyElement> {
    match direction {
        Direction::Forward => {
            if x.side != Side::Plus {
                return Err(Error::InvalidInput("the forward operator acts on H+".into()));
            }
            let p = cancel_into_poly(factor.analytic_poles(), factor.unit(), &x.series)?;
            let inv_g2 = RationalHardyElement::from_terms(Side::Minus, factor.pf_g2_inv().to_vec());
            let mut out = RationalHardyElement::zero(Side::Minus);
            for (d, &c) in p.iter().enumerate() {
                if c != ZERO {
                    out = out.add(&inv_g2.project_minus((n + 1 + d) as i64).scale(c))?;
                }
            }
            Ok(out)
        }
        Direction::Backward => {
            if x.side != Side::Minus {
                return Err(Error::InvalidInput("the backward operator acts on (H+)⊥".into()));
            }
            let q = cancel_into_poly(factor.coanalytic_poles(), ONE, &x.series)?;
            let inv_g1 = RationalHardyElement::from_terms(Side::Plus, factor.pf_g1_inv().to_vec());
            let mut out = RationalHardyElement::zero(Side::Plus);
            for (d, &c) in q.iter().enumerate() {
                if c != ZERO {
                    out = out.add(&inv_g1.project_plus(-((n + 1 + d) as i64)).scale(c))?;
                }
            }
            Ok(out)
        }
    }
}

/// `H_{Φ̃_N}H_{Φ_N}` restricted to `E = span{1/(1 − β_jχ)^h}`.
#[derive(Debug, Clone)]
pub struct HankelProductMatrix {
    /// (index into the analytic poles, order).
    pub basis: Vec<(usize, usize)>,
    pub entries: DenseMatrix,
    pub n: usize,
    /// Operator norm in the L² metric of E; `None` when a pole sits on the circle.
    pub norm: Option<f64>,
}

fn basis_of(poles: &[Pole]) -> Vec<(usize, usize)> {
    poles.iter().enumerate().flat_map(|(j, p)| (1..=p.order).map(move |h| (j, h))).collect()
}

fn coords(basis: &[(usize, usize)], poles: &[Pole], s: &RationalSeries) -> Result<Vec<Complex64>> {
    let mut v = vec![ZERO; basis.len()];
    for t in &s.terms {
        let j = find_pole(poles, t.pole)
            .ok_or(Error::DegeneratePoles { pole: t.pole })?;
        let idx = basis
            .iter()
            .position(|&(bj, h)| bj == j && h == t.order)
            .ok_or(Error::DegeneratePoles { pole: t.pole })?;
        v[idx] += t.coeff;
    }
    Ok(v)
}

/// `⟨1/(1−aχ)^n, 1/(1−bχ)^k⟩ = Σ_t C(n−1,t)C(k−1,t) x^t / (1−x)^{n+k−1}`, `x = a·b̄`.
pub fn fraction_inner(a: Complex64, n: usize, b: Complex64, k: usize) -> Complex64 {
    let x = a * b.conj();
    let mut s = ZERO;
    for t in 0..n.min(k) {
        s += binomial(n - 1, t) * binomial(k - 1, t) * x.powi(t as i32);
    }
    s / (ONE - x).powi((n + k - 1) as i32)
}

fn gram(basis_a: &[(usize, usize)], pa: &[Pole], basis_b: &[(usize, usize)], pb: &[Pole]) -> DenseMatrix {
    DenseMatrix::from_fn(basis_a.len(), basis_b.len(), |i, j| {
        let (ja, na) = basis_a[i];
        let (jb, nb) = basis_b[j];
        fraction_inner(pa[ja].value, na, pb[jb].value, nb)
    })
}

pub fn hankel_product_matrix(factor: &SpectralFactorization, n: usize) -> Result<HankelProductMatrix> {
    let poles = factor.analytic_poles();
    let basis = basis_of(poles);
    let dim = basis.len();
    let mut entries = DenseMatrix::zeros(dim, dim);
    for (col, &(j, h)) in basis.iter().enumerate() {
        let e = RationalHardyElement::from_terms(
            Side::Plus,
            vec![FracTerm { pole: poles[j].value, order: h, coeff: ONE }],
        );
        let y = hankel_apply(factor, n, &e, Direction::Forward)?;
        let z = hankel_apply(factor, n, &y, Direction::Backward)?;
        if z.series.poly.iter().any(|c| *c != ZERO) {
            return Err(Error::InvalidInput("image left the stable subspace".into()));
        }
        for (row, v) in coords(&basis, poles, &z.series)?.into_iter().enumerate() {
            entries[(row, col)] = v;
        }
    }
    let norm = if poles.iter().all(|p| p.value.norm() < 1.0 - 1e-12) {
        Some(metric_norm(&basis, poles, &entries)?)
    } else {
        None
    };
    Ok(HankelProductMatrix { basis, entries, n, norm })
}

/// `‖Lᴴ M L^{−ᴴ}‖₂` where `LLᴴ` is the Gram matrix of the basis.
fn metric_norm(basis: &[(usize, usize)], poles: &[Pole], m: &DenseMatrix) -> Result<f64> {
    if basis.is_empty() {
        return Ok(0.0);
    }
    // H_{ab} = ⟨e_b, e_a⟩ so that ‖Σ c_a e_a‖² = cᴴ H c.
    let h = gram(basis, poles, basis, poles).transpose();
    let l = cholesky(&h)?;
    let linv = solve_lower(&l, &DenseMatrix::identity(basis.len()));
    l.adjoint().matmul(m)?.matmul(&linv.adjoint())?.norm2()
}

/// Precomputed pieces of the inversion formula for one factorization and order N.
#[derive(Debug, Clone)]
pub struct HankelInverse {
    n: usize,
    scale: Complex64,
    inv_g1: Vec<Complex64>,
    inv_g2: Vec<Complex64>,
    g2: Vec<Complex64>,
    product: HankelProductMatrix,
    lu: Option<Lu>,
    /// Coordinates of ζ_m in the basis of `span{1/(1 − ᾱ_iχ)^k}`, m = 0..=N.
    zeta: Vec<Vec<Complex64>>,
    /// ⟨e_a, e'_b⟩ between the E basis and the ζ basis.
    cross: DenseMatrix,
    factor: SpectralFactorization,
}

impl HankelInverse {
    pub fn new(factor: &SpectralFactorization, n: usize) -> Result<Self> {
        let product = hankel_product_matrix(factor, n)?;
        if let Some(norm) = product.norm {
            if norm >= 1.0 {
                return Err(Error::NeumannCondition { norm });
            }
        }
        let dim = product.basis.len();
        let lu = if dim == 0 {
            None
        } else {
            let i_m = DenseMatrix::identity(dim).sub(&product.entries)?;
            Some(Lu::factor(&i_m).map_err(|_| Error::SmallSystemSingular)?)
        };
        let inv_g1 = factor.inv_g1_taylor(n + 1);
        let inv_g2 = factor.inv_g2_taylor(n + 1);
        let g1 = factor.g1_coeffs();
        let g2 = factor.g2_coeffs();

        let zeta_poles: Vec<Pole> =
            factor.coanalytic_poles().iter().map(|p| Pole { value: p.value.conj(), order: p.order }).collect();
        let zeta_basis = basis_of(&zeta_poles);
        let inv_g2_bar = RationalSeries::from_terms(
            factor
                .pf_g2_inv()
                .iter()
                .map(|t| FracTerm { pole: t.pole.conj(), order: t.order, coeff: t.coeff.conj() })
                .collect(),
        );
        let mut zeta = Vec::with_capacity(n + 1);
        for m in 0..=n {
            // χ^{−N−1} · ḡ1 · η_m, with η_m = Σ_{k≤m} conj(d_{m−k}) χ^k
            let lo = -(g1.len() as i64 - 1);
            let mut laurent = vec![ZERO; (m as i64 - lo + 1) as usize];
            for k in 0..=m {
                let eta = inv_g1[m - k].conj();
                for (q, gq) in g1.iter().enumerate() {
                    laurent[(k as i64 - q as i64 - lo) as usize] += eta * gq.conj();
                }
            }
            let mut acc = vec![ZERO; zeta_basis.len()];
            for (i, &c) in laurent.iter().enumerate() {
                if c == ZERO {
                    continue;
                }
                let f = i as i64 + lo - n as i64 - 1;
                let part = inv_g2_bar.tail((-f) as usize);
                for (a, v) in acc.iter_mut().zip(coords(&zeta_basis, &zeta_poles, &part)?) {
                    *a += c * v;
                }
            }
            zeta.push(acc);
        }
        let cross = gram(&product.basis, factor.analytic_poles(), &zeta_basis, &zeta_poles);
        Ok(Self {
            n,
            scale: factor.scale(),
            inv_g1,
            inv_g2,
            g2,
            product,
            lu,
            zeta,
            cross,
            factor: factor.clone(),
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn product(&self) -> &HankelProductMatrix {
        &self.product
    }

    /// `π_+(Q/g2)` for a polynomial Q of degree ≤ N.
    fn psi(&self, q: &[Complex64]) -> Vec<Complex64> {
        let mut psi = vec![ZERO; self.n + 1];
        for (l, &ql) in q.iter().enumerate() {
            if ql == ZERO {
                continue;
            }
            for m in 0..=l {
                psi[m] += ql * self.inv_g2[l - m];
            }
        }
        psi
    }

    /// Coordinates of `(I − H̃H)^{-1} π_+(Φ̃_N ψ)` in the E basis.
    fn correction(&self, psi: &[Complex64]) -> Result<Vec<Complex64>> {
        let Some(lu) = &self.lu else { return Ok(Vec::new()) };
        // χ^{−N−1}·g2(χ̄)·ψ(χ): frequency k − q − N − 1
        let lo = -(self.g2.len() as i64 - 1);
        let mut laurent = vec![ZERO; (self.n as i64 - lo + 1) as usize];
        for (k, &p) in psi.iter().enumerate() {
            if p == ZERO {
                continue;
            }
            for (q, gq) in self.g2.iter().enumerate() {
                laurent[(k as i64 - q as i64 - lo) as usize] += p * gq;
            }
        }
        let inv_g1 = RationalSeries::from_terms(self.factor.pf_g1_inv().to_vec());
        let poles = self.factor.analytic_poles();
        let mut w = vec![ZERO; self.product.basis.len()];
        for (i, &c) in laurent.iter().enumerate() {
            if c == ZERO {
                continue;
            }
            let f = i as i64 + lo - self.n as i64 - 1;
            let part = inv_g1.tail((-f) as usize);
            for (a, v) in w.iter_mut().zip(coords(&self.product.basis, poles, &part)?) {
                *a += c * v;
            }
        }
        lu.solve(&w).map_err(|_| Error::SmallSystemSingular)
    }

    fn inner_with_zeta(&self, z: &[Complex64], m: usize) -> Complex64 {
        let zeta = &self.zeta[m];
        let mut s = ZERO;
        for (a, &za) in z.iter().enumerate() {
            for (b, &zb) in zeta.iter().enumerate() {
                s += za * zb.conj() * self.cross[(a, b)];
            }
        }
        s
    }

    /// `T_N^{-1}(f) Q` as coefficients of a polynomial of degree ≤ N.
    pub fn apply(&self, q: &[Complex64]) -> Result<Vec<Complex64>> {
        if q.len() > self.n + 1 {
            return Err(Error::DimensionMismatch { expected: self.n + 1, found: q.len() });
        }
        let psi = self.psi(q);
        let z = self.correction(&psi)?;
        Ok((0..=self.n)
            .map(|m| {
                let t1: Complex64 = (0..=m).map(|k| self.inv_g1[k] * psi[m - k]).sum();
                (t1 - self.inner_with_zeta(&z, m)) / self.scale
            })
            .collect())
    }

    /// Column l of the inverse.
    pub fn column(&self, l: usize) -> Result<Vec<Complex64>> {
        let mut e = vec![ZERO; l + 1];
        e[l] = ONE;
        self.apply(&e)
    }

    /// `(T_N^{-1})_{k,l}`, 0-based.
    pub fn entry(&self, k: usize, l: usize) -> Complex64 {
        let mut e = vec![ZERO; l + 1];
        e[l] = ONE;
        let psi = self.psi(&e);
        let z = self.correction(&psi).expect("system factored at construction");
        let t1: Complex64 = (0..=k).map(|j| self.inv_g1[j] * psi[k - j]).sum();
        (t1 - self.inner_with_zeta(&z, k)) / self.scale
    }

    pub fn full(&self) -> Result<DenseMatrix> {
        let dim = self.n + 1;
        let mut out = DenseMatrix::zeros(dim, dim);
        for l in 0..dim {
            for (k, v) in self.column(l)?.into_iter().enumerate() {
                out[(k, l)] = v;
            }
        }
        Ok(out)
    }
}

/// `T_N^{-1}(f) Q` through the Hankel formula.
pub fn invert_apply(factor: &SpectralFactorization, n: usize, q: &[Complex64]) -> Result<Vec<Complex64>> {
    HankelInverse::new(factor, n)?.apply(q)
}

/// `(T_N^{-1}(f))_{k,l}`, 0-based.
pub fn inverse_entry(factor: &SpectralFactorization, n: usize, k: usize, l: usize) -> Result<Complex64> {
    if k > n || l > n {
        return Err(Error::InvalidInput(format!("entry ({k}, {l}) outside a matrix of order {n}")));
    }
    Ok(HankelInverse::new(factor, n)?.entry(k, l))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::{wiener_hopf_factor, TrigSymbol};
    use crate::toeplitz::{dense_invert, ToeplitzMatrix};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn projection_examples() {
        let a = Complex64::new(0.4, 0.3);
        let x = RationalHardyElement::from_terms(Side::Minus, vec![FracTerm { pole: a, order: 1, coeff: ONE }]);
        let p = x.project_minus(2);
        // α³χ̄/(1 − αχ̄)
        for j in 1..20i64 {
            let want = a.powi(2 + j as i32);
            assert!((p.fourier_coeff(-j) - want).norm() < 1e-15);
        }
        assert_eq!(p.fourier_coeff(0), ZERO);
        let q = x.project_minus(0);
        assert!((q.fourier_coeff(-1) - a).norm() < 1e-15);
        assert_eq!(q.fourier_coeff(0), ZERO);
    }

    #[test]
    fn plus_minus_projections_split_the_product() {
        let x = RationalHardyElement::from_terms(
            Side::Plus,
            vec![FracTerm { pole: c(0.6), order: 2, coeff: c(1.3) }, FracTerm { pole: c(-0.2), order: 1, coeff: ONE }],
        );
        for r in [-5i64, -1, 0, 3] {
            let plus = x.project_plus(r);
            let minus = x.project_minus(r);
            for j in -12i64..12 {
                let want = x.fourier_coeff(j - r);
                let got = plus.fourier_coeff(j) * if j >= 0 { 1.0 } else { 0.0 }
                    + minus.fourier_coeff(j) * if j < 0 { 1.0 } else { 0.0 };
                assert!((got - want).norm() < 1e-13, "r={r} j={j}");
            }
        }
    }

    #[test]
    fn one_pole_forward() {
        let f = wiener_hopf_factor(&TrigSymbol::cosine(&[1.25, -1.0])).unwrap();
        let n = 6;
        let x = RationalHardyElement::from_terms(Side::Plus, vec![FracTerm { pole: c(0.5), order: 1, coeff: ONE }]);
        let y = hankel_apply(&f, n, &x, Direction::Forward).unwrap();
        // g1 x = 1, so y = π_−(χ^{N+1}/(1 − 0.5χ̄)) = 0.5^{N+2} χ̄/(1 − 0.5χ̄)
        for j in 1..10i64 {
            let want = 0.5f64.powi(n as i32 + 1 + j as i32);
            assert!((y.fourier_coeff(-j) - c(want)).norm() < 1e-15);
        }
        assert!(hankel_apply(&f, n, &RationalHardyElement::zero(Side::Plus), Direction::Forward)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn constant_symbol_has_empty_product() {
        let f = wiener_hopf_factor(&TrigSymbol::constant(2.0)).unwrap();
        let p = hankel_product_matrix(&f, 5).unwrap();
        assert_eq!(p.entries.rows(), 0);
        let inv = HankelInverse::new(&f, 6).unwrap();
        assert_eq!(inv.entry(2, 5), ZERO);
        assert_eq!(inv.entry(3, 3), c(0.5));
    }

    #[test]
    fn small_inverse_entry() {
        let f = wiener_hopf_factor(&TrigSymbol::cosine(&[1.25, -1.0])).unwrap();
        let v = inverse_entry(&f, 1, 0, 0).unwrap();
        assert!((v.re - 0.952381).abs() < 1e-6);
    }

    #[test]
    fn matches_dense_oracle() {
        for sym in [TrigSymbol::cosine(&[1.25, -1.0]), TrigSymbol::from_inside_roots(&[(c(0.5), 2)], 1.0)] {
            let n = 9;
            let f = wiener_hopf_factor(&sym).unwrap();
            let inv = HankelInverse::new(&f, n).unwrap().full().unwrap();
            let dense = dense_invert(&ToeplitzMatrix::build(&sym, n)).unwrap();
            assert!(inv.sub(&dense).unwrap().max_abs() < 1e-12);
        }
    }
}
