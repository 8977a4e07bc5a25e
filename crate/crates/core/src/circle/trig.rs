//! Trigonometric polynomials on the circle `ℝ/ℤ`.
//!
//! A polynomial is a finite map `k ↦ c_k` representing `Σ_k c_k e_k(t)` with
//! `e_k(t) = exp(-2πikt)`. Coefficients may be complex floats or exact
//! rationals; all algebra is done on coefficients.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::scalar::Scalar;

#[derive(Clone, PartialEq)]
pub struct TrigPoly<C = Complex64> {
    coeffs: BTreeMap<i64, C>,
}

/// `e_k(t) = exp(-2πikt)`, with `k·t` reduced mod 1 before scaling.
pub fn character(k: i64, t: f64) -> Complex64 {
    let phase = (k as f64 * t).rem_euclid(1.0);
    Complex64::from_polar(1.0, -TAU * phase)
}

impl<C: Scalar> TrigPoly<C> {
    /// Zero coefficients are dropped; repeated frequencies are summed.
    pub fn new(coeffs: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut map: BTreeMap<i64, C> = BTreeMap::new();
        for (k, c) in coeffs {
            let slot = map.entry(k).or_insert_with(C::zero);
            *slot = slot.clone() + c;
        }
        map.retain(|_, c| !c.is_zero());
        Self { coeffs: map }
    }

    pub fn zero() -> Self {
        Self { coeffs: BTreeMap::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::new([(0, c)])
    }

    /// `e_k`.
    pub fn exponential(k: i64) -> Self {
        Self::new([(k, C::one())])
    }

    pub fn coeff(&self, k: i64) -> C {
        self.coeffs.get(&k).cloned().unwrap_or_else(C::zero)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (i64, &C)> + '_ {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `max |k|` over the support; 0 for the zero polynomial.
    pub fn degree(&self) -> u64 {
        self.coeffs.keys().map(|k| k.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> TrigPoly<D> {
        TrigPoly::new(self.coeffs.iter().map(|(k, c)| (*k, f(c))))
    }

    pub fn scale(&self, a: &C) -> Self {
        self.map_coeffs(|c| c.clone() * a.clone())
    }

    /// Pointwise conjugate: `k ↦ conj(c_{-k})`.
    pub fn conj(&self) -> Self {
        Self::new(self.coeffs.iter().map(|(k, c)| (-k, c.conj())))
    }

    /// Real-valued on the circle: `c_{-k} = conj(c_k)` for every `k`.
    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|(k, c)| self.coeff(-k) == c.conj())
    }

    /// `∫₀¹ f(t) dt`.
    pub fn integral(&self) -> C {
        self.coeff(0)
    }

    /// `⟨f, g⟩ = ∫ conj(f) g = Σ_k conj(f_k) g_k`.
    pub fn inner(&self, other: &Self) -> C {
        C::sum_all(self.coeffs.iter().map(|(k, c)| c.conj() * other.coeff(*k)))
    }

    /// `∫ |f|²`.
    pub fn norm_sq(&self) -> C {
        self.inner(self)
    }

    /// `f(d·t)`: frequency `k` moves to `d·k`.
    pub fn dilate(&self, d: u32) -> Self {
        Self::new(self.coeffs.iter().map(|(k, c)| (k * d as i64, c.clone())))
    }

    /// Frequencies divisible by `d`, re-indexed `k ↦ k/d`. This is the
    /// branch average `(1/d) Σ_j f((t+j)/d)`.
    pub fn decimate(&self, d: u32) -> Self {
        let d = d as i64;
        Self::new(self.coeffs.iter().filter(|(k, _)| *k % d == 0).map(|(k, c)| (k / d, c.clone())))
    }

    /// `f(t) = Σ c_k e_k(t)` in floating point.
    pub fn eval(&self, t: f64) -> Complex64 {
        Complex64::sum_all(self.coeffs.iter().map(|(k, c)| c.to_complex() * character(*k, t)))
    }

    /// Values on the grid `j / n`, `j = 0..n`.
    pub fn sample(&self, n: usize) -> Vec<Complex64> {
        (0..n).map(|j| self.eval(j as f64 / n as f64)).collect()
    }

    pub fn to_complex(&self) -> TrigPoly<Complex64> {
        self.map_coeffs(Scalar::to_complex)
    }
}

impl TrigPoly<Complex64> {
    /// Largest coefficient-wise distance.
    pub fn max_coeff_diff(&self, other: &Self) -> f64 {
        self.coeffs
            .keys()
            .chain(other.coeffs.keys())
            .map(|k| (self.coeff(*k) - other.coeff(*k)).norm())
            .fold(0.0, f64::max)
    }

    /// Real coefficients on frequencies `-n..=n`; a convenience for tests and examples.
    pub fn from_real_coeffs(lowest: i64, coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().enumerate().map(|(i, c)| (lowest + i as i64, Complex64::new(*c, 0.0))))
    }
}

impl<C: Scalar> Add for &TrigPoly<C> {
    type Output = TrigPoly<C>;
    fn add(self, rhs: Self) -> TrigPoly<C> {
        TrigPoly::new(self.coeffs().chain(rhs.coeffs()).map(|(k, c)| (k, c.clone())))
    }
}

impl<C: Scalar> Neg for &TrigPoly<C> {
    type Output = TrigPoly<C>;
    fn neg(self) -> TrigPoly<C> {
        self.map_coeffs(|c| -c.clone())
    }
}

impl<C: Scalar> Sub for &TrigPoly<C> {
    type Output = TrigPoly<C>;
    fn sub(self, rhs: Self) -> TrigPoly<C> {
        self + &(-rhs)
    }
}

/// Pointwise product, i.e. coefficient convolution.
impl<C: Scalar> Mul for &TrigPoly<C> {
    type Output = TrigPoly<C>;
    fn mul(self, rhs: Self) -> TrigPoly<C> {
        TrigPoly::new(
            self.coeffs()
                .flat_map(|(j, a)| rhs.coeffs().map(move |(k, b)| (j + k, a.clone() * b.clone()))),
        )
    }
}

impl<C: Scalar> fmt::Debug for TrigPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.coeffs.iter()).finish()
    }
}
