//! Numeric scalars shared by the graph and tree code.
//!
//! Integer and rational scalars give exact arithmetic for the combinatorial
//! identities; `f64` and `Complex64` use compensated summation.

use std::fmt::Debug;
use std::ops::Neg;

use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::{Num, Zero};

/// Ring element usable as a vertex-function value or a conductance.
pub trait Scalar: Clone + Debug + PartialEq + Num + Neg<Output = Self> + Send + Sync + 'static {
    /// Complex conjugate; the identity for real types.
    fn conj(&self) -> Self;

    /// Sum of a sequence. Floating types override this with compensated summation.
    fn sum_all<I: IntoIterator<Item = Self>>(items: I) -> Self {
        items.into_iter().fold(Self::zero(), |acc, x| acc + x)
    }

    /// Lossy projection used for reporting and tolerance checks.
    fn to_f64(&self) -> f64;

    fn from_i64(n: i64) -> Self;

    fn to_complex(&self) -> Complex64 {
        Complex64::new(self.to_f64(), 0.0)
    }

    /// True for strictly positive real values; conductances must satisfy this.
    fn is_positive_real(&self) -> bool {
        self.to_f64() > 0.0
    }
}

/// Scalars where division is exact field division (not integer division).
pub trait FieldScalar: Scalar {}

/// Neumaier's variant of Kahan summation.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(items: I) -> f64 {
    let mut sum = 0.0_f64;
    let mut carry = 0.0_f64;
    for x in items {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            carry += (sum - t) + x;
        } else {
            carry += (x - t) + sum;
        }
        sum = t;
    }
    sum + carry
}

/// Deterministic pairwise summation; the result depends only on the order of `xs`.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    const LEAF: usize = 64;
    if xs.len() <= LEAF {
        return compensated_sum(xs.iter().copied());
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

impl Scalar for i64 {
    fn conj(&self) -> Self {
        *self
    }
    fn from_i64(n: i64) -> Self {
        n
    }
    fn to_f64(&self) -> f64 {
        *self as f64
    }
}

impl Scalar for f64 {
    fn conj(&self) -> Self {
        *self
    }
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn sum_all<I: IntoIterator<Item = Self>>(items: I) -> Self {
        compensated_sum(items)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}
impl FieldScalar for f64 {}

impl Scalar for Complex64 {
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn sum_all<I: IntoIterator<Item = Self>>(items: I) -> Self {
        let (re, im): (Vec<f64>, Vec<f64>) = items.into_iter().map(|z| (z.re, z.im)).unzip();
        Complex64::new(compensated_sum(re), compensated_sum(im))
    }
    /// Real part.
    fn to_f64(&self) -> f64 {
        self.re
    }
    fn to_complex(&self) -> Complex64 {
        *self
    }
    fn is_positive_real(&self) -> bool {
        self.im == 0.0 && self.re > 0.0
    }
}
impl FieldScalar for Complex64 {}

impl Scalar for Rational64 {
    fn conj(&self) -> Self {
        *self
    }
    fn from_i64(n: i64) -> Self {
        Rational64::from_integer(n)
    }
    fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        *self.numer() as f64 / *self.denom() as f64
    }
    fn is_positive_real(&self) -> bool {
        *self.numer() > 0
    }
}
impl FieldScalar for Rational64 {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum_recovers_cancelled_terms() {
        let xs = [1e16, 1.0, -1e16, 1.0];
        assert_eq!(compensated_sum(xs), 2.0);
    }

    #[test]
    fn pairwise_sum_matches_exact_integers() {
        let xs: Vec<f64> = (1..=1000).map(f64::from).collect();
        assert_eq!(pairwise_sum(&xs), 500_500.0);
    }
}
