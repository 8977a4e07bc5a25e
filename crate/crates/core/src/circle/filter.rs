//! Scaling filters `(a_k)`, their masks, and the cascade approximation of `φ̂`.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::trig::{character, TrigPoly};
use crate::encoding::encode_int;
use crate::error::{Error, Result};
use crate::scalar::{compensated_sum, Scalar};
use crate::tree::Word;

/// Filter coefficients `a_0, a_1, …` and the scaling degree `d`.
#[derive(Debug, Clone, PartialEq)]
pub struct FilterCoeffs {
    a: Vec<Complex64>,
    degree: u32,
}

#[derive(Deserialize)]
struct FilterFile {
    a: Vec<serde_json::Value>,
    #[serde(default = "default_degree")]
    degree: u32,
}

fn default_degree() -> u32 {
    2
}

impl FilterCoeffs {
    pub fn new(a: Vec<Complex64>, degree: u32) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::Filter("no coefficients".into()));
        }
        if degree < 2 {
            return Err(Error::Filter(format!("scaling degree {degree} is below 2")));
        }
        if a.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Filter("non-finite coefficient".into()));
        }
        Ok(Self { a, degree })
    }

    pub fn real(a: &[f64], degree: u32) -> Result<Self> {
        Self::new(a.iter().map(|x| Complex64::new(*x, 0.0)).collect(), degree)
    }

    /// `(½, ½)`.
    pub fn haar() -> Self {
        Self::real(&[0.5, 0.5], 2).expect("valid")
    }

    /// `(½, 0, ½)`: orthogonality fails but the mask still has `m(0) = 1`.
    pub fn stretched_haar() -> Self {
        Self::real(&[0.5, 0.0, 0.5], 2).expect("valid")
    }

    /// Four taps, one vanishing moment beyond the constant:
    /// `a₀ = (1+√3)/8`, `a₁ = a₀ + ¼`, `a₂ = ½ - a₀`, `a₃ = ½ - a₁`.
    pub fn daubechies4() -> Self {
        let a0 = (1.0 + 3f64.sqrt()) / 8.0;
        let a1 = a0 + 0.25;
        Self::real(&[a0, a1, 0.5 - a0, 0.5 - a1], 2).expect("valid")
    }

    /// `{"a": [0.5, 0.5], "degree": 2}`; complex entries are `[re, im]`.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let file: FilterFile = serde_json::from_str(text)?;
        let a = file
            .a
            .into_iter()
            .map(|c| match serde_json::from_value::<[f64; 2]>(c.clone()) {
                Ok([re, im]) => Ok(Complex64::new(re, im)),
                Err(_) => serde_json::from_value::<f64>(c)
                    .map(|x| Complex64::new(x, 0.0))
                    .map_err(|e| Error::Filter(format!("coefficient must be a number or [re, im]: {e}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(a, file.degree)
    }

    pub fn from_json_file(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.a
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// `m(t) = Σ_k a_k e_k(t)`.
    pub fn mask(&self) -> TrigPoly<Complex64> {
        TrigPoly::new(self.a.iter().enumerate().map(|(k, a)| (k as i64, *a)))
    }

    pub fn mask_at(&self, t: f64) -> Complex64 {
        Complex64::sum_all(self.a.iter().enumerate().map(|(k, a)| a * character(k as i64, t)))
    }
}

/// Residuals of the orthogonality and normalization conditions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QmfReport {
    /// `(l, |Σ_k conj(a_k) a_{k+dl} - δ_{0,l}/d|)` for every shift with overlap.
    pub orthogonality: Vec<(i64, f64)>,
    /// `|Σ a_k - 1|`.
    pub normalization: f64,
}

pub const QMF_TOLERANCE: f64 = 1e-10;

impl QmfReport {
    pub fn max_residual(&self) -> f64 {
        self.orthogonality.iter().map(|(_, r)| *r).fold(self.normalization, f64::max)
    }

    pub fn passes(&self) -> bool {
        self.max_residual() <= QMF_TOLERANCE
    }
}

pub fn qmf_check(filter: &FilterCoeffs) -> QmfReport {
    let a = filter.coeffs();
    let d = filter.degree() as i64;
    let n = a.len() as i64;
    let max_shift = (n - 1) / d;
    let orthogonality = (-max_shift..=max_shift)
        .map(|l| {
            let s = Complex64::sum_all((0..n).filter_map(|k| {
                let j = k + d * l;
                (0..n).contains(&j).then(|| a[k as usize].conj() * a[j as usize])
            }));
            let target = if l == 0 { 1.0 / d as f64 } else { 0.0 };
            (l, (s - target).norm())
        })
        .collect();
    let normalization = (Complex64::sum_all(a.iter().copied()) - 1.0).norm();
    QmfReport { orthogonality, normalization }
}

/// `W = |m|²` as an exact coefficient convolution.
pub fn w_from_filter(filter: &FilterCoeffs) -> TrigPoly<Complex64> {
    let m = filter.mask();
    &m * &m.conj()
}

/// `φ̂_J(t) = Π_{j=1}^{J} m(t/d^j)`.
///
/// The product is accumulated from the innermost factor outwards, so
/// `φ̂_{J+1}(t) = m(t/d) · φ̂_J(t/d)` holds bit for bit when `d` is a power of two.
pub fn cascade_phihat(filter: &FilterCoeffs, t: f64, depth: u32) -> Complex64 {
    let d = filter.degree() as f64;
    let mut acc = Complex64::new(1.0, 0.0);
    for j in (1..=depth).rev() {
        acc = filter.mask_at(t / d.powi(j as i32)) * acc;
    }
    acc
}

/// `1 - Σ_{|n|≤K} |φ̂_J(t+n)|²`; zero exactly when the integer translates
/// of `φ` are orthonormal (up to truncation).
///
/// `φ̂_J` has period `d^J`, so for an orthogonal filter the defect is
/// nonnegative only while `2K + 1 ≤ d^J`.
pub fn tightness_defect(filter: &FilterCoeffs, t: f64, k: u32, depth: u32) -> f64 {
    1.0 - periodization(filter, t, k, depth)
}

/// `Σ_{|n|≤K} |φ̂_J(t+n)|²`.
pub fn periodization(filter: &FilterCoeffs, t: f64, k: u32, depth: u32) -> f64 {
    let k = k as i64;
    compensated_sum((-k..=k).map(|n| cascade_phihat(filter, t + n as f64, depth).norm_sqr()))
}

/// `|φ̂_J(t + τ⁰(w))|²` with the integer encoding of `w`.
pub fn pt_cylinder_mass(filter: &FilterCoeffs, t: f64, w: &Word, depth: u32) -> Result<f64> {
    let n = encode_int(w)?;
    Ok(cascade_phihat(filter, t + n as f64, depth).norm_sqr())
}

/// Translate-frame quantities computed from the periodization `P(t) = Σ_n |φ̂(t+n)|²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TranslateFrame {
    /// `Σ_k |⟨φ(·-k), φ⟩|² = ∫₀¹ P²`.
    pub translate_sum: f64,
    /// `‖φ‖² = ∫₀¹ P`.
    pub norm_sq: f64,
}

/// Midpoint-rule integrals of `P` and `P²` over `grid` points.
pub fn translate_frame(filter: &FilterCoeffs, k: u32, depth: u32, grid: usize) -> TranslateFrame {
    let p: Vec<f64> = (0..grid).map(|j| periodization(filter, (j as f64 + 0.5) / grid as f64, k, depth)).collect();
    TranslateFrame {
        translate_sum: compensated_sum(p.iter().map(|v| v * v)) / grid as f64,
        norm_sq: compensated_sum(p.iter().copied()) / grid as f64,
    }
}
