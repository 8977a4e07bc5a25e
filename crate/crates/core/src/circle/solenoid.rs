//! Random walk on backward orbits of `σ(t) = 2t mod 1`.
//!
//! From `t` the walk moves to one of the two preimages `t/2` and `t/2 + ½`
//! with probabilities `W(t/2)` and `W(t/2 + ½)`. States are exact dyadic
//! rationals, so long walks accumulate no rounding.

use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::transfer::{branch_sum_defect, transfer_apply};
use super::trig::TrigPoly;
use crate::error::{Error, Result};
use crate::path_measure::checks::Estimate;
use crate::path_measure::simulate::with_thread_cap;
use crate::scalar::Scalar;

pub const MAX_LEVEL: u32 = 127;
/// Grid used to validate `W(t/2) + W(t/2+½) = 1` before walking.
pub const BRANCH_GRID: usize = 512;
pub const BRANCH_TOLERANCE: f64 = 1e-10;
const NEGATIVE_TOLERANCE: f64 = 1e-12;

/// `numerator / 2^level` in `[0, 1)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct DyadicAngle {
    numerator: u128,
    level: u32,
}

impl DyadicAngle {
    pub fn new(numerator: u128, level: u32) -> Result<Self> {
        if level > MAX_LEVEL {
            return Err(Error::LevelOverflow(level));
        }
        if numerator >> level != 0 {
            return Err(Error::InvalidArgument(format!("{numerator}/2^{level} is not in [0, 1)")));
        }
        Ok(Self { numerator, level })
    }

    pub fn zero() -> Self {
        Self { numerator: 0, level: 0 }
    }

    pub fn numerator(&self) -> u128 {
        self.numerator
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn value(&self) -> f64 {
        self.numerator as f64 / (self.level as f64).exp2()
    }

    /// `t/2 + branch/2`, one level deeper.
    pub fn preimage(&self, branch: bool) -> Result<Self> {
        let level = self.level + 1;
        if level > MAX_LEVEL {
            return Err(Error::LevelOverflow(level));
        }
        Ok(Self { numerator: self.numerator + ((branch as u128) << self.level), level })
    }

    /// `σ(t) = 2t mod 1`.
    pub fn double(&self) -> Self {
        if self.level == 0 {
            return *self;
        }
        let level = self.level - 1;
        Self { numerator: self.numerator & ((1u128 << level) - 1), level }
    }

    /// `e_k(t)` with `k·t` reduced mod 1 in integer arithmetic.
    pub fn character(&self, k: i64) -> Complex64 {
        let modulus_mask = (1u128 << self.level) - 1;
        let k_mod = (k as i128 as u128) & modulus_mask;
        let r = k_mod.wrapping_mul(self.numerator) & modulus_mask;
        let phase = r as f64 / (self.level as f64).exp2();
        Complex64::from_polar(1.0, -std::f64::consts::TAU * phase)
    }

    /// `f(t)` for a trigonometric polynomial.
    pub fn eval(&self, f: &TrigPoly<Complex64>) -> Complex64 {
        Complex64::sum_all(f.coeffs().map(|(k, c)| c * self.character(k)))
    }
}

impl fmt::Debug for DyadicAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}", self.numerator, self.level)
    }
}

impl fmt::Display for DyadicAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolenoidStart {
    Point(DyadicAngle),
    /// Uniform on `{j / 2^level}`.
    UniformGrid(u32),
}

/// `W ≡ ½`: both preimages equally likely.
pub fn half_weight() -> TrigPoly<Complex64> {
    TrigPoly::constant(Complex64::new(0.5, 0.0))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolenoidEnsemble {
    seed: u64,
    n_paths: usize,
    n_steps: usize,
    states: Vec<DyadicAngle>,
}

impl SolenoidEnsemble {
    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn n_paths(&self) -> usize {
        self.n_paths
    }

    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    pub fn path(&self, i: usize) -> &[DyadicAngle] {
        let len = self.n_steps + 1;
        &self.states[i * len..(i + 1) * len]
    }

    pub fn paths(&self) -> impl Iterator<Item = &[DyadicAngle]> + '_ {
        self.states.chunks(self.n_steps + 1)
    }
}

fn weight_at(w: &TrigPoly<Complex64>, t: &DyadicAngle) -> Result<f64> {
    let v = t.eval(w).re;
    if v < -NEGATIVE_TOLERANCE {
        return Err(Error::NegativeWeight { value: v, at: t.value() });
    }
    Ok(v.max(0.0))
}

fn walk_one(w: &TrigPoly<Complex64>, start: SolenoidStart, seed: u64, stream: u64, path: &mut [DyadicAngle]) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut t = match start {
        SolenoidStart::Point(p) => p,
        SolenoidStart::UniformGrid(level) => {
            let numerator = if level == 0 { 0 } else { rng.random::<u128>() >> (128 - level) };
            DyadicAngle::new(numerator, level)?
        }
    };
    path[0] = t;
    for slot in &mut path[1..] {
        let p0 = weight_at(w, &t.preimage(false)?)?;
        t = t.preimage(rng.random::<f64>() >= p0)?;
        *slot = t;
    }
    Ok(())
}

/// Simulates `n_paths` walks of `n_steps` steps. Path `i` uses ChaCha8 stream `i`.
pub fn solenoid_walk(
    w: &TrigPoly<Complex64>,
    n_steps: usize,
    n_paths: usize,
    seed: u64,
    start: SolenoidStart,
) -> Result<SolenoidEnsemble> {
    let defect = branch_sum_defect(w, 2, BRANCH_GRID);
    if defect > BRANCH_TOLERANCE {
        return Err(Error::Filter(format!("W(t/2) + W(t/2+1/2) deviates from 1 by {defect:e}")));
    }
    let start_level = match start {
        SolenoidStart::Point(p) => p.level(),
        SolenoidStart::UniformGrid(level) => level,
    };
    let final_level = start_level as u64 + n_steps as u64;
    if final_level > MAX_LEVEL as u64 {
        return Err(Error::LevelOverflow(final_level.min(u32::MAX as u64) as u32));
    }
    let len = n_steps + 1;
    let mut states = vec![DyadicAngle::zero(); n_paths * len];
    with_thread_cap(|| {
        states
            .par_chunks_mut(len)
            .enumerate()
            .map(|(i, path)| walk_one(w, start, seed, i as u64, path))
            .collect::<Result<Vec<()>>>()
    })??;
    Ok(SolenoidEnsemble { seed, n_paths, n_steps, states })
}

/// Mean of `Re f₁(Z_n) · Re f₂(Z_{n+1})`.
pub fn solenoid_covariance_mc(
    ens: &SolenoidEnsemble,
    f1: &TrigPoly<Complex64>,
    f2: &TrigPoly<Complex64>,
    n: usize,
) -> Result<Estimate> {
    if n + 1 > ens.n_steps() {
        return Err(Error::InvalidArgument(format!("step {} beyond the {} simulated", n + 1, ens.n_steps())));
    }
    let xs: Vec<f64> = ens.paths().map(|p| p[n].eval(f1).re * p[n + 1].eval(f2).re).collect();
    Ok(Estimate::from_samples(&xs))
}

/// `E[f₁(Z_n) f₂(Z_{n+1})] = E[(T_Wⁿ(f₁ · T_W f₂))(Z₀)]`, computed on
/// coefficients. A uniform grid start of level `L` averages over `j/2^L`,
/// which keeps exactly the frequencies divisible by `2^L`.
pub fn solenoid_covariance_exact(
    w: &TrigPoly<Complex64>,
    f1: &TrigPoly<Complex64>,
    f2: &TrigPoly<Complex64>,
    n: usize,
    start: SolenoidStart,
) -> Result<f64> {
    let mut h = f1 * &transfer_apply(w, f2, 2)?;
    for _ in 0..n {
        h = transfer_apply(w, &h, 2)?;
    }
    Ok(match start {
        SolenoidStart::Point(p) => p.eval(&h).re,
        SolenoidStart::UniformGrid(level) => {
            let period = 1i128 << level;
            Complex64::sum_all(h.coeffs().filter(|(k, _)| *k as i128 % period == 0).map(|(_, c)| *c)).re
        }
    })
}

/// `∫ f g dt` on coefficients.
pub fn lebesgue_pairing(f: &TrigPoly<Complex64>, g: &TrigPoly<Complex64>) -> Complex64 {
    (f * g).integral()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::filter::{w_from_filter, FilterCoeffs};

    #[test]
    fn angle_arithmetic() {
        let t = DyadicAngle::new(3, 3).unwrap();
        assert_eq!(t.value(), 0.375);
        assert_eq!(t.preimage(true).unwrap().value(), 0.6875);
        assert_eq!(t.preimage(true).unwrap().double(), t);
        assert_eq!(t.preimage(false).unwrap().double(), t);
        assert!(DyadicAngle::new(8, 3).is_err());
        assert!(matches!(DyadicAngle::new(0, 128), Err(Error::LevelOverflow(128))));
        let deep = DyadicAngle::new(1, 127).unwrap();
        assert!(matches!(deep.preimage(false), Err(Error::LevelOverflow(128))));
    }

    #[test]
    fn characters_are_reduced_exactly() {
        let t = DyadicAngle::new(1, 2).unwrap();
        assert!((t.character(1) - Complex64::new(0.0, -1.0)).norm() < 1e-15);
        assert!((t.character(4) - 1.0).norm() == 0.0);
        assert!((t.character(-1) - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        let f = TrigPoly::from_real_coeffs(-1, &[0.25, 0.5, 0.25]);
        assert!((t.eval(&f).re - f.eval(0.25).re).abs() < 1e-15);
    }

    #[test]
    fn haar_walk_is_frozen_at_zero() {
        let w = w_from_filter(&FilterCoeffs::haar());
        let ens = solenoid_walk(&w, 20, 200, 1, SolenoidStart::Point(DyadicAngle::zero())).unwrap();
        for p in ens.paths() {
            assert!(p.iter().all(|t| t.numerator() == 0));
        }
        let f = TrigPoly::from_real_coeffs(-1, &[0.5, 0.3, 0.5]);
        let exact = solenoid_covariance_exact(&w, &f, &f, 4, SolenoidStart::Point(DyadicAngle::zero())).unwrap();
        assert!((exact - 1.3 * 1.3).abs() < 1e-14);
        let est = solenoid_covariance_mc(&ens, &f, &f, 4).unwrap();
        assert_eq!(est.sigmas(exact), 0.0);
    }

    #[test]
    fn half_weight_covariance() {
        let w = half_weight();
        let ens = solenoid_walk(&w, 6, 20_000, 3, SolenoidStart::UniformGrid(10)).unwrap();
        let f1 = TrigPoly::from_real_coeffs(-1, &[0.5, 0.0, 0.5]);
        let f2 = TrigPoly::from_real_coeffs(-2, &[0.5, 0.0, 0.0, 0.0, 0.5]);
        let exact = lebesgue_pairing(&f1, &transfer_apply(&w, &f2, 2).unwrap()).re;
        assert!((solenoid_covariance_exact(&w, &f1, &f2, 2, SolenoidStart::UniformGrid(10)).unwrap() - exact).abs() < 1e-15);
        let est = solenoid_covariance_mc(&ens, &f1, &f2, 2).unwrap();
        assert!(est.sigmas(exact) <= 5.0, "{est:?} vs {exact}");
    }

    #[test]
    fn reproducible() {
        let w = half_weight();
        let a = solenoid_walk(&w, 10, 100, 4, SolenoidStart::UniformGrid(5)).unwrap();
        let b = solenoid_walk(&w, 10, 100, 4, SolenoidStart::UniformGrid(5)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_bad_weights() {
        let w = TrigPoly::constant(Complex64::new(0.7, 0.0));
        assert!(matches!(solenoid_walk(&w, 3, 3, 0, SolenoidStart::UniformGrid(2)), Err(Error::Filter(_))));
        let neg = TrigPoly::from_real_coeffs(-1, &[0.75, 0.5, 0.75]);
        assert!(matches!(
            solenoid_walk(&neg, 3, 10, 0, SolenoidStart::UniformGrid(3)),
            Err(Error::NegativeWeight { .. })
        ));
        assert!(matches!(
            solenoid_walk(&half_weight(), 120, 1, 0, SolenoidStart::UniformGrid(10)),
            Err(Error::LevelOverflow(_))
        ));
    }
}
