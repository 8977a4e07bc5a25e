//! Monte Carlo estimators compared against exact transfer-operator values.
//!
//! Every comparison reports `sigmas = |estimate - exact| / se` and passes
//! when it is at most [`SIGMA_THRESHOLD`]. An estimate with zero standard
//! error counts as 0 sigmas when it matches the exact value and as infinite
//! otherwise; gaps below `1e-12` relative count as a match.

use serde::Serialize;

use super::chain::FiniteMarkov;
use super::simulate::{simulate_from, PathEnsemble, Start};
use crate::error::{Error, Result};
use crate::scalar::pairwise_sum;

pub const SIGMA_THRESHOLD: f64 = 5.0;
/// States visited fewer times are left out of conditional checks.
pub const MIN_VISITS: usize = 100;

/// Sample mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub mean: f64,
    pub se: f64,
    pub count: usize,
}

impl Estimate {
    pub fn from_samples(xs: &[f64]) -> Self {
        let count = xs.len();
        if count == 0 {
            return Self { mean: f64::NAN, se: f64::NAN, count };
        }
        if xs.iter().all(|x| *x == xs[0]) {
            return Self { mean: xs[0], se: 0.0, count };
        }
        let mean = pairwise_sum(xs) / count as f64;
        let se = if count < 2 {
            0.0
        } else {
            let dev: Vec<f64> = xs.iter().map(|x| (x - mean) * (x - mean)).collect();
            (pairwise_sum(&dev) / (count - 1) as f64 / count as f64).sqrt()
        };
        Self { mean, se, count }
    }

    pub fn sigmas(&self, exact: f64) -> f64 {
        let gap = (self.mean - exact).abs();
        if gap <= 1e-12 * exact.abs().max(1.0) {
            0.0
        } else if self.se > 0.0 {
            gap / self.se
        } else {
            f64::INFINITY
        }
    }
}

/// One estimate against its exact value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub label: String,
    pub estimate: f64,
    pub exact: f64,
    pub se: f64,
    pub sigmas: f64,
    pub count: usize,
}

impl Comparison {
    pub fn new(label: impl Into<String>, est: Estimate, exact: f64) -> Self {
        Self { label: label.into(), estimate: est.mean, exact, se: est.se, sigmas: est.sigmas(exact), count: est.count }
    }

    pub fn passes(&self) -> bool {
        self.sigmas <= SIGMA_THRESHOLD
    }
}

/// Per-condition comparisons plus the conditions that were too rarely visited.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub rows: Vec<Comparison>,
    pub under_visited: Vec<String>,
}

impl CheckReport {
    pub fn max_sigmas(&self) -> f64 {
        self.rows.iter().map(|r| r.sigmas).fold(0.0, f64::max)
    }

    /// At least one row, all within threshold.
    pub fn passes(&self) -> bool {
        !self.rows.is_empty() && self.rows.iter().all(Comparison::passes)
    }
}

fn check_len(f: &[f64], n: usize) -> Result<()> {
    if f.len() != n {
        return Err(Error::Dimension { expected: n, got: f.len() });
    }
    Ok(())
}

fn check_step(ens: &PathEnsemble, k: usize) -> Result<()> {
    if k > ens.n_steps() {
        return Err(Error::InvalidArgument(format!("step {k} beyond the {} simulated", ens.n_steps())));
    }
    Ok(())
}

/// Mean of `f₁(Z_n) f₂(Z_{n+1})` over the ensemble.
pub fn covariance_mc(ens: &PathEnsemble, f1: &[f64], f2: &[f64], n: usize) -> Result<Estimate> {
    check_len(f1, ens.n_states())?;
    check_len(f2, ens.n_states())?;
    check_step(ens, n + 1)?;
    let xs: Vec<f64> = ens.paths().map(|p| f1[p[n] as usize] * f2[p[n + 1] as usize]).collect();
    Ok(Estimate::from_samples(&xs))
}

/// Empirical law of `Z_k` against `μ₀Pᵏ`, one row per state.
pub fn marginal_check(ens: &PathEnsemble, fm: &FiniteMarkov, k: usize) -> Result<CheckReport> {
    check_step(ens, k)?;
    let exact = fm.marginal(k);
    let column = ens.column(k);
    let rows = (0..fm.len())
        .map(|x| {
            let xs: Vec<f64> = column.iter().map(|z| (*z == x) as u8 as f64).collect();
            Comparison::new(format!("P(Z_{k}={x})"), Estimate::from_samples(&xs), exact[x])
        })
        .collect();
    Ok(CheckReport { rows, under_visited: Vec::new() })
}

/// Frequency of each edge `(Z_k, Z_{k+1}) = (x, y)` with `p(x,y) > 0` against `μ_k(x)p(x,y)`.
pub fn edge_frequency_check(ens: &PathEnsemble, fm: &FiniteMarkov, k: usize) -> Result<CheckReport> {
    check_step(ens, k + 1)?;
    let mu = fm.marginal(k);
    let mut rows = Vec::new();
    for x in 0..fm.len() {
        for y in 0..fm.len() {
            if fm.p(x, y) > 0.0 {
                let xs: Vec<f64> = ens.paths().map(|p| (p[k] as usize == x && p[k + 1] as usize == y) as u8 as f64).collect();
                rows.push(Comparison::new(format!("P(Z_{k}={x},Z_{}={y})", k + 1), Estimate::from_samples(&xs), mu[x] * fm.p(x, y)));
            }
        }
    }
    Ok(CheckReport { rows, under_visited: Vec::new() })
}

/// Frequency of the cylinder `{Z₀∈E₀, …, Z_n∈E_n}`.
pub fn cylinder_frequency(ens: &PathEnsemble, sets: &[Vec<usize>]) -> Result<Estimate> {
    if sets.is_empty() {
        return Ok(Estimate { mean: 1.0, se: 0.0, count: ens.n_paths() });
    }
    check_step(ens, sets.len() - 1)?;
    let mut masks = vec![vec![false; ens.n_states()]; sets.len()];
    for (mask, set) in masks.iter_mut().zip(sets) {
        for &x in set {
            if x >= ens.n_states() {
                return Err(Error::Dimension { expected: ens.n_states(), got: x });
            }
            mask[x] = true;
        }
    }
    let xs: Vec<f64> = ens.paths().map(|p| masks.iter().zip(p).all(|(m, z)| m[*z as usize]) as u8 as f64).collect();
    Ok(Estimate::from_samples(&xs))
}

/// Groups `value(path)` by `key(path)` and compares each group's mean with `exact(key)`.
fn binned(
    ens: &PathEnsemble,
    key_count: usize,
    key: impl Fn(&[u32]) -> Option<usize>,
    value: impl Fn(&[u32]) -> f64,
    exact: impl Fn(usize) -> f64,
    label: impl Fn(usize) -> String,
) -> CheckReport {
    let mut bins: Vec<Vec<f64>> = vec![Vec::new(); key_count];
    for p in ens.paths() {
        if let Some(k) = key(p) {
            bins[k].push(value(p));
        }
    }
    let mut rows = Vec::new();
    let mut under_visited = Vec::new();
    for (k, xs) in bins.iter().enumerate() {
        if xs.len() >= MIN_VISITS {
            rows.push(Comparison::new(label(k), Estimate::from_samples(xs), exact(k)));
        } else if !xs.is_empty() {
            under_visited.push(label(k));
        }
    }
    CheckReport { rows, under_visited }
}

/// `E[f(Z_{n+1}) | Z_n = x]` against `(Tf)(x)` for every well-visited `x`.
pub fn markov_check(ens: &PathEnsemble, fm: &FiniteMarkov, f: &[f64], n: usize) -> Result<CheckReport> {
    check_len(f, fm.len())?;
    check_step(ens, n + 1)?;
    let tf = fm.transfer(f)?;
    Ok(binned(
        ens,
        fm.len(),
        |p| Some(p[n] as usize),
        |p| f[p[n + 1] as usize],
        |x| tf[x],
        |x| format!("E[f(Z_{})|Z_{n}={x}]", n + 1),
    ))
}

/// `E[f(Z_{n+1}) | Z_{n-1} = w, Z_n = x]` against `(Tf)(x)`: the extra
/// conditioning on `Z_{n-1}` must not matter.
pub fn two_step_check(ens: &PathEnsemble, fm: &FiniteMarkov, f: &[f64], n: usize) -> Result<CheckReport> {
    check_len(f, fm.len())?;
    if n == 0 {
        return Err(Error::InvalidArgument("two-step conditioning needs n >= 1".into()));
    }
    check_step(ens, n + 1)?;
    let s = fm.len();
    let tf = fm.transfer(f)?;
    Ok(binned(
        ens,
        s * s,
        |p| Some(p[n - 1] as usize * s + p[n] as usize),
        |p| f[p[n + 1] as usize],
        |k| tf[k % s],
        |k| format!("E[f(Z_{})|Z_{}={},Z_{n}={}]", n + 1, n - 1, k / s, k % s),
    ))
}

/// `E[h(Z_{n+1}) - h(Z_n) | Z_n = x] = 0`, pooled over all steps `n`.
pub fn martingale_check(ens: &PathEnsemble, h: &[f64]) -> Result<CheckReport> {
    check_len(h, ens.n_states())?;
    let mut bins: Vec<Vec<f64>> = vec![Vec::new(); ens.n_states()];
    for p in ens.paths() {
        for w in p.windows(2) {
            bins[w[0] as usize].push(h[w[1] as usize] - h[w[0] as usize]);
        }
    }
    let mut rows = Vec::new();
    let mut under_visited = Vec::new();
    for (x, xs) in bins.iter().enumerate() {
        let label = format!("E[h(Z_n+1)-h(Z_n)|Z_n={x}]");
        if xs.len() >= MIN_VISITS {
            rows.push(Comparison::new(label, Estimate::from_samples(xs), 0.0));
        } else if !xs.is_empty() {
            under_visited.push(label);
        }
    }
    Ok(CheckReport { rows, under_visited })
}

/// For each start `x`, the mean of `h(Z_N)` over paths from `x` against `h(x)`.
pub fn doob_boundary_check(fm: &FiniteMarkov, h: &[f64], big_n: usize, n_paths: usize, seed: u64) -> Result<CheckReport> {
    check_len(h, fm.len())?;
    let mut rows = Vec::new();
    for x in 0..fm.len() {
        let ens = simulate_from(fm, Start::State(x), big_n, n_paths, seed, (x * n_paths) as u64)?;
        let xs: Vec<f64> = ens.paths().map(|p| h[p[big_n] as usize]).collect();
        rows.push(Comparison::new(format!("E_{x}[h(Z_{big_n})]"), Estimate::from_samples(&xs), h[x]));
    }
    Ok(CheckReport { rows, under_visited: Vec::new() })
}
