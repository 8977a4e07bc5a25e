//! Finite-state Markov kernels and their exact quantities.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::linalg::{self, SquareMatrix};
use crate::scalar::compensated_sum;

const STOCHASTIC_TOLERANCE: f64 = 1e-12;

/// Row-stochastic kernel `p` on states `0..n` with an initial measure `μ₀`.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMarkov {
    labels: Vec<String>,
    p: Vec<Vec<f64>>,
    mu0: Vec<f64>,
}

fn check_measure(mu: &[f64], n: usize) -> Result<()> {
    if mu.len() != n {
        return Err(Error::Dimension { expected: n, got: mu.len() });
    }
    if let Some((x, m)) = mu.iter().enumerate().find(|(_, m)| **m < 0.0 || !m.is_finite()) {
        return Err(Error::Measure(format!("entry {x} is {m}")));
    }
    let total = compensated_sum(mu.iter().copied());
    if (total - 1.0).abs() > STOCHASTIC_TOLERANCE {
        return Err(Error::Measure(format!("total mass {total} is not 1")));
    }
    Ok(())
}

impl FiniteMarkov {
    pub fn new(p: Vec<Vec<f64>>, mu0: Vec<f64>) -> Result<Self> {
        let n = p.len();
        if n == 0 {
            return Err(Error::Kernel("no states".into()));
        }
        for (x, row) in p.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Kernel(format!("row {x} has {} entries, expected {n}", row.len())));
            }
            if let Some(v) = row.iter().find(|v| **v < 0.0 || !v.is_finite()) {
                return Err(Error::Kernel(format!("row {x} has entry {v}")));
            }
            let total = compensated_sum(row.iter().copied());
            if (total - 1.0).abs() > STOCHASTIC_TOLERANCE {
                return Err(Error::Kernel(format!("row {x} sums to {total}")));
            }
        }
        check_measure(&mu0, n)?;
        Ok(Self { labels: (0..n).map(|x| x.to_string()).collect(), p, mu0 })
    }

    /// The walk `p(x,y) = c(x,y)/c(x)` started from `μ₀ ∝ c`.
    pub fn from_graph(g: &WeightedGraph<f64>) -> Self {
        Self { labels: g.ids().to_vec(), p: g.transition_matrix(), mu0: g.conductance_measure() }
    }

    /// Uniform initial measure.
    pub fn uniform(p: Vec<Vec<f64>>) -> Result<Self> {
        let n = p.len().max(1);
        Self::new(p, vec![1.0 / n as f64; n])
    }

    pub fn with_initial(mut self, mu0: Vec<f64>) -> Result<Self> {
        check_measure(&mu0, self.len())?;
        self.mu0 = mu0;
        Ok(self)
    }

    /// Same chain with `states` made absorbing: `p(x,x) = 1`.
    pub fn absorbing(mut self, states: &[usize]) -> Result<Self> {
        for &x in states {
            if x >= self.len() {
                return Err(Error::Dimension { expected: self.len(), got: x });
            }
            self.p[x] = (0..self.len()).map(|y| if y == x { 1.0 } else { 0.0 }).collect();
        }
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn p(&self, x: usize, y: usize) -> f64 {
        self.p[x][y]
    }

    pub fn kernel(&self) -> &[Vec<f64>] {
        &self.p
    }

    pub fn mu0(&self) -> &[f64] {
        &self.mu0
    }

    fn check_fn(&self, f: &[f64]) -> Result<()> {
        if f.len() != self.len() {
            return Err(Error::Dimension { expected: self.len(), got: f.len() });
        }
        Ok(())
    }

    /// `(Tf)(x) = Σ_y p(x,y) f(y)`.
    pub fn transfer(&self, f: &[f64]) -> Result<Vec<f64>> {
        self.check_fn(f)?;
        Ok(self.p.iter().map(|row| linalg::dot(row, f)).collect())
    }

    pub fn transfer_power(&self, f: &[f64], n: usize) -> Result<Vec<f64>> {
        let mut g = f.to_vec();
        for _ in 0..n {
            g = self.transfer(&g)?;
        }
        Ok(g)
    }

    /// `μ ↦ μP`.
    pub fn push_forward(&self, mu: &[f64]) -> Result<Vec<f64>> {
        self.check_fn(mu)?;
        Ok((0..self.len()).map(|y| compensated_sum(mu.iter().zip(&self.p).map(|(m, row)| m * row[y]))).collect())
    }

    /// Law of `Z_k` under `μ₀`.
    pub fn marginal(&self, k: usize) -> Vec<f64> {
        let mut mu = self.mu0.clone();
        for _ in 0..k {
            mu = self.push_forward(&mu).expect("same dimension");
        }
        mu
    }

    /// `∫ f dμ₀`.
    pub fn expectation(&self, f: &[f64]) -> Result<f64> {
        self.check_fn(f)?;
        Ok(linalg::dot(&self.mu0, f))
    }

    fn reachable_from(&self, start: usize, forward: bool) -> Vec<bool> {
        let mut seen = vec![false; self.len()];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for y in 0..self.len() {
                let weight = if forward { self.p[x][y] } else { self.p[y][x] };
                if weight > 0.0 && !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// Every state reaches every other.
    pub fn is_irreducible(&self) -> bool {
        self.reachable_from(0, true).iter().all(|b| *b) && self.reachable_from(0, false).iter().all(|b| *b)
    }

    /// Period of an irreducible chain: gcd of `level(x) + 1 - level(y)` over edges.
    pub fn period(&self) -> Result<usize> {
        if !self.is_irreducible() {
            return Err(Error::Reducible("period is defined for irreducible chains".into()));
        }
        let mut level = vec![usize::MAX; self.len()];
        level[0] = 0;
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for y in 0..self.len() {
                if self.p[x][y] > 0.0 && level[y] == usize::MAX {
                    level[y] = level[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        let mut g = 0usize;
        for x in 0..self.len() {
            for y in 0..self.len() {
                if self.p[x][y] > 0.0 {
                    g = gcd(g, (level[x] as i64 + 1 - level[y] as i64).unsigned_abs() as usize);
                }
            }
        }
        Ok(g)
    }

    /// The unique `μ` with `μP = μ`, `Σμ = 1`, from a dense solve.
    pub fn stationary_measure(&self) -> Result<Vec<f64>> {
        if !self.is_irreducible() {
            return Err(Error::Reducible("the stationary measure is not unique".into()));
        }
        let n = self.len();
        // Rows 0..n-1 of (Pᵀ - I) plus the normalization row.
        let a = SquareMatrix::from_fn(n, |i, j| {
            if i == n - 1 {
                1.0
            } else {
                self.p[j][i] - if i == j { 1.0 } else { 0.0 }
            }
        });
        let mut b = vec![0.0; n];
        b[n - 1] = 1.0;
        let mu = linalg::solve(&a, &b)?;
        let image = self.push_forward(&mu)?;
        let residual = image.iter().zip(&mu).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        if residual > STOCHASTIC_TOLERANCE {
            return Err(Error::Singular(format!("stationary residual {residual:e}")));
        }
        Ok(mu)
    }

    /// `P(Z₀∈E₀, …, Z_n∈E_n)` by forward propagation.
    pub fn cylinder_mass(&self, sets: &[Vec<usize>]) -> Result<f64> {
        let n = self.len();
        let mask = |set: &Vec<usize>| -> Result<Vec<bool>> {
            let mut m = vec![false; n];
            for &x in set {
                if x >= n {
                    return Err(Error::Dimension { expected: n, got: x });
                }
                m[x] = true;
            }
            Ok(m)
        };
        let Some((first, rest)) = sets.split_first() else {
            return Ok(1.0);
        };
        let m0 = mask(first)?;
        let mut mass: Vec<f64> = self.mu0.iter().zip(&m0).map(|(m, keep)| if *keep { *m } else { 0.0 }).collect();
        for set in rest {
            let m = mask(set)?;
            mass = self.push_forward(&mass)?.into_iter().zip(&m).map(|(v, keep)| if *keep { v } else { 0.0 }).collect();
        }
        Ok(compensated_sum(mass))
    }

    /// `E[f₁(Z_n) f₂(Z_{n+1})] = Σ_x μ₀(x) [Tⁿ(f₁·Tf₂)](x)`.
    pub fn covariance_exact(&self, f1: &[f64], f2: &[f64], n: usize) -> Result<f64> {
        self.check_fn(f1)?;
        let tf2 = self.transfer(f2)?;
        let product: Vec<f64> = f1.iter().zip(&tf2).map(|(a, b)| a * b).collect();
        self.expectation(&self.transfer_power(&product, n)?)
    }

    /// Solves `Th = h` off the boundary with `h` pinned on it.
    pub fn harmonic_solve(&self, boundary: &[(usize, f64)]) -> Result<Vec<f64>> {
        let n = self.len();
        let mut pinned = vec![None; n];
        for &(x, v) in boundary {
            if x >= n {
                return Err(Error::Dimension { expected: n, got: x });
            }
            pinned[x] = Some(v);
        }
        let interior: Vec<usize> = (0..n).filter(|x| pinned[*x].is_none()).collect();
        let mut h: Vec<f64> = pinned.iter().map(|v| v.unwrap_or(0.0)).collect();
        if !interior.is_empty() {
            let a = SquareMatrix::from_fn(interior.len(), |i, j| {
                let (x, y) = (interior[i], interior[j]);
                (if x == y { 1.0 } else { 0.0 }) - self.p[x][y]
            });
            let b: Vec<f64> = interior
                .iter()
                .map(|&x| compensated_sum(boundary.iter().map(|&(y, v)| self.p[x][y] * v)))
                .collect();
            for (x, v) in interior.iter().zip(linalg::solve(&a, &b)?) {
                h[*x] = v;
            }
        }
        let th = self.transfer(&h)?;
        let scale = h.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
        let residual = interior.iter().map(|&x| (th[x] - h[x]).abs()).fold(0.0, f64::max);
        if residual > STOCHASTIC_TOLERANCE * scale {
            return Err(Error::Singular(format!("harmonic residual {residual:e}")));
        }
        Ok(h)
    }

    /// Iterates `Tⁿf` until it is within `tol` of the constant `∫f dμ` for
    /// the stationary `μ`. Requires an irreducible aperiodic chain.
    pub fn ergodic_limit(&self, f: &[f64], tol: f64, max_iter: usize) -> Result<ErgodicLimit> {
        if self.period()? != 1 {
            return Err(Error::Kernel("chain is periodic; Tⁿf does not converge".into()));
        }
        let mu = self.stationary_measure()?;
        let limit = linalg::dot(&mu, f);
        let mut g = f.to_vec();
        for iterations in 0..=max_iter {
            let gap = g.iter().map(|v| (v - limit).abs()).fold(0.0, f64::max);
            if gap <= tol {
                return Ok(ErgodicLimit { limit, iterations, gap });
            }
            g = self.transfer(&g)?;
        }
        Err(Error::Kernel(format!("no convergence to {tol:e} in {max_iter} iterations")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErgodicLimit {
    pub limit: f64,
    pub iterations: usize,
    pub gap: f64,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle4() -> FiniteMarkov {
        FiniteMarkov::from_graph(&WeightedGraph::cycle(4).unwrap())
    }

    #[test]
    fn validation() {
        assert!(matches!(FiniteMarkov::uniform(vec![vec![0.5, 0.4], vec![0.0, 1.0]]), Err(Error::Kernel(_))));
        assert!(matches!(FiniteMarkov::uniform(vec![vec![1.5, -0.5], vec![0.0, 1.0]]), Err(Error::Kernel(_))));
        assert!(matches!(
            FiniteMarkov::new(vec![vec![1.0]], vec![0.5]),
            Err(Error::Measure(_))
        ));
    }

    #[test]
    fn stationary_matches_conductance() {
        let g = WeightedGraph::from_index_edges(4, [(0, 1, 1.0), (1, 2, 2.0), (2, 3, 0.5), (3, 0, 3.0), (0, 2, 1.5)], 0).unwrap();
        let fm = FiniteMarkov::from_graph(&g);
        let mu = fm.stationary_measure().unwrap();
        for (a, b) in mu.iter().zip(fm.mu0()) {
            assert!((a - b).abs() < 1e-12);
        }
        let cyc = cycle4().stationary_measure().unwrap();
        assert!(cyc.iter().all(|m| (m - 0.25).abs() < 1e-12));
    }

    #[test]
    fn doubly_stochastic_is_uniform() {
        let p = vec![vec![0.2, 0.5, 0.3], vec![0.5, 0.1, 0.4], vec![0.3, 0.4, 0.3]];
        let mu = FiniteMarkov::uniform(p).unwrap().stationary_measure().unwrap();
        assert!(mu.iter().all(|m| (m - 1.0 / 3.0).abs() < 1e-12));
    }

    #[test]
    fn reducible_is_rejected() {
        let fm = FiniteMarkov::uniform(vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert!(matches!(fm.stationary_measure(), Err(Error::Reducible(_))));
    }

    #[test]
    fn cylinder_examples() {
        let fm = cycle4();
        let all = vec![(0..4).collect::<Vec<_>>(); 5];
        assert!((fm.cylinder_mass(&all).unwrap() - 1.0).abs() < 1e-15);
        assert!((fm.cylinder_mass(&[vec![0], vec![1]]).unwrap() - 0.125).abs() < 1e-15);
        assert_eq!(fm.cylinder_mass(&[vec![0], vec![2]]).unwrap(), 0.0);
    }

    #[test]
    fn covariance_with_constant_is_mean() {
        let fm = cycle4();
        let f1 = [1.0, 2.0, -1.0, 0.5];
        for n in 0..6 {
            assert!((fm.covariance_exact(&f1, &[1.0; 4], n).unwrap() - 0.625).abs() < 1e-15);
        }
        let d0 = [1.0, 0.0, 0.0, 0.0];
        for n in 0..6 {
            assert_eq!(fm.covariance_exact(&d0, &d0, n).unwrap(), 0.0);
        }
    }

    #[test]
    fn gamblers_ruin() {
        let fm = FiniteMarkov::from_graph(&WeightedGraph::path(5).unwrap());
        let h = fm.harmonic_solve(&[(0, 0.0), (4, 1.0)]).unwrap();
        for (k, v) in h.iter().enumerate() {
            assert!((v - k as f64 / 4.0).abs() < 1e-14);
        }
    }

    #[test]
    fn period_and_ergodic_limit() {
        assert_eq!(cycle4().period().unwrap(), 2);
        assert!(cycle4().ergodic_limit(&[1.0, 0.0, 0.0, 0.0], 1e-10, 1000).is_err());
        let g = WeightedGraph::cycle(5).unwrap();
        let fm = FiniteMarkov::from_graph(&g);
        assert_eq!(fm.period().unwrap(), 1);
        let r = fm.ergodic_limit(&[1.0, 0.0, 0.0, 0.0, 0.0], 1e-10, 10_000).unwrap();
        assert!((r.limit - 0.2).abs() < 1e-15 && r.gap <= 1e-10);
    }
}
