//! Seeded path simulation.
//!
//! Path `i` draws from ChaCha8 seeded with `seed` on stream `i`, so every
//! trajectory depends only on `(seed, i)` and the kernel. Work is spread over
//! a rayon pool; set `SPECTRAL_WALKS_THREADS` to cap its size.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::chain::FiniteMarkov;
use crate::error::{Error, Result};

pub const THREADS_ENV: &str = "SPECTRAL_WALKS_THREADS";

/// Trajectories `Z₀ … Z_{n_steps}` stored path-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathEnsemble {
    seed: u64,
    n_paths: usize,
    n_steps: usize,
    n_states: usize,
    states: Vec<u32>,
}

impl PathEnsemble {
    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn n_paths(&self) -> usize {
        self.n_paths
    }

    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    pub fn n_states(&self) -> usize {
        self.n_states
    }

    pub fn path(&self, i: usize) -> &[u32] {
        let len = self.n_steps + 1;
        &self.states[i * len..(i + 1) * len]
    }

    pub fn paths(&self) -> impl Iterator<Item = &[u32]> + '_ {
        self.states.chunks(self.n_steps + 1)
    }

    #[inline]
    pub fn state(&self, i: usize, k: usize) -> usize {
        self.states[i * (self.n_steps + 1) + k] as usize
    }

    /// All states at step `k`.
    pub fn column(&self, k: usize) -> Vec<usize> {
        (0..self.n_paths).map(|i| self.state(i, k)).collect()
    }
}

/// Where each path starts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Start<'a> {
    /// `Z₀ ~ μ₀` of the chain.
    Initial,
    /// `Z₀ = x`.
    State(usize),
    /// `Z₀ ~ μ`.
    Measure(&'a [f64]),
}

/// `n_paths` trajectories with `Z₀ ~ μ₀`.
pub fn simulate(fm: &FiniteMarkov, n_steps: usize, n_paths: usize, seed: u64) -> Result<PathEnsemble> {
    simulate_from(fm, Start::Initial, n_steps, n_paths, seed, 0)
}

/// General form; path `i` uses stream `stream_base + i`.
pub fn simulate_from(
    fm: &FiniteMarkov,
    start: Start<'_>,
    n_steps: usize,
    n_paths: usize,
    seed: u64,
    stream_base: u64,
) -> Result<PathEnsemble> {
    let n = fm.len();
    if n > u32::MAX as usize {
        return Err(Error::Kernel(format!("{n} states exceed the u32 state index")));
    }
    let weighted = |w: &[f64]| WeightedIndex::new(w).map_err(|e| Error::Measure(e.to_string()));
    let rows = fm.kernel().iter().map(|r| weighted(r)).collect::<Result<Vec<_>>>()?;
    let initial = match start {
        Start::Initial => Some(weighted(fm.mu0())?),
        Start::Measure(mu) => {
            if mu.len() != n {
                return Err(Error::Dimension { expected: n, got: mu.len() });
            }
            Some(weighted(mu)?)
        }
        Start::State(x) => {
            if x >= n {
                return Err(Error::Dimension { expected: n, got: x });
            }
            None
        }
    };
    let len = n_steps + 1;
    let mut states = vec![0u32; n_paths * len];
    let fill = |(i, path): (usize, &mut [u32])| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream_base + i as u64);
        let mut x = match (&initial, start) {
            (Some(d), _) => d.sample(&mut rng),
            (None, Start::State(x)) => x,
            (None, _) => unreachable!("initial law is set for non-point starts"),
        };
        path[0] = x as u32;
        for slot in &mut path[1..] {
            x = rows[x].sample(&mut rng);
            *slot = x as u32;
        }
    };
    with_thread_cap(|| states.par_chunks_mut(len).enumerate().for_each(fill))?;
    Ok(PathEnsemble { seed, n_paths, n_steps, n_states: n, states })
}

/// Runs `job` on the global pool, or on a private pool of
/// `SPECTRAL_WALKS_THREADS` workers when that variable is a positive integer.
pub(crate) fn with_thread_cap<R: Send>(job: impl FnOnce() -> R + Send) -> Result<R> {
    let cap = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()).filter(|t| *t > 0);
    match cap {
        Some(t) => Ok(rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?
            .install(job)),
        None => Ok(job()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::WeightedGraph;

    #[test]
    fn reproducible_and_seed_sensitive() {
        let fm = FiniteMarkov::from_graph(&WeightedGraph::cycle(6).unwrap());
        let a = simulate(&fm, 20, 500, 7).unwrap();
        let b = simulate(&fm, 20, 500, 7).unwrap();
        let c = simulate(&fm, 20, 500, 8).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        // A path depends only on its own index.
        let short = simulate(&fm, 20, 10, 7).unwrap();
        assert_eq!(short.path(3), a.path(3));
    }

    #[test]
    fn steps_follow_edges() {
        let fm = FiniteMarkov::from_graph(&WeightedGraph::cycle(5).unwrap());
        let ens = simulate(&fm, 30, 200, 1).unwrap();
        for path in ens.paths() {
            for w in path.windows(2) {
                assert!(fm.p(w[0] as usize, w[1] as usize) > 0.0);
            }
        }
    }

    #[test]
    fn absorbing_state_holds() {
        let fm = FiniteMarkov::from_graph(&WeightedGraph::path(4).unwrap()).absorbing(&[0]).unwrap();
        let ens = simulate(&fm, 40, 300, 3).unwrap();
        for path in ens.paths() {
            if let Some(k) = path.iter().position(|x| *x == 0) {
                assert!(path[k..].iter().all(|x| *x == 0));
            }
        }
    }

    #[test]
    fn point_start() {
        let fm = FiniteMarkov::from_graph(&WeightedGraph::cycle(4).unwrap());
        let ens = simulate_from(&fm, Start::State(2), 3, 50, 0, 0).unwrap();
        assert!(ens.column(0).iter().all(|x| *x == 2));
        assert!(ens.column(1).iter().all(|x| *x == 1 || *x == 3));
    }
}
