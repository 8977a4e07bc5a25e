//! Finite-state Markov processes, their path measures, and Monte Carlo
//! checks of transfer-operator identities.

pub mod chain;
pub mod checks;
pub mod simulate;

pub use chain::{ErgodicLimit, FiniteMarkov};
pub use checks::{
    covariance_mc, cylinder_frequency, doob_boundary_check, edge_frequency_check, marginal_check, markov_check,
    martingale_check, two_step_check, CheckReport, Comparison, Estimate, MIN_VISITS, SIGMA_THRESHOLD,
};
pub use simulate::{simulate, simulate_from, PathEnsemble, Start};
