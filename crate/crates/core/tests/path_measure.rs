use num_rational::Rational64;
use proptest::prelude::*;

use spectral_walks::path_measure::{
    covariance_mc, cylinder_frequency, doob_boundary_check, edge_frequency_check, marginal_check, simulate,
    two_step_check, FiniteMarkov, SIGMA_THRESHOLD,
};
use spectral_walks::{VertexFunction, WeightedGraph};

fn rational_graph(ws: &[(i64, i64)]) -> WeightedGraph<Rational64> {
    let pairs = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3), (1, 4)];
    WeightedGraph::from_index_edges(6, pairs.iter().zip(ws).map(|(&(a, b), &(n, d))| (a, b, Rational64::new(n, d))), 0)
        .unwrap()
}

fn weighted() -> FiniteMarkov {
    let g = WeightedGraph::from_index_edges(5, [(0, 1, 1.0), (1, 2, 2.0), (2, 3, 0.5), (3, 4, 1.5), (4, 0, 1.0), (1, 3, 1.0)], 0)
        .unwrap();
    FiniteMarkov::from_graph(&g)
}

proptest! {
    #[test]
    fn conductance_average_is_invariant_and_walk_reversible(
        ws in prop::collection::vec((1i64..12, 1i64..6), 8),
        phi in prop::collection::vec((-20i64..20, 1i64..9), 6),
    ) {
        let g = rational_graph(&ws);
        let phi = VertexFunction::new(phi.into_iter().map(|(n, d)| Rational64::new(n, d)).collect());
        let mu = g.conductance_measure();
        let mean = |f: &VertexFunction<Rational64>| mu.iter().zip(f.values()).map(|(m, v)| m * v).sum::<Rational64>();
        prop_assert_eq!(mean(&g.transfer(&phi).unwrap()), mean(&phi));
        for x in 0..6 {
            for y in 0..6 {
                prop_assert_eq!(
                    g.total_conductance(x) * g.transition_probability(x, y),
                    g.total_conductance(y) * g.transition_probability(y, x)
                );
            }
        }
    }
}

#[test]
fn stationary_covariance_does_not_depend_on_n() {
    let fm = weighted();
    let f1 = [0.3, -1.0, 2.0, 0.5, 1.25];
    let f2 = [1.0, 0.0, -0.5, 2.0, 0.75];
    let first = fm.covariance_exact(&f1, &f2, 0).unwrap();
    for n in 1..40 {
        assert!((fm.covariance_exact(&f1, &f2, n).unwrap() - first).abs() < 1e-13);
    }
}

#[test]
fn standard_error_halves_with_four_times_the_paths() {
    let fm = weighted();
    let f1 = [1.0, 0.0, 0.0, 0.0, 0.0];
    let f2 = [0.0, 1.0, 0.0, 0.0, 1.0];
    let small = covariance_mc(&simulate(&fm, 3, 25_000, 1).unwrap(), &f1, &f2, 2).unwrap();
    let large = covariance_mc(&simulate(&fm, 3, 100_000, 1).unwrap(), &f1, &f2, 2).unwrap();
    let ratio = small.se / large.se;
    assert!((ratio - 2.0).abs() < 0.1, "ratio {ratio}");
}

#[test]
fn ensembles_are_reproducible() {
    let fm = weighted();
    assert_eq!(simulate(&fm, 12, 3000, 9).unwrap(), simulate(&fm, 12, 3000, 9).unwrap());
}

#[test]
fn marginals_edges_and_cylinders_match_exact_values() {
    let fm = weighted();
    let ens = simulate(&fm, 4, 100_000, 2).unwrap();
    assert!(marginal_check(&ens, &fm, 0).unwrap().passes());
    assert!(marginal_check(&ens, &fm, 3).unwrap().passes());
    assert!(edge_frequency_check(&ens, &fm, 1).unwrap().passes());
    assert!(two_step_check(&ens, &fm, &[1.0, 0.0, 2.0, 0.0, -1.0], 2).unwrap().passes());
    let sets = vec![vec![0, 2], vec![1, 3, 4], vec![0, 1]];
    let est = cylinder_frequency(&ens, &sets).unwrap();
    assert!(est.sigmas(fm.cylinder_mass(&sets).unwrap()) <= SIGMA_THRESHOLD);
}

#[test]
fn doob_boundary_on_gamblers_ruin() {
    let ruin = FiniteMarkov::from_graph(&WeightedGraph::path(5).unwrap()).absorbing(&[0, 4]).unwrap();
    let h = ruin.harmonic_solve(&[(0, 0.0), (4, 1.0)]).unwrap();
    assert!(doob_boundary_check(&ruin, &h, 30, 20_000, 4).unwrap().passes());
}
