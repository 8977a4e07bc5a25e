//! The invariant suite behind `verify all`.
//!
//! The quick suite uses exact integer or rational arithmetic wherever the
//! identity allows it, plus a few floating checks with tight tolerances. The
//! full suite widens the word ranges and adds Monte Carlo checks at 10⁵ paths.

use num_complex::Complex64;
use num_rational::Rational64;

use super::output::Check;
use crate::circle::{
    cantor_filter_exact, qmf_check, strong_invariance_check, transfer_apply, w_from_filter, FilterCoeffs, TrigPoly,
};
use crate::encoding::{decode_int, decode_nat, encode_int, encode_nat};
use crate::error::Result;
use crate::graph::{VertexFunction, WeightedGraph};
use crate::gram::{dipole_laplacian_pairing, energy_gram, gram_matrix};
use crate::path_measure::{covariance_mc, martingale_check, simulate, FiniteMarkov, SIGMA_THRESHOLD};
use crate::tree::{dipole_defect, words_up_to, DyadicTree};

fn rational_graphs() -> Result<Vec<(&'static str, WeightedGraph<Rational64>)>> {
    let r = |n: i64, d: i64| Rational64::new(n, d);
    Ok(vec![
        ("cycle4", WeightedGraph::cycle(4)?),
        ("path5", WeightedGraph::path(5)?),
        (
            "weighted",
            WeightedGraph::from_index_edges(
                5,
                [(0, 1, r(1, 2)), (1, 2, r(3, 1)), (2, 3, r(2, 3)), (3, 4, r(5, 4)), (4, 0, r(1, 1)), (1, 3, r(7, 3))],
                0,
            )?,
        ),
    ])
}

pub fn run_suite(quick: bool) -> Result<Vec<Check>> {
    let (max_len, depth) = if quick { (4, 6) } else { (6, 8) };
    let words = words_up_to(max_len, 2);
    let mut checks = Vec::new();

    let nonzero = words.iter().map(|x| dipole_defect(x, depth).map(|d| d.values().iter().filter(|v| **v != 0).count())).sum::<Result<usize>>()?;
    checks.push(Check::exact(format!("dipole defect, l(x) <= {max_len}, depth {depth}"), nonzero as f64));

    let tree = DyadicTree::<i64>::new(depth)?;
    let mut norm_mismatch = 0;
    for x in &words {
        let v = tree.dipole(x)?;
        if tree.graph().energy_norm_sq(&v)? != x.len() as i64 {
            norm_mismatch += 1;
        }
    }
    checks.push(Check::exact("energy norm of v_x equals l(x)", norm_mismatch as f64));

    let prefix = gram_matrix(&words)?;
    let energy = energy_gram(&words, depth)?;
    let gram_mismatch = prefix.iter().flatten().zip(energy.iter().flatten()).filter(|(a, b)| **a as i64 != **b).count();
    checks.push(Check::exact("energy Gram equals prefix-intersection count", gram_mismatch as f64));

    let pair_words = words_up_to(if quick { 2 } else { 3 }, 2);
    let mut pairing_mismatch = 0;
    for x in &pair_words {
        for y in &pair_words {
            let expect = if x == y { 2 } else { 1 };
            if dipole_laplacian_pairing(x, y, depth)? != expect {
                pairing_mismatch += 1;
            }
        }
    }
    checks.push(Check::exact("<v_x, Lap v_y>_E = delta_x(y) + 1", pairing_mismatch as f64));

    let nat_range = if quick { 1u64 << 12 } else { 1u64 << 16 };
    let nat_bad = (0..nat_range).filter(|n| encode_nat(&decode_nat(*n)).ok() != Some(*n)).count();
    let half = (nat_range / 2) as i64;
    let int_bad = (-half..half).filter(|n| encode_int(&decode_int(*n)).ok() != Some(*n)).count();
    checks.push(Check::exact("word encodings round-trip", (nat_bad + int_bad) as f64));

    let one = TrigPoly::constant(Rational64::from_integer(1));
    let cantor_gap = transfer_apply(&cantor_filter_exact(), &one, 3)? != one;
    checks.push(Check::exact("Cantor filter fixes constants (exact)", cantor_gap as u8 as f64));

    let probe = TrigPoly::new([(-3, Rational64::new(2, 7)), (0, Rational64::new(-1, 3)), (4, Rational64::new(5, 2)), (6, Rational64::new(1, 9))]);
    let invariance_bad = [2, 3, 5].iter().map(|d| strong_invariance_check(&probe, *d)).collect::<Result<Vec<_>>>()?;
    let invariance_bad = invariance_bad.iter().filter(|r| **r != Rational64::from_integer(0)).count();
    checks.push(Check::exact("strong invariance residual (exact)", invariance_bad as f64));

    let mut mean_bad = 0;
    let mut reversibility_bad = 0;
    for (_, g) in rational_graphs()? {
        let n = g.vertex_count();
        let phi = VertexFunction::from_fn(n, |i| Rational64::new((i * i) as i64 - 3, (i + 2) as i64));
        let mu = g.conductance_measure();
        let mean = |f: &VertexFunction<Rational64>| mu.iter().zip(f.values()).map(|(m, v)| m * v).sum::<Rational64>();
        if mean(&g.transfer(&phi)?) != mean(&phi) {
            mean_bad += 1;
        }
        for x in 0..n {
            for y in 0..n {
                let cx = g.total_conductance(x);
                let cy = g.total_conductance(y);
                if cx * g.transition_probability(x, y) != cy * g.transition_probability(y, x) {
                    reversibility_bad += 1;
                }
            }
        }
    }
    checks.push(Check::exact("<T phi>_c = <phi>_c (exact)", mean_bad as f64));
    checks.push(Check::exact("reversibility c(x)p(x,y) = c(y)p(y,x) (exact)", reversibility_bad as f64));

    for (name, filter) in [("Haar", FilterCoeffs::haar()), ("four-tap", FilterCoeffs::daubechies4())] {
        checks.push(Check::at_most(format!("QMF residual, {name}"), qmf_check(&filter).max_residual(), 1e-10));
    }

    let w = w_from_filter(&FilterCoeffs::daubechies4());
    let f = TrigPoly::new([(-2, Complex64::new(0.5, -0.25)), (1, Complex64::new(1.0, 0.0)), (5, Complex64::new(0.0, 0.75))]);
    let gap = crate::circle::transfer::transfer_route_gap(&w, &f, 2, 512)?;
    checks.push(Check::at_most("transfer coefficient route vs branch sum", gap, 1e-12));

    let g = WeightedGraph::from_index_edges(4, [(0, 1, 1.0), (1, 2, 2.0), (2, 3, 0.5), (3, 0, 3.0), (0, 2, 1.5)], 0)?;
    let fm = FiniteMarkov::from_graph(&g);
    let mu = fm.stationary_measure()?;
    let gap = mu.iter().zip(fm.mu0()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    checks.push(Check::at_most("stationary measure equals c/sum(c)", gap, 1e-12));

    if !quick {
        let cycle = FiniteMarkov::from_graph(&WeightedGraph::cycle(4)?);
        let ens = simulate(&cycle, 5, 100_000, 0)?;
        let d0 = [1.0, 0.0, 0.0, 0.0];
        let nb = [0.0, 1.0, 0.0, 1.0];
        for n in [0, 1, 4] {
            let est = covariance_mc(&ens, &d0, &nb, n)?;
            let exact = cycle.covariance_exact(&d0, &nb, n)?;
            checks.push(Check::at_most(format!("covariance MC vs exact on 4-cycle, n={n}"), est.sigmas(exact), SIGMA_THRESHOLD));
        }
        let ruin = FiniteMarkov::from_graph(&WeightedGraph::path(5)?).absorbing(&[0, 4])?;
        let h = ruin.harmonic_solve(&[(0, 0.0), (4, 1.0)])?;
        let ens = simulate(&ruin, 20, 100_000, 1)?;
        checks.push(Check::at_most("gambler's ruin martingale", martingale_check(&ens, &h)?.max_sigmas(), SIGMA_THRESHOLD));
    }
    Ok(checks)
}
