// Gambler's ruin on 0..4: `h(k) = k/4` is harmonic, so `h(Z_n)` is a
// martingale; `h²` is not.

use spectral_walks::path_measure::{doob_boundary_check, martingale_check, simulate, FiniteMarkov};
use spectral_walks::{Result, WeightedGraph};

pub fn run() -> Result<()> {
    let ruin = FiniteMarkov::from_graph(&WeightedGraph::path(5)?).absorbing(&[0, 4])?;
    let h = ruin.harmonic_solve(&[(0, 0.0), (4, 1.0)])?;
    println!("h = {h:?}");
    let ens = simulate(&ruin, 20, 100_000, 1)?;
    let report = martingale_check(&ens, &h)?;
    for row in &report.rows {
        println!("{}  {:+.5} ({:.2} sigmas)", row.label, row.estimate, row.sigmas);
    }
    let squared: Vec<f64> = h.iter().map(|v| v * v).collect();
    println!("h^2 drift: {:.1} sigmas", martingale_check(&ens, &squared)?.max_sigmas());
    let doob = doob_boundary_check(&ruin, &h, 40, 20_000, 2)?;
    println!("E_x[h(Z_40)] vs h(x): max {:.2} sigmas", doob.max_sigmas());
    Ok(())
}

fn main() -> Result<()> {
    run()
}
