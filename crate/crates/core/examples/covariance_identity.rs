// `E[f1(Z_n) f2(Z_{n+1})]` by simulation against `<T^n(f1 · T f2)>_μ0`.

use spectral_walks::path_measure::{covariance_mc, simulate, FiniteMarkov};
use spectral_walks::{DyadicTree, Result};

pub fn run() -> Result<()> {
    let tree = DyadicTree::<f64>::new(3)?;
    let fm = FiniteMarkov::from_graph(tree.graph());
    let hops: Vec<f64> = tree.words().iter().map(|w| w.len() as f64).collect();
    let leaf: Vec<f64> = tree.words().iter().map(|w| (w.len() == 3) as u8 as f64).collect();
    let ens = simulate(&fm, 6, 100_000, 42)?;
    for n in [0, 2, 5] {
        let est = covariance_mc(&ens, &hops, &leaf, n)?;
        let exact = fm.covariance_exact(&hops, &leaf, n)?;
        println!("n={n}  estimate {:.5} ± {:.5}  exact {exact:.5}  ({:.2} sigmas)", est.mean, est.se, est.sigmas(exact));
    }
    Ok(())
}

fn main() -> Result<()> {
    run()
}
