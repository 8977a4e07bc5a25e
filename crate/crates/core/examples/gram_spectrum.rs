// Gram matrix of dipoles and its Jacobi eigendecomposition.

use spectral_walks::gram::GramSpectrum;
use spectral_walks::tree::words_up_to;
use spectral_walks::{Result, Word};

pub fn run() -> Result<()> {
    let family: Vec<Word> = ["1", "11", "111", "10"].iter().map(|s| Word::parse_base(s, 2)).collect::<Result<_>>()?;
    let gs = GramSpectrum::from_words(&family)?;
    println!("M_F = {:?}", gs.matrix().rows());
    for ((lambda, xi), mean) in gs.eigenvalues().iter().zip(gs.eigenvectors()).zip(gs.means()) {
        println!("lambda {lambda:>9.6}  xi {xi:>8.4?}  <xi> {mean:>8.4}");
    }
    println!("residual {:.2e}", gs.residual());

    let all = words_up_to(3, 2);
    let gs = GramSpectrum::from_words(&all)?;
    let total: f64 = gs.means().iter().map(|m| m * m).sum();
    println!("all {} words of length <= 3: sum <xi_j>^2 = {total:.10}", all.len());
    Ok(())
}

fn main() -> Result<()> {
    run()
}
