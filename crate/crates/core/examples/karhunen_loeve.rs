// Karhunen-Loeve vectors: eigenvector combinations of dipoles are
// energy-orthogonal, and `R_F(λ) = (1 + <ξ>²)/λ` equals `<u, Lap u>_E`.

use spectral_walks::gram::{kl_gram_check, r_function_energy, GramSpectrum, Normalization};
use spectral_walks::{Result, Word};

pub fn run() -> Result<()> {
    let family: Vec<Word> = ["0", "1", "11", "110"].iter().map(|s| Word::parse_base(s, 2)).collect::<Result<_>>()?;
    let gs = GramSpectrum::from_words(&family)?;
    let gram = kl_gram_check(&gs, 3, Normalization::U)?;
    println!("<u_j, u_k>_E:");
    for row in gram.rows() {
        println!("  {:>8.5?}", row);
    }
    let energy = r_function_energy(&gs, 3)?;
    for ((lambda, r), e) in gs.r_function().into_iter().zip(energy) {
        println!("lambda {lambda:.6}  R_F {r:.10}  energy route {e:.10}");
    }
    Ok(())
}

fn main() -> Result<()> {
    run()
}
