// Zero-sum dipole combinations: the energy Rayleigh quotient of the
// Laplacian equals `|ξ|² / <ξ, M ξ>`.

use spectral_walks::gram::{reciprocity_pair, reciprocity_spectrum};
use spectral_walks::{Result, Word};

pub fn run() -> Result<()> {
    let family: Vec<Word> = ["1", "11", "111", "0"].iter().map(|s| Word::parse_base(s, 2)).collect::<Result<_>>()?;
    for p in reciprocity_spectrum(&family, 3)? {
        println!("lambda {:>8.5}  energy {:.12}  matrix {:.12}", p.lambda, p.energy, p.matrix);
    }
    let (energy, matrix) = reciprocity_pair(&family, &[1.0, -2.0, 0.5, 0.5], 3)?;
    println!("xi = (1, -2, 1/2, 1/2): {energy:.12} vs {matrix:.12}");
    Ok(())
}

fn main() -> Result<()> {
    run()
}
