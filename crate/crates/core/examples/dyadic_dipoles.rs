// Dipoles on a truncated binary tree: `v_x(y)` counts the shared prefix,
// and its Laplacian is `δ_x - δ_o`.

use spectral_walks::tree::dipole_value;
use spectral_walks::{DyadicTree, Result, Word};

pub fn run() -> Result<()> {
    let tree = DyadicTree::<i64>::new(4)?;
    let x = Word::parse_base("101", 2)?;
    let v = tree.dipole(&x)?;
    let lap = tree.graph().laplacian(&v)?;
    for (i, y) in tree.words().iter().enumerate().filter(|(i, _)| v[*i] != 0 || lap[*i] != 0) {
        println!("{:>5}  v_x = {}  Lap v_x = {:>2}", y.to_cli_string(), v[i], lap[i]);
    }
    println!("|v_x|_E^2 = {} = l(x)", tree.graph().energy_norm_sq(&v)?);
    let y = Word::parse_base("10", 2)?;
    println!("<v_101, v_10>_E = {}", dipole_value(&x, &y)?);
    Ok(())
}

fn main() -> Result<()> {
    run()
}
