// Laplacian, transfer operator and energy on a small weighted graph.

use spectral_walks::{Result, VertexFunction, WeightedGraph};

pub fn run() -> Result<()> {
    let g = WeightedGraph::from_json_file(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/weighted5.json"))?;
    let f = VertexFunction::from_fn(g.vertex_count(), |x| (x * x) as f64);
    let lap = g.laplacian(&f)?;
    let t = g.transfer(&f)?;
    println!("vertex  c(x)   f     Lap f    T f");
    for x in 0..g.vertex_count() {
        println!("{:>6} {:>5} {:>5} {:>8.3} {:>7.3}", g.id(x), g.total_conductance(x), f[x], lap[x], t[x]);
    }
    println!("energy |f|_E^2     = {:.6}", g.energy_norm_sq(&f)?);
    println!("<f, Lap f>_l2      = {:.6}", g.quadratic_form_l2(&f)?);
    println!("stationary c/sum c = {:?}", g.conductance_measure());
    Ok(())
}

fn main() -> Result<()> {
    run()
}
