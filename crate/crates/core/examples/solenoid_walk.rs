// Random walk on backward orbits of `t ↦ 2t`: from `t`, step to `t/2` or
// `t/2 + 1/2` with probabilities `W(t/2)`, `W(t/2 + 1/2)`.

use num_complex::Complex64;
use spectral_walks::circle::{
    half_weight, solenoid_covariance_exact, solenoid_covariance_mc, solenoid_walk, w_from_filter, FilterCoeffs,
    SolenoidStart, TrigPoly,
};
use spectral_walks::Result;

pub fn run() -> Result<()> {
    let cos = |k: i64| TrigPoly::new([(k, Complex64::new(0.5, 0.0)), (-k, Complex64::new(0.5, 0.0))]);
    let start = SolenoidStart::UniformGrid(10);
    for (name, w) in [("flat", half_weight()), ("four-tap", w_from_filter(&FilterCoeffs::daubechies4()))] {
        let ens = solenoid_walk(&w, 16, 50_000, 7, start)?;
        let z = ens.path(0)[16];
        println!("{name}: path 0 ends at {}/2^{}", z.numerator(), z.level());
        for n in [0, 8, 15] {
            let est = solenoid_covariance_mc(&ens, &cos(1), &cos(2), n)?;
            let exact = solenoid_covariance_exact(&w, &cos(1), &cos(2), n, start)?;
            println!("  n={n:>2}  {:.5} ± {:.5}  exact {exact:.5}", est.mean, est.se);
        }
    }
    Ok(())
}

fn main() -> Result<()> {
    run()
}
