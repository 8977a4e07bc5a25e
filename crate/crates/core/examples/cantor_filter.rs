// The Cantor filter `W_F = |1 + e²|²/6` of degree 3, in exact rationals.

use num_rational::Rational64;
use spectral_walks::circle::{cantor_filter, cantor_filter_exact, lowpass_check, transfer_apply, TrigPoly};
use spectral_walks::Result;

pub fn run() -> Result<()> {
    let w = cantor_filter_exact();
    for (k, c) in w.coeffs() {
        println!("W_F coefficient {k:>2}: {c}");
    }
    let one = TrigPoly::constant(Rational64::from_integer(1));
    println!("T 1 = 1 exactly: {}", transfer_apply(&w, &one, 3)? == one);
    let probe = TrigPoly::new([(3, Rational64::new(1, 2)), (-3, Rational64::new(1, 2)), (6, Rational64::new(1, 4))]);
    let image = transfer_apply(&w, &probe, 3)?;
    let terms: Vec<String> = image.coeffs().map(|(k, c)| format!("({c}) e_{k}")).collect();
    println!("T (cos(2 pi 3t) + e_6/4) = {}", terms.join(" + "));
    let wf = cantor_filter();
    println!("W_F(0) = {}, low-pass: {}", wf.eval(0.0).re, lowpass_check(&wf, 3));
    Ok(())
}

fn main() -> Result<()> {
    run()
}
