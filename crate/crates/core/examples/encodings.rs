// Words as integers: least-significant digit first, and the signed variant.

use spectral_walks::encoding::{canonical_int, cantor_encode, decode_int, decode_nat, encode_int, encode_nat, sigma};
use spectral_walks::{Result, Word};

pub fn run() -> Result<()> {
    for text in ["1", "101", "0101", "111", "0"] {
        let w = Word::parse_base(text, 2)?;
        println!(
            "{text:>5}  nat {:>3}  int {:>3}  canonical int word {}",
            encode_nat(&w)?,
            encode_int(&w)?,
            canonical_int(&w)?.to_cli_string()
        );
    }
    println!("decode_nat(5) = {}, decode_int(-3) = {}", decode_nat(5).to_cli_string(), decode_int(-3).to_cli_string());
    println!("sigma_0(5) = {}, sigma_1(5) = {}", sigma(5, 0)?, sigma(5, 1)?);
    println!("Cantor 0.22 (base 3) = {}", cantor_encode(&[0], &[2, 2])?);
    Ok(())
}

fn main() -> Result<()> {
    run()
}
