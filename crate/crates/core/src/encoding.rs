//! Encodings of integers by tree words.
//!
//! A word `w = (x₀ x₁ … x_p)` is read least-significant digit first:
//! `τ⁰(w) = Σ_k x_k 2^k` encodes `ℕ₀`, and the shifted form
//! `τ⁰(w) = -2^p + Σ_k x_k 2^k` encodes `ℤ`. Neither map is injective on
//! words; decoding returns the canonical (shortest) representative.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::tree::Word;

fn binary_value(w: &Word) -> Result<u64> {
    if w.base() != 2 {
        return Err(Error::InvalidWord(format!("expected a binary word, got base {}", w.base())));
    }
    if let Some(last_one) = w.digits().iter().rposition(|d| *d == 1) {
        if last_one >= 64 {
            return Err(Error::InvalidWord(format!("{w} does not fit in 64 bits")));
        }
    }
    Ok(w.digits().iter().enumerate().filter(|(_, d)| **d == 1).map(|(k, _)| 1u64 << k).sum())
}

/// `τ⁰(w) = Σ_k x_k 2^k`. Non-canonical words (trailing zeros) are accepted.
pub fn encode_nat(w: &Word) -> Result<u64> {
    binary_value(w)
}

/// Shortest word encoding `n`; `0 ↦ o`.
pub fn decode_nat(mut n: u64) -> Word {
    let mut digits = Vec::new();
    while n > 0 {
        digits.push((n & 1) as u8);
        n >>= 1;
    }
    Word::binary(&digits).expect("binary digits")
}

/// Canonical `ℕ₀` form: trailing zero digits removed.
pub fn canonical_nat(w: &Word) -> Word {
    let keep = w.digits().iter().rposition(|d| *d != 0).map_or(0, |i| i + 1);
    Word::new(w.digits()[..keep].to_vec(), w.base()).expect("digits already valid")
}

/// `τ⁰(w) = -2^p + Σ_{k=0}^{p} x_k 2^k` with `p = l(w) - 1`.
pub fn encode_int(w: &Word) -> Result<i64> {
    if w.is_origin() {
        return Err(Error::InvalidWord("the origin has no integer encoding".into()));
    }
    if w.len() > 63 {
        return Err(Error::InvalidWord(format!("{w} does not fit in 64 bits")));
    }
    let p = w.len() - 1;
    Ok(binary_value(w)? as i64 - (1i64 << p))
}

/// Word of minimal length `p + 1` with `-2^p ≤ n ≤ 2^p - 1`, digits of `n + 2^p`.
pub fn decode_int(n: i64) -> Word {
    let mut p = 0u32;
    while !(-(1i128 << p) <= n as i128 && (n as i128) < (1i128 << p)) {
        p += 1;
    }
    let mut value = (n as i128 + (1i128 << p)) as u128;
    let digits = (0..=p)
        .map(|_| {
            let d = (value & 1) as u8;
            value >>= 1;
            d
        })
        .collect::<Vec<_>>();
    Word::binary(&digits).expect("binary digits")
}

/// Canonical `ℤ` form: while the last two digits differ, they are replaced by
/// the last one. Each step preserves `τ⁰` and shortens the word by one.
pub fn canonical_int(w: &Word) -> Result<Word> {
    if w.is_origin() {
        return Err(Error::InvalidWord("the origin has no integer encoding".into()));
    }
    let mut digits = w.digits().to_vec();
    while digits.len() >= 2 && digits[digits.len() - 1] != digits[digits.len() - 2] {
        let last = digits.pop().expect("len >= 2");
        *digits.last_mut().expect("len >= 1") = last;
    }
    Word::new(digits, w.base())
}

/// `σ⁰(n) = 2n`, `σ¹(n) = 2n + 1`.
pub fn sigma(n: u64, bit: u8) -> Result<u64> {
    if bit > 1 {
        return Err(Error::InvalidArgument(format!("sigma branch must be 0 or 1, got {bit}")));
    }
    n.checked_mul(2)
        .and_then(|m| m.checked_add(bit as u64))
        .ok_or_else(|| Error::InvalidArgument(format!("sigma^{bit}({n}) overflows")))
}

/// `Σ_k r(x_k) N^k` where digit `d` is replaced by `residues[d]`.
///
/// `residues` must have length `N` (the word's alphabet size) and hit every
/// class modulo `N` exactly once.
pub fn encode_nadic(w: &Word, residues: &[i64]) -> Result<i64> {
    let n = w.base() as usize;
    if residues.len() != n {
        return Err(Error::ResidueSystem(format!("{} residues for modulus {n}", residues.len())));
    }
    let mut hit = vec![false; n];
    for r in residues {
        let class = r.rem_euclid(n as i64) as usize;
        if std::mem::replace(&mut hit[class], true) {
            return Err(Error::ResidueSystem(format!("class {class} mod {n} appears twice in {residues:?}")));
        }
    }
    let overflow = || Error::InvalidWord(format!("{w} overflows 64-bit encoding"));
    let mut total = 0i64;
    let mut power = 1i64;
    for (k, d) in w.digits().iter().enumerate() {
        total = residues[*d as usize].checked_mul(power).and_then(|t| total.checked_add(t)).ok_or_else(overflow)?;
        if k + 1 < w.len() {
            power = power.checked_mul(n as i64).ok_or_else(overflow)?;
        }
    }
    Ok(total)
}

/// Exact value of `a_{-k}3^k + … + a₀ + Σ_{i≥1} a_i/3^i`.
///
/// `int_digits` lists `a_{-k}, …, a₀` (most significant first) and may use
/// `{0, 1, 2}`; `frac_digits` lists `a₁, a₂, …` and is restricted to `{0, 2}`.
pub fn cantor_encode(int_digits: &[u8], frac_digits: &[u8]) -> Result<BigRational> {
    if let Some(d) = int_digits.iter().find(|d| **d > 2) {
        return Err(Error::InvalidArgument(format!("integer digit {d} outside {{0,1,2}}")));
    }
    if let Some(d) = frac_digits.iter().find(|d| **d != 0 && **d != 2) {
        return Err(Error::InvalidArgument(format!("fractional digit {d} outside {{0,2}}")));
    }
    let three = BigInt::from(3);
    let int_part = int_digits.iter().fold(BigInt::zero(), |acc, d| acc * &three + BigInt::from(*d));
    let mut frac = BigRational::zero();
    let mut scale = BigInt::one();
    for d in frac_digits {
        scale *= &three;
        frac += BigRational::new(BigInt::from(*d), scale.clone());
    }
    Ok(BigRational::from_integer(int_part) + frac)
}
