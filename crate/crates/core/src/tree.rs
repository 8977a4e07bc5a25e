//! The N-ary tree of finite words and its dipole kernel.
//!
//! Vertices are finite words over `{0, …, N-1}`; the empty word is the origin
//! `o`. With unit conductance the dipole `v_x` (the solution of
//! `Δv_x = δ_x - δ_o` with `v_x(o) = 0`) is the path-intersection count
//! `v_x(y) = ♯(γ(x) ∩ γ(y))`, the length of the longest common prefix of `x`
//! and `y`. Everything here is integer arithmetic.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{VertexFunction, WeightedGraph};
use crate::scalar::Scalar;

/// A finite word over the alphabet `{0, …, base-1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    base: u8,
    digits: Vec<u8>,
}

impl Word {
    /// The empty word `o` over the binary alphabet.
    pub fn origin() -> Self {
        Self { base: 2, digits: Vec::new() }
    }

    pub fn empty(base: u8) -> Self {
        Self { base, digits: Vec::new() }
    }

    pub fn new(digits: Vec<u8>, base: u8) -> Result<Self> {
        if base < 2 {
            return Err(Error::InvalidWord(format!("alphabet size {base} is smaller than 2")));
        }
        if let Some(d) = digits.iter().find(|d| **d >= base) {
            return Err(Error::InvalidWord(format!("digit {d} outside alphabet of size {base}")));
        }
        Ok(Self { base, digits })
    }

    pub fn binary(digits: &[u8]) -> Result<Self> {
        Self::new(digits.to_vec(), 2)
    }

    /// Parses a digit string; `""` and `"-"` denote the origin.
    pub fn parse_base(text: &str, base: u8) -> Result<Self> {
        let text = text.trim();
        if text == "-" {
            return Ok(Self::empty(base));
        }
        let digits = text
            .chars()
            .map(|ch| {
                ch.to_digit(10)
                    .map(|d| d as u8)
                    .ok_or_else(|| Error::InvalidWord(format!("{text:?}: {ch:?} is not a digit")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(digits, base)
    }

    pub fn base(&self) -> u8 {
        self.base
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    /// `l(x)`.
    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_origin(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_origin()
    }

    /// `x*`, the word with its last letter removed. `None` for the origin.
    pub fn parent(&self) -> Option<Word> {
        if self.is_origin() {
            return None;
        }
        Some(Self { base: self.base, digits: self.digits[..self.len() - 1].to_vec() })
    }

    /// The concatenation `x b`.
    pub fn child(&self, letter: u8) -> Result<Word> {
        let mut digits = self.digits.clone();
        digits.push(letter);
        Self::new(digits, self.base)
    }

    /// The word `b x`, one step longer at the front.
    pub fn prepend(&self, letter: u8) -> Result<Word> {
        let mut digits = Vec::with_capacity(self.len() + 1);
        digits.push(letter);
        digits.extend_from_slice(&self.digits);
        Self::new(digits, self.base)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut digits = self.digits.clone();
        digits.extend_from_slice(&other.digits);
        Self { base: self.base, digits }
    }

    pub fn common_prefix_len(&self, other: &Word) -> usize {
        self.digits.iter().zip(&other.digits).take_while(|(a, b)| a == b).count()
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        self.len() <= other.len() && self.common_prefix_len(other) == self.len()
    }

    /// Every prefix from the origin up to and including `self`.
    pub fn prefixes(&self) -> impl Iterator<Item = Word> + '_ {
        (0..=self.len()).map(move |l| Self { base: self.base, digits: self.digits[..l].to_vec() })
    }

    /// Plain digit string; the origin renders as `""`.
    pub fn to_digit_string(&self) -> String {
        self.digits.iter().map(|d| char::from(b'0' + d)).collect()
    }

    /// Command-line form; the origin renders as `"-"`.
    pub fn to_cli_string(&self) -> String {
        if self.is_origin() {
            "-".into()
        } else {
            self.to_digit_string()
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_digit_string())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_origin() {
            write!(f, "o")
        } else {
            write!(f, "\"{}\"", self.to_digit_string())
        }
    }
}

impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse_base(s, 2)
    }
}

/// All words of length exactly `len`, in lexicographic order.
pub fn words_of_length(len: usize, base: u8) -> Vec<Word> {
    let mut out = vec![Word::empty(base)];
    for _ in 0..len {
        out = out.iter().flat_map(|w| (0..base).map(move |b| w.child(b).expect("letter in alphabet"))).collect();
    }
    out
}

/// All words of length `1..=max_len` in shortlex order (the origin excluded).
pub fn words_up_to(max_len: usize, base: u8) -> Vec<Word> {
    (1..=max_len).flat_map(|l| words_of_length(l, base)).collect()
}

/// Shortlex position: `(N^l - 1)/(N - 1)` plus the big-endian value of the digits.
fn shortlex_index(w: &Word) -> usize {
    let n = w.base() as usize;
    let offset = (n.pow(w.len() as u32) - 1) / (n - 1);
    offset + w.digits().iter().fold(0usize, |acc, d| acc * n + *d as usize)
}

/// The unique edge path `γ(x)` from the origin to `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreePath {
    edges: Vec<(Word, Word)>,
}

impl TreePath {
    pub fn edges(&self) -> &[(Word, Word)] {
        &self.edges
    }

    /// `♯γ(x)`.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// `γ(x) = {(o, a₁), (a₁, a₁a₂), …, (a₁…a_{n-1}, x)}`.
pub fn path_edges(x: &Word) -> TreePath {
    let prefixes: Vec<Word> = x.prefixes().collect();
    TreePath { edges: prefixes.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect() }
}

/// The dipole kernel `v_x(y) = ♯(γ(x) ∩ γ(y))`.
pub fn dipole_value(x: &Word, y: &Word) -> Result<u64> {
    if x.is_origin() {
        return Err(Error::OriginDipole);
    }
    Ok(x.common_prefix_len(y) as u64)
}

/// Finite truncation of the N-ary tree: all words of length at most `depth`,
/// unit conductance on every parent-child edge.
///
/// Leaves keep only the edge to their parent. Tree dipoles are constant below
/// their word, so `Δv_x = δ_x - δ_o` still holds exactly on any truncation
/// with `depth ≥ l(x)`.
#[derive(Debug, Clone)]
pub struct DyadicTree<S = i64> {
    depth: usize,
    base: u8,
    words: Vec<Word>,
    graph: WeightedGraph<S>,
}

impl<S: Scalar> DyadicTree<S> {
    /// Binary tree truncated at `depth`.
    pub fn new(depth: usize) -> Result<Self> {
        Self::with_base(depth, 2)
    }

    pub fn with_base(depth: usize, base: u8) -> Result<Self> {
        if base < 2 {
            return Err(Error::InvalidWord(format!("alphabet size {base} is smaller than 2")));
        }
        if depth == 0 {
            return Err(Error::InvalidArgument("tree depth must be at least 1".into()));
        }
        let mut words = vec![Word::empty(base)];
        words.extend(words_up_to(depth, base));
        let edges: Vec<(usize, usize, S)> = words[1..]
            .iter()
            .map(|w| {
                let parent = w.parent().expect("non-origin word");
                (shortlex_index(&parent), shortlex_index(w), S::one())
            })
            .collect();
        let ids = words.iter().map(Word::to_digit_string).collect();
        let graph = WeightedGraph::from_indexed(ids, edges, 0)?;
        Ok(Self { depth, base, words, graph })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn base(&self) -> u8 {
        self.base
    }

    pub fn graph(&self) -> &WeightedGraph<S> {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.words.len()
    }

    /// Vertices in shortlex order, starting with the origin.
    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn word(&self, index: usize) -> &Word {
        &self.words[index]
    }

    pub fn vertex(&self, w: &Word) -> Result<usize> {
        if w.base() != self.base {
            return Err(Error::InvalidWord(format!("word {w:?} is over base {}, tree over {}", w.base(), self.base)));
        }
        if w.len() > self.depth {
            return Err(Error::DepthTooSmall { depth: self.depth, length: w.len() });
        }
        Ok(shortlex_index(w))
    }

    /// `v_x` as a vertex function on the truncation.
    pub fn dipole(&self, x: &Word) -> Result<VertexFunction<S>> {
        self.vertex(x)?;
        if x.is_origin() {
            return Err(Error::OriginDipole);
        }
        Ok(VertexFunction::from_fn(self.vertex_count(), |i| {
            S::from_i64(x.common_prefix_len(&self.words[i]) as i64)
        }))
    }

    /// `Σ_{x∈F} coeffs[x] · v_x`.
    pub fn dipole_combination(&self, family: &[Word], coeffs: &[S]) -> Result<VertexFunction<S>> {
        if family.len() != coeffs.len() {
            return Err(Error::Dimension { expected: family.len(), got: coeffs.len() });
        }
        let mut out = VertexFunction::zeros(self.vertex_count());
        for (x, a) in family.iter().zip(coeffs) {
            out = out.combine(S::one(), &self.dipole(x)?, a.clone());
        }
        Ok(out)
    }

    pub fn delta(&self, w: &Word) -> Result<VertexFunction<S>> {
        Ok(VertexFunction::delta(self.vertex_count(), self.vertex(w)?))
    }
}

/// `Δv_x - (δ_x - δ_o)` on the unit tree truncated at `depth`; identically zero.
pub fn dipole_defect(x: &Word, depth: usize) -> Result<VertexFunction<i64>> {
    if depth < x.len() {
        return Err(Error::DepthTooSmall { depth, length: x.len() });
    }
    let tree = DyadicTree::<i64>::with_base(depth.max(1), x.base())?;
    let v = tree.dipole(x)?;
    let lap = tree.graph().laplacian(&v)?;
    let target = tree.delta(x)?.combine(1, &tree.delta(&Word::empty(x.base()))?, -1);
    Ok(lap.combine(1, &target, -1))
}
