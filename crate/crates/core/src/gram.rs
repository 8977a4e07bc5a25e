//! Gram matrices of tree dipoles and their spectra.
//!
//! For a finite family `F` of non-origin words the Gram matrix
//! `M_F = (⟨v_x, v_y⟩_E)` is the integer matrix of common-prefix lengths.
//! Its eigenvectors `ξ_k` extend to the Karhunen–Loève vectors
//! `w_k = (1/λ_k) Σ_x ξ_k(x) v_x`, which are energy-orthogonal with
//! `‖w_k‖²_E = 1/λ_k`; `u_k = √λ_k · w_k` is the unit-norm version.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::{VertexFunction, WeightedGraph};
use crate::linalg::{self, SquareMatrix, SymmetricEigen};
use crate::scalar::compensated_sum;
use crate::tree::{dipole_value, words_up_to, DyadicTree, Word};

fn validate_family(family: &[Word]) -> Result<()> {
    if family.is_empty() {
        return Err(Error::WordFamily("family is empty".into()));
    }
    let mut seen = HashSet::new();
    for w in family {
        if w.is_origin() {
            return Err(Error::WordFamily("the origin has no dipole".into()));
        }
        if !seen.insert(w) {
            return Err(Error::WordFamily(format!("{w} appears twice")));
        }
    }
    Ok(())
}

fn max_len(family: &[Word]) -> usize {
    family.iter().map(Word::len).max().unwrap_or(0)
}

/// `M_{xy} = v_x(y)` computed from prefixes alone.
pub fn gram_matrix(family: &[Word]) -> Result<Vec<Vec<u64>>> {
    validate_family(family)?;
    family.iter().map(|x| family.iter().map(|y| dipole_value(x, y)).collect()).collect()
}

/// `⟨v_x, v_y⟩_E` summed edge by edge on a truncation of depth `depth`.
pub fn energy_gram(family: &[Word], depth: usize) -> Result<Vec<Vec<i64>>> {
    validate_family(family)?;
    let tree = DyadicTree::<i64>::with_base(depth, family[0].base())?;
    let dipoles = family.iter().map(|x| tree.dipole(x)).collect::<Result<Vec<_>>>()?;
    dipoles
        .iter()
        .map(|a| dipoles.iter().map(|b| tree.graph().energy_inner(a, b)).collect())
        .collect()
}

/// `⟨v_x, Δv_y⟩_E` on a truncation of depth `depth`; equals `δ_x(y) + 1`.
pub fn dipole_laplacian_pairing(x: &Word, y: &Word, depth: usize) -> Result<i64> {
    let tree = DyadicTree::<i64>::with_base(depth, x.base())?;
    let vx = tree.dipole(x)?;
    let lap = tree.graph().laplacian(&tree.dipole(y)?)?;
    tree.graph().energy_inner(&vx, &lap)
}

/// Gram matrix with its eigendecomposition.
#[derive(Debug, Clone)]
pub struct GramSpectrum {
    words: Option<Vec<Word>>,
    matrix: SquareMatrix,
    eigen: SymmetricEigen,
}

impl GramSpectrum {
    pub fn from_words(family: &[Word]) -> Result<Self> {
        let exact = gram_matrix(family)?;
        let matrix = SquareMatrix::from_fn(family.len(), |i, j| exact[i][j] as f64);
        let eigen = linalg::eigh(&matrix)?;
        Ok(Self { words: Some(family.to_vec()), matrix, eigen })
    }

    /// Spectrum of an arbitrary symmetric matrix, with no word family attached.
    pub fn from_matrix(matrix: SquareMatrix) -> Result<Self> {
        let eigen = linalg::eigh(&matrix)?;
        Ok(Self { words: None, matrix, eigen })
    }

    pub fn words(&self) -> Option<&[Word]> {
        self.words.as_deref()
    }

    pub fn matrix(&self) -> &SquareMatrix {
        &self.matrix
    }

    pub fn len(&self) -> usize {
        self.matrix.dim()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Descending.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigen.values
    }

    pub fn eigenvectors(&self) -> &[Vec<f64>] {
        &self.eigen.vectors
    }

    /// `⟨ξ_j⟩ = Σ_x ξ_j(x)`.
    pub fn means(&self) -> Vec<f64> {
        self.eigen.vectors.iter().map(|v| compensated_sum(v.iter().copied())).collect()
    }

    /// `max_j ‖Mξ_j - λ_jξ_j‖₂ / ‖M‖_F`.
    pub fn residual(&self) -> f64 {
        let scale = self.matrix.frobenius_norm().max(f64::MIN_POSITIVE);
        self.eigen
            .values
            .iter()
            .zip(&self.eigen.vectors)
            .map(|(l, v)| {
                let mv = self.matrix.mul_vec(v);
                linalg::norm(&mv.iter().zip(v).map(|(a, b)| a - l * b).collect::<Vec<_>>()) / scale
            })
            .fold(0.0, f64::max)
    }

    fn family(&self) -> Result<&[Word]> {
        self.words().ok_or_else(|| Error::WordFamily("spectrum was built from a bare matrix".into()))
    }

    pub fn kl_vectors(&self, normalization: Normalization) -> Result<Vec<KLVector>> {
        let family = self.family()?;
        Ok(self
            .eigen
            .values
            .iter()
            .zip(&self.eigen.vectors)
            .enumerate()
            .map(|(k, (&lambda, xi))| {
                let scale = match normalization {
                    Normalization::W => 1.0 / lambda,
                    Normalization::U => 1.0 / lambda.sqrt(),
                };
                KLVector {
                    index: k,
                    words: family.to_vec(),
                    coefficients: xi.iter().map(|c| c * scale).collect(),
                    lambda,
                    normalization,
                }
            })
            .collect())
    }

    /// `(λ_j, R_F(λ_j))` with `R_F(λ) = (1/λ)(1 + ⟨ξ_λ⟩²)`.
    pub fn r_function(&self) -> Vec<(f64, f64)> {
        self.eigen.values.iter().zip(self.means()).map(|(&l, m)| (l, (1.0 + m * m) / l)).collect()
    }

    /// `⟨u_j, Δu_k⟩_E = (δ_{jk} + ⟨ξ_j⟩⟨ξ_k⟩) / √(λ_jλ_k)`.
    pub fn kl_laplacian_formula(&self) -> SquareMatrix {
        let means = self.means();
        let l = &self.eigen.values;
        SquareMatrix::from_fn(self.len(), |j, k| {
            let delta = if j == k { 1.0 } else { 0.0 };
            (delta + means[j] * means[k]) / (l[j] * l[k]).sqrt()
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    /// `w_k = (1/λ_k) Σ ξ_k(x) v_x`.
    W,
    /// `u_k = √λ_k · w_k`, unit energy norm.
    U,
}

/// A Karhunen–Loève vector `Σ_{x∈F} a_x v_x`.
#[derive(Debug, Clone)]
pub struct KLVector {
    pub index: usize,
    pub words: Vec<Word>,
    pub coefficients: Vec<f64>,
    pub lambda: f64,
    pub normalization: Normalization,
}

impl KLVector {
    /// Value at any vertex of the infinite tree.
    pub fn evaluate(&self, z: &Word) -> f64 {
        compensated_sum(
            self.words
                .iter()
                .zip(&self.coefficients)
                .map(|(x, a)| a * x.common_prefix_len(z) as f64),
        )
    }

    pub fn on_tree(&self, tree: &DyadicTree<f64>) -> Result<VertexFunction<f64>> {
        tree.dipole_combination(&self.words, &self.coefficients)
    }
}

fn float_tree(family: &[Word], depth: usize) -> Result<DyadicTree<f64>> {
    let needed = max_len(family);
    if depth < needed {
        return Err(Error::DepthTooSmall { depth, length: needed });
    }
    DyadicTree::with_base(depth, family[0].base())
}

fn kl_on_tree(gs: &GramSpectrum, depth: usize, normalization: Normalization) -> Result<(DyadicTree<f64>, Vec<VertexFunction<f64>>)> {
    let tree = float_tree(gs.family()?, depth)?;
    let fs = gs.kl_vectors(normalization)?.iter().map(|k| k.on_tree(&tree)).collect::<Result<Vec<_>>>()?;
    Ok((tree, fs))
}

/// `(⟨w_j, w_k⟩_E)` (or with `u`) computed edge by edge on a truncation.
pub fn kl_gram_check(gs: &GramSpectrum, depth: usize, normalization: Normalization) -> Result<SquareMatrix> {
    let (tree, fs) = kl_on_tree(gs, depth, normalization)?;
    let g = tree.graph();
    let mut out = SquareMatrix::zeros(fs.len());
    for j in 0..fs.len() {
        for k in 0..fs.len() {
            out.set(j, k, g.energy_inner(&fs[j], &fs[k])?);
        }
    }
    Ok(out)
}

/// `(⟨u_j, Δu_k⟩_E)` computed from the graph Laplacian on a truncation.
pub fn kl_laplacian_energy(gs: &GramSpectrum, depth: usize) -> Result<SquareMatrix> {
    let (tree, fs) = kl_on_tree(gs, depth, Normalization::U)?;
    let g = tree.graph();
    let laps = fs.iter().map(|f| g.laplacian(f)).collect::<Result<Vec<_>>>()?;
    let mut out = SquareMatrix::zeros(fs.len());
    for j in 0..fs.len() {
        for k in 0..fs.len() {
            out.set(j, k, g.energy_inner(&fs[j], &laps[k])?);
        }
    }
    Ok(out)
}

/// `⟨u_j, Δu_j⟩_E` by the energy route, one per eigenvalue.
pub fn r_function_energy(gs: &GramSpectrum, depth: usize) -> Result<Vec<f64>> {
    let m = kl_laplacian_energy(gs, depth)?;
    Ok((0..m.dim()).map(|j| m.get(j, j)).collect())
}

/// `⟨u, Δu⟩_E / ‖u‖²_E`.
pub fn rayleigh_energy(g: &WeightedGraph<f64>, u: &VertexFunction<f64>) -> Result<f64> {
    let norm = g.energy_norm_sq(u)?;
    if norm == 0.0 || !norm.is_finite() {
        return Err(Error::ZeroEnergy);
    }
    Ok(g.quadratic_form_energy(u)? / norm)
}

/// One row of the reciprocity table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReciprocityPair {
    /// Eigenvalue of `M_F` whose eigenvector seeded the coefficients.
    pub lambda: f64,
    /// `⟨u, Δu⟩_E / ‖u‖²_E` for `u = Σ ξ_x v_x`.
    pub energy: f64,
    /// `‖ξ‖² / ⟨ξ, M ξ⟩`.
    pub matrix: f64,
}

/// Both sides of the reciprocity identity for one zero-sum coefficient vector.
pub fn reciprocity_pair(family: &[Word], xi: &[f64], depth: usize) -> Result<(f64, f64)> {
    validate_family(family)?;
    if xi.len() != family.len() {
        return Err(Error::Dimension { expected: family.len(), got: xi.len() });
    }
    let tree = float_tree(family, depth)?;
    let u = tree.dipole_combination(family, xi)?;
    let energy = rayleigh_energy(tree.graph(), &u)?;
    let exact = gram_matrix(family)?;
    let m = SquareMatrix::from_fn(family.len(), |i, j| exact[i][j] as f64);
    let matrix = linalg::dot(xi, xi) / m.quadratic_form(xi);
    Ok((energy, matrix))
}

/// For each eigenvector of `M_F`, project out the constant direction and
/// evaluate both sides of the reciprocity identity. Eigenvectors that are
/// constant on `F` are skipped.
pub fn reciprocity_spectrum(family: &[Word], depth: usize) -> Result<Vec<ReciprocityPair>> {
    let gs = GramSpectrum::from_words(family)?;
    let n = family.len() as f64;
    let mut out = Vec::new();
    for (&lambda, xi) in gs.eigenvalues().iter().zip(gs.eigenvectors()) {
        let mean = compensated_sum(xi.iter().copied()) / n;
        let projected: Vec<f64> = xi.iter().map(|c| c - mean).collect();
        if linalg::norm(&projected) < 1e-12 {
            continue;
        }
        let (energy, matrix) = reciprocity_pair(family, &projected, depth)?;
        out.push(ReciprocityPair { lambda, energy, matrix });
    }
    Ok(out)
}

/// `Σ_j ⟨ξ_j⟩²`; equals `♯F` by Parseval.
pub fn spectral_growth(family: &[Word]) -> Result<f64> {
    let gs = GramSpectrum::from_words(family)?;
    Ok(compensated_sum(gs.means().iter().map(|m| m * m)))
}

/// All binary words of length `1..=d`.
pub fn nested_family(d: usize) -> Vec<Word> {
    words_up_to(d, 2)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthRow {
    pub depth: usize,
    pub size: usize,
    pub sum: f64,
}

pub fn growth_table(max_depth: usize) -> Result<Vec<GrowthRow>> {
    (1..=max_depth)
        .map(|d| {
            let family = nested_family(d);
            Ok(GrowthRow { depth: d, size: family.len(), sum: spectral_growth(&family)? })
        })
        .collect()
}

/// Whether `{v_x : x ∈ F}` is linearly independent, judged from the
/// energy-route Gram matrix: smallest eigenvalue above `1e-10 · ‖M‖_F`.
pub fn linear_independence_check(family: &[Word], depth: usize) -> Result<bool> {
    if depth < max_len(family) {
        return Err(Error::DepthTooSmall { depth, length: max_len(family) });
    }
    let exact = energy_gram(family, depth)?;
    let m = SquareMatrix::from_fn(family.len(), |i, j| exact[i][j] as f64);
    let eigen = linalg::eigh(&m)?;
    let smallest = *eigen.values.last().expect("family is nonempty");
    Ok(smallest > 1e-10 * m.frobenius_norm())
}
