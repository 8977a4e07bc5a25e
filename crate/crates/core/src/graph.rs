//! Finite weighted graphs with conductance.
//!
//! A [`WeightedGraph`] carries a positive conductance `c(x,y)` on every edge
//! and a distinguished origin `o`. It hosts the Laplacian
//! `(Δf)(x) = Σ_{y~x} c(x,y)(f(x) - f(y))`, the transfer operator
//! `(Tf)(x) = Σ_{y~x} p(x,y) f(y)` with `p(x,y) = c(x,y)/c(x)`, and the
//! `l²` and energy inner products.
//!
//! All structural axioms (edge symmetry, no self-loops, connectedness,
//! positive conductance) are checked at construction; a graph value that
//! exists is valid.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::ops::Index;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::scalar::{FieldScalar, Scalar};

/// A function on the vertices of a graph, stored by vertex index.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexFunction<S = f64> {
    values: Vec<S>,
}

impl<S: Scalar> VertexFunction<S> {
    pub fn new(values: Vec<S>) -> Self {
        Self { values }
    }

    pub fn constant(len: usize, value: S) -> Self {
        Self { values: vec![value; len] }
    }

    pub fn zeros(len: usize) -> Self {
        Self::constant(len, S::zero())
    }

    /// The point mass `δ_x`.
    pub fn delta(len: usize, at: usize) -> Self {
        let mut f = Self::zeros(len);
        f.values[at] = S::one();
        f
    }

    pub fn from_fn(len: usize, f: impl FnMut(usize) -> S) -> Self {
        Self { values: (0..len).map(f).collect() }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn into_values(self) -> Vec<S> {
        self.values
    }

    pub fn map<T: Scalar>(&self, f: impl FnMut(&S) -> T) -> VertexFunction<T> {
        VertexFunction { values: self.values.iter().map(f).collect() }
    }

    /// Pointwise `a·self + b·other`.
    pub fn combine(&self, a: S, other: &Self, b: S) -> Self {
        Self {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(x, y)| a.clone() * x.clone() + b.clone() * y.clone())
                .collect(),
        }
    }

    pub fn scaled(&self, a: S) -> Self {
        Self { values: self.values.iter().map(|x| a.clone() * x.clone()).collect() }
    }

    /// Pointwise product.
    pub fn product(&self, other: &Self) -> Self {
        Self {
            values: self.values.iter().zip(&other.values).map(|(x, y)| x.clone() * y.clone()).collect(),
        }
    }

    /// Largest absolute deviation, projected through [`Scalar::to_f64`] of the difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(x, y)| (x.clone() - y.clone()).to_f64().abs())
            .fold(0.0, f64::max)
    }
}

impl<S> Index<usize> for VertexFunction<S> {
    type Output = S;
    fn index(&self, i: usize) -> &S {
        &self.values[i]
    }
}

/// `⟨f₁, f₂⟩_{l²} = Σ_x conj(f₁(x)) f₂(x)`.
pub fn l2_inner<S: Scalar>(f1: &VertexFunction<S>, f2: &VertexFunction<S>) -> Result<S> {
    if f1.len() != f2.len() {
        return Err(Error::VertexMismatch { expected: f1.len(), got: f2.len() });
    }
    Ok(S::sum_all(f1.values.iter().zip(&f2.values).map(|(a, b)| a.conj() * b.clone())))
}

/// Finite connected graph with symmetric positive conductance and an origin.
#[derive(Debug, Clone)]
pub struct WeightedGraph<S = f64> {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    adjacency: Vec<Vec<(usize, S)>>,
    origin: usize,
}

impl<S: Scalar> WeightedGraph<S> {
    /// Builds a graph from vertex ids, undirected weighted edges and an origin id.
    ///
    /// An edge may be listed in one or both orientations; listing it twice
    /// with different conductances violates edge symmetry.
    pub fn new(
        vertices: Vec<String>,
        edges: impl IntoIterator<Item = (String, String, S)>,
        origin: &str,
    ) -> Result<Self> {
        let mut index = HashMap::with_capacity(vertices.len());
        for (i, id) in vertices.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(Error::GraphAxiom {
                    axiom: "distinct vertices",
                    detail: format!("vertex {id:?} listed twice"),
                });
            }
        }
        let lookup = |id: &str| index.get(id).copied().ok_or_else(|| Error::UnknownVertex(id.to_string()));
        let mut indexed = Vec::new();
        for (u, v, c) in edges {
            indexed.push((lookup(&u)?, lookup(&v)?, c));
        }
        let origin = lookup(origin).map_err(|_| Error::GraphAxiom {
            axiom: "choice of origin",
            detail: format!("origin {origin:?} is not a vertex"),
        })?;
        Self::from_indexed(vertices, indexed, origin)
    }

    /// Builds a graph whose vertices are `0..n` (ids are the decimal indices).
    pub fn from_index_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize, S)>, origin: usize) -> Result<Self> {
        let ids = (0..n).map(|i| i.to_string()).collect();
        let edges: Vec<_> = edges.into_iter().collect();
        for &(u, v, _) in &edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::UnknownVertex(w.to_string()));
                }
            }
        }
        if origin >= n {
            return Err(Error::GraphAxiom { axiom: "choice of origin", detail: format!("origin {origin} out of range") });
        }
        Self::from_indexed(ids, edges, origin)
    }

    pub(crate) fn from_indexed(ids: Vec<String>, edges: Vec<(usize, usize, S)>, origin: usize) -> Result<Self> {
        let n = ids.len();
        if n == 0 {
            return Err(Error::GraphAxiom { axiom: "nonempty vertex set", detail: "no vertices".into() });
        }
        let mut weights: BTreeMap<(usize, usize), S> = BTreeMap::new();
        for (u, v, c) in edges {
            if u == v {
                return Err(Error::GraphAxiom {
                    axiom: "no self-loops",
                    detail: format!("edge ({}, {}) is a loop", ids[u], ids[v]),
                });
            }
            if !c.is_positive_real() {
                return Err(Error::GraphAxiom {
                    axiom: "positive conductance",
                    detail: format!("c({}, {}) = {:?}", ids[u], ids[v], c),
                });
            }
            let key = (u.min(v), u.max(v));
            match weights.get(&key) {
                Some(prev) if *prev != c => {
                    return Err(Error::GraphAxiom {
                        axiom: "edge symmetry",
                        detail: format!("c({}, {}) given as both {:?} and {:?}", ids[u], ids[v], prev, c),
                    });
                }
                Some(_) => {}
                None => {
                    weights.insert(key, c);
                }
            }
        }
        let mut adjacency = vec![Vec::new(); n];
        for ((u, v), c) in weights {
            adjacency[u].push((v, c.clone()));
            adjacency[v].push((u, c));
        }
        for nbrs in &mut adjacency {
            nbrs.sort_by_key(|(j, _)| *j);
        }
        let index = ids.iter().enumerate().map(|(i, id)| (id.clone(), i)).collect();
        let g = Self { ids, index, adjacency, origin };
        g.check_connected()?;
        Ok(g)
    }

    fn check_connected(&self) -> Result<()> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([self.origin]);
        seen[self.origin] = true;
        while let Some(x) = queue.pop_front() {
            for &(y, _) in &self.adjacency[x] {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        if let Some(x) = seen.iter().position(|s| !s) {
            let detail = if n == 1 || self.adjacency[x].is_empty() {
                format!("vertex {:?} has no edges (c(x) = 0)", self.ids[x])
            } else {
                format!("vertex {:?} is not reachable from the origin", self.ids[x])
            };
            return Err(Error::GraphAxiom { axiom: "connectedness", detail });
        }
        if n == 1 {
            return Err(Error::GraphAxiom {
                axiom: "positive total conductance",
                detail: "a single vertex has c(o) = 0".into(),
            });
        }
        Ok(())
    }

    /// Cycle `0 - 1 - … - (n-1) - 0` with unit conductance, origin 0.
    pub fn cycle(n: usize) -> Result<Self> {
        Self::from_index_edges(n, (0..n).map(|i| (i, (i + 1) % n, S::one())), 0)
    }

    /// Path `0 - 1 - … - (n-1)` with unit conductance, origin 0.
    pub fn path(n: usize) -> Result<Self> {
        Self::from_index_edges(n, (1..n).map(|i| (i - 1, i, S::one())), 0)
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn origin(&self) -> usize {
        self.origin
    }

    pub fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.index.get(id).copied().ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    /// Neighbors of `x` with their conductances, sorted by index.
    pub fn neighbors(&self, x: usize) -> &[(usize, S)] {
        &self.adjacency[x]
    }

    /// `c(x) = Σ_{y~x} c(x,y)`.
    pub fn total_conductance(&self, x: usize) -> S {
        S::sum_all(self.adjacency[x].iter().map(|(_, c)| c.clone()))
    }

    /// Each undirected edge once, as `(x, y, c)` with `x < y`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, &S)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(x, nbrs)| nbrs.iter().filter(move |(y, _)| *y > x).map(move |(y, c)| (x, *y, c)))
    }

    /// Number of edges on a shortest path from `from` to each vertex.
    pub fn hop_distances(&self, from: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.vertex_count()];
        dist[from] = 0;
        let mut queue = VecDeque::from([from]);
        while let Some(x) = queue.pop_front() {
            for (y, _) in &self.adjacency[x] {
                if dist[*y] == usize::MAX {
                    dist[*y] = dist[x] + 1;
                    queue.push_back(*y);
                }
            }
        }
        dist
    }

    /// Same graph with conductances converted by `f`.
    pub fn map_weights<T: Scalar>(&self, f: impl Fn(&S) -> T) -> WeightedGraph<T> {
        WeightedGraph {
            ids: self.ids.clone(),
            index: self.index.clone(),
            adjacency: self
                .adjacency
                .iter()
                .map(|nbrs| nbrs.iter().map(|(y, c)| (*y, f(c))).collect())
                .collect(),
            origin: self.origin,
        }
    }

    fn check(&self, f: &VertexFunction<S>) -> Result<()> {
        if f.len() != self.vertex_count() {
            return Err(Error::VertexMismatch { expected: self.vertex_count(), got: f.len() });
        }
        Ok(())
    }

    /// `(Δ_c f)(x) = Σ_{y~x} c(x,y)(f(x) - f(y))`.
    pub fn laplacian(&self, f: &VertexFunction<S>) -> Result<VertexFunction<S>> {
        self.check(f)?;
        Ok(VertexFunction::from_fn(self.vertex_count(), |x| {
            S::sum_all(self.adjacency[x].iter().map(|(y, c)| c.clone() * (f[x].clone() - f[*y].clone())))
        }))
    }

    /// `⟨f₁, f₂⟩_E = ½ Σ_x Σ_{y~x} c(x,y) conj(f₁(x) - f₁(y)) (f₂(x) - f₂(y))`,
    /// evaluated once per undirected edge.
    pub fn energy_inner(&self, f1: &VertexFunction<S>, f2: &VertexFunction<S>) -> Result<S> {
        self.check(f1)?;
        self.check(f2)?;
        Ok(S::sum_all(self.edges().map(|(x, y, c)| {
            c.clone() * (f1[x].clone() - f1[y].clone()).conj() * (f2[x].clone() - f2[y].clone())
        })))
    }

    pub fn energy_norm_sq(&self, f: &VertexFunction<S>) -> Result<S> {
        self.energy_inner(f, f)
    }

    /// `⟨φ, Δφ⟩_{l²}` through `Σ_x c(x)|φ(x)|² - Σ_x Σ_{y~x} c(x,y) conj(φ(x)) φ(y)`.
    pub fn quadratic_form_l2(&self, f: &VertexFunction<S>) -> Result<S> {
        self.check(f)?;
        let diagonal = S::sum_all(
            (0..self.vertex_count()).map(|x| self.total_conductance(x) * f[x].conj() * f[x].clone()),
        );
        let off = S::sum_all(self.adjacency.iter().enumerate().flat_map(|(x, nbrs)| {
            nbrs.iter().map(move |(y, c)| c.clone() * f[x].conj() * f[*y].clone())
        }));
        Ok(diagonal - off)
    }

    /// `⟨φ, Δφ⟩_E` through `Σ_{x≠o} |(Δφ)(x)|² + |Σ_{x≠o} (Δφ)(x)|²`.
    pub fn quadratic_form_energy(&self, f: &VertexFunction<S>) -> Result<S> {
        let lap = self.laplacian(f)?;
        let off_origin = || (0..self.vertex_count()).filter(|&x| x != self.origin).map(|x| lap[x].clone());
        let squares = S::sum_all(off_origin().map(|v| v.conj() * v));
        let total = S::sum_all(off_origin());
        Ok(squares + total.conj() * total)
    }
}

impl<S: FieldScalar> WeightedGraph<S> {
    /// `p(x,y) = c(x,y)/c(x)`; zero when `y` is not a neighbor.
    pub fn transition_probability(&self, x: usize, y: usize) -> S {
        self.adjacency[x]
            .binary_search_by_key(&y, |(j, _)| *j)
            .map(|k| self.adjacency[x][k].1.clone() / self.total_conductance(x))
            .unwrap_or_else(|_| S::zero())
    }

    /// `(T_c f)(x) = Σ_{y~x} p(x,y) f(y)`.
    pub fn transfer(&self, f: &VertexFunction<S>) -> Result<VertexFunction<S>> {
        self.check(f)?;
        Ok(VertexFunction::from_fn(self.vertex_count(), |x| {
            let cx = self.total_conductance(x);
            S::sum_all(self.adjacency[x].iter().map(|(y, c)| c.clone() / cx.clone() * f[*y].clone()))
        }))
    }

    /// Dense row-stochastic transition matrix.
    pub fn transition_matrix(&self) -> Vec<Vec<S>> {
        let n = self.vertex_count();
        (0..n)
            .map(|x| {
                let cx = self.total_conductance(x);
                let mut row = vec![S::zero(); n];
                for (y, c) in &self.adjacency[x] {
                    row[*y] = c.clone() / cx.clone();
                }
                row
            })
            .collect()
    }

    /// `c(x)/Σ_y c(y)`: the reversible probability measure of the walk.
    pub fn conductance_measure(&self) -> Vec<S> {
        let cs: Vec<S> = (0..self.vertex_count()).map(|x| self.total_conductance(x)).collect();
        let total = S::sum_all(cs.iter().cloned());
        cs.into_iter().map(|c| c / total.clone()).collect()
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct GraphFile {
    vertices: Vec<Value>,
    edges: Vec<EdgeRecord>,
    origin: Value,
}

#[derive(Debug, Serialize, Deserialize)]
struct EdgeRecord {
    u: Value,
    v: Value,
    c: f64,
}

fn id_of(value: &Value) -> Result<String> {
    match value {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(Error::InvalidArgument(format!("vertex id must be a string or number, got {other}"))),
    }
}

impl WeightedGraph<f64> {
    /// Parses `{"vertices": [...], "edges": [{"u":..,"v":..,"c":..}], "origin": ..}`.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let file: GraphFile = serde_json::from_str(text)?;
        let vertices = file.vertices.iter().map(id_of).collect::<Result<Vec<_>>>()?;
        let edges = file
            .edges
            .iter()
            .map(|e| Ok((id_of(&e.u)?, id_of(&e.v)?, e.c)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(vertices, edges, &id_of(&file.origin)?)
    }

    pub fn from_json_file(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn to_json_string(&self) -> String {
        let file = GraphFile {
            vertices: self.ids.iter().cloned().map(Value::String).collect(),
            edges: self
                .edges()
                .map(|(x, y, c)| EdgeRecord { u: Value::String(self.ids[x].clone()), v: Value::String(self.ids[y].clone()), c: *c })
                .collect(),
            origin: Value::String(self.ids[self.origin].clone()),
        };
        serde_json::to_string_pretty(&file).expect("graph serializes")
    }
}
