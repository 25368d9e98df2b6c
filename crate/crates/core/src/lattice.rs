//! Finite subgraphs of the integer lattice and of general finite graphs.
//!
//! A *region* is a vertex set Ω inside an ambient graph. The ambient graph is
//! either ℤ^d with x ∼ y ⇔ ‖x − y‖₁ = 1, or an explicit finite simple graph.
//! Everything downstream (operator assembly, boundary measures) works on a
//! [`PaddedGraph`]: Ω together with its first few boundary layers, with
//! vertices renumbered so that Ω comes first in domain order.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Debug;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest ambient graph accepted.
pub const MAX_AMBIENT_VERTICES: usize = 100_000;

pub trait Graph {
    type Vertex: Clone + Eq + Hash + Ord + Debug;

    fn neighbors(&self, v: &Self::Vertex) -> Vec<Self::Vertex>;

    fn degree(&self, v: &Self::Vertex) -> usize {
        self.neighbors(v).len()
    }

    /// The common degree if every vertex has the same degree.
    fn regular_degree(&self) -> Option<usize>;
}

/// A vertex set Ω inside an ambient graph, with a fixed index order.
pub trait Region {
    type G: Graph;

    fn graph(&self) -> &Self::G;
    fn vertices(&self) -> &[<Self::G as Graph>::Vertex];
    fn index_of(&self, v: &<Self::G as Graph>::Vertex) -> Option<usize>;

    fn contains(&self, v: &<Self::G as Graph>::Vertex) -> bool {
        self.index_of(v).is_some()
    }
}

/// A point of ℤ^d.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeVertex(pub Vec<i64>);

impl LatticeVertex {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn l1_distance(&self, other: &LatticeVertex) -> u64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a.abs_diff(*b)).sum()
    }
}

impl From<Vec<i64>> for LatticeVertex {
    fn from(c: Vec<i64>) -> Self {
        LatticeVertex(c)
    }
}

/// The Cayley graph of ℤ^d with the standard generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Lattice {
    pub dim: usize,
}

impl Graph for Lattice {
    type Vertex = LatticeVertex;

    fn neighbors(&self, v: &LatticeVertex) -> Vec<LatticeVertex> {
        let mut out = Vec::with_capacity(2 * self.dim);
        for i in 0..self.dim {
            for step in [-1, 1] {
                let mut w = v.clone();
                w.0[i] += step;
                out.push(w);
            }
        }
        out
    }

    fn degree(&self, _v: &LatticeVertex) -> usize {
        2 * self.dim
    }

    fn regular_degree(&self) -> Option<usize> {
        Some(2 * self.dim)
    }
}

/// A finite simple undirected graph on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGraph {
    adj: Vec<Vec<usize>>,
}

impl FiniteGraph {
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_AMBIENT_VERTICES {
            return Err(Error::CapExceeded { what: "ambient graph", size: n, cap: MAX_AMBIENT_VERTICES });
        }
        let mut adj = vec![Vec::new(); n];
        let mut seen = HashSet::with_capacity(edges.len());
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidDomain(format!("edge ({a}, {b}) out of range for {n} vertices")));
            }
            if a == b {
                return Err(Error::InvalidDomain(format!("self-loop at vertex {a}")));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(Error::InvalidDomain(format!("duplicate edge ({a}, {b})")));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(FiniteGraph { adj })
    }

    /// The cycle C_n on vertices `0..n`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidArgument(format!("cycle needs at least 3 vertices, got {n}")));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edges(n, &edges)
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&b| a < b).map(|&b| (a, b)));
        }
        out
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }
}

impl Graph for FiniteGraph {
    type Vertex = usize;

    fn neighbors(&self, v: &usize) -> Vec<usize> {
        self.adj[*v].clone()
    }

    fn degree(&self, v: &usize) -> usize {
        self.adj[*v].len()
    }

    fn regular_degree(&self) -> Option<usize> {
        let first = self.adj.first()?.len();
        self.adj.iter().all(|l| l.len() == first).then_some(first)
    }
}

/// A finite vertex set Ω ⊂ ℤ^d, stored in lexicographic order.
#[derive(Clone, Debug)]
pub struct LatticeDomain {
    lattice: Lattice,
    vertices: Vec<LatticeVertex>,
    index: HashMap<LatticeVertex, usize>,
}

impl LatticeDomain {
    /// Builds a domain from an arbitrary list of distinct points.
    pub fn from_vertices(dim: usize, vertices: Vec<LatticeVertex>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidDomain("dimension must be at least 1".into()));
        }
        if vertices.is_empty() {
            return Err(Error::InvalidDomain("domain must contain at least one vertex".into()));
        }
        if let Some(v) = vertices.iter().find(|v| v.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, got: v.dim() });
        }
        let mut vertices = vertices;
        vertices.sort();
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidDomain(format!("duplicate vertex {:?}", w[0].0)));
        }
        let index = vertices.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        Ok(LatticeDomain { lattice: Lattice { dim }, vertices, index })
    }

    /// The box ∏ᵢ {loᵢ, …, hiᵢ}.
    pub fn make_box(dim: usize, lo: &[i64], hi: &[i64]) -> Result<Self> {
        for len in [lo.len(), hi.len()] {
            if len != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: len });
            }
        }
        if let Some(i) = (0..dim).find(|&i| lo[i] > hi[i]) {
            return Err(Error::InvalidDomain(format!("box has lo[{i}] = {} > hi[{i}] = {}", lo[i], hi[i])));
        }
        let mut vertices = vec![LatticeVertex(Vec::with_capacity(dim))];
        for i in 0..dim {
            vertices = vertices
                .into_iter()
                .flat_map(|v| {
                    (lo[i]..=hi[i]).map(move |c| {
                        let mut w = v.clone();
                        w.0.push(c);
                        w
                    })
                })
                .collect();
        }
        Self::from_vertices(dim, vertices)
    }

    /// The cube {0, …, n}^d.
    pub fn cube(dim: usize, n: i64) -> Result<Self> {
        Self::make_box(dim, &vec![0; dim], &vec![n; dim])
    }

    /// The graph ball {y : ‖y − center‖₁ ≤ r}.
    pub fn make_ball(dim: usize, center: &LatticeVertex, r: u64) -> Result<Self> {
        if center.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: center.dim() });
        }
        let r = r as i64;
        let lo: Vec<i64> = center.0.iter().map(|c| c - r).collect();
        let hi: Vec<i64> = center.0.iter().map(|c| c + r).collect();
        let cube = Self::make_box(dim, &lo, &hi)?;
        let vertices = cube.vertices.into_iter().filter(|v| v.l1_distance(center) <= r as u64).collect();
        Self::from_vertices(dim, vertices)
    }

    pub fn dim(&self) -> usize {
        self.lattice.dim
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Largest coordinate spread maxᵢ (max xᵢ − min xᵢ) over Ω.
    pub fn extent(&self) -> usize {
        (0..self.dim())
            .map(|i| {
                let (lo, hi) = self
                    .vertices
                    .iter()
                    .fold((i64::MAX, i64::MIN), |(lo, hi), v| (lo.min(v.0[i]), hi.max(v.0[i])));
                (hi - lo) as usize
            })
            .max()
            .unwrap_or(0)
    }

    pub fn is_subset_of(&self, other: &LatticeDomain) -> bool {
        self.dim() == other.dim() && self.vertices.iter().all(|v| other.contains(v))
    }
}

impl Region for LatticeDomain {
    type G = Lattice;

    fn graph(&self) -> &Lattice {
        &self.lattice
    }

    fn vertices(&self) -> &[LatticeVertex] {
        &self.vertices
    }

    fn index_of(&self, v: &LatticeVertex) -> Option<usize> {
        self.index.get(v).copied()
    }
}

/// A finite ambient graph with a designated vertex subset Ω.
#[derive(Clone, Debug)]
pub struct AmbientGraph {
    graph: FiniteGraph,
    omega: Vec<usize>,
    index: HashMap<usize, usize>,
}

impl AmbientGraph {
    pub fn new(graph: FiniteGraph, omega: Vec<usize>) -> Result<Self> {
        if omega.is_empty() {
            return Err(Error::InvalidDomain("omega must be nonempty".into()));
        }
        let mut omega = omega;
        omega.sort_unstable();
        if let Some(&v) = omega.iter().find(|&&v| v >= graph.len()) {
            return Err(Error::InvalidDomain(format!("omega vertex {v} out of range for {} vertices", graph.len())));
        }
        if let Some(w) = omega.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidDomain(format!("duplicate omega vertex {}", w[0])));
        }
        let index = omega.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        Ok(AmbientGraph { graph, omega, index })
    }

    pub fn len(&self) -> usize {
        self.omega.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omega.is_empty()
    }
}

impl Region for AmbientGraph {
    type G = FiniteGraph;

    fn graph(&self) -> &FiniteGraph {
        &self.graph
    }

    fn vertices(&self) -> &[usize] {
        &self.omega
    }

    fn index_of(&self, v: &usize) -> Option<usize> {
        self.index.get(v).copied()
    }
}

/// The layers δ₁Ω, δ₂Ω, … around a region, each sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryLayers<V> {
    pub layers: Vec<Vec<V>>,
}

impl<V> BoundaryLayers<V> {
    pub fn sizes(&self) -> Vec<usize> {
        self.layers.iter().map(Vec::len).collect()
    }

    pub fn total(&self) -> usize {
        self.layers.iter().map(Vec::len).sum()
    }
}

/// δ_jΩ = δ(Ω ∪ δ₁Ω ∪ … ∪ δ_{j−1}Ω) for j = 1..=depth.
pub fn boundary_layers<R: Region>(region: &R, depth: usize) -> BoundaryLayers<<R::G as Graph>::Vertex> {
    let graph = region.graph();
    let mut seen: HashSet<_> = region.vertices().iter().cloned().collect();
    let mut frontier: Vec<_> = region.vertices().to_vec();
    let mut layers = Vec::with_capacity(depth);
    for _ in 0..depth {
        let mut next = Vec::new();
        for v in &frontier {
            for w in graph.neighbors(v) {
                if seen.insert(w.clone()) {
                    next.push(w);
                }
            }
        }
        next.sort();
        frontier = next.clone();
        layers.push(next);
    }
    BoundaryLayers { layers }
}

/// Ω plus `depth` boundary layers, renumbered locally.
///
/// Local indices `0..omega_size` are Ω in domain order; the layers follow in
/// order, each sorted. Edges to vertices outside the padded set are dropped
/// from `neighbors` but still counted in `degree`.
#[derive(Clone, Debug)]
pub struct PaddedGraph {
    pub omega_size: usize,
    pub layer: Vec<usize>,
    pub degree: Vec<usize>,
    pub neighbors: Vec<Vec<usize>>,
    pub layer_sizes: Vec<usize>,
}

impl PaddedGraph {
    pub fn len(&self) -> usize {
        self.layer.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layer.is_empty()
    }

    pub fn depth(&self) -> usize {
        self.layer_sizes.len()
    }

    /// Local indices of the boundary layers (everything after Ω).
    pub fn boundary(&self) -> std::ops::Range<usize> {
        self.omega_size..self.len()
    }
}

pub fn padded<R: Region>(region: &R, depth: usize) -> PaddedGraph {
    let graph = region.graph();
    let layers = boundary_layers(region, depth);
    let all: Vec<_> = region.vertices().iter().chain(layers.layers.iter().flatten()).cloned().collect();
    let local: HashMap<_, usize> = all.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
    let mut layer = vec![0; region.vertices().len()];
    for (j, l) in layers.layers.iter().enumerate() {
        layer.extend(std::iter::repeat_n(j + 1, l.len()));
    }
    let degree = all.iter().map(|v| graph.degree(v)).collect();
    let neighbors = all
        .iter()
        .map(|v| graph.neighbors(v).iter().filter_map(|w| local.get(w).copied()).collect())
        .collect();
    PaddedGraph { omega_size: region.vertices().len(), layer, degree, neighbors, layer_sizes: layers.sizes() }
}

/// Number of walks of length `m` from `x` to `y`, i.e. (A^m)_{xy}.
pub fn count_paths<G: Graph>(graph: &G, x: &G::Vertex, y: &G::Vertex, m: usize) -> u128 {
    let mut walks: HashMap<G::Vertex, u128> = HashMap::from([(x.clone(), 1)]);
    for _ in 0..m {
        let mut next: HashMap<G::Vertex, u128> = HashMap::with_capacity(walks.len() * 2);
        for (v, c) in &walks {
            for w in graph.neighbors(v) {
                *next.entry(w).or_insert(0) += c;
            }
        }
        walks = next;
    }
    walks.get(y).copied().unwrap_or(0)
}

/// Breadth-first graph distance; `None` when `y` is unreachable.
pub fn graph_distance<G: Graph>(graph: &G, x: &G::Vertex, y: &G::Vertex) -> Option<usize> {
    if x == y {
        return Some(0);
    }
    let mut seen = HashSet::from([x.clone()]);
    let mut queue = VecDeque::from([(x.clone(), 0usize)]);
    while let Some((v, dist)) = queue.pop_front() {
        for w in graph.neighbors(&v) {
            if &w == y {
                return Some(dist + 1);
            }
            if seen.insert(w.clone()) {
                queue.push_back((w, dist + 1));
            }
        }
    }
    None
}

/// Whether the subgraph induced on Ω is connected.
pub fn is_connected<R: Region>(region: &R) -> bool {
    let verts = region.vertices();
    let Some(start) = verts.first() else { return true };
    let mut seen = HashSet::from([start.clone()]);
    let mut stack = vec![start.clone()];
    while let Some(v) = stack.pop() {
        for w in region.graph().neighbors(&v) {
            if region.contains(&w) && seen.insert(w.clone()) {
                stack.push(w);
            }
        }
    }
    seen.len() == verts.len()
}

/// Cardinalities of E(δΩ, Ω), E(δΩ) and E(δΩ, δ₂Ω), each edge counted once.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeCounts {
    pub e1: usize,
    pub e2: usize,
    pub e3: usize,
}

pub fn edge_counts<R: Region>(region: &R) -> EdgeCounts {
    let g = padded(region, 2);
    let mut counts = EdgeCounts { e1: 0, e2: 0, e3: 0 };
    for v in 0..g.len() {
        if g.layer[v] != 1 {
            continue;
        }
        for &w in &g.neighbors[v] {
            match g.layer[w] {
                0 => counts.e1 += 1,
                1 if v < w => counts.e2 += 1,
                2 => counts.e3 += 1,
                _ => {}
            }
        }
    }
    counts
}

/// Anything that can hand out its padded neighbourhood.
pub trait DirichletDomain: Sync {
    fn omega_size(&self) -> usize;
    fn padded(&self, depth: usize) -> PaddedGraph;
    /// Largest vertex degree in the ambient graph.
    fn max_degree(&self) -> usize;
}

impl DirichletDomain for LatticeDomain {
    fn omega_size(&self) -> usize {
        self.len()
    }

    fn padded(&self, depth: usize) -> PaddedGraph {
        padded(self, depth)
    }

    fn max_degree(&self) -> usize {
        2 * self.dim()
    }
}

impl DirichletDomain for AmbientGraph {
    fn omega_size(&self) -> usize {
        self.len()
    }

    fn padded(&self, depth: usize) -> PaddedGraph {
        padded(self, depth)
    }

    fn max_degree(&self) -> usize {
        self.graph.adj.iter().map(Vec::len).max().unwrap_or(0)
    }
}

impl DirichletDomain for Domain {
    fn omega_size(&self) -> usize {
        self.len()
    }

    fn padded(&self, depth: usize) -> PaddedGraph {
        match self {
            Domain::Lattice(d) => padded(d, depth),
            Domain::Ambient(a) => padded(a, depth),
        }
    }

    fn max_degree(&self) -> usize {
        match self {
            Domain::Lattice(d) => d.max_degree(),
            Domain::Ambient(a) => a.max_degree(),
        }
    }
}

/// A region of either kind.
#[derive(Clone, Debug)]
pub enum Domain {
    Lattice(LatticeDomain),
    Ambient(AmbientGraph),
}

impl Domain {
    pub fn len(&self) -> usize {
        match self {
            Domain::Lattice(d) => d.len(),
            Domain::Ambient(a) => a.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn as_lattice(&self) -> Option<&LatticeDomain> {
        match self {
            Domain::Lattice(d) => Some(d),
            Domain::Ambient(_) => None,
        }
    }

    pub fn is_connected(&self) -> bool {
        match self {
            Domain::Lattice(d) => is_connected(d),
            Domain::Ambient(a) => is_connected(a),
        }
    }

    pub fn edge_counts(&self) -> EdgeCounts {
        match self {
            Domain::Lattice(d) => edge_counts(d),
            Domain::Ambient(a) => edge_counts(a),
        }
    }
}

impl From<LatticeDomain> for Domain {
    fn from(d: LatticeDomain) -> Self {
        Domain::Lattice(d)
    }
}

impl From<AmbientGraph> for Domain {
    fn from(a: AmbientGraph) -> Self {
        Domain::Ambient(a)
    }
}

/// JSON description of a domain.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum DomainSpec {
    Box { d: usize, lo: Vec<i64>, hi: Vec<i64> },
    Ball { d: usize, center: Vec<i64>, r: u64 },
    Explicit { d: usize, vertices: Vec<Vec<i64>> },
    Ambient {
        #[serde(default)]
        d: Option<usize>,
        n: usize,
        edges: Vec<(usize, usize)>,
        omega: Vec<usize>,
    },
}

impl DomainSpec {
    pub fn build(&self) -> Result<Domain> {
        Ok(match self {
            DomainSpec::Box { d, lo, hi } => LatticeDomain::make_box(*d, lo, hi)?.into(),
            DomainSpec::Ball { d, center, r } => LatticeDomain::make_ball(*d, &LatticeVertex(center.clone()), *r)?.into(),
            DomainSpec::Explicit { d, vertices } => {
                LatticeDomain::from_vertices(*d, vertices.iter().cloned().map(LatticeVertex).collect())?.into()
            }
            DomainSpec::Ambient { n, edges, omega, .. } => {
                AmbientGraph::new(FiniteGraph::from_edges(*n, edges)?, omega.clone())?.into()
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> LatticeVertex {
        LatticeVertex(c.to_vec())
    }

    fn c3_pair() -> AmbientGraph {
        AmbientGraph::new(FiniteGraph::cycle(3).unwrap(), vec![0, 1]).unwrap()
    }

    #[test]
    fn boxes() {
        let path = LatticeDomain::make_box(1, &[0], &[9]).unwrap();
        assert_eq!(path.len(), 10);
        assert!(is_connected(&path));
        assert_eq!(LatticeDomain::make_box(2, &[0, 0], &[9, 9]).unwrap().len(), 100);
        assert_eq!(LatticeDomain::make_box(1, &[0], &[0]).unwrap().len(), 1);
        assert!(matches!(
            LatticeDomain::make_box(2, &[0], &[1, 1]),
            Err(Error::DimensionMismatch { expected: 2, got: 1 })
        ));
        assert!(LatticeDomain::make_box(1, &[3], &[2]).is_err());
    }

    #[test]
    fn balls() {
        assert_eq!(LatticeDomain::make_ball(2, &v(&[0, 0]), 1).unwrap().len(), 5);
        let b = LatticeDomain::make_ball(1, &v(&[3]), 2).unwrap();
        let coords: Vec<i64> = b.vertices().iter().map(|x| x.0[0]).collect();
        assert_eq!(coords, vec![1, 2, 3, 4, 5]);

        // brute force count of ‖y‖₁ ≤ 2 in ℤ²
        let mut count = 0;
        for a in -5i64..=5 {
            for b in -5i64..=5 {
                if a.abs() + b.abs() <= 2 {
                    count += 1;
                }
            }
        }
        assert_eq!(count, 13);
        assert_eq!(LatticeDomain::make_ball(2, &v(&[0, 0]), 2).unwrap().len(), count);
    }

    #[test]
    fn duplicate_vertices_rejected() {
        assert!(LatticeDomain::from_vertices(1, vec![v(&[0]), v(&[0])]).is_err());
        assert!(LatticeDomain::from_vertices(1, vec![]).is_err());
    }

    #[test]
    fn layers_of_path_and_square() {
        let path = LatticeDomain::make_box(1, &[0], &[9]).unwrap();
        let layers = boundary_layers(&path, 1);
        assert_eq!(layers.layers[0], vec![v(&[-1]), v(&[10])]);

        // brute force: points at ℓ¹ distance exactly j from the 10×10 box
        let sq = LatticeDomain::make_box(2, &[0, 0], &[9, 9]).unwrap();
        let dist = |a: i64, b: i64| {
            let dx = if a < 0 { -a } else if a > 9 { a - 9 } else { 0 };
            let dy = if b < 0 { -b } else if b > 9 { b - 9 } else { 0 };
            dx + dy
        };
        let mut expected = [0usize; 3];
        for a in -5..15 {
            for b in -5..15 {
                let d = dist(a, b);
                if (1..=2).contains(&d) {
                    expected[d as usize] += 1;
                }
            }
        }
        assert_eq!(&expected[1..], &[40, 44]);
        assert_eq!(boundary_layers(&sq, 2).sizes(), vec![40, 44]);
    }

    #[test]
    fn layers_in_c3() {
        let layers = boundary_layers(&c3_pair(), 2);
        assert_eq!(layers.layers, vec![vec![2], vec![]]);
    }

    #[test]
    fn path_counts() {
        let z1 = Lattice { dim: 1 };
        assert_eq!(count_paths(&z1, &v(&[0]), &v(&[0]), 2), 2);
        assert_eq!(count_paths(&z1, &v(&[4]), &v(&[4]), 0), 1);
        let z2 = Lattice { dim: 2 };
        assert_eq!(count_paths(&z2, &v(&[0, 0]), &v(&[1, 1]), 2), 2);
        let c3 = FiniteGraph::cycle(3).unwrap();
        assert_eq!(count_paths(&c3, &1, &1, 0), 1);
        // closed walks of length 2 on C₃: go to either neighbour and back
        assert_eq!(count_paths(&c3, &0, &0, 2), 2);
    }

    #[test]
    fn distances() {
        let z2 = Lattice { dim: 2 };
        assert_eq!(graph_distance(&z2, &v(&[0, 0]), &v(&[2, 3])), Some(5));
        let c3 = FiniteGraph::cycle(3).unwrap();
        assert_eq!(graph_distance(&c3, &0, &2), Some(1));
        let path = FiniteGraph::from_edges(10, &(0..9).map(|i| (i, i + 1)).collect::<Vec<_>>()).unwrap();
        assert_eq!(graph_distance(&path, &0, &9), Some(9));
        let split = FiniteGraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(graph_distance(&split, &0, &3), None);
    }

    #[test]
    fn edge_count_examples() {
        let path = LatticeDomain::make_box(1, &[0], &[9]).unwrap();
        assert_eq!(edge_counts(&path), EdgeCounts { e1: 2, e2: 0, e3: 2 });
        let sq = LatticeDomain::make_box(2, &[0, 0], &[9, 9]).unwrap();
        assert_eq!(edge_counts(&sq).e1, 40);
        assert_eq!(edge_counts(&c3_pair()), EdgeCounts { e1: 2, e2: 0, e3: 0 });
    }

    #[test]
    fn ambient_validation() {
        assert!(FiniteGraph::from_edges(3, &[(0, 0)]).is_err());
        assert!(FiniteGraph::from_edges(3, &[(0, 1), (1, 0)]).is_err());
        assert!(FiniteGraph::from_edges(3, &[(0, 3)]).is_err());
        let c3 = FiniteGraph::cycle(3).unwrap();
        assert!(AmbientGraph::new(c3.clone(), vec![]).is_err());
        assert!(AmbientGraph::new(c3, vec![5]).is_err());
        assert_eq!(FiniteGraph::cycle(5).unwrap().regular_degree(), Some(2));
        let star = FiniteGraph::from_edges(3, &[(0, 1), (0, 2)]).unwrap();
        assert_eq!(star.regular_degree(), None);
    }

    #[test]
    fn padded_layout() {
        let path = LatticeDomain::make_box(1, &[0], &[2]).unwrap();
        let g = padded(&path, 2);
        assert_eq!(g.omega_size, 3);
        assert_eq!(g.layer, vec![0, 0, 0, 1, 1, 2, 2]);
        assert!(g.degree.iter().all(|&d| d == 2));
        // outermost layer loses its outward neighbour
        assert_eq!(g.neighbors[5].len(), 1);
    }

    #[test]
    fn domain_spec_json() {
        let spec: DomainSpec = serde_json::from_str(r#"{"kind":"box","d":2,"lo":[0,0],"hi":[1,1]}"#).unwrap();
        assert_eq!(spec.build().unwrap().len(), 4);
        let spec: DomainSpec =
            serde_json::from_str(r#"{"kind":"ambient","n":3,"edges":[[0,1],[1,2],[0,2]],"omega":[0,1]}"#).unwrap();
        let dom = spec.build().unwrap();
        assert!(dom.as_lattice().is_none());
        assert_eq!(dom.len(), 2);
        let spec: DomainSpec = serde_json::from_str(r#"{"kind":"explicit","d":1,"vertices":[[0],[2]]}"#).unwrap();
        assert!(!spec.build().unwrap().is_connected());
        let spec: DomainSpec = serde_json::from_str(r#"{"kind":"ball","d":2,"center":[0,0],"r":1}"#).unwrap();
        assert_eq!(spec.build().unwrap().len(), 5);
    }
}
