//! Graphs, tubes and the tube-compatibility complex.
//!
//! A tube of a finite simple graph is a proper non-empty vertex subset whose
//! induced subgraph is connected. Two distinct tubes are compatible when they
//! are nested or when they are disjoint with disconnected union; disjoint
//! tubes whose union induces a connected subgraph are adjacent and hence
//! incompatible. The complex of pairwise-compatible tube sets of the path
//! graph with m-1 vertices is the dual of the associahedron boundary, a
//! combinatorial (m-3)-sphere.

use std::collections::BTreeSet;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::label::VertexLabel;

/// A finite simple graph on vertices `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TubeGraph {
    n: u32,
    edges: BTreeSet<(u32, u32)>,
}

impl TubeGraph {
    /// Build a graph; loops and out-of-range endpoints are rejected, repeated
    /// edges collapse.
    pub fn new<I: IntoIterator<Item = (u32, u32)>>(n: u32, edges: I) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidParameter(format!("loop at vertex {a}")));
            }
            if a < 1 || b < 1 || a > n || b > n {
                return Err(Error::InvalidParameter(format!(
                    "edge ({a},{b}) outside vertex range 1..={n}"
                )));
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(TubeGraph { n, edges: set })
    }

    pub fn vertex_count(&self) -> u32 {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, a: u32, b: u32) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    /// Is the induced subgraph on `verts` (sorted, non-empty) connected?
    pub fn is_connected_subset(&self, verts: &[u32]) -> bool {
        if verts.is_empty() {
            return false;
        }
        let mut seen = vec![false; verts.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(i) = stack.pop() {
            for (j, &w) in verts.iter().enumerate() {
                if !seen[j] && self.has_edge(verts[i], w) {
                    seen[j] = true;
                    count += 1;
                    stack.push(j);
                }
            }
        }
        count == verts.len()
    }

    pub fn is_connected(&self) -> bool {
        let all: Vec<u32> = (1..=self.n).collect();
        self.is_connected_subset(&all)
    }
}

/// The path graph with vertices `1..=q` and edges `{i, i+1}`.
pub fn path_graph(q: u32) -> Result<TubeGraph> {
    if q < 1 {
        return Err(Error::InvalidParameter("path graph needs at least one vertex".into()));
    }
    TubeGraph::new(q, (1..q).map(|i| (i, i + 1)))
}

/// A connected proper non-empty vertex subset of a graph.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tube {
    verts: Vec<u32>,
}

impl Tube {
    pub fn new(graph: &TubeGraph, verts: impl IntoIterator<Item = u32>) -> Result<Self> {
        let mut v: Vec<u32> = verts.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        if v.is_empty() {
            return Err(Error::InvalidParameter("tube must be non-empty".into()));
        }
        if v.len() as u32 >= graph.vertex_count() {
            return Err(Error::InvalidParameter("tube must be a proper subset".into()));
        }
        if v.iter().any(|&x| x < 1 || x > graph.vertex_count()) {
            return Err(Error::InvalidParameter("tube vertex outside graph".into()));
        }
        if !graph.is_connected_subset(&v) {
            return Err(Error::InvalidParameter(format!(
                "subset {{{}}} is not connected",
                v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
            )));
        }
        Ok(Tube { verts: v })
    }

    pub fn verts(&self) -> &[u32] {
        &self.verts
    }

    pub fn label(&self) -> VertexLabel {
        VertexLabel::subset(self.verts.iter().copied())
    }

    pub fn is_subset_of(&self, other: &Tube) -> bool {
        crate::complex::is_subset(&self.verts, &other.verts)
    }
}

/// How two tubes of the same graph sit relative to each other. Exactly one
/// classification applies to every pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TubeRelation {
    Equal,
    /// Nested records which side contains which.
    Nested { first_contains_second: bool },
    /// Intersecting but not nested.
    Overlapping,
    /// Disjoint with connected union: the tubes could merge into one.
    Adjacent,
    /// Disjoint with disconnected union.
    CompatibleDisjoint,
}

impl TubeRelation {
    pub fn is_compatible(self) -> bool {
        matches!(
            self,
            TubeRelation::Nested { .. } | TubeRelation::CompatibleDisjoint
        )
    }
}

/// Classify a pair of tubes. Inputs are re-validated against the graph.
pub fn tube_relation(t1: &Tube, t2: &Tube, graph: &TubeGraph) -> Result<TubeRelation> {
    let t1 = Tube::new(graph, t1.verts.iter().copied())?;
    let t2 = Tube::new(graph, t2.verts.iter().copied())?;
    if t1 == t2 {
        return Ok(TubeRelation::Equal);
    }
    if t2.is_subset_of(&t1) {
        return Ok(TubeRelation::Nested { first_contains_second: true });
    }
    if t1.is_subset_of(&t2) {
        return Ok(TubeRelation::Nested { first_contains_second: false });
    }
    let disjoint = !t1.verts.iter().any(|v| t2.verts.binary_search(v).is_ok());
    if !disjoint {
        return Ok(TubeRelation::Overlapping);
    }
    let mut union: Vec<u32> = t1.verts.iter().chain(t2.verts.iter()).copied().collect();
    union.sort_unstable();
    if graph.is_connected_subset(&union) {
        Ok(TubeRelation::Adjacent)
    } else {
        Ok(TubeRelation::CompatibleDisjoint)
    }
}

pub fn tubes_compatible(t1: &Tube, t2: &Tube, graph: &TubeGraph) -> Result<bool> {
    Ok(tube_relation(t1, t2, graph)?.is_compatible())
}

/// All tubes of the graph, in canonical label order.
pub fn enumerate_tubes(graph: &TubeGraph) -> Result<Vec<Tube>> {
    let n = graph.vertex_count();
    if n < 2 {
        return Err(Error::InvalidParameter(
            "tube enumeration needs at least two vertices".into(),
        ));
    }
    if n > 20 {
        return Err(Error::Unsupported(format!(
            "tube enumeration over {n} vertices (cap is 20)"
        )));
    }
    let mut tubes = Vec::new();
    for mask in 1u32..((1u32 << n) - 1) {
        let verts: Vec<u32> = (1..=n).filter(|&v| mask & (1 << (v - 1)) != 0).collect();
        if graph.is_connected_subset(&verts) {
            tubes.push(Tube { verts });
        }
    }
    tubes.sort_by_key(|t| t.label().render());
    Ok(tubes)
}

/// The complex with a vertex per tube and a simplex per pairwise-compatible
/// tube set (a flag complex; its facets are the maximal compatible sets).
pub fn tube_complex(graph: &TubeGraph) -> Result<SimplicialComplex> {
    if graph.vertex_count() < 2 {
        return Err(Error::InvalidParameter(
            "tube complex needs at least two vertices".into(),
        ));
    }
    if !graph.is_connected() {
        return Err(Error::InvalidParameter("tube complex needs a connected graph".into()));
    }
    let tubes = enumerate_tubes(graph)?;
    let n = tubes.len();
    let mut adj = vec![vec![false; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            if tube_relation(&tubes[i], &tubes[j], graph)?.is_compatible() {
                adj[i][j] = true;
                adj[j][i] = true;
            }
        }
    }
    let cliques = maximal_cliques(&adj);
    let facets = cliques
        .into_iter()
        .map(|c| c.into_iter().map(|i| tubes[i as usize].label()).collect())
        .collect();
    SimplicialComplex::from_facets(facets)
}

/// The dual of the associahedron boundary: the tube complex of the path graph
/// with m-1 vertices, a combinatorial (m-3)-sphere.
pub fn associahedron_dual(m: u32) -> Result<SimplicialComplex> {
    if m < 3 {
        return Err(Error::InvalidParameter(format!("associahedron dual needs m >= 3, got {m}")));
    }
    tube_complex(&path_graph(m - 1)?)
}

/// Bron-Kerbosch with pivoting; deterministic output order. Vertices that are
/// isolated in the compatibility graph come out as singleton cliques. Shared
/// with the other flag-complex builders in this crate.
pub(crate) fn maximal_cliques_for_flags(adj: &[Vec<bool>]) -> Vec<Vec<u32>> {
    maximal_cliques(adj)
}

fn maximal_cliques(adj: &[Vec<bool>]) -> Vec<Vec<u32>> {
    let n = adj.len();
    let mut out = Vec::new();
    let mut r = Vec::new();
    let p: Vec<u32> = (0..n as u32).collect();
    let x: Vec<u32> = Vec::new();
    bk(adj, &mut r, p, x, &mut out);
    out.sort_unstable();
    out
}

fn bk(adj: &[Vec<bool>], r: &mut Vec<u32>, p: Vec<u32>, x: Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if p.is_empty() && x.is_empty() {
        let mut clique = r.clone();
        clique.sort_unstable();
        out.push(clique);
        return;
    }
    // Pivot with the most neighbors in P; ties to the smallest index.
    let pivot = p
        .iter()
        .chain(x.iter())
        .copied()
        .max_by_key(|&u| {
            let nbrs = p.iter().filter(|&&v| adj[u as usize][v as usize]).count();
            (nbrs, std::cmp::Reverse(u))
        })
        .expect("p or x non-empty");
    let candidates: Vec<u32> = p
        .iter()
        .copied()
        .filter(|&v| !adj[pivot as usize][v as usize])
        .collect();
    let mut p = p;
    let mut x = x;
    for v in candidates {
        r.push(v);
        let p2: Vec<u32> = p.iter().copied().filter(|&w| adj[v as usize][w as usize]).collect();
        let x2: Vec<u32> = x.iter().copied().filter(|&w| adj[v as usize][w as usize]).collect();
        bk(adj, r, p2, x2, out);
        r.pop();
        p.retain(|&w| w != v);
        x.push(v);
    }
}
