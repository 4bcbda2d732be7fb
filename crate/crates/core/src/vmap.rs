//! Vertex maps between complexes, simpliciality checks, and isomorphism
//! search.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::label::VertexLabel;

/// A total function on vertex sets between two complexes.
#[derive(Clone, Debug)]
pub struct VertexMap {
    source: Arc<SimplicialComplex>,
    target: Arc<SimplicialComplex>,
    /// `image[i]` is the target vertex index of source vertex `i`.
    image: Vec<u32>,
}

impl VertexMap {
    pub fn new(
        source: Arc<SimplicialComplex>,
        target: Arc<SimplicialComplex>,
        image: Vec<u32>,
    ) -> Result<Self> {
        if image.len() != source.vertex_count() {
            return Err(Error::InvalidParameter(format!(
                "vertex map covers {} of {} source vertices",
                image.len(),
                source.vertex_count()
            )));
        }
        if let Some(&bad) = image.iter().find(|&&i| i as usize >= target.vertex_count()) {
            return Err(Error::InvalidParameter(format!(
                "image index {bad} outside target vertex range"
            )));
        }
        Ok(VertexMap { source, target, image })
    }

    /// Build a map from a label-level function. Errors if some image label is
    /// not a vertex of the target.
    pub fn from_label_fn(
        source: Arc<SimplicialComplex>,
        target: Arc<SimplicialComplex>,
        f: impl Fn(&VertexLabel) -> VertexLabel,
    ) -> Result<Self> {
        let mut image = Vec::with_capacity(source.vertex_count());
        for v in source.vertices() {
            let w = f(v);
            let ix = target
                .index_of(&w)
                .ok_or_else(|| Error::UnknownVertex(w.render()))?;
            image.push(ix);
        }
        Ok(VertexMap { source, target, image })
    }

    pub fn identity(k: &Arc<SimplicialComplex>) -> Self {
        VertexMap {
            source: Arc::clone(k),
            target: Arc::clone(k),
            image: (0..k.vertex_count() as u32).collect(),
        }
    }

    pub fn source(&self) -> &Arc<SimplicialComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SimplicialComplex> {
        &self.target
    }

    pub fn image_index(&self, source_index: u32) -> u32 {
        self.image[source_index as usize]
    }

    pub fn image_label(&self, label: &VertexLabel) -> Option<&VertexLabel> {
        let i = self.source.index_of(label)?;
        Some(self.target.vertex(self.image[i as usize]))
    }

    /// Source labels mapping to the given target label.
    pub fn preimage_labels(&self, label: &VertexLabel) -> Vec<&VertexLabel> {
        match self.target.index_of(label) {
            None => Vec::new(),
            Some(t) => self
                .image
                .iter()
                .enumerate()
                .filter(|&(_, &w)| w == t)
                .map(|(i, _)| self.source.vertex(i as u32))
                .collect(),
        }
    }

    /// True iff every facet of the source has a simplex of the target as its
    /// image vertex set. Checking facets suffices: faces of facets map into
    /// faces of the image simplices.
    pub fn is_simplicial(&self) -> bool {
        self.source.facets().iter().all(|facet| {
            let mut img: Vec<u32> = facet.iter().map(|&v| self.image[v as usize]).collect();
            img.sort_unstable();
            img.dedup();
            self.target.is_simplex(&img)
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.vertex_count()];
        for &w in &self.image {
            if seen[w as usize] {
                return false;
            }
            seen[w as usize] = true;
        }
        true
    }

    pub fn is_injective_simplicial(&self) -> bool {
        self.is_injective() && self.is_simplicial()
    }

    /// Does the map hit every target vertex?
    pub fn is_surjective_on_vertices(&self) -> bool {
        let mut seen = vec![false; self.target.vertex_count()];
        for &w in &self.image {
            seen[w as usize] = true;
        }
        seen.into_iter().all(|b| b)
    }

    /// Inverse of a vertex bijection; `None` if not bijective.
    pub fn inverse(&self) -> Option<VertexMap> {
        if self.source.vertex_count() != self.target.vertex_count() || !self.is_injective() {
            return None;
        }
        let mut inv = vec![0u32; self.image.len()];
        for (i, &w) in self.image.iter().enumerate() {
            inv[w as usize] = i as u32;
        }
        Some(VertexMap {
            source: Arc::clone(&self.target),
            target: Arc::clone(&self.source),
            image: inv,
        })
    }

    /// `outer` after `inner`. The complexes must agree structurally.
    pub fn compose(outer: &VertexMap, inner: &VertexMap) -> Result<VertexMap> {
        if **outer.source() != **inner.target() {
            return Err(Error::InvalidParameter(
                "composition: inner target differs from outer source".into(),
            ));
        }
        let image = inner.image.iter().map(|&v| outer.image[v as usize]).collect();
        Ok(VertexMap {
            source: Arc::clone(&inner.source),
            target: Arc::clone(&outer.target),
            image,
        })
    }

    /// True iff the map is a simplicial isomorphism (bijective, simplicial in
    /// both directions).
    pub fn is_isomorphism(&self) -> bool {
        match self.inverse() {
            None => false,
            Some(inv) => self.is_simplicial() && inv.is_simplicial(),
        }
    }
}

/// Search for a simplicial isomorphism between two complexes. Returns the
/// first bijection (in canonical vertex order) that is simplicial both ways,
/// or `None`. Candidates are pruned by vertex degree and link f-vector.
pub fn find_isomorphism(
    a: &Arc<SimplicialComplex>,
    b: &Arc<SimplicialComplex>,
) -> Option<VertexMap> {
    if a.vertex_count() != b.vertex_count() || a.f_vector() != b.f_vector() {
        return None;
    }
    let n = a.vertex_count();
    if n == 0 {
        return Some(VertexMap::identity(a));
    }

    let adj_a = adjacency(a);
    let adj_b = adjacency(b);

    let keys_a = invariant_keys(a, &adj_a);
    let keys_b = invariant_keys(b, &adj_b);
    {
        let mut ka = keys_a.clone();
        let mut kb = keys_b.clone();
        ka.sort();
        kb.sort();
        if ka != kb {
            return None;
        }
    }

    // Candidate target vertices per invariant class.
    let mut class_members: BTreeMap<&(usize, Vec<usize>), Vec<u32>> = BTreeMap::new();
    for (i, k) in keys_b.iter().enumerate() {
        class_members.entry(k).or_default().push(i as u32);
    }

    // Assign rare classes first for cheaper backtracking.
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.sort_by_key(|&v| {
        (class_members.get(&keys_a[v as usize]).map_or(0, |m| m.len()), v)
    });

    let mut assign: Vec<Option<u32>> = vec![None; n];
    let mut used = vec![false; n];

    fn backtrack(
        pos: usize,
        order: &[u32],
        keys_a: &[(usize, Vec<usize>)],
        class_members: &BTreeMap<&(usize, Vec<usize>), Vec<u32>>,
        adj_a: &[Vec<bool>],
        adj_b: &[Vec<bool>],
        assign: &mut Vec<Option<u32>>,
        used: &mut Vec<bool>,
        a: &Arc<SimplicialComplex>,
        b: &Arc<SimplicialComplex>,
    ) -> Option<VertexMap> {
        if pos == order.len() {
            let image: Vec<u32> = assign.iter().map(|x| x.unwrap()).collect();
            let f = VertexMap::new(Arc::clone(a), Arc::clone(b), image).ok()?;
            if f.is_isomorphism() {
                // Consistency post-check: an isomorphism forces matching
                // f-vectors and degree sequences.
                assert_eq!(f.source().f_vector(), f.target().f_vector());
                assert_eq!(degree_sequence(f.source()), degree_sequence(f.target()));
                return Some(f);
            }
            return None;
        }
        let v = order[pos] as usize;
        let members = class_members.get(&keys_a[v])?;
        for &w in members {
            if used[w as usize] {
                continue;
            }
            // Edges to already-assigned vertices must correspond.
            let ok = order[..pos].iter().all(|&u| {
                let img = assign[u as usize].unwrap();
                adj_a[v][u as usize] == adj_b[w as usize][img as usize]
            });
            if !ok {
                continue;
            }
            assign[v] = Some(w);
            used[w as usize] = true;
            if let Some(f) = backtrack(
                pos + 1,
                order,
                keys_a,
                class_members,
                adj_a,
                adj_b,
                assign,
                used,
                a,
                b,
            ) {
                return Some(f);
            }
            assign[v] = None;
            used[w as usize] = false;
        }
        None
    }

    backtrack(
        0,
        &order,
        &keys_a,
        &class_members,
        &adj_a,
        &adj_b,
        &mut assign,
        &mut used,
        a,
        b,
    )
}

fn degree_sequence(k: &SimplicialComplex) -> Vec<usize> {
    let mut degrees = vec![0usize; k.vertex_count()];
    for e in k.simplices(1) {
        degrees[e[0] as usize] += 1;
        degrees[e[1] as usize] += 1;
    }
    degrees.sort_unstable();
    degrees
}

fn adjacency(k: &SimplicialComplex) -> Vec<Vec<bool>> {
    let n = k.vertex_count();
    let mut adj = vec![vec![false; n]; n];
    for e in k.simplices(1) {
        adj[e[0] as usize][e[1] as usize] = true;
        adj[e[1] as usize][e[0] as usize] = true;
    }
    adj
}

/// Per-vertex invariant preserved by isomorphisms: (degree, link f-vector).
fn invariant_keys(k: &Arc<SimplicialComplex>, adj: &[Vec<bool>]) -> Vec<(usize, Vec<usize>)> {
    k.vertices()
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let degree = adj[i].iter().filter(|&&b| b).count();
            let link_fv = k.link(v).map(|l| l.f_vector()).unwrap_or_default();
            (degree, link_fv)
        })
        .collect()
}
