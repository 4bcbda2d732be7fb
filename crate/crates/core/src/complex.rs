//! Finite abstract simplicial complexes stored by their maximal facets.
//!
//! A complex holds a canonically ordered vertex list and an inclusion-maximal
//! facet set; the full simplex sets per dimension are derived on demand and
//! memoized. All values are immutable after construction.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::label::VertexLabel;

#[derive(Debug, Default)]
struct Derived {
    /// `simplices[k]` = all k-simplices as sorted vertex-index lists, sorted.
    simplices: OnceLock<Vec<Vec<Vec<u32>>>>,
    /// For each vertex, the indices of the facets containing it.
    facets_of_vertex: OnceLock<Vec<Vec<u32>>>,
}

impl Clone for Derived {
    fn clone(&self) -> Self {
        // Caches are recomputable; cloning starts fresh.
        Derived::default()
    }
}

#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    vertices: Vec<VertexLabel>,
    facets: Vec<Vec<u32>>,
    derived: Derived,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.facets == other.facets
    }
}

impl Eq for SimplicialComplex {}

impl SimplicialComplex {
    /// Build a complex from facet label lists. Subsumed facets are absorbed,
    /// so the stored facet set is inclusion-maximal. An empty list gives the
    /// empty complex.
    pub fn from_facets(facets: Vec<Vec<VertexLabel>>) -> Result<Self> {
        for facet in &facets {
            if facet.is_empty() {
                return Err(Error::MalformedFacet("empty facet".into()));
            }
        }

        // Intern labels, rendering each once; canonical order is the
        // lexicographic order of the renderings.
        let mut rendered: Vec<(String, &VertexLabel)> = facets
            .iter()
            .flatten()
            .map(|l| (l.render(), l))
            .collect();
        rendered.sort_by(|a, b| a.0.cmp(&b.0));
        rendered.dedup_by(|a, b| a.0 == b.0);
        let renders: Vec<String> = rendered.iter().map(|(s, _)| s.clone()).collect();
        let vertices: Vec<VertexLabel> = rendered.into_iter().map(|(_, l)| l.clone()).collect();

        let index_of = |label: &VertexLabel| -> u32 {
            let r = label.render();
            renders.binary_search(&r).expect("label was interned") as u32
        };

        let mut index_facets: Vec<Vec<u32>> = Vec::with_capacity(facets.len());
        for facet in &facets {
            let mut ix: Vec<u32> = facet.iter().map(index_of).collect();
            ix.sort_unstable();
            let before = ix.len();
            ix.dedup();
            if ix.len() != before {
                return Err(Error::MalformedFacet(format!(
                    "duplicate vertex in facet [{}]",
                    facet.iter().map(|l| l.render()).collect::<Vec<_>>().join(" ")
                )));
            }
            index_facets.push(ix);
        }

        let facets = maximalize(index_facets);
        Ok(SimplicialComplex { vertices, facets, derived: Derived::default() })
    }

    /// The empty complex (dimension -1).
    pub fn empty() -> Self {
        SimplicialComplex { vertices: Vec::new(), facets: Vec::new(), derived: Derived::default() }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[VertexLabel] {
        &self.vertices
    }

    pub fn vertex(&self, index: u32) -> &VertexLabel {
        &self.vertices[index as usize]
    }

    /// Index of a label in the canonical vertex order.
    pub fn index_of(&self, label: &VertexLabel) -> Option<u32> {
        let r = label.render();
        self.vertices
            .binary_search_by(|v| v.render().cmp(&r))
            .ok()
            .map(|i| i as u32)
    }

    pub fn facets(&self) -> &[Vec<u32>] {
        &self.facets
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    pub fn facet_labels(&self, facet: &[u32]) -> Vec<VertexLabel> {
        facet.iter().map(|&i| self.vertices[i as usize].clone()).collect()
    }

    /// dim(empty) = -1.
    pub fn dim(&self) -> isize {
        self.facets.iter().map(|f| f.len() as isize - 1).max().unwrap_or(-1)
    }

    fn facets_of_vertex(&self) -> &[Vec<u32>] {
        self.derived.facets_of_vertex.get_or_init(|| {
            let mut post = vec![Vec::new(); self.vertices.len()];
            for (fi, facet) in self.facets.iter().enumerate() {
                for &v in facet {
                    post[v as usize].push(fi as u32);
                }
            }
            post
        })
    }

    /// Is the sorted vertex-index list a simplex of this complex?
    pub fn is_simplex(&self, sorted: &[u32]) -> bool {
        if sorted.is_empty() {
            return false;
        }
        let first = sorted[0] as usize;
        if first >= self.vertices.len() {
            return false;
        }
        self.facets_of_vertex()[first]
            .iter()
            .any(|&fi| is_subset(sorted, &self.facets[fi as usize]))
    }

    pub fn is_simplex_labels(&self, labels: &[VertexLabel]) -> bool {
        let mut ix = Vec::with_capacity(labels.len());
        for l in labels {
            match self.index_of(l) {
                Some(i) => ix.push(i),
                None => return false,
            }
        }
        ix.sort_unstable();
        ix.dedup();
        if ix.len() != labels.len() {
            return false;
        }
        self.is_simplex(&ix)
    }

    /// All simplices grouped by dimension; `result[k]` lists the k-simplices
    /// in canonical order. Computed once and cached.
    pub fn simplices_by_dim(&self) -> &[Vec<Vec<u32>>] {
        self.derived.simplices.get_or_init(|| {
            let dim = self.dim();
            if dim < 0 {
                return Vec::new();
            }
            let mut per_dim: Vec<Vec<Vec<u32>>> = vec![Vec::new(); dim as usize + 1];
            for facet in &self.facets {
                let n = facet.len();
                // Non-empty subsets of the facet, by bitmask.
                for mask in 1u64..(1u64 << n) {
                    let mut s = Vec::with_capacity(mask.count_ones() as usize);
                    for (i, &v) in facet.iter().enumerate() {
                        if mask & (1 << i) != 0 {
                            s.push(v);
                        }
                    }
                    per_dim[s.len() - 1].push(s);
                }
            }
            for bucket in &mut per_dim {
                bucket.sort_unstable();
                bucket.dedup();
            }
            per_dim
        })
    }

    pub fn simplices(&self, k: usize) -> &[Vec<u32>] {
        let per_dim = self.simplices_by_dim();
        if k < per_dim.len() {
            &per_dim[k]
        } else {
            &[]
        }
    }

    /// The f-vector: count of k-simplices for each k.
    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices_by_dim().iter().map(|b| b.len()).collect()
    }

    /// Alternating sum of simplex counts.
    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    /// Full subcomplex on the given vertex set.
    pub fn span(&self, keep: &[VertexLabel]) -> Result<SimplicialComplex> {
        let mut keep_ix: Vec<u32> = Vec::with_capacity(keep.len());
        for l in keep {
            match self.index_of(l) {
                Some(i) => keep_ix.push(i),
                None => return Err(Error::UnknownVertex(l.render())),
            }
        }
        keep_ix.sort_unstable();
        keep_ix.dedup();
        let mut new_facets = Vec::new();
        for facet in &self.facets {
            let inter: Vec<VertexLabel> = facet
                .iter()
                .filter(|v| keep_ix.binary_search(v).is_ok())
                .map(|&v| self.vertices[v as usize].clone())
                .collect();
            if !inter.is_empty() {
                new_facets.push(inter);
            }
        }
        SimplicialComplex::from_facets(new_facets)
    }

    /// All simplices of dimension <= k. Values of k at or above the dimension
    /// return the complex unchanged; k < 0 is an error.
    pub fn skeleton(&self, k: isize) -> Result<SimplicialComplex> {
        if k < 0 {
            return Err(Error::InvalidParameter(format!("skeleton dimension {k} is negative")));
        }
        if k >= self.dim() {
            return Ok(self.clone());
        }
        let size = k as usize + 1;
        let mut new_facets = Vec::new();
        for facet in &self.facets {
            if facet.len() <= size {
                new_facets.push(self.facet_labels(facet));
            } else {
                for combo in combinations(facet, size) {
                    new_facets.push(self.facet_labels(&combo));
                }
            }
        }
        SimplicialComplex::from_facets(new_facets)
    }

    /// The link of a vertex: all simplices disjoint from `v` whose union with
    /// `v` is a simplex.
    pub fn link(&self, v: &VertexLabel) -> Result<SimplicialComplex> {
        let vi = self.index_of(v).ok_or_else(|| Error::UnknownVertex(v.render()))?;
        let mut new_facets = Vec::new();
        for &fi in &self.facets_of_vertex()[vi as usize] {
            let rest: Vec<VertexLabel> = self.facets[fi as usize]
                .iter()
                .filter(|&&w| w != vi)
                .map(|&w| self.vertices[w as usize].clone())
                .collect();
            if !rest.is_empty() {
                new_facets.push(rest);
            }
        }
        SimplicialComplex::from_facets(new_facets)
    }

    /// Barycentric subdivision. New vertices are the simplices of the
    /// original complex (flag labels); j-simplices are strict inclusion
    /// chains of length j+1. Also returns the origin map sending each new
    /// vertex to the simplex it subdivides.
    pub fn barycentric_subdivision(
        &self,
    ) -> Result<(SimplicialComplex, BTreeMap<VertexLabel, Vec<VertexLabel>>)> {
        let mut origin = BTreeMap::new();
        let mut new_facets = Vec::new();
        for facet in &self.facets {
            for perm in permutations(facet) {
                // Prefix chain: one simplex per prefix of the permutation.
                let mut chain = Vec::with_capacity(perm.len());
                let mut prefix: Vec<u32> = Vec::with_capacity(perm.len());
                for &v in &perm {
                    prefix.push(v);
                    let mut sorted = prefix.clone();
                    sorted.sort_unstable();
                    let parts: Vec<VertexLabel> =
                        sorted.iter().map(|&i| self.vertices[i as usize].clone()).collect();
                    let label = VertexLabel::flag(parts.clone());
                    origin.entry(label.clone()).or_insert(parts);
                    chain.push(label);
                }
                new_facets.push(chain);
            }
        }
        let bs = SimplicialComplex::from_facets(new_facets)?;
        Ok((bs, origin))
    }
}

/// Keep only inclusion-maximal facets (input facets may repeat or nest).
fn maximalize(mut facets: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    facets.sort_unstable();
    facets.dedup();
    let uniform = facets.windows(2).all(|w| w[0].len() == w[1].len());
    if uniform {
        return facets;
    }
    // Distinct facets of equal size cannot nest, so only check against
    // strictly larger ones.
    let mut by_size: Vec<&Vec<u32>> = facets.iter().collect();
    by_size.sort_by_key(|f| std::cmp::Reverse(f.len()));
    let mut kept: Vec<Vec<u32>> = Vec::with_capacity(facets.len());
    for f in by_size {
        let subsumed = kept
            .iter()
            .any(|g| g.len() > f.len() && is_subset(f, g));
        if !subsumed {
            kept.push(f.clone());
        }
    }
    kept.sort_unstable();
    kept
}

/// Both slices sorted ascending.
pub(crate) fn is_subset(small: &[u32], big: &[u32]) -> bool {
    if small.len() > big.len() {
        return false;
    }
    let mut it = big.iter();
    'outer: for s in small {
        for b in it.by_ref() {
            match b.cmp(s) {
                std::cmp::Ordering::Less => continue,
                std::cmp::Ordering::Equal => continue 'outer,
                std::cmp::Ordering::Greater => return false,
            }
        }
        return false;
    }
    true
}

fn combinations(items: &[u32], size: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(size);
    fn rec(items: &[u32], size: usize, start: usize, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if current.len() == size {
            out.push(current.clone());
            return;
        }
        let needed = size - current.len();
        for i in start..=items.len().saturating_sub(needed) {
            current.push(items[i]);
            rec(items, size, i + 1, current, out);
            current.pop();
        }
    }
    rec(items, size, 0, &mut current, &mut out);
    out
}

fn permutations(items: &[u32]) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut pool = items.to_vec();
    let mut current = Vec::with_capacity(items.len());
    fn rec(pool: &mut Vec<u32>, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pool.is_empty() {
            out.push(current.clone());
            return;
        }
        for i in 0..pool.len() {
            let v = pool.remove(i);
            current.push(v);
            rec(pool, current, out);
            current.pop();
            pool.insert(i, v);
        }
    }
    rec(&mut pool, &mut current, &mut out);
    out
}

/// Facets of the full simplex on `n` vertices labeled `S{1}..S{n}`.
pub fn full_simplex(n: u32) -> Result<SimplicialComplex> {
    if n == 0 {
        return Err(Error::InvalidParameter("simplex needs at least one vertex".into()));
    }
    SimplicialComplex::from_facets(vec![(1..=n).map(|i| VertexLabel::subset([i])).collect()])
}

/// The boundary of the full simplex on `n` vertices: an (n-2)-sphere.
pub fn simplex_boundary(n: u32) -> Result<SimplicialComplex> {
    if n < 2 {
        return Err(Error::InvalidParameter("boundary needs at least two vertices".into()));
    }
    full_simplex(n)?.skeleton(n as isize - 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(items: &[u32]) -> VertexLabel {
        VertexLabel::subset(items.iter().copied())
    }

    fn complex(facets: &[&[u32]]) -> SimplicialComplex {
        SimplicialComplex::from_facets(
            facets.iter().map(|f| f.iter().map(|&i| s(&[i])).collect()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn single_facet() {
        let k = complex(&[&[1, 2, 3]]);
        assert_eq!(k.facet_count(), 1);
        assert_eq!(k.dim(), 2);
        assert_eq!(k.vertex_count(), 3);
    }

    #[test]
    fn subsumed_facets_are_absorbed() {
        let k = complex(&[&[1, 2], &[2, 3], &[1, 2, 3]]);
        assert_eq!(k.facets(), &[vec![0, 1, 2]]);
    }

    #[test]
    fn disjoint_union() {
        let k = complex(&[&[1, 2], &[3, 4]]);
        assert_eq!(k.dim(), 1);
        assert_eq!(k.facet_count(), 2);
    }

    #[test]
    fn duplicate_vertex_in_facet_errors() {
        let err = SimplicialComplex::from_facets(vec![vec![s(&[1]), s(&[1])]]).unwrap_err();
        assert!(matches!(err, Error::MalformedFacet(_)));
    }

    #[test]
    fn empty_complex() {
        let k = SimplicialComplex::empty();
        assert_eq!(k.dim(), -1);
        assert_eq!(k.euler_characteristic(), 0);
    }

    #[test]
    fn span_of_face() {
        let k = complex(&[&[1, 2, 3]]);
        let e = k.span(&[s(&[1]), s(&[2])]).unwrap();
        assert_eq!(e.dim(), 1);
        assert_eq!(e.facet_count(), 1);
    }

    #[test]
    fn span_of_everything_is_identity() {
        let k = complex(&[&[1, 2], &[2, 3], &[3, 4], &[4, 5], &[1, 5]]);
        let all: Vec<VertexLabel> = k.vertices().to_vec();
        assert_eq!(k.span(&all).unwrap(), k);
    }

    #[test]
    fn span_unknown_vertex_errors() {
        let k = complex(&[&[1, 2]]);
        assert!(matches!(k.span(&[s(&[9])]), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn skeleton_of_tetrahedron() {
        let k = complex(&[&[1, 2, 3, 4]]);
        let b = k.skeleton(2).unwrap();
        assert_eq!(b.facet_count(), 4);
        assert_eq!(b.f_vector(), vec![4, 6, 4]);
        assert_eq!(k.skeleton(k.dim()).unwrap(), k);
        assert!(k.skeleton(-1).is_err());
    }

    #[test]
    fn link_in_simplex_boundary() {
        let b = simplex_boundary(4).unwrap();
        for v in b.vertices().to_vec() {
            let l = b.link(&v).unwrap();
            assert_eq!(l.f_vector(), vec![3, 3]); // a 3-cycle
        }
        assert!(b.link(&s(&[9])).is_err());
    }

    #[test]
    fn bs_of_triangle_boundary_is_hexagon() {
        let k = complex(&[&[1, 2], &[2, 3], &[1, 3]]);
        let (bs, origin) = k.barycentric_subdivision().unwrap();
        assert_eq!(bs.f_vector(), vec![6, 6]);
        assert_eq!(origin.len(), 6);
    }

    #[test]
    fn bs_of_full_triangle() {
        let k = complex(&[&[1, 2, 3]]);
        let (bs, _) = k.barycentric_subdivision().unwrap();
        assert_eq!(bs.f_vector(), vec![7, 12, 6]);
        assert_eq!(bs.euler_characteristic(), k.euler_characteristic());
    }

    #[test]
    fn euler_characteristic_of_sphere() {
        assert_eq!(simplex_boundary(4).unwrap().euler_characteristic(), 2);
    }

    #[test]
    fn is_simplex_checks() {
        let k = complex(&[&[1, 2, 3], &[3, 4]]);
        assert!(k.is_simplex_labels(&[s(&[1]), s(&[3])]));
        assert!(k.is_simplex_labels(&[s(&[3]), s(&[4])]));
        assert!(!k.is_simplex_labels(&[s(&[1]), s(&[4])]));
        assert!(!k.is_simplex_labels(&[s(&[1]), s(&[1])]));
    }

    #[test]
    fn complexes_share_across_threads() {
        fn assert_shareable<T: Send + Sync>() {}
        assert_shareable::<SimplicialComplex>();
        assert_shareable::<crate::vmap::VertexMap>();
        assert_shareable::<crate::homology::IntegerMatrix>();

        let k = std::sync::Arc::new(complex(&[&[1, 2, 3], &[2, 3, 4]]));
        let handles: Vec<_> = (0..4)
            .map(|_| {
                let k = std::sync::Arc::clone(&k);
                std::thread::spawn(move || k.f_vector())
            })
            .collect();
        for h in handles {
            assert_eq!(h.join().unwrap(), vec![4, 5, 2]);
        }
    }
}
