//! Subset spheres and the collapse map onto the interval complex.
//!
//! The subset sphere over `1..=N` has a vertex for each non-empty proper
//! subset and a simplex for each strict inclusion chain; it is the
//! barycentric subdivision of the boundary of an (N-1)-simplex and hence an
//! (N-2)-sphere. Collapsing each subset to its leftmost consecutive run
//! defines a vertex map onto the interval complex which is simplicial,
//! surjective and of degree +-1; the same abstract map serves the sphere
//! models (N = n-2) and the genus models (N = 2g).

use std::sync::Arc;

use num_traits::ToPrimitive;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::homology::degree;
use crate::label::VertexLabel;
use crate::surfaces::{interval_complex, IntervalCurve};
use crate::vmap::VertexMap;

/// A non-empty proper subset of `1..=universe`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SubsetVertex {
    universe: u32,
    elems: Vec<u32>,
}

impl SubsetVertex {
    pub fn new(universe: u32, elems: impl IntoIterator<Item = u32>) -> Result<Self> {
        let mut v: Vec<u32> = elems.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        if v.is_empty() {
            return Err(Error::InvalidParameter("subset vertex must be non-empty".into()));
        }
        if v.len() as u32 >= universe {
            return Err(Error::InvalidParameter("subset vertex must be proper".into()));
        }
        if v.iter().any(|&x| x < 1 || x > universe) {
            return Err(Error::InvalidParameter(format!(
                "subset element outside 1..={universe}"
            )));
        }
        Ok(SubsetVertex { universe, elems: v })
    }

    pub fn elems(&self) -> &[u32] {
        &self.elems
    }

    pub fn label(&self) -> VertexLabel {
        VertexLabel::subset(self.elems.iter().copied())
    }
}

/// Maximal runs of consecutive indices, in increasing order, each tagged by
/// the parity of its cardinality (`true` = odd).
pub fn sequential_components(alpha: &SubsetVertex) -> Vec<(IntervalCurve, bool)> {
    let mut out = Vec::new();
    let elems = alpha.elems();
    let mut start = elems[0];
    let mut prev = elems[0];
    for &x in &elems[1..] {
        if x == prev + 1 {
            prev = x;
            continue;
        }
        out.push(run(start, prev, alpha.universe));
        start = x;
        prev = x;
    }
    out.push(run(start, prev, alpha.universe));
    out
}

fn run(lo: u32, hi: u32, universe: u32) -> (IntervalCurve, bool) {
    let curve = IntervalCurve::canonical(lo, hi, universe)
        .expect("a run inside a proper subset is a proper interval");
    let odd = (hi - lo + 1) % 2 == 1;
    (curve, odd)
}

/// The first sequential component: the maximal run with the smallest start.
pub fn leftmost_component(alpha: &SubsetVertex) -> IntervalCurve {
    sequential_components(alpha)[0].0.clone()
}

/// The subset sphere over `1..=universe`: vertices are the non-empty proper
/// subsets, facets the maximal strict chains. Equal (as an abstract complex)
/// to the barycentric subdivision of the boundary of the (universe-1)-simplex.
pub fn subset_sphere(universe: u32) -> Result<SimplicialComplex> {
    if universe < 2 {
        return Err(Error::InvalidParameter(format!(
            "subset sphere needs a universe of at least 2 indices, got {universe}"
        )));
    }
    if universe > 9 {
        return Err(Error::Unsupported(format!(
            "subset sphere over {universe} indices has {}! facets",
            universe
        )));
    }
    // Each maximal chain adds the universe's elements one at a time and stops
    // one short, so the chains are exactly the permutations.
    let indices: Vec<u32> = (1..=universe).collect();
    let mut facets = Vec::new();
    permute(&indices, &mut Vec::new(), &mut |perm| {
        let mut prefix: Vec<u32> = Vec::with_capacity(perm.len() - 1);
        let mut chain: Vec<VertexLabel> = Vec::with_capacity(perm.len() - 1);
        for &x in &perm[..perm.len() - 1] {
            prefix.push(x);
            chain.push(VertexLabel::subset(prefix.iter().copied()));
        }
        facets.push(chain);
    });
    SimplicialComplex::from_facets(facets)
}

fn permute(pool: &[u32], current: &mut Vec<u32>, visit: &mut impl FnMut(&[u32])) {
    if pool.is_empty() {
        visit(current);
        return;
    }
    for i in 0..pool.len() {
        let mut rest = pool.to_vec();
        let x = rest.remove(i);
        current.push(x);
        permute(&rest, current, visit);
        current.pop();
    }
}

/// The collapse map from the subset sphere onto the interval complex over
/// the same universe: each subset goes to its leftmost sequential component.
pub fn rho_map(universe: u32) -> Result<VertexMap> {
    let source = Arc::new(subset_sphere(universe)?);
    let target = Arc::new(interval_complex(universe)?);
    VertexMap::from_label_fn(Arc::clone(&source), Arc::clone(&target), |label| match label {
        VertexLabel::Subset(elems) => {
            let alpha = SubsetVertex::new(universe, elems.iter().copied())
                .expect("subset sphere vertices are proper subsets");
            leftmost_component(&alpha).label()
        }
        other => other.clone(),
    })
}

/// The verified facts about the collapse map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct RhoReport {
    pub simplicial: bool,
    pub surjective: bool,
    pub abs_degree: u64,
}

/// Check that the collapse map over the given universe is simplicial and
/// surjective with degree of absolute value one. Degree preconditions
/// (homology spheres on both sides) are verified along the way and their
/// failures propagate as errors.
pub fn verify_rho(universe: u32) -> Result<RhoReport> {
    let f = rho_map(universe)?;
    let simplicial = f.is_simplicial();
    let surjective = f.is_surjective_on_vertices();
    let deg = degree(&f)?;
    let abs_degree = deg
        .abs()
        .to_u64()
        .ok_or_else(|| Error::Internal("degree out of u64 range".into()))?;
    Ok(RhoReport { simplicial, surjective, abs_degree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::reduced_homology;

    fn sv(universe: u32, elems: &[u32]) -> SubsetVertex {
        SubsetVertex::new(universe, elems.iter().copied()).unwrap()
    }

    #[test]
    fn sequential_components_split_runs() {
        let alpha = sv(6, &[1, 2, 4]);
        let comps = sequential_components(&alpha);
        assert_eq!(comps.len(), 2);
        assert_eq!((comps[0].0.lo, comps[0].0.hi, comps[0].1), (1, 2, false));
        assert_eq!((comps[1].0.lo, comps[1].0.hi, comps[1].1), (4, 4, true));

        let beta = sv(6, &[2, 3, 4]);
        let comps = sequential_components(&beta);
        assert_eq!(comps.len(), 1);
        assert!(comps[0].1); // odd

        // The components partition the subset.
        let gamma = sv(8, &[1, 3, 4, 6, 7, 8]);
        let mut recovered: Vec<u32> = Vec::new();
        for (c, _) in sequential_components(&gamma) {
            recovered.extend(c.lo..=c.hi);
        }
        assert_eq!(recovered, gamma.elems());
    }

    #[test]
    fn leftmost_component_examples() {
        assert_eq!(leftmost_component(&sv(6, &[2, 3, 5])).label().render(), "I[2..3]");
        assert_eq!(leftmost_component(&sv(6, &[1, 2, 3, 4, 5])).label().render(), "I[1..5]");
        assert_eq!(leftmost_component(&sv(6, &[1, 3, 5])).label().render(), "I[1..1]");
    }

    #[test]
    fn subset_sphere_small_cases() {
        let y2 = subset_sphere(2).unwrap();
        assert_eq!(y2.f_vector(), vec![2]);

        let y4 = subset_sphere(4).unwrap();
        assert_eq!(y4.vertex_count(), 14); // 2^4 - 2
        assert_eq!(y4.facet_count(), 24); // 4!
        assert!(reduced_homology(&y4).is_sphere(2));

        assert!(subset_sphere(1).is_err());
    }

    #[test]
    fn subset_sphere_seven_counts() {
        let y7 = subset_sphere(7).unwrap();
        assert_eq!(y7.vertex_count(), 126);
        assert_eq!(y7.facet_count(), 5040);
        assert_eq!(y7.dim(), 5);
    }

    #[test]
    fn subset_sphere_has_a_size_cap() {
        assert!(matches!(
            subset_sphere(10),
            Err(crate::error::Error::Unsupported(_))
        ));
    }

    #[test]
    fn subset_sphere_matches_subdivided_simplex_boundary() {
        use crate::complex::simplex_boundary;
        use crate::vmap::find_isomorphism;
        for n in [3u32, 4] {
            let direct = Arc::new(subset_sphere(n).unwrap());
            let (bs, _) = simplex_boundary(n).unwrap().barycentric_subdivision().unwrap();
            let bs = Arc::new(bs);
            assert!(find_isomorphism(&direct, &bs).is_some());
        }
    }

    #[test]
    fn rho_base_case_is_a_bijection() {
        let f = rho_map(2).unwrap();
        assert_eq!(
            f.image_label(&VertexLabel::subset([1])).unwrap().render(),
            "I[1..1]"
        );
        assert_eq!(
            f.image_label(&VertexLabel::subset([2])).unwrap().render(),
            "I[2..2]"
        );
        assert!(f.is_injective_simplicial());
        assert!(f.is_surjective_on_vertices());
    }

    #[test]
    fn rho_surjects_onto_all_intervals() {
        let f = rho_map(4).unwrap();
        assert!(f.is_surjective_on_vertices());
        assert_eq!(f.target().vertex_count(), 9);
    }

    #[test]
    fn rho_top_interval_has_singleton_preimage() {
        for universe in 2..=5u32 {
            let f = rho_map(universe).unwrap();
            let top = VertexLabel::interval(1, universe - 1);
            let pre = f.preimage_labels(&top);
            assert_eq!(pre.len(), 1, "universe {universe}");
            assert_eq!(pre[0].render(), VertexLabel::subset(1..universe).render());
        }
    }

    #[test]
    fn verify_rho_small() {
        for universe in 2..=4u32 {
            let report = verify_rho(universe).unwrap();
            assert_eq!(
                report,
                RhoReport { simplicial: true, surjective: true, abs_degree: 1 },
                "universe {universe}"
            );
        }
    }
}
