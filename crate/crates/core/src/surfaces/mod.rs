//! Surface-specific constructions as abstract complexes and vertex maps:
//! interval-curve complexes for punctured spheres and closed surfaces, the
//! polygon chord model, subset spheres with their collapse maps, and the
//! non-rigidity witnesses.

mod rigidity;
mod spheres;

pub use rigidity::{
    build_oracle_g, counterexample_g, counterexample_g2n1, sporadic_check, symmetry_action,
    EliminationRow, Evidence, IntersectionOracle, IntersectionStatus, NonRigidityWitness,
    Provenance, SporadicCase, SporadicReport, Symmetry,
};
pub use spheres::{
    leftmost_component, rho_map, sequential_components, subset_sphere, verify_rho, RhoReport,
    SubsetVertex,
};

use std::sync::Arc;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::label::{Side, VertexLabel};
use crate::tubings::{path_graph, tube_complex};
use crate::vmap::{find_isomorphism, VertexMap};

/// The dimension of the homologically essential sphere for the surface of
/// genus g with n marked points.
pub fn tau(g: u32, n: u32) -> Result<i64> {
    match (g, n) {
        (0, n) if n >= 4 => Ok(n as i64 - 4),
        (g, 0) if g >= 1 => Ok(2 * g as i64 - 2),
        (g, n) if g >= 1 && n >= 1 => Ok(2 * g as i64 + n as i64 - 3),
        _ => Err(Error::InvalidParameter(format!(
            "no essential sphere dimension for genus {g} with {n} marked points"
        ))),
    }
}

/// A boundary curve of a regular neighborhood of a consecutive run of arcs,
/// indexed by the interval `lo..=hi` with a side mark.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntervalCurve {
    pub lo: u32,
    pub hi: u32,
    pub side: Side,
}

impl IntervalCurve {
    /// The canonical-side curve for a proper interval of `1..=universe`.
    pub fn canonical(lo: u32, hi: u32, universe: u32) -> Result<Self> {
        Self::validate_interval(lo, hi, universe)?;
        Ok(IntervalCurve { lo, hi, side: Side::Canonical })
    }

    /// The opposite-side curve; only odd intervals have two boundary
    /// components, so the length must be odd.
    pub fn opposite(lo: u32, hi: u32, universe: u32) -> Result<Self> {
        Self::validate_interval(lo, hi, universe)?;
        if (hi - lo + 1) % 2 == 0 {
            return Err(Error::InvalidParameter(format!(
                "interval [{lo}..{hi}] is even and has a single boundary component"
            )));
        }
        Ok(IntervalCurve { lo, hi, side: Side::Opposite })
    }

    /// The marked-point variant used by the genus-2 witness.
    pub fn marked(lo: u32, hi: u32, universe: u32) -> Result<Self> {
        Self::validate_interval(lo, hi, universe)?;
        Ok(IntervalCurve { lo, hi, side: Side::Marked })
    }

    fn validate_interval(lo: u32, hi: u32, universe: u32) -> Result<()> {
        if lo < 1 || lo > hi || hi > universe || (lo, hi) == (1, universe) {
            return Err(Error::InvalidParameter(format!(
                "[{lo}..{hi}] is not a proper non-empty sub-interval of 1..={universe}"
            )));
        }
        Ok(())
    }

    pub fn len(&self) -> u32 {
        self.hi - self.lo + 1
    }

    pub fn is_odd(&self) -> bool {
        self.len() % 2 == 1
    }

    pub fn label(&self) -> VertexLabel {
        VertexLabel::interval_side(self.lo, self.hi, self.side)
    }

    pub fn from_label(label: &VertexLabel) -> Option<IntervalCurve> {
        match label {
            VertexLabel::Interval { lo, hi, side } => {
                Some(IntervalCurve { lo: *lo, hi: *hi, side: *side })
            }
            _ => None,
        }
    }
}

/// The complex of canonical-side interval curves over `1..=universe`:
/// vertices are the proper sub-intervals, disjointness mirrors tube
/// compatibility in the path graph, and the complex is the full flag
/// complex of that relation.
pub fn interval_complex(universe: u32) -> Result<SimplicialComplex> {
    if universe < 2 {
        return Err(Error::InvalidParameter(format!(
            "interval complex needs a universe of at least 2 indices, got {universe}"
        )));
    }
    let tubes = tube_complex(&path_graph(universe)?)?;
    // Tubes of a path are exactly the intervals; relabel S{j..m} -> I[j..m].
    let facets = tubes
        .facets()
        .iter()
        .map(|facet| {
            facet
                .iter()
                .map(|&v| match tubes.vertex(v) {
                    VertexLabel::Subset(elems) => {
                        VertexLabel::interval(elems[0], *elems.last().expect("non-empty"))
                    }
                    other => other.clone(),
                })
                .collect()
        })
        .collect();
    SimplicialComplex::from_facets(facets)
}

/// The essential sphere of the n-marked sphere: interval curves over n-2
/// indices. Isomorphic to the dual associahedron with m = n-1.
pub fn sphere_rigid_set(n: u32) -> Result<SimplicialComplex> {
    if n < 4 {
        return Err(Error::InvalidParameter(format!(
            "sphere model needs at least 4 marked points, got {n}"
        )));
    }
    interval_complex(n - 2)
}

/// The essential sphere of the closed genus-g surface (the same abstract
/// complex serves one marked point): interval curves over 2g indices.
/// Isomorphic to the dual associahedron with m = 2g+1.
pub fn genus_rigid_set(g: u32) -> Result<SimplicialComplex> {
    if g < 1 {
        return Err(Error::InvalidParameter(format!("genus model needs g >= 1, got {g}")));
    }
    interval_complex(2 * g)
}

/// A curve of the doubled n-gon model: the double of a segment joining two
/// non-adjacent polygon sides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChordCurve {
    pub a: u32,
    pub b: u32,
}

impl ChordCurve {
    pub fn new(a: u32, b: u32, n: u32) -> Result<Self> {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        if a < 1 || b > n || a == b {
            return Err(Error::InvalidParameter(format!(
                "chord sides ({a},{b}) out of range for an {n}-gon"
            )));
        }
        if b - a == 1 || (a == 1 && b == n) {
            return Err(Error::InvalidParameter(format!(
                "sides {a} and {b} of the {n}-gon are adjacent"
            )));
        }
        Ok(ChordCurve { a, b })
    }

    pub fn label(&self) -> VertexLabel {
        VertexLabel::chord(self.a, self.b)
    }
}

/// Doubled chords are disjoint exactly when their side pairs do not
/// interleave in cyclic order; sharing a side is allowed (parallel segments).
pub fn chords_disjoint(c1: ChordCurve, c2: ChordCurve, n: u32) -> bool {
    debug_assert!(c1.b <= n && c2.b <= n);
    if c1.a == c2.a || c1.a == c2.b || c1.b == c2.a || c1.b == c2.b {
        return true;
    }
    // The pair {c1.a, c1.b} cuts the remaining sides into the arc strictly
    // between them and its complement; the chords cross exactly when c2 has
    // one side in each.
    let inside = |x: u32| -> bool { x > c1.a && x < c1.b };
    inside(c2.a) == inside(c2.b)
}

/// The polygon chord model: all doubled chords of the n-gon with the
/// flag complex of the disjointness relation.
pub fn polygon_model(n: u32) -> Result<SimplicialComplex> {
    if n < 5 {
        return Err(Error::InvalidParameter(format!(
            "polygon model needs at least 5 sides, got {n}"
        )));
    }
    let mut chords = Vec::new();
    for a in 1..=n {
        for b in (a + 1)..=n {
            if let Ok(c) = ChordCurve::new(a, b, n) {
                chords.push(c);
            }
        }
    }
    let m = chords.len();
    let mut adj = vec![vec![false; m]; m];
    for i in 0..m {
        for j in (i + 1)..m {
            if chords_disjoint(chords[i], chords[j], n) {
                adj[i][j] = true;
                adj[j][i] = true;
            }
        }
    }
    let facets = maximal_cliques_of(&adj)
        .into_iter()
        .map(|c| c.into_iter().map(|i| chords[i as usize].label()).collect())
        .collect();
    SimplicialComplex::from_facets(facets)
}

// Clique enumeration shared with the tubings module.
fn maximal_cliques_of(adj: &[Vec<bool>]) -> Vec<Vec<u32>> {
    crate::tubings::maximal_cliques_for_flags(adj)
}

/// Which vertex pairing verified the chord-model isomorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Theorem1Convention {
    /// The direct pairing I[j..m] -> P(j-1, m+1) with sides mod n.
    OffsetPairing,
    /// The pairing failed and a full isomorphism search succeeded instead.
    SearchFallback,
}

#[derive(Clone, Debug)]
pub struct Theorem1Outcome {
    pub iso: VertexMap,
    pub convention: Theorem1Convention,
}

/// Verify that the interval model and the polygon chord model of the
/// n-marked sphere are isomorphic complexes, returning the isomorphism.
///
/// The candidate pairing sends the interval `j..=m` (arcs occupying polygon
/// sides 1..=n-2) to the chord cutting off exactly those sides, i.e. the
/// side pair {j-1, m+1} with indices taken in 1..=n. If that map fails
/// verification, a backtracking isomorphism search is the fallback and the
/// outcome records which route succeeded.
pub fn theorem1_check(n: u32) -> Result<Theorem1Outcome> {
    if n < 5 {
        return Err(Error::InvalidParameter(format!(
            "chord-model comparison needs n >= 5, got {n}"
        )));
    }
    let intervals = Arc::new(sphere_rigid_set(n)?);
    let chords = Arc::new(polygon_model(n)?);

    let candidate = VertexMap::from_label_fn(Arc::clone(&intervals), Arc::clone(&chords), |l| {
        match l {
            VertexLabel::Interval { lo, hi, .. } => {
                let a = if *lo == 1 { n } else { lo - 1 };
                let b = hi + 1;
                VertexLabel::chord(a, b)
            }
            other => other.clone(),
        }
    });
    if let Ok(f) = candidate {
        if f.is_isomorphism() {
            return Ok(Theorem1Outcome { iso: f, convention: Theorem1Convention::OffsetPairing });
        }
    }
    match find_isomorphism(&intervals, &chords) {
        Some(f) => Ok(Theorem1Outcome { iso: f, convention: Theorem1Convention::SearchFallback }),
        None => Err(Error::TheoremViolation(format!(
            "interval model and chord model are not isomorphic for n = {n}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::reduced_homology;
    use crate::tubings::associahedron_dual;

    #[test]
    fn tau_values() {
        assert_eq!(tau(0, 7).unwrap(), 3);
        assert_eq!(tau(3, 0).unwrap(), 4);
        assert_eq!(tau(1, 1).unwrap(), 0);
        assert_eq!(tau(0, 4).unwrap(), 0);
        assert!(tau(0, 3).is_err());
        assert!(tau(0, 0).is_err());
    }

    #[test]
    fn interval_curve_validation() {
        assert!(IntervalCurve::canonical(1, 2, 4).is_ok());
        assert!(IntervalCurve::canonical(1, 4, 4).is_err()); // full interval
        assert!(IntervalCurve::canonical(0, 2, 4).is_err());
        assert!(IntervalCurve::canonical(3, 2, 4).is_err());
        assert!(IntervalCurve::opposite(1, 3, 6).is_ok());
        assert!(IntervalCurve::opposite(1, 2, 6).is_err()); // even interval
        assert!(IntervalCurve::marked(1, 2, 4).is_ok());
    }

    #[test]
    fn four_marked_points_give_a_zero_sphere() {
        let x = sphere_rigid_set(4).unwrap();
        assert_eq!(x.f_vector(), vec![2]);
        let names: Vec<String> = x.vertices().iter().map(|v| v.render()).collect();
        assert_eq!(names, vec!["I[1..1]", "I[2..2]"]);
    }

    #[test]
    fn five_marked_points_give_the_pentagon() {
        let x = sphere_rigid_set(5).unwrap();
        assert_eq!(x.f_vector(), vec![5, 5]);
        for (a, b) in [((1, 1), (1, 2)), ((2, 2), (1, 2)), ((2, 2), (2, 3)), ((3, 3), (2, 3)), ((1, 1), (3, 3))] {
            assert!(x.is_simplex_labels(&[
                VertexLabel::interval(a.0, a.1),
                VertexLabel::interval(b.0, b.1)
            ]));
        }
    }

    #[test]
    fn six_marked_points_match_the_associahedron_dual() {
        let x = Arc::new(sphere_rigid_set(6).unwrap());
        assert_eq!(x.vertex_count(), 9);
        assert_eq!(x.facet_count(), 14);
        let d5 = Arc::new(associahedron_dual(5).unwrap());
        let f = VertexMap::from_label_fn(Arc::clone(&x), Arc::clone(&d5), |l| match l {
            VertexLabel::Interval { lo, hi, .. } => VertexLabel::subset(*lo..=*hi),
            other => other.clone(),
        })
        .unwrap();
        assert!(f.is_isomorphism());
    }

    #[test]
    fn genus_models() {
        let g1 = genus_rigid_set(1).unwrap();
        assert_eq!(g1.f_vector(), vec![2]);
        let g2 = Arc::new(genus_rigid_set(2).unwrap());
        let d5 = Arc::new(associahedron_dual(5).unwrap());
        assert!(find_isomorphism(&g2, &d5).is_some());
        let g3 = genus_rigid_set(3).unwrap();
        let profile = reduced_homology(&g3);
        assert!(profile.is_sphere(4));
        assert!(genus_rigid_set(0).is_err());
    }

    #[test]
    fn polygon_model_counts() {
        let p5 = polygon_model(5).unwrap();
        assert_eq!(p5.vertex_count(), 5); // C(5,2) - 5
        let p6 = polygon_model(6).unwrap();
        assert_eq!(p6.vertex_count(), 9);
        assert!(polygon_model(4).is_err());
    }

    #[test]
    fn crossing_chords_do_not_span_an_edge() {
        let p6 = polygon_model(6).unwrap();
        assert!(!p6.is_simplex_labels(&[VertexLabel::chord(1, 3), VertexLabel::chord(2, 4)]));
        // Nested and side-sharing pairs are disjoint.
        assert!(p6.is_simplex_labels(&[VertexLabel::chord(1, 3), VertexLabel::chord(1, 4)]));
        assert!(p6.is_simplex_labels(&[VertexLabel::chord(1, 3), VertexLabel::chord(4, 6)]));
    }

    #[test]
    fn chord_crossing_rule() {
        // {1,3} vs {2,4} interleave in the 6-cycle.
        let c13 = ChordCurve::new(1, 3, 6).unwrap();
        let c24 = ChordCurve::new(2, 4, 6).unwrap();
        assert!(!chords_disjoint(c13, c24, 6));
        let c46 = ChordCurve::new(4, 6, 6).unwrap();
        assert!(chords_disjoint(c13, c46, 6));
    }

    #[test]
    fn chord_model_matches_interval_model_for_small_n() {
        for n in [5u32, 6] {
            let out = theorem1_check(n).unwrap();
            assert!(out.iso.is_isomorphism());
            assert_eq!(out.convention, Theorem1Convention::OffsetPairing);
        }
    }

    #[test]
    fn polygon_model_is_dihedrally_symmetric() {
        let n = 7u32;
        let p = Arc::new(polygon_model(n).unwrap());
        // Rotation by one side and the reflection both relabel simplicially.
        let rot = VertexMap::from_label_fn(Arc::clone(&p), Arc::clone(&p), |l| match l {
            VertexLabel::Chord(a, b) => VertexLabel::chord(a % n + 1, b % n + 1),
            other => other.clone(),
        })
        .unwrap();
        assert!(rot.is_isomorphism());
        let refl = VertexMap::from_label_fn(Arc::clone(&p), Arc::clone(&p), |l| match l {
            VertexLabel::Chord(a, b) => VertexLabel::chord(n + 1 - a, n + 1 - b),
            other => other.clone(),
        })
        .unwrap();
        assert!(refl.is_isomorphism());
    }
}
