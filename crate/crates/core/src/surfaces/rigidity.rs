//! Non-rigidity witnesses over a curated intersection oracle.
//!
//! The oracle records, for pairs of curves in an extended vertex universe,
//! whether they are disjoint or intersecting. Pairs inside the interval
//! model follow the tube-compatibility rule; the handful of statements about
//! the extra curves are curated facts, and everything else stays unknown so
//! no verification can silently rely on an invented geometric claim.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::homology::reduced_homology;
use crate::label::{Side, VertexLabel};
use crate::surfaces::{genus_rigid_set, sphere_rigid_set, tau, IntervalCurve};
use crate::tubings::{path_graph, tube_relation, Tube};
use crate::vmap::VertexMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IntersectionStatus {
    Disjoint,
    Intersecting,
    Unknown,
}

/// Where a recorded status comes from: the tube-compatibility rule or a
/// curated geometric fact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Rule,
    Curated,
}

/// A symmetric, partially known disjointness relation on an extended set of
/// interval curves.
#[derive(Clone, Debug)]
pub struct IntersectionOracle {
    universe_size: u32,
    curves: Vec<IntervalCurve>,
    statuses: BTreeMap<(usize, usize), (IntersectionStatus, Provenance)>,
}

impl IntersectionOracle {
    pub fn curves(&self) -> &[IntervalCurve] {
        &self.curves
    }

    fn index_of(&self, c: &IntervalCurve) -> Option<usize> {
        self.curves.iter().position(|x| x == c)
    }

    pub fn status(&self, a: &IntervalCurve, b: &IntervalCurve) -> IntersectionStatus {
        let (Some(i), Some(j)) = (self.index_of(a), self.index_of(b)) else {
            return IntersectionStatus::Unknown;
        };
        if i == j {
            return IntersectionStatus::Unknown;
        }
        let key = (i.min(j), i.max(j));
        self.statuses
            .get(&key)
            .map_or(IntersectionStatus::Unknown, |&(s, _)| s)
    }

    pub fn provenance(&self, a: &IntervalCurve, b: &IntervalCurve) -> Option<Provenance> {
        let (i, j) = (self.index_of(a)?, self.index_of(b)?);
        let key = (i.min(j), i.max(j));
        self.statuses.get(&key).map(|&(_, p)| p)
    }

    fn record(
        &mut self,
        i: usize,
        j: usize,
        status: IntersectionStatus,
        provenance: Provenance,
    ) -> Result<()> {
        let key = (i.min(j), i.max(j));
        if let Some(&(existing, _)) = self.statuses.get(&key) {
            if existing != status {
                return Err(Error::Internal(format!(
                    "oracle would record {status:?} over {existing:?} for ({}, {})",
                    self.curves[key.0].label().render(),
                    self.curves[key.1].label().render(),
                )));
            }
            return Ok(());
        }
        self.statuses.insert(key, (status, provenance));
        Ok(())
    }

    /// The flag complex on the known-disjoint pairs: the ambient complex the
    /// witnesses map into. Unknown pairs span no simplex.
    pub fn extended_complex(&self) -> Result<SimplicialComplex> {
        let n = self.curves.len();
        let mut adj = vec![vec![false; n]; n];
        for (&(i, j), &(s, _)) in &self.statuses {
            if s == IntersectionStatus::Disjoint {
                adj[i][j] = true;
                adj[j][i] = true;
            }
        }
        let facets = crate::tubings::maximal_cliques_for_flags(&adj)
            .into_iter()
            .map(|c| c.into_iter().map(|i| self.curves[i as usize].label()).collect())
            .collect();
        SimplicialComplex::from_facets(facets)
    }
}

/// All canonical-side proper intervals over `1..=universe`.
fn interval_vertices(universe: u32) -> Vec<IntervalCurve> {
    let mut out = Vec::new();
    for lo in 1..=universe {
        for hi in lo..=universe {
            if let Ok(c) = IntervalCurve::canonical(lo, hi, universe) {
                out.push(c);
            }
        }
    }
    out.sort_by_key(|c| c.label().render());
    out
}

fn intervals_compatible(a: &IntervalCurve, b: &IntervalCurve, universe: u32) -> Result<bool> {
    let path = path_graph(universe)?;
    let ta = Tube::new(&path, a.lo..=a.hi)?;
    let tb = Tube::new(&path, b.lo..=b.hi)?;
    Ok(tube_relation(&ta, &tb, &path)?.is_compatible())
}

/// Build the intersection oracle for the genus-g witness, g >= 3.
///
/// The universe is the interval model plus the opposite-side curve over
/// {1,2,3}. Pairs of model curves carry the tube rule. The curated facts:
/// the opposite-side curve is disjoint from every model curve disjoint from
/// I[1..3], and from I[3..5]; everything else about it stays unknown.
pub fn build_oracle_g(g: u32) -> Result<IntersectionOracle> {
    if g < 3 {
        return Err(Error::InvalidParameter(format!(
            "the interval-swap witness needs genus >= 3, got {g}"
        )));
    }
    let universe = 2 * g;
    let mut curves = interval_vertices(universe);
    let primed = IntervalCurve::opposite(1, 3, universe)?;
    curves.push(primed.clone());
    let primed_ix = curves.len() - 1;

    let mut oracle =
        IntersectionOracle { universe_size: universe, curves, statuses: BTreeMap::new() };

    let model_count = oracle.curves.len() - 1;
    for i in 0..model_count {
        for j in (i + 1)..model_count {
            let compatible =
                intervals_compatible(&oracle.curves[i], &oracle.curves[j], universe)?;
            let status = if compatible {
                IntersectionStatus::Disjoint
            } else {
                IntersectionStatus::Intersecting
            };
            oracle.record(i, j, status, Provenance::Rule)?;
        }
    }

    let base = IntervalCurve::canonical(1, 3, universe)?;
    for i in 0..model_count {
        let other = oracle.curves[i].clone();
        if other == base {
            continue;
        }
        if intervals_compatible(&other, &base, universe)? {
            oracle.record(i, primed_ix, IntersectionStatus::Disjoint, Provenance::Curated)?;
        }
    }
    let witness_partner = IntervalCurve::canonical(3, 5, universe)?;
    let partner_ix = oracle
        .index_of(&witness_partner)
        .ok_or_else(|| Error::Internal("I[3..5] missing from the universe".into()))?;
    oracle.record(partner_ix, primed_ix, IntersectionStatus::Disjoint, Provenance::Curated)?;

    Ok(oracle)
}

/// Evidence that a map cannot come from a surface homeomorphism.
#[derive(Clone, Debug)]
pub enum Evidence {
    /// A pair of intersecting curves whose images are disjoint.
    IntersectionPattern {
        source_pair: (IntervalCurve, IntervalCurve),
        image_pair: (IntervalCurve, IntervalCurve),
    },
    /// The candidate symmetries are eliminated one by one.
    SymmetryElimination { rows: Vec<EliminationRow> },
}

#[derive(Clone, Debug)]
pub struct EliminationRow {
    pub symmetry: Symmetry,
    pub image_of_first: VertexLabel,
    pub image_of_second: VertexLabel,
    pub fixes_both: bool,
}

/// A verified injective simplicial self-map of the model into its extension
/// that no homeomorphism induces.
#[derive(Clone, Debug)]
pub struct NonRigidityWitness {
    pub map: VertexMap,
    pub moved_vertex: VertexLabel,
    pub replacement: VertexLabel,
    pub evidence: Evidence,
}

/// The genus-g non-rigidity witness for g >= 3: the identity on the interval
/// model except that I[1..3] goes to its opposite-side curve. Verified to be
/// injective and simplicial using only known-disjoint oracle pairs, and to
/// send the intersecting pair (I[1..3], I[3..5]) to a disjoint pair.
pub fn counterexample_g(g: u32) -> Result<NonRigidityWitness> {
    let oracle = build_oracle_g(g)?;
    let universe = oracle.universe_size;
    let model = Arc::new(genus_rigid_set(g)?);
    let extended = Arc::new(oracle.extended_complex()?);

    let moved = IntervalCurve::canonical(1, 3, universe)?;
    let replacement = IntervalCurve::opposite(1, 3, universe)?;
    let moved_label = moved.label();
    let replacement_label = replacement.label();

    let f = VertexMap::from_label_fn(Arc::clone(&model), Arc::clone(&extended), |l| {
        if *l == moved_label {
            replacement_label.clone()
        } else {
            l.clone()
        }
    })?;

    if !f.is_injective_simplicial() {
        return Err(Error::TheoremViolation(format!(
            "interval-swap map fails to be injective simplicial at genus {g}"
        )));
    }
    if model.index_of(&replacement_label).is_some() {
        return Err(Error::TheoremViolation(
            "the replacement curve unexpectedly lies in the model".into(),
        ));
    }

    let partner = IntervalCurve::canonical(3, 5, universe)?;
    if oracle.status(&moved, &partner) != IntersectionStatus::Intersecting {
        return Err(Error::TheoremViolation(
            "witness pair is not recorded as intersecting".into(),
        ));
    }
    if oracle.status(&replacement, &partner) != IntersectionStatus::Disjoint {
        return Err(Error::TheoremViolation(
            "witness image pair is not recorded as disjoint".into(),
        ));
    }

    Ok(NonRigidityWitness {
        map: f,
        moved_vertex: moved.label(),
        replacement: replacement.label(),
        evidence: Evidence::IntersectionPattern {
            source_pair: (moved, partner.clone()),
            image_pair: (replacement, partner),
        },
    })
}

/// A combinatorial model of the order-four symmetry group of the chain of
/// curves: optional index reversal composed with an optional side flip.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Symmetry {
    pub reverse: bool,
    pub side_flip: bool,
}

impl Symmetry {
    pub const IDENTITY: Symmetry = Symmetry { reverse: false, side_flip: false };

    pub fn all() -> [Symmetry; 4] {
        [
            Symmetry { reverse: false, side_flip: false },
            Symmetry { reverse: false, side_flip: true },
            Symmetry { reverse: true, side_flip: false },
            Symmetry { reverse: true, side_flip: true },
        ]
    }

    pub fn compose(self, other: Symmetry) -> Symmetry {
        Symmetry {
            reverse: self.reverse != other.reverse,
            side_flip: self.side_flip != other.side_flip,
        }
    }

    pub fn is_identity(self) -> bool {
        !self.reverse && !self.side_flip
    }
}

/// Apply a symmetry to an interval curve over `1..=2g`. Reversal maps the
/// interval j..=m to 2g+1-m..=2g+1-j; the side flip toggles the side marker
/// on odd intervals and fixes even ones (those have a unique boundary
/// component). The marked-point variant is outside the symmetric universe.
pub fn symmetry_action(s: Symmetry, g: u32, v: &IntervalCurve) -> Result<IntervalCurve> {
    if g < 1 {
        return Err(Error::InvalidParameter("symmetry action needs g >= 1".into()));
    }
    let universe = 2 * g;
    if v.hi > universe {
        return Err(Error::InvalidParameter(format!(
            "curve {} does not live over 1..={universe}",
            v.label().render()
        )));
    }
    if v.side == Side::Marked {
        return Err(Error::InvalidParameter(
            "the marked-point variant has no symmetry action".into(),
        ));
    }
    let (lo, hi) = if s.reverse {
        (universe + 1 - v.hi, universe + 1 - v.lo)
    } else {
        (v.lo, v.hi)
    };
    let side = if s.side_flip && v.is_odd() {
        match v.side {
            Side::Canonical => Side::Opposite,
            Side::Opposite => Side::Canonical,
            Side::Marked => unreachable!(),
        }
    } else {
        v.side
    };
    Ok(IntervalCurve { lo, hi, side })
}

/// The genus-2, one-marked-point witness. The map fixes everything except
/// I[1..2], which goes to the marked-point variant; among the four chain
/// symmetries only the identity fixes both I[1..3] and I[2..4], while the
/// map fixes both yet is not the identity.
pub fn counterexample_g2n1() -> Result<NonRigidityWitness> {
    let g = 2u32;
    let universe = 2 * g;
    let model = Arc::new(genus_rigid_set(g)?);

    let moved = IntervalCurve::canonical(1, 2, universe)?;
    let replacement = IntervalCurve::marked(1, 2, universe)?;

    // Oracle: rule pairs inside the model; the marked variant is disjoint
    // from every model curve disjoint from I[1..2] (it is drawn alongside
    // I[1..2] and a path to the marked point that avoids everything else).
    let mut curves = interval_vertices(universe);
    curves.push(replacement.clone());
    let marked_ix = curves.len() - 1;
    let mut oracle =
        IntersectionOracle { universe_size: universe, curves, statuses: BTreeMap::new() };
    let model_count = oracle.curves.len() - 1;
    for i in 0..model_count {
        for j in (i + 1)..model_count {
            let compatible =
                intervals_compatible(&oracle.curves[i], &oracle.curves[j], universe)?;
            let status = if compatible {
                IntersectionStatus::Disjoint
            } else {
                IntersectionStatus::Intersecting
            };
            oracle.record(i, j, status, Provenance::Rule)?;
        }
    }
    for i in 0..model_count {
        let other = oracle.curves[i].clone();
        if other == moved {
            continue;
        }
        if intervals_compatible(&other, &moved, universe)? {
            oracle.record(i, marked_ix, IntersectionStatus::Disjoint, Provenance::Curated)?;
        }
    }

    let extended = Arc::new(oracle.extended_complex()?);
    let moved_label = moved.label();
    let replacement_label = replacement.label();
    let f = VertexMap::from_label_fn(Arc::clone(&model), Arc::clone(&extended), |l| {
        if *l == moved_label {
            replacement_label.clone()
        } else {
            l.clone()
        }
    })?;
    if !f.is_injective_simplicial() {
        return Err(Error::TheoremViolation(
            "marked-point swap map fails to be injective simplicial".into(),
        ));
    }

    // f is not the identity on vertices.
    if f.image_label(&moved_label) == Some(&moved_label) {
        return Err(Error::TheoremViolation("swap map failed to move its vertex".into()));
    }

    let anchor_a = IntervalCurve::canonical(1, 3, universe)?;
    let anchor_b = IntervalCurve::canonical(2, 4, universe)?;
    let mut rows = Vec::new();
    for s in Symmetry::all() {
        let ia = symmetry_action(s, g, &anchor_a)?;
        let ib = symmetry_action(s, g, &anchor_b)?;
        let fixes_both = ia == anchor_a && ib == anchor_b;
        rows.push(EliminationRow {
            symmetry: s,
            image_of_first: ia.label(),
            image_of_second: ib.label(),
            fixes_both,
        });
    }
    let fixing: Vec<&EliminationRow> = rows.iter().filter(|r| r.fixes_both).collect();
    if fixing.len() != 1 || !fixing[0].symmetry.is_identity() {
        return Err(Error::TheoremViolation(
            "a non-identity chain symmetry fixes both anchor curves".into(),
        ));
    }
    // The map itself fixes both anchors (it only moves I[1..2]).
    if f.image_label(&anchor_a.label()) != Some(&anchor_a.label())
        || f.image_label(&anchor_b.label()) != Some(&anchor_b.label())
    {
        return Err(Error::TheoremViolation("swap map moves an anchor curve".into()));
    }

    Ok(NonRigidityWitness {
        map: f,
        moved_vertex: moved.label(),
        replacement: replacement.label(),
        evidence: Evidence::SymmetryElimination { rows },
    })
}

/// One of the low-complexity sporadic cases.
#[derive(Clone, Debug, serde::Serialize)]
pub struct SporadicCase {
    pub surface: String,
    pub vertices: usize,
    pub edges: usize,
    pub reduced_betti_0: usize,
    pub tau: i64,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct SporadicReport {
    pub cases: Vec<SporadicCase>,
    /// A stated, non-computed fact recorded alongside the computations.
    pub note: String,
}

/// Verify the sporadic 0-sphere cases: the four-marked-point sphere and the
/// genus-one surfaces give two-point models with reduced Betti number one in
/// degree zero, matching the essential dimension zero.
pub fn sporadic_check() -> Result<SporadicReport> {
    let mut cases = Vec::new();
    let mut push = |surface: &str, k: &SimplicialComplex, t: i64| {
        let profile = reduced_homology(k);
        cases.push(SporadicCase {
            surface: surface.to_string(),
            vertices: k.vertex_count(),
            edges: k.simplices(1).len(),
            reduced_betti_0: profile.betti(0),
            tau: t,
        });
    };
    push("genus 0, 4 marked points", &sphere_rigid_set(4)?, tau(0, 4)?);
    push("genus 1, closed", &genus_rigid_set(1)?, tau(1, 0)?);
    push("genus 1, 1 marked point", &genus_rigid_set(1)?, tau(1, 1)?);

    for case in &cases {
        if case.vertices != 2 || case.edges != 0 || case.reduced_betti_0 != 1 || case.tau != 0 {
            return Err(Error::TheoremViolation(format!(
                "sporadic case `{}` is not a two-point model in essential dimension zero",
                case.surface
            )));
        }
    }

    Ok(SporadicReport {
        cases,
        note: "In these sporadic cases the ambient complex is an infinite discrete \
               set of vertices, which admits no finite rigid subcomplex; the two-point \
               models are essential spheres but cannot be rigid sets."
            .to_string(),
    })
}
