//! Property tests for the structural invariants: downward closure, the
//! span/skeleton/link identities, subdivision counts, the tube-relation
//! partition, boundary composition, Smith-form consistency, and map
//! composition.

use std::sync::Arc;

use proptest::prelude::*;

use ccrk_core::complex::SimplicialComplex;
use ccrk_core::homology::{
    boundary_matrices, degree, fundamental_cycle, reduced_homology, smith_normal_form,
    IntegerMatrix,
};
use ccrk_core::label::VertexLabel;
use ccrk_core::surfaces::{genus_rigid_set, polygon_model, rho_map, sphere_rigid_set};
use ccrk_core::tubings::{
    associahedron_dual, enumerate_tubes, path_graph, tube_relation, TubeGraph, TubeRelation,
};
use ccrk_core::vmap::{find_isomorphism, VertexMap};

fn s(i: u32) -> VertexLabel {
    VertexLabel::subset([i])
}

/// Random facet lists over a small vertex universe.
fn arb_facets() -> impl Strategy<Value = Vec<Vec<u32>>> {
    prop::collection::vec(prop::collection::btree_set(1u32..=8, 1..=4), 1..=6)
        .prop_map(|facets| facets.into_iter().map(|f| f.into_iter().collect()).collect())
}

fn build(facets: &[Vec<u32>]) -> SimplicialComplex {
    SimplicialComplex::from_facets(
        facets.iter().map(|f| f.iter().map(|&i| s(i)).collect()).collect(),
    )
    .expect("distinct labels per facet")
}

/// Random simple graphs on up to 7 vertices.
fn arb_graph() -> impl Strategy<Value = TubeGraph> {
    (2u32..=7)
        .prop_flat_map(|n| {
            let pairs: Vec<(u32, u32)> =
                (1..=n).flat_map(|a| ((a + 1)..=n).map(move |b| (a, b))).collect();
            let count = pairs.len();
            (Just(n), Just(pairs), prop::collection::vec(any::<bool>(), count))
        })
        .prop_map(|(n, pairs, mask)| {
            let edges = pairs
                .into_iter()
                .zip(mask)
                .filter(|(_, keep)| *keep)
                .map(|(e, _)| e);
            TubeGraph::new(n, edges).expect("valid edges")
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn downward_closure(facets in arb_facets()) {
        let k = build(&facets);
        for facet in k.facets() {
            let m = facet.len();
            for mask in 1u32..(1 << m) {
                let sub: Vec<u32> = facet
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, &v)| v)
                    .collect();
                prop_assert!(k.is_simplex(&sub));
            }
        }
    }

    #[test]
    fn span_of_all_vertices_is_identity(facets in arb_facets()) {
        let k = build(&facets);
        let all: Vec<VertexLabel> = k.vertices().to_vec();
        prop_assert_eq!(k.span(&all).unwrap(), k);
    }

    #[test]
    fn skeleton_at_top_dimension_is_identity(facets in arb_facets()) {
        let k = build(&facets);
        prop_assert_eq!(k.skeleton(k.dim()).unwrap(), k.clone());
        // And the skeleton never exceeds the requested dimension.
        if k.dim() >= 1 {
            let sk = k.skeleton(k.dim() - 1).unwrap();
            prop_assert!(sk.dim() < k.dim());
        }
    }

    #[test]
    fn link_counts_simplices_through_the_vertex(facets in arb_facets()) {
        let k = build(&facets);
        for v in k.vertices() {
            let link = k.link(v).unwrap();
            let link_count: usize = link.f_vector().iter().sum();
            let vi = k.index_of(v).unwrap();
            let through: usize = k
                .simplices_by_dim()
                .iter()
                .flatten()
                .filter(|simplex| simplex.binary_search(&vi).is_ok())
                .count();
            prop_assert_eq!(link_count, through - 1);
        }
    }

    #[test]
    fn subdivision_counts_and_euler(facets in arb_facets()) {
        let k = build(&facets);
        let (bs, origin) = k.barycentric_subdivision().unwrap();
        let simplex_count: usize = k.f_vector().iter().sum();
        prop_assert_eq!(bs.vertex_count(), simplex_count);
        prop_assert_eq!(origin.len(), simplex_count);
        prop_assert_eq!(bs.euler_characteristic(), k.euler_characteristic());
    }

    #[test]
    fn relabeling_is_found_by_the_isomorphism_search(facets in arb_facets(), shift in 10u32..90) {
        let k = Arc::new(build(&facets));
        let relabeled = Arc::new(
            SimplicialComplex::from_facets(
                facets
                    .iter()
                    .map(|f| f.iter().map(|&i| s(i + shift)).collect())
                    .collect(),
            )
            .unwrap(),
        );
        let f = find_isomorphism(&k, &relabeled);
        prop_assert!(f.is_some());
        let f = f.unwrap();
        prop_assert!(f.is_isomorphism());
        prop_assert_eq!(f.source().f_vector(), f.target().f_vector());
    }

    #[test]
    fn boundaries_compose_to_zero(facets in arb_facets()) {
        let k = build(&facets);
        prop_assert!(boundary_matrices(&k).boundaries_compose_to_zero());
    }

    #[test]
    fn smith_rank_matches_rational_rank_on_boundaries(facets in arb_facets()) {
        let k = build(&facets);
        let chain = boundary_matrices(&k);
        for dim in chain.dims.iter() {
            let snf = smith_normal_form(&dim.boundary, false);
            prop_assert_eq!(snf.rank(), dim.boundary.rank_over_rationals());
        }
    }

    #[test]
    fn tube_pairs_fall_in_exactly_one_class(graph in arb_graph()) {
        let tubes = enumerate_tubes(&graph).unwrap();
        for t1 in &tubes {
            for t2 in &tubes {
                let r12 = tube_relation(t1, t2, &graph).unwrap();
                let r21 = tube_relation(t2, t1, &graph).unwrap();
                match (r12, r21) {
                    (TubeRelation::Equal, TubeRelation::Equal) => {
                        prop_assert_eq!(t1, t2);
                    }
                    (
                        TubeRelation::Nested { first_contains_second: a },
                        TubeRelation::Nested { first_contains_second: b },
                    ) => prop_assert_ne!(a, b),
                    (TubeRelation::Overlapping, TubeRelation::Overlapping)
                    | (TubeRelation::Adjacent, TubeRelation::Adjacent)
                    | (TubeRelation::CompatibleDisjoint, TubeRelation::CompatibleDisjoint) => {}
                    other => prop_assert!(false, "asymmetric classification {:?}", other),
                }
            }
        }
    }

    #[test]
    fn path_tubes_are_the_proper_subintervals(q in 2u32..=8) {
        let tubes = enumerate_tubes(&path_graph(q).unwrap()).unwrap();
        prop_assert_eq!(tubes.len() as u32, q * (q + 1) / 2 - 1);
        for t in &tubes {
            let v = t.verts();
            prop_assert!(v.windows(2).all(|w| w[1] == w[0] + 1), "tube {:?} is not an interval", v);
        }
    }

    #[test]
    fn maps_into_a_single_facet_compose_simplicially(
        facets in arb_facets(),
        pick_a in any::<prop::sample::Index>(),
        pick_b in any::<prop::sample::Index>(),
    ) {
        let k = Arc::new(build(&facets));
        let to_facet = |ix: &prop::sample::Index| {
            let facet = &k.facets()[ix.index(k.facet_count())];
            let target = facet[0];
            VertexMap::new(
                Arc::clone(&k),
                Arc::clone(&k),
                (0..k.vertex_count() as u32)
                    .map(|v| if facet.binary_search(&v).is_ok() { v } else { target })
                    .collect(),
            )
            .unwrap()
        };
        let g = to_facet(&pick_a);
        let f = to_facet(&pick_b);
        prop_assert!(g.is_simplicial());
        prop_assert!(f.is_simplicial());
        let composed = VertexMap::compose(&f, &g).unwrap();
        prop_assert!(composed.is_simplicial());
    }

    #[test]
    fn polygon_disjointness_is_dihedral_invariant(n in 5u32..=9, rot in 0u32..9, flip in any::<bool>()) {
        let p = Arc::new(polygon_model(n).unwrap());
        let map = VertexMap::from_label_fn(Arc::clone(&p), Arc::clone(&p), |l| match l {
            VertexLabel::Chord(a, b) => {
                let act = |x: u32| {
                    let shifted = (x - 1 + rot) % n + 1;
                    if flip { n + 1 - shifted } else { shifted }
                };
                VertexLabel::chord(act(*a), act(*b))
            }
            other => other.clone(),
        })
        .unwrap();
        prop_assert!(map.is_isomorphism());
    }
}

#[test]
fn interval_model_agrees_between_sphere_and_genus_parameters() {
    // One abstract collapse map serves both parameterizations: the genus-g
    // model equals the sphere model with n = 2g + 2 and the collapse map
    // depends only on the universe size.
    for g in 1..=3u32 {
        let universe = 2 * g;
        assert_eq!(genus_rigid_set(g).unwrap(), sphere_rigid_set(universe + 2).unwrap());
        let f = rho_map(universe).unwrap();
        assert_eq!(**f.target(), genus_rigid_set(g).unwrap());
    }
}

#[test]
fn degree_magnitude_survives_automorphisms() {
    // Orientation choices cannot change |degree|: the path-reversal
    // automorphism of the interval model has degree +-1, and composing it
    // with itself squares the degree back to +1.
    for universe in 2..=4u32 {
        let x = Arc::new(sphere_rigid_set(universe + 2).unwrap());
        let reverse = VertexMap::from_label_fn(Arc::clone(&x), Arc::clone(&x), |l| match l {
            VertexLabel::Interval { lo, hi, side } => VertexLabel::Interval {
                lo: universe + 1 - hi,
                hi: universe + 1 - lo,
                side: *side,
            },
            other => other.clone(),
        })
        .unwrap();
        assert!(reverse.is_isomorphism());
        let d = degree(&reverse).unwrap();
        assert_eq!(d.abs(), num_bigint::BigInt::from(1));
        let twice = VertexMap::compose(&reverse, &reverse).unwrap();
        let d2 = degree(&twice).unwrap();
        assert_eq!(d2.value, num_bigint::BigInt::from(1));
    }
}

#[test]
fn span_of_the_tubes_through_a_vertex_is_a_cone() {
    // Every tube of the m=5 dual containing index 2 is compatible with {2},
    // so the span is a cone and all reduced homology vanishes.
    let d5 = associahedron_dual(5).unwrap();
    let through: Vec<VertexLabel> = d5
        .vertices()
        .iter()
        .filter(|l| matches!(l, VertexLabel::Subset(e) if e.contains(&2)))
        .cloned()
        .collect();
    assert_eq!(through.len(), 5);
    let cone = d5.span(&through).unwrap();
    let profile = reduced_homology(&cone);
    assert!(profile.is_trivial(), "{profile:?}");
}

#[test]
fn link_of_a_long_tube_in_d5_is_a_circle() {
    // The five tubes compatible with {1,2,3} form a pentagon, one dimension
    // down from the ambient 2-sphere.
    let d5 = associahedron_dual(5).unwrap();
    let link = d5.link(&VertexLabel::subset([1, 2, 3])).unwrap();
    assert_eq!(link.f_vector(), vec![5, 5]);
    assert!(reduced_homology(&link).is_sphere(1));
}

#[test]
fn link_of_a_short_tube_in_the_pentagon() {
    let d4 = associahedron_dual(4).unwrap();
    let link = d4.link(&VertexLabel::subset([2])).unwrap();
    assert_eq!(link.f_vector(), vec![2]);
    let names: Vec<String> = link.vertices().iter().map(|v| v.render()).collect();
    assert_eq!(names, vec!["S{1,2}", "S{2,3}"]);
}

#[test]
fn simplex_skeleton_sphere_matches_subset_model() {
    // The boundary of the 3-simplex read as a skeleton has the homology of
    // the 2-sphere.
    use ccrk_core::complex::full_simplex;
    let boundary = full_simplex(4).unwrap().skeleton(2).unwrap();
    assert!(reduced_homology(&boundary).is_sphere(2));
}

#[test]
fn non_simplicial_map_is_detected() {
    // Sending the compatible-disjoint pair {1},{3} onto the adjacent pair
    // {1},{2} breaks the edge.
    let d4 = Arc::new(associahedron_dual(4).unwrap());
    let edge = Arc::new(
        d4.span(&[VertexLabel::subset([1]), VertexLabel::subset([3])]).unwrap(),
    );
    assert_eq!(edge.f_vector(), vec![2, 1]);
    let f = VertexMap::from_label_fn(Arc::clone(&edge), Arc::clone(&d4), |l| match l {
        VertexLabel::Subset(e) if e.as_slice() == [3] => VertexLabel::subset([2]),
        other => other.clone(),
    })
    .unwrap();
    assert!(!f.is_simplicial());
}

#[test]
fn fundamental_cycles_of_dual_spheres_are_unimodular() {
    for m in 3..=6u32 {
        let d = associahedron_dual(m).unwrap();
        let z = fundamental_cycle(&d).unwrap();
        assert_eq!(z.content(), num_bigint::BigInt::from(1), "m={m}");
        assert_eq!(z.dim as isize, d.dim());
    }
}

#[test]
fn euler_characteristics_of_small_duals() {
    assert_eq!(associahedron_dual(4).unwrap().euler_characteristic(), 0);
    let d5 = associahedron_dual(5).unwrap();
    assert_eq!(d5.euler_characteristic(), 2);
    let (bs, _) = d5.barycentric_subdivision().unwrap();
    assert_eq!(bs.euler_characteristic(), 2);
    assert_eq!(bs.vertex_count(), 9 + 21 + 14);
}

#[test]
fn dual_sphere_is_isomorphic_to_itself() {
    let d5 = Arc::new(associahedron_dual(5).unwrap());
    let f = find_isomorphism(&d5, &d5).expect("identity exists");
    assert!(f.is_isomorphism());
}

#[test]
fn base_collapse_map_induces_the_identity_permutation_on_vertices() {
    use ccrk_core::homology::induced_chain_map;
    let f = rho_map(2).unwrap();
    let m = induced_chain_map(&f, 0).unwrap();
    // S{1} < S{2} map to I[1..1] < I[2..2]: the identity 2x2 matrix.
    assert_eq!(m, IntegerMatrix::identity(2));
}

#[test]
fn composition_of_interval_isomorphisms_is_simplicial() {
    let x = Arc::new(sphere_rigid_set(6).unwrap());
    let d5 = Arc::new(associahedron_dual(5).unwrap());
    let to_tubes = VertexMap::from_label_fn(Arc::clone(&x), Arc::clone(&d5), |l| match l {
        VertexLabel::Interval { lo, hi, .. } => VertexLabel::subset(*lo..=*hi),
        other => other.clone(),
    })
    .unwrap();
    let back = to_tubes.inverse().unwrap();
    let round = VertexMap::compose(&back, &to_tubes).unwrap();
    assert!(round.is_simplicial());
    let id = VertexMap::identity(&x);
    for v in x.vertices() {
        assert_eq!(round.image_label(v), id.image_label(v));
    }
}
