//! Exact integer simplicial homology, fundamental cycles of homology
//! spheres, and degrees of simplicial maps between them.

pub mod matrix;
pub mod snf;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::label::VertexLabel;
use crate::vmap::VertexMap;

pub use matrix::IntegerMatrix;
pub use snf::{smith_normal_form, SmithNormalForm};

/// One dimension of a chain complex: the ordered simplex basis and the
/// boundary matrix into the next dimension down.
#[derive(Clone, Debug)]
pub struct ChainDim {
    pub basis: Vec<Vec<u32>>,
    /// `boundary` maps k-chains to (k-1)-chains; for k = 0 it is 0 x n.
    pub boundary: IntegerMatrix,
}

/// The simplicial chain complex of a finite complex over the integers.
#[derive(Clone, Debug)]
pub struct ChainComplexZ {
    /// `dims[k]` covers dimension k; empty for the empty complex.
    pub dims: Vec<ChainDim>,
}

impl ChainComplexZ {
    pub fn boundary(&self, k: usize) -> Option<&IntegerMatrix> {
        self.dims.get(k).map(|d| &d.boundary)
    }

    /// Check the defining identity: each composite boundary vanishes.
    pub fn boundaries_compose_to_zero(&self) -> bool {
        for k in 1..self.dims.len() {
            let prev = &self.dims[k - 1].boundary;
            let cur = &self.dims[k].boundary;
            match prev.mul(cur) {
                Ok(product) => {
                    if !product.is_zero_matrix() {
                        return false;
                    }
                }
                Err(_) => return false,
            }
        }
        true
    }
}

/// Boundary matrices with the alternating-sign convention on canonically
/// sorted simplices: the face dropping the i-th vertex carries (-1)^i.
pub fn boundary_matrices(k: &SimplicialComplex) -> ChainComplexZ {
    let dim = k.dim();
    if dim < 0 {
        return ChainComplexZ { dims: Vec::new() };
    }
    let mut dims = Vec::with_capacity(dim as usize + 1);
    for d in 0..=(dim as usize) {
        let basis = k.simplices(d).to_vec();
        let boundary = if d == 0 {
            IntegerMatrix::zero(0, basis.len())
        } else {
            let lower = k.simplices(d - 1);
            let mut m = IntegerMatrix::zero(lower.len(), basis.len());
            for (col, simplex) in basis.iter().enumerate() {
                let mut face = Vec::with_capacity(simplex.len() - 1);
                for i in 0..simplex.len() {
                    face.clear();
                    face.extend(simplex.iter().take(i).chain(simplex.iter().skip(i + 1)));
                    let row = lower
                        .binary_search(&face)
                        .expect("face of a simplex is a simplex");
                    let sign = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                    m.set(row, col, sign);
                }
            }
            m
        };
        dims.push(ChainDim { basis, boundary });
    }
    ChainComplexZ { dims }
}

/// Reduced homology in one dimension: the Betti number and the torsion
/// coefficients in divisibility order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
    pub dim: usize,
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

impl serde::Serialize for HomologyGroup {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = ser.serialize_struct("HomologyGroup", 3)?;
        s.serialize_field("dim", &self.dim)?;
        s.serialize_field("betti", &self.betti)?;
        let torsion: Vec<String> = self.torsion.iter().map(|t| t.to_string()).collect();
        s.serialize_field("torsion", &torsion)?;
        s.end()
    }
}

/// Per-dimension reduced integral homology.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct HomologyProfile {
    pub groups: Vec<HomologyGroup>,
}

impl HomologyProfile {
    pub fn betti(&self, dim: usize) -> usize {
        self.groups.iter().find(|g| g.dim == dim).map_or(0, |g| g.betti)
    }

    pub fn torsion(&self, dim: usize) -> Vec<BigInt> {
        self.groups
            .iter()
            .find(|g| g.dim == dim)
            .map(|g| g.torsion.clone())
            .unwrap_or_default()
    }

    pub fn is_trivial(&self) -> bool {
        self.groups.iter().all(|g| g.betti == 0 && g.torsion.is_empty())
    }

    /// Reduced homology of a d-sphere: one infinite cyclic group in dimension
    /// d and nothing anywhere else. The profile must actually reach dimension
    /// d; lower-dimensional acyclic complexes do not qualify.
    pub fn is_sphere(&self, d: usize) -> bool {
        self.groups.iter().any(|g| g.dim == d)
            && self
                .groups
                .iter()
                .all(|g| g.torsion.is_empty() && g.betti == usize::from(g.dim == d))
    }

    /// Alternating sum of reduced Betti numbers.
    pub fn reduced_euler_sum(&self) -> i64 {
        self.groups
            .iter()
            .map(|g| {
                let b = g.betti as i64;
                if g.dim % 2 == 0 {
                    b
                } else {
                    -b
                }
            })
            .sum()
    }
}

/// Reduced integral homology in every dimension, from Smith normal forms of
/// the boundary matrices. Dimension zero is computed against the augmented
/// complex, so spheres read zero in reduced degree 0.
pub fn reduced_homology(k: &SimplicialComplex) -> HomologyProfile {
    let chain = boundary_matrices(k);
    reduced_homology_of_chain(&chain)
}

pub fn reduced_homology_of_chain(chain: &ChainComplexZ) -> HomologyProfile {
    let top = chain.dims.len();
    if top == 0 {
        return HomologyProfile { groups: Vec::new() };
    }
    // snfs[d] for the boundary map out of dimension d (d >= 1).
    let snfs: Vec<SmithNormalForm> = (1..top)
        .map(|d| smith_normal_form(&chain.dims[d].boundary, false))
        .collect();
    let rank_out = |d: usize| -> usize {
        if d == 0 {
            // Augmentation map: rank 1 whenever there are vertices.
            usize::from(!chain.dims[0].basis.is_empty())
        } else {
            snfs[d - 1].rank()
        }
    };
    let mut groups = Vec::with_capacity(top);
    for d in 0..top {
        let n = chain.dims[d].basis.len();
        let rank_in = if d + 1 < top { snfs[d].rank() } else { 0 };
        let betti = n - rank_out(d) - rank_in;
        let torsion = if d + 1 < top { snfs[d].torsion() } else { Vec::new() };
        groups.push(HomologyGroup { dim: d, betti, torsion });
    }
    HomologyProfile { groups }
}

/// A generating integral cycle in the top dimension of a homology sphere.
/// Coefficients align with the canonical order of the top simplices; the
/// canonically smallest simplex in the support carries +1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalCycle {
    pub dim: usize,
    pub coefficients: Vec<BigInt>,
}

impl FundamentalCycle {
    /// The gcd of the coefficients (1 for spheres).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coefficients {
            g = g.gcd(c);
        }
        g
    }
}

/// Compute a fundamental cycle of the top dimension d = dim K. Errors unless
/// the top reduced homology is infinite cyclic.
///
/// When every (d-1)-simplex lies in at most two d-simplices the cycle is
/// found by coherent sign propagation across the facet adjacency graph, which
/// also certifies that the top kernel has rank one. Other complexes fall back
/// to a dense kernel computation.
pub fn fundamental_cycle(k: &SimplicialComplex) -> Result<FundamentalCycle> {
    let dim = k.dim();
    if dim < 0 {
        return Err(Error::NotAHomologySphere("the empty complex has no top cycle".into()));
    }
    let d = dim as usize;
    let top = k.simplices(d);
    let n = top.len();

    if d == 0 {
        // Reduced 0-cycles are kernel vectors of the augmentation map.
        return match n {
            2 => Ok(FundamentalCycle {
                dim: 0,
                coefficients: vec![BigInt::one(), -BigInt::one()],
            }),
            _ => Err(Error::NotAHomologySphere(format!(
                "reduced degree-0 homology has rank {}",
                n - 1
            ))),
        };
    }

    let ridges = k.simplices(d - 1);
    // For each ridge, the top simplices containing it, with the sign the
    // ridge carries in their boundaries.
    let mut cofaces: Vec<Vec<(usize, i8)>> = vec![Vec::new(); ridges.len()];
    for (t, simplex) in top.iter().enumerate() {
        let mut face = Vec::with_capacity(d);
        for i in 0..=d {
            face.clear();
            face.extend(simplex.iter().take(i).chain(simplex.iter().skip(i + 1)));
            let r = ridges.binary_search(&face).expect("face is a simplex");
            let sign = if i % 2 == 0 { 1 } else { -1 };
            cofaces[r].push((t, sign));
        }
    }

    if cofaces.iter().any(|c| c.len() > 2) {
        return fundamental_cycle_generic(k, d);
    }

    // Sign propagation per facet-adjacency component.
    let mut coeff: Vec<i8> = vec![0; n];
    let mut component: Vec<usize> = vec![usize::MAX; n];
    let mut component_ok: Vec<bool> = Vec::new();
    for seed in 0..n {
        if component[seed] != usize::MAX {
            continue;
        }
        let comp_id = component_ok.len();
        let mut ok = true;
        component[seed] = comp_id;
        coeff[seed] = 1;
        let mut queue = vec![seed];
        while let Some(t) = queue.pop() {
            let simplex = &top[t];
            let mut face = Vec::with_capacity(d);
            for i in 0..=d {
                face.clear();
                face.extend(simplex.iter().take(i).chain(simplex.iter().skip(i + 1)));
                let r = ridges.binary_search(&face).expect("face is a simplex");
                if cofaces[r].len() != 2 {
                    // A free ridge forces the component to zero.
                    ok = false;
                    continue;
                }
                let (other, s_other) = if cofaces[r][0].0 == t {
                    cofaces[r][1]
                } else {
                    cofaces[r][0]
                };
                let s_self = if cofaces[r][0].0 == t {
                    cofaces[r][0].1
                } else {
                    cofaces[r][1].1
                };
                let forced = -s_self * s_other * coeff[t];
                if component[other] == usize::MAX {
                    component[other] = comp_id;
                    coeff[other] = forced;
                    queue.push(other);
                } else if coeff[other] != forced {
                    ok = false;
                }
            }
        }
        component_ok.push(ok);
    }

    let good: Vec<usize> = component_ok
        .iter()
        .enumerate()
        .filter(|(_, &ok)| ok)
        .map(|(i, _)| i)
        .collect();
    if good.len() != 1 {
        return Err(Error::NotAHomologySphere(format!(
            "top homology has rank {}",
            good.len()
        )));
    }
    let comp = good[0];
    let mut coefficients: Vec<BigInt> = (0..n)
        .map(|t| {
            if component[t] == comp {
                BigInt::from(coeff[t])
            } else {
                BigInt::zero()
            }
        })
        .collect();
    normalize_cycle_sign(&mut coefficients);

    // The propagated vector must be an actual cycle; this also rules out
    // remaining free-ridge inconsistencies.
    let chain_ok = verify_cycle(k, d, &coefficients);
    if !chain_ok {
        return Err(Error::NotAHomologySphere(
            "propagated top chain has non-zero boundary".into(),
        ));
    }
    Ok(FundamentalCycle { dim: d, coefficients })
}

/// Dense kernel route for complexes that are not ridge-2-regular.
fn fundamental_cycle_generic(k: &SimplicialComplex, d: usize) -> Result<FundamentalCycle> {
    let chain = boundary_matrices(k);
    let boundary = &chain.dims[d].boundary;
    let n = boundary.cols();
    if boundary.rows() * n > 4_000_000 {
        return Err(Error::Unsupported(
            "generic top-kernel computation on a matrix this large".into(),
        ));
    }
    let snf = smith_normal_form(boundary, true);
    let rank = snf.rank();
    if n - rank != 1 {
        return Err(Error::NotAHomologySphere(format!("top homology has rank {}", n - rank)));
    }
    // Kernel basis: columns of V past the rank.
    let v = snf.v.as_ref().expect("transforms requested");
    let mut coefficients: Vec<BigInt> = (0..n).map(|i| v.get(i, rank)).collect();
    let content = {
        let mut g = BigInt::zero();
        for c in &coefficients {
            g = g.gcd(c);
        }
        g
    };
    if content > BigInt::one() {
        for c in &mut coefficients {
            *c /= &content;
        }
    }
    normalize_cycle_sign(&mut coefficients);
    if !verify_cycle(k, d, &coefficients) {
        return Err(Error::Internal("kernel vector fails the boundary check".into()));
    }
    Ok(FundamentalCycle { dim: d, coefficients })
}

fn normalize_cycle_sign(coefficients: &mut [BigInt]) {
    if let Some(first) = coefficients.iter().find(|c| !c.is_zero()) {
        if first.is_negative() {
            for c in coefficients.iter_mut() {
                if !c.is_zero() {
                    *c = -&*c;
                }
            }
        }
    }
}

/// Exact check that the coefficient vector is a d-cycle.
fn verify_cycle(k: &SimplicialComplex, d: usize, coefficients: &[BigInt]) -> bool {
    let top = k.simplices(d);
    let ridges = k.simplices(d - 1);
    let mut sums: Vec<BigInt> = vec![BigInt::zero(); ridges.len()];
    for (t, simplex) in top.iter().enumerate() {
        if coefficients[t].is_zero() {
            continue;
        }
        let mut face = Vec::with_capacity(d);
        for i in 0..=d {
            face.clear();
            face.extend(simplex.iter().take(i).chain(simplex.iter().skip(i + 1)));
            let r = ridges.binary_search(&face).expect("face is a simplex");
            if i % 2 == 0 {
                sums[r] += &coefficients[t];
            } else {
                sums[r] -= &coefficients[t];
            }
        }
    }
    sums.iter().all(|s| s.is_zero())
}

/// The matrix of the induced chain map in dimension k: columns over the
/// source k-simplices, rows over the target k-simplices. A simplex whose
/// image is degenerate maps to zero; otherwise to the signed sorted image.
pub fn induced_chain_map(f: &VertexMap, k: usize) -> Result<IntegerMatrix> {
    if !f.is_simplicial() {
        return Err(Error::NotSimplicial);
    }
    let source = f.source();
    let target = f.target();
    let src_basis = source.simplices(k);
    let tgt_basis = target.simplices(k);
    let mut m = IntegerMatrix::zero(tgt_basis.len(), src_basis.len());
    for (col, simplex) in src_basis.iter().enumerate() {
        let image: Vec<u32> = simplex.iter().map(|&v| f.image_index(v)).collect();
        if let Some((sorted, sign)) = sort_with_parity(&image) {
            let row = tgt_basis
                .binary_search(&sorted)
                .expect("image of a simplex under a simplicial map is a simplex");
            m.set(row, col, BigInt::from(sign));
        }
    }
    Ok(m)
}

/// Sort the tuple; `None` if it has repeats, otherwise the permutation sign.
fn sort_with_parity(tuple: &[u32]) -> Option<(Vec<u32>, i8)> {
    let mut v = tuple.to_vec();
    let mut sign = 1i8;
    // Insertion sort, counting swaps; tuples are tiny.
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some((v, sign))
    }
}

/// The degree of a simplicial map between homology spheres of the same
/// dimension: the multiplier between fundamental cycles. Both cycles are
/// sign-normalized on their canonically smallest supported top simplex; the
/// anchors record that normalization.
#[derive(Clone, Debug)]
pub struct Degree {
    pub value: BigInt,
    /// Top simplex of the source whose cycle coefficient is +1.
    pub source_anchor: Vec<VertexLabel>,
    /// Top simplex of the target whose cycle coefficient is +1.
    pub target_anchor: Vec<VertexLabel>,
}

impl Degree {
    pub fn abs(&self) -> BigInt {
        self.value.abs()
    }
}

pub fn degree(f: &VertexMap) -> Result<Degree> {
    if !f.is_simplicial() {
        return Err(Error::NotSimplicial);
    }
    let source = f.source();
    let target = f.target();
    let ds = source.dim();
    let dt = target.dim();
    if ds != dt || ds < 0 {
        return Err(Error::InvalidParameter(format!(
            "degree needs equal positive-rank top dimensions, got {ds} and {dt}"
        )));
    }
    let d = ds as usize;
    if !reduced_homology(source).is_sphere(d) {
        return Err(Error::NotAHomologySphere("source is not a homology sphere".into()));
    }
    if !reduced_homology(target).is_sphere(d) {
        return Err(Error::NotAHomologySphere("target is not a homology sphere".into()));
    }
    let zeta_s = fundamental_cycle(source)?;
    let zeta_t = fundamental_cycle(target)?;

    let src_basis = source.simplices(d);
    let tgt_basis = target.simplices(d);
    let mut image = vec![BigInt::zero(); tgt_basis.len()];
    for (t, simplex) in src_basis.iter().enumerate() {
        if zeta_s.coefficients[t].is_zero() {
            continue;
        }
        let mapped: Vec<u32> = simplex.iter().map(|&v| f.image_index(v)).collect();
        if let Some((sorted, sign)) = sort_with_parity(&mapped) {
            // At the top dimension the image set is itself a top simplex.
            let row = tgt_basis
                .binary_search(&sorted)
                .expect("simplicial image of a top simplex");
            if sign > 0 {
                image[row] += &zeta_s.coefficients[t];
            } else {
                image[row] -= &zeta_s.coefficients[t];
            }
        }
    }

    // image = value * zeta_t, exactly.
    let mut value: Option<BigInt> = None;
    for (i, c) in zeta_t.coefficients.iter().enumerate() {
        if c.is_zero() {
            if !image[i].is_zero() {
                return Err(Error::Internal(
                    "image cycle not proportional to the target cycle".into(),
                ));
            }
            continue;
        }
        let (q, r) = image[i].div_rem(c);
        if !r.is_zero() {
            return Err(Error::Internal(
                "image cycle not an integer multiple of the target cycle".into(),
            ));
        }
        match &value {
            None => value = Some(q),
            Some(prev) if *prev == q => {}
            Some(_) => {
                return Err(Error::Internal(
                    "image cycle not proportional to the target cycle".into(),
                ))
            }
        }
    }
    let value = value.ok_or_else(|| Error::Internal("target cycle is zero".into()))?;

    let anchor = |basis: &[Vec<u32>], cycle: &FundamentalCycle, k: &SimplicialComplex| {
        let i = cycle
            .coefficients
            .iter()
            .position(|c| !c.is_zero())
            .expect("fundamental cycle is non-zero");
        k.facet_labels(&basis[i])
    };
    Ok(Degree {
        value,
        source_anchor: anchor(src_basis, &zeta_s, source),
        target_anchor: anchor(tgt_basis, &zeta_t, target),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{simplex_boundary, SimplicialComplex};
    use crate::label::VertexLabel;
    use std::sync::Arc;

    fn s(i: u32) -> VertexLabel {
        VertexLabel::subset([i])
    }

    fn complex(facets: &[&[u32]]) -> SimplicialComplex {
        SimplicialComplex::from_facets(
            facets.iter().map(|f| f.iter().map(|&i| s(i)).collect()).collect(),
        )
        .unwrap()
    }

    fn betti_vec(k: &SimplicialComplex) -> Vec<usize> {
        reduced_homology(k).groups.iter().map(|g| g.betti).collect()
    }

    #[test]
    fn boundary_of_an_edge() {
        let k = complex(&[&[1, 2]]);
        let chain = boundary_matrices(&k);
        let d1 = &chain.dims[1].boundary;
        assert_eq!(d1.rows(), 2);
        assert_eq!(d1.cols(), 1);
        assert_eq!(d1.get(0, 0), BigInt::from(-1));
        assert_eq!(d1.get(1, 0), BigInt::from(1));
    }

    #[test]
    fn boundary_of_triangle_boundary_has_rank_two() {
        let k = complex(&[&[1, 2], &[1, 3], &[2, 3]]);
        let chain = boundary_matrices(&k);
        assert_eq!(chain.dims[1].boundary.rank_over_rationals(), 2);
    }

    #[test]
    fn boundaries_compose_to_zero() {
        for k in [
            complex(&[&[1, 2, 3, 4]]),
            simplex_boundary(5).unwrap(),
            complex(&[&[1, 2, 3], &[2, 3, 4], &[1, 4]]),
        ] {
            assert!(boundary_matrices(&k).boundaries_compose_to_zero());
        }
    }

    #[test]
    fn homology_of_spheres() {
        let s2 = simplex_boundary(4).unwrap();
        assert_eq!(betti_vec(&s2), vec![0, 0, 1]);
        assert!(reduced_homology(&s2).is_sphere(2));
        let s0 = complex(&[&[1], &[2]]);
        assert_eq!(betti_vec(&s0), vec![1]);
    }

    #[test]
    fn homology_of_projective_plane() {
        let rp2 = complex(&[
            &[1, 2, 3],
            &[1, 3, 4],
            &[1, 4, 5],
            &[1, 5, 6],
            &[1, 2, 6],
            &[2, 3, 5],
            &[3, 4, 6],
            &[2, 4, 5],
            &[3, 5, 6],
            &[2, 4, 6],
        ]);
        let profile = reduced_homology(&rp2);
        assert_eq!(profile.betti(0), 0);
        assert_eq!(profile.betti(1), 0);
        assert_eq!(profile.betti(2), 0);
        assert_eq!(profile.torsion(1), vec![BigInt::from(2)]);
        assert!(profile.torsion(2).is_empty());
        // Cross-check over the rationals and mod 2: the rational ranks kill
        // all homology above degree 0, while mod 2 the torsion class shows
        // up as one lost rank in the degree-2 boundary.
        let chain = boundary_matrices(&rp2);
        let d1 = &chain.dims[1].boundary;
        let d2 = &chain.dims[2].boundary;
        assert_eq!(d2.rank_over_rationals(), 10);
        assert_eq!(d2.rank_over_rationals() - d2.rank_mod2(), 1);
        assert_eq!(d1.rank_over_rationals(), d1.rank_mod2());
        let b1_mod2 = 15 - d1.rank_mod2() - d2.rank_mod2();
        assert_eq!(b1_mod2, 1);
    }

    #[test]
    fn homology_of_empty_and_point() {
        assert!(reduced_homology(&SimplicialComplex::empty()).groups.is_empty());
        let pt = complex(&[&[1]]);
        assert_eq!(betti_vec(&pt), vec![0]);
    }

    #[test]
    fn fundamental_cycle_of_triangle_boundary() {
        let k = complex(&[&[1, 2], &[1, 3], &[2, 3]]);
        let z = fundamental_cycle(&k).unwrap();
        let vals: Vec<i64> = z.coefficients.iter().map(|c| i64::try_from(c).unwrap()).collect();
        assert_eq!(vals, vec![1, -1, 1]);
        assert_eq!(z.content(), BigInt::one());
    }

    #[test]
    fn fundamental_cycle_of_pentagon() {
        let k = complex(&[&[1, 2], &[2, 3], &[3, 4], &[4, 5], &[1, 5]]);
        let z = fundamental_cycle(&k).unwrap();
        assert!(z.coefficients.iter().all(|c| c.abs().is_one()));
        assert_eq!(z.content(), BigInt::one());
    }

    #[test]
    fn fundamental_cycle_errors() {
        let two_edges = complex(&[&[1, 2], &[3, 4]]);
        assert!(matches!(
            fundamental_cycle(&two_edges),
            Err(Error::NotAHomologySphere(_))
        ));
        let three_points = complex(&[&[1], &[2], &[3]]);
        assert!(fundamental_cycle(&three_points).is_err());
        let disk = complex(&[&[1, 2, 3]]);
        assert!(fundamental_cycle(&disk).is_err());
    }

    #[test]
    fn induced_chain_map_identity() {
        let k = Arc::new(simplex_boundary(4).unwrap());
        let id = VertexMap::identity(&k);
        for dim in 0..=2usize {
            let m = induced_chain_map(&id, dim).unwrap();
            assert_eq!(m, IntegerMatrix::identity(k.simplices(dim).len()));
        }
    }

    #[test]
    fn chain_map_commutes_with_boundary() {
        // Reversal automorphism of the pentagon 1-2-3-4-5.
        let k = Arc::new(complex(&[&[1, 2], &[2, 3], &[3, 4], &[4, 5], &[1, 5]]));
        let f = VertexMap::from_label_fn(Arc::clone(&k), Arc::clone(&k), |l| match l {
            VertexLabel::Subset(e) => s(6 - e[0]),
            _ => unreachable!(),
        })
        .unwrap();
        let chain = boundary_matrices(&k);
        let f0 = induced_chain_map(&f, 0).unwrap();
        let f1 = induced_chain_map(&f, 1).unwrap();
        let lhs = chain.dims[1].boundary.mul(&f1).unwrap();
        let rhs = f0.mul(&chain.dims[1].boundary).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn degenerate_simplices_map_to_zero() {
        let edge = Arc::new(complex(&[&[1, 2]]));
        let point = Arc::new(complex(&[&[7]]));
        let f = VertexMap::new(Arc::clone(&edge), Arc::clone(&point), vec![0, 0]).unwrap();
        let m = induced_chain_map(&f, 1).unwrap();
        assert!(m.is_zero_matrix());
    }

    #[test]
    fn degree_of_identity_is_one() {
        let k = Arc::new(simplex_boundary(5).unwrap());
        let d = degree(&VertexMap::identity(&k)).unwrap();
        assert_eq!(d.value, BigInt::one());
    }

    #[test]
    fn degree_of_zero_sphere_swap_is_minus_one() {
        let k = Arc::new(complex(&[&[1], &[2]]));
        let swap = VertexMap::new(Arc::clone(&k), Arc::clone(&k), vec![1, 0]).unwrap();
        let d = degree(&swap).unwrap();
        assert_eq!(d.value, BigInt::from(-1));
        assert_eq!(d.abs(), BigInt::one());
    }

    #[test]
    fn degree_rejects_non_spheres() {
        let disk = Arc::new(complex(&[&[1, 2, 3]]));
        assert!(degree(&VertexMap::identity(&disk)).is_err());
    }

    #[test]
    fn profile_serializes_with_schema_field_names() {
        let k = simplex_boundary(4).unwrap();
        let json = serde_json::to_value(reduced_homology(&k)).unwrap();
        assert_eq!(json["groups"][2]["dim"], 2);
        assert_eq!(json["groups"][2]["betti"], 1);
        assert!(json["groups"][2]["torsion"].as_array().unwrap().is_empty());
    }
}
