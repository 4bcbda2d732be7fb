//! Implementations behind the CLI verbs.

use std::fs;
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde_json::json;

use ccrk_core::complex::SimplicialComplex;
use ccrk_core::facet_file::{read_facets, write_facets_to_string};
use ccrk_core::homology::{reduced_homology, HomologyProfile};
use ccrk_core::surfaces::{
    genus_rigid_set, polygon_model, rho_map, sphere_rigid_set, subset_sphere, verify_rho,
};
use ccrk_core::tubings::associahedron_dual;
use ccrk_core::VertexLabel;

use crate::error::CliError;

/// The complex families the CLI can construct.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Dual of the associahedron boundary; parameter m >= 3.
    AssocDual,
    /// Interval model for the sphere with n marked points; n >= 4.
    SphereRigid,
    /// Interval model for genus g; g >= 1.
    GenusRigid,
    /// Chord model of the doubled n-gon; n >= 5.
    Polygon,
    /// Subset sphere over 1..=N; N >= 2.
    SubsetSphere,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::AssocDual => "assoc-dual",
            Family::SphereRigid => "sphere-rigid",
            Family::GenusRigid => "genus-rigid",
            Family::Polygon => "polygon",
            Family::SubsetSphere => "subset-sphere",
        }
    }

    pub fn build(self, param: u32) -> Result<SimplicialComplex, CliError> {
        let complex = match self {
            Family::AssocDual => associahedron_dual(param),
            Family::SphereRigid => sphere_rigid_set(param),
            Family::GenusRigid => genus_rigid_set(param),
            Family::Polygon => polygon_model(param),
            Family::SubsetSphere => subset_sphere(param),
        };
        complex.map_err(CliError::from)
    }
}

impl FromStr for Family {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Ok(match s {
            "assoc-dual" => Family::AssocDual,
            "sphere-rigid" => Family::SphereRigid,
            "genus-rigid" => Family::GenusRigid,
            "polygon" => Family::Polygon,
            "subset-sphere" => Family::SubsetSphere,
            other => {
                return Err(CliError::Config(format!(
                    "unknown family `{other}` (expected assoc-dual, sphere-rigid, genus-rigid, \
                     polygon or subset-sphere)"
                )))
            }
        })
    }
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct BuildSummary {
    pub family: String,
    pub param: u32,
    pub vertices: usize,
    pub facets: usize,
    pub dim: isize,
    pub path: PathBuf,
}

/// Construct a family member and write its facet file.
pub fn cmd_build(family: Family, param: u32, out: &Path) -> Result<BuildSummary, CliError> {
    let complex = family.build(param)?;
    let text = write_facets_to_string(&complex);
    fs::write(out, text).map_err(|e| CliError::Io(format!("{}: {e}", out.display())))?;
    Ok(BuildSummary {
        family: family.name().to_string(),
        param,
        vertices: complex.vertex_count(),
        facets: complex.facet_count(),
        dim: complex.dim(),
        path: out.to_path_buf(),
    })
}

/// Read a facet file and compute its reduced homology profile.
pub fn cmd_homology(path: &Path) -> Result<HomologyProfile, CliError> {
    let file =
        fs::File::open(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let complex = read_facets(BufReader::new(file))?;
    Ok(reduced_homology(&complex))
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct DegreeSummary {
    pub n: u32,
    pub universe: u32,
    pub simplicial: bool,
    pub surjective: bool,
    pub abs_degree: u64,
    pub top_preimage_count: usize,
}

/// Verify the subset-sphere collapse map for the sphere with n marked points.
pub fn cmd_degree(n: u32) -> Result<DegreeSummary, CliError> {
    if n < 4 {
        return Err(CliError::Config(format!("degree check needs n >= 4, got {n}")));
    }
    let universe = n - 2;
    let report = verify_rho(universe)?;
    let f = rho_map(universe)?;
    let top = VertexLabel::interval(1, universe - 1);
    let summary = DegreeSummary {
        n,
        universe,
        simplicial: report.simplicial,
        surjective: report.surjective,
        abs_degree: report.abs_degree,
        top_preimage_count: f.preimage_labels(&top).len(),
    };
    if !(summary.simplicial
        && summary.surjective
        && summary.abs_degree == 1
        && summary.top_preimage_count == 1)
    {
        return Err(CliError::CheckFailed(format!(
            "collapse map verification failed: {}",
            json!(summary)
        )));
    }
    Ok(summary)
}

/// Write facet files for a whole parameter range of one family.
pub fn cmd_export(
    family: Family,
    range: (u32, u32),
    out_dir: &Path,
) -> Result<Vec<BuildSummary>, CliError> {
    if range.0 > range.1 {
        return Err(CliError::Config(format!("empty range {}..{}", range.0, range.1)));
    }
    fs::create_dir_all(out_dir)
        .map_err(|e| CliError::Io(format!("{}: {e}", out_dir.display())))?;
    let mut out = Vec::new();
    for param in range.0..=range.1 {
        let path = out_dir.join(format!("{}-{param:02}.facets", family.name()));
        out.push(cmd_build(family, param, &path)?);
    }
    Ok(out)
}

/// Parse an inclusive `lo..hi` range (or a single value).
pub fn parse_range(s: &str) -> Result<(u32, u32), CliError> {
    let parse_u32 = |t: &str| {
        t.parse::<u32>()
            .map_err(|_| CliError::Config(format!("expected an integer, got `{t}`")))
    };
    if let Some((lo, hi)) = s.split_once("..") {
        let lo = parse_u32(lo)?;
        let hi = parse_u32(hi)?;
        if lo > hi {
            return Err(CliError::Config(format!("range `{s}` is empty")));
        }
        Ok((lo, hi))
    } else {
        let v = parse_u32(s)?;
        Ok((v, v))
    }
}
