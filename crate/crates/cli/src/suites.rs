//! The verification suites and their runner.

use std::collections::BTreeMap;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use serde_json::{json, Value};

use ccrk_core::homology::reduced_homology;
use ccrk_core::surfaces::{
    counterexample_g, counterexample_g2n1, genus_rigid_set, rho_map, sphere_rigid_set,
    sporadic_check, tau, theorem1_check, verify_rho, Evidence, Theorem1Convention,
};
use ccrk_core::tubings::associahedron_dual;
use ccrk_core::{VertexLabel, VertexMap};

use crate::error::CliError;
use crate::report::{CheckResult, ConfigEcho, Report, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    AssocHomology,
    LemmaIso,
    RhoDegree,
    Theorem1,
    Counterexample,
    Sporadic,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::AssocHomology => "assoc-homology",
            Suite::LemmaIso => "lemma-iso",
            Suite::RhoDegree => "rho-degree",
            Suite::Theorem1 => "theorem1",
            Suite::Counterexample => "counterexample",
            Suite::Sporadic => "sporadic",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Ok(match s {
            "assoc-homology" => Suite::AssocHomology,
            "lemma-iso" => Suite::LemmaIso,
            "rho-degree" => Suite::RhoDegree,
            "theorem1" => Suite::Theorem1,
            "counterexample" => Suite::Counterexample,
            "sporadic" => Suite::Sporadic,
            "all" => Suite::All,
            other => {
                return Err(CliError::Config(format!(
                    "unknown suite `{other}` (expected assoc-homology, lemma-iso, rho-degree, \
                     theorem1, counterexample, sporadic or all)"
                )))
            }
        })
    }
}

/// Hard parameter caps; larger runs need the explicit acknowledgement flag.
pub const MAX_N: u32 = 10;
pub const MAX_G: u32 = 4;

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub suite: Suite,
    /// Marked-point counts, inclusive.
    pub n_range: (u32, u32),
    /// Genus values, inclusive.
    pub g_range: (u32, u32),
    pub jobs: usize,
    pub allow_large: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            suite: Suite::All,
            n_range: (4, 9),
            g_range: (1, 4),
            jobs: default_jobs(),
            allow_large: false,
        }
    }
}

pub fn default_jobs() -> usize {
    if let Ok(v) = std::env::var("CCRK_JOBS") {
        if let Ok(n) = v.parse::<usize>() {
            if n >= 1 {
                return n;
            }
        }
    }
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        let (n_lo, n_hi) = self.n_range;
        let (g_lo, g_hi) = self.g_range;
        if n_lo < 4 || n_lo > n_hi {
            return Err(CliError::Config(format!(
                "marked-point range {n_lo}..{n_hi} must satisfy 4 <= lo <= hi"
            )));
        }
        if g_lo < 1 || g_lo > g_hi {
            return Err(CliError::Config(format!(
                "genus range {g_lo}..{g_hi} must satisfy 1 <= lo <= hi"
            )));
        }
        if !self.allow_large && (n_hi > MAX_N || g_hi > MAX_G) {
            return Err(CliError::Config(format!(
                "ranges beyond n <= {MAX_N}, g <= {MAX_G} take serious time; pass --allow-large \
                 to acknowledge"
            )));
        }
        if self.jobs == 0 {
            return Err(CliError::Config("--jobs must be at least 1".into()));
        }
        Ok(())
    }

    pub fn echo(&self) -> ConfigEcho {
        ConfigEcho {
            suite: self.suite.name().to_string(),
            n: [self.n_range.0, self.n_range.1],
            g: [self.g_range.0, self.g_range.1],
            jobs: self.jobs,
        }
    }
}

struct Check {
    id: String,
    params: BTreeMap<String, i64>,
    run: CheckFn,
}

enum CheckFn {
    Run(Box<dyn Fn() -> Result<Value, String> + Send + Sync>),
    Skip(String),
}

fn check(
    id: String,
    params: &[(&str, i64)],
    run: impl Fn() -> Result<Value, String> + Send + Sync + 'static,
) -> Check {
    Check {
        id,
        params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        run: CheckFn::Run(Box::new(run)),
    }
}

fn skip(id: String, params: &[(&str, i64)], why: &str) -> Check {
    Check {
        id,
        params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        run: CheckFn::Skip(why.to_string()),
    }
}

/// Run the configured suites on a bounded worker pool and assemble the
/// deterministic report.
pub fn run_suites(config: &SuiteConfig) -> Result<Report, CliError> {
    config.validate()?;
    let checks = build_checks(config);
    let started = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| CliError::Config(format!("worker pool: {e}")))?;
    let results: Vec<CheckResult> = pool.install(|| {
        use rayon::prelude::*;
        checks
            .par_iter()
            .map(|c| {
                let t = Instant::now();
                let (status, witness, message) = match &c.run {
                    CheckFn::Skip(why) => (Status::Skipped, Value::Null, Some(why.clone())),
                    CheckFn::Run(f) => match f() {
                        Ok(witness) => (Status::Pass, witness, None),
                        Err(msg) => (Status::Fail, Value::Null, Some(msg)),
                    },
                };
                CheckResult {
                    id: c.id.clone(),
                    params: c.params.clone(),
                    status,
                    witness,
                    message,
                    duration: t.elapsed(),
                }
            })
            .collect()
    });
    Ok(Report::assemble("verify", config.echo(), results, started.elapsed()))
}

fn build_checks(config: &SuiteConfig) -> Vec<Check> {
    let mut checks = Vec::new();
    let suites: Vec<Suite> = match config.suite {
        Suite::All => vec![
            Suite::AssocHomology,
            Suite::LemmaIso,
            Suite::RhoDegree,
            Suite::Theorem1,
            Suite::Counterexample,
            Suite::Sporadic,
        ],
        s => vec![s],
    };
    let ns: Vec<u32> = (config.n_range.0..=config.n_range.1).collect();
    let gs: Vec<u32> = (config.g_range.0..=config.g_range.1).collect();

    for suite in suites {
        match suite {
            Suite::AssocHomology => {
                let mut ms: Vec<u32> = ns
                    .iter()
                    .map(|n| n - 1)
                    .chain(gs.iter().map(|g| 2 * g + 1))
                    .filter(|&m| m >= 3)
                    .collect();
                ms.sort_unstable();
                ms.dedup();
                for m in ms {
                    checks.push(check(
                        format!("assoc-homology/m={m:02}"),
                        &[("m", m as i64)],
                        move || check_assoc_homology(m),
                    ));
                }
            }
            Suite::LemmaIso => {
                for &n in &ns {
                    checks.push(check(
                        format!("lemma-iso/n={n:02}"),
                        &[("n", n as i64)],
                        move || check_interval_iso_sphere(n),
                    ));
                }
                for &g in &gs {
                    checks.push(check(
                        format!("lemma-iso/g={g}"),
                        &[("g", g as i64)],
                        move || check_interval_iso_genus(g),
                    ));
                }
            }
            Suite::RhoDegree => {
                for &n in &ns {
                    checks.push(check(
                        format!("rho-degree/n={n:02}"),
                        &[("n", n as i64), ("universe", n as i64 - 2)],
                        move || check_rho(n - 2),
                    ));
                }
            }
            Suite::Theorem1 => {
                for &n in &ns {
                    let id = format!("theorem1/n={n:02}");
                    if n < 5 {
                        checks.push(skip(
                            id,
                            &[("n", n as i64)],
                            "the chord model needs at least 5 sides",
                        ));
                    } else {
                        checks.push(check(id, &[("n", n as i64)], move || check_theorem1(n)));
                    }
                }
            }
            Suite::Counterexample => {
                for &g in &gs {
                    match g {
                        1 => checks.push(skip(
                            "counterexample/g=1".to_string(),
                            &[("g", 1)],
                            "genus one is covered by the sporadic zero-sphere cases",
                        )),
                        2 => checks.push(check(
                            "counterexample/g=2-n=1".to_string(),
                            &[("g", 2), ("n", 1)],
                            check_counterexample_g2,
                        )),
                        g => checks.push(check(
                            format!("counterexample/g={g}"),
                            &[("g", g as i64)],
                            move || check_counterexample(g),
                        )),
                    }
                }
            }
            Suite::Sporadic => {
                checks.push(check("sporadic/low-complexity".to_string(), &[], check_sporadic));
            }
            Suite::All => unreachable!("expanded above"),
        }
    }
    checks.sort_by(|a, b| a.id.cmp(&b.id));
    checks
}

// ---------------------------------------------------------------------------
// Check bodies. Each returns a deterministic witness payload on success and a
// human-readable discrepancy on failure.
// ---------------------------------------------------------------------------

/// Catalan numbers by the recursive convolution; the facet-census oracle.
pub fn catalan(k: u32) -> BigInt {
    let k = k as usize;
    let mut c: Vec<BigInt> = vec![BigInt::from(0); k + 1];
    c[0] = BigInt::from(1);
    for n in 1..=k {
        let mut total = BigInt::from(0);
        for i in 0..n {
            total += &c[i] * &c[n - 1 - i];
        }
        c[n] = total;
    }
    c[k].clone()
}

fn check_assoc_homology(m: u32) -> Result<Value, String> {
    let d = associahedron_dual(m).map_err(|e| e.to_string())?;
    let sphere_dim = (m - 3) as usize;
    let profile = reduced_homology(&d);
    if !profile.is_sphere(sphere_dim) {
        return Err(format!(
            "homology of the m={m} dual is not concentrated as Z in dimension {sphere_dim}: {profile:?}"
        ));
    }
    let chi = d.euler_characteristic();
    let chi_expected = if sphere_dim % 2 == 0 { 2 } else { 0 };
    if chi != chi_expected {
        return Err(format!("Euler characteristic {chi}, expected {chi_expected}"));
    }
    if profile.reduced_euler_sum() != chi - 1 {
        return Err("reduced Betti alternating sum disagrees with the Euler characteristic".into());
    }
    let expected_facets = catalan(m - 1);
    if BigInt::from(d.facet_count()) != expected_facets {
        return Err(format!(
            "facet census {} differs from the Catalan count {expected_facets}",
            d.facet_count()
        ));
    }
    let facet_size = (m - 2) as usize;
    if !d.facets().iter().all(|f| f.len() == facet_size) {
        return Err(format!("some facet does not have exactly {facet_size} tubes"));
    }
    Ok(json!({
        "m": m,
        "sphere_dim": sphere_dim,
        "vertices": d.vertex_count(),
        "facets": d.facet_count(),
        "facet_size": facet_size,
        "catalan": expected_facets.to_string(),
        "chi": chi,
        "homology": profile,
    }))
}

/// The label map matching an interval vertex with the tube it names.
fn interval_to_tube(label: &VertexLabel) -> VertexLabel {
    match label {
        VertexLabel::Interval { lo, hi, .. } => VertexLabel::subset(*lo..=*hi),
        other => other.clone(),
    }
}

fn check_interval_iso_sphere(n: u32) -> Result<Value, String> {
    let x = Arc::new(sphere_rigid_set(n).map_err(|e| e.to_string())?);
    let d = Arc::new(associahedron_dual(n - 1).map_err(|e| e.to_string())?);
    let f = VertexMap::from_label_fn(Arc::clone(&x), Arc::clone(&d), interval_to_tube)
        .map_err(|e| e.to_string())?;
    if !f.is_isomorphism() {
        return Err(format!(
            "identity-on-intervals is not an isomorphism onto the m={} dual",
            n - 1
        ));
    }
    Ok(json!({
        "n": n,
        "assoc_m": n - 1,
        "vertices": x.vertex_count(),
        "facets": x.facet_count(),
        "both_directions_simplicial": true,
    }))
}

fn check_interval_iso_genus(g: u32) -> Result<Value, String> {
    let x = Arc::new(genus_rigid_set(g).map_err(|e| e.to_string())?);
    let d = Arc::new(associahedron_dual(2 * g + 1).map_err(|e| e.to_string())?);
    let f = VertexMap::from_label_fn(Arc::clone(&x), Arc::clone(&d), interval_to_tube)
        .map_err(|e| e.to_string())?;
    if !f.is_isomorphism() {
        return Err(format!(
            "identity-on-intervals is not an isomorphism onto the m={} dual",
            2 * g + 1
        ));
    }
    let t = tau(g, 0).map_err(|e| e.to_string())?;
    if x.dim() != t as isize {
        return Err(format!("model dimension {} differs from tau {}", x.dim(), t));
    }
    Ok(json!({
        "g": g,
        "assoc_m": 2 * g + 1,
        "vertices": x.vertex_count(),
        "tau": t,
    }))
}

fn check_rho(universe: u32) -> Result<Value, String> {
    let report = verify_rho(universe).map_err(|e| e.to_string())?;
    if !(report.simplicial && report.surjective && report.abs_degree == 1) {
        return Err(format!("collapse map over 1..={universe} reported {report:?}"));
    }
    let f = rho_map(universe).map_err(|e| e.to_string())?;
    let top = VertexLabel::interval(1, universe - 1);
    let preimage = f.preimage_labels(&top);
    if preimage.len() != 1 {
        return Err(format!(
            "preimage of {} has {} elements, expected exactly one",
            top.render(),
            preimage.len()
        ));
    }
    Ok(json!({
        "universe": universe,
        "simplicial": report.simplicial,
        "surjective": report.surjective,
        "abs_degree": report.abs_degree,
        "top_interval": top.render(),
        "top_preimage": preimage[0].render(),
    }))
}

fn check_theorem1(n: u32) -> Result<Value, String> {
    let outcome = theorem1_check(n).map_err(|e| e.to_string())?;
    let expected = (n * (n - 1) / 2 - n) as usize;
    let intervals = outcome.iso.source().vertex_count();
    let chords = outcome.iso.target().vertex_count();
    if intervals != expected || chords != expected {
        return Err(format!(
            "vertex counts {intervals}/{chords} differ from the chord count {expected}"
        ));
    }
    let convention = match outcome.convention {
        Theorem1Convention::OffsetPairing => "offset-pairing",
        Theorem1Convention::SearchFallback => "search-fallback",
    };
    Ok(json!({
        "n": n,
        "vertices": expected,
        "convention": convention,
    }))
}

fn check_counterexample(g: u32) -> Result<Value, String> {
    let w = counterexample_g(g).map_err(|e| e.to_string())?;
    let Evidence::IntersectionPattern { source_pair, image_pair } = &w.evidence else {
        return Err("expected intersection-pattern evidence".into());
    };
    Ok(json!({
        "g": g,
        "moved": w.moved_vertex.render(),
        "replacement": w.replacement.render(),
        "witness_pair": [source_pair.0.label().render(), source_pair.1.label().render()],
        "image_pair": [image_pair.0.label().render(), image_pair.1.label().render()],
        "injective_simplicial": true,
    }))
}

fn check_counterexample_g2() -> Result<Value, String> {
    let w = counterexample_g2n1().map_err(|e| e.to_string())?;
    let Evidence::SymmetryElimination { rows } = &w.evidence else {
        return Err("expected symmetry-elimination evidence".into());
    };
    let eliminations: Vec<Value> = rows
        .iter()
        .map(|r| {
            json!({
                "reverse": r.symmetry.reverse,
                "side_flip": r.symmetry.side_flip,
                "image_of_first_anchor": r.image_of_first.render(),
                "image_of_second_anchor": r.image_of_second.render(),
                "fixes_both": r.fixes_both,
            })
        })
        .collect();
    Ok(json!({
        "g": 2,
        "n": 1,
        "moved": w.moved_vertex.render(),
        "replacement": w.replacement.render(),
        "eliminations": eliminations,
        "only_identity_fixes_both": true,
    }))
}

fn check_sporadic() -> Result<Value, String> {
    let report = sporadic_check().map_err(|e| e.to_string())?;
    serde_json::to_value(&report).map_err(|e| e.to_string())
}
