//! End-to-end tests of the `ccrk` binary: exit codes, file formats, and the
//! command surfaces.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn ccrk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ccrk"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn facet_lines(path: &Path) -> usize {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .count()
}

#[test]
fn build_writes_expected_facet_counts() {
    let dir = tempfile::tempdir().unwrap();

    let d5 = dir.path().join("d5.facets");
    let out = ccrk(&["build", "assoc-dual", "5", "--out", d5.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(facet_lines(&d5), 14);

    let pentagon = dir.path().join("x5.facets");
    let out = ccrk(&["build", "sphere-rigid", "5", "--out", pentagon.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(facet_lines(&pentagon), 5);

    let chains = dir.path().join("y4.facets");
    let out = ccrk(&["build", "subset-sphere", "4", "--out", chains.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(facet_lines(&chains), 24);
}

#[test]
fn build_rejects_bad_family_and_param() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("x.facets");
    let out = ccrk(&["build", "nonsense", "5", "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let out = ccrk(&["build", "assoc-dual", "2", "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn build_reports_io_failure() {
    let out = ccrk(&["build", "assoc-dual", "5", "--out", "/nonexistent-dir/x.facets"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn homology_of_built_file() {
    let dir = tempfile::tempdir().unwrap();
    let d5 = dir.path().join("d5.facets");
    assert!(ccrk(&["build", "assoc-dual", "5", "--out", d5.to_str().unwrap()]).status.success());
    let out = ccrk(&["homology", d5.to_str().unwrap()]);
    assert!(out.status.success());
    let profile: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let groups = profile["groups"].as_array().unwrap();
    assert_eq!(groups[2]["dim"], 2);
    assert_eq!(groups[2]["betti"], 1);
    assert_eq!(groups[0]["betti"], 0);
    assert_eq!(groups[1]["betti"], 0);
}

#[test]
fn homology_of_two_point_fixture() {
    let out = ccrk(&["homology", fixture("two_points.facets").to_str().unwrap(), "--format", "text"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("dim 0: betti 1"), "{text}");
}

#[test]
fn homology_of_projective_plane_fixture() {
    let out = ccrk(&["homology", fixture("rp2.facets").to_str().unwrap()]);
    assert!(out.status.success());
    let profile: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let groups = profile["groups"].as_array().unwrap();
    assert_eq!(groups[1]["dim"], 1);
    assert_eq!(groups[1]["betti"], 0);
    assert_eq!(groups[1]["torsion"], serde_json::json!(["2"]));
}

#[test]
fn homology_parse_error_carries_the_line_number() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.facets");
    std::fs::write(&bad, "S{1} S{2}\nS{3} oops\n").unwrap();
    let out = ccrk(&["homology", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn homology_missing_file_is_io_error() {
    let out = ccrk(&["homology", "/no/such/file.facets"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn degree_verb_reports_the_collapse_map() {
    let out = ccrk(&["degree", "--n", "5"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["abs_degree"], 1);
    assert_eq!(v["simplicial"], true);
    assert_eq!(v["surjective"], true);
    assert_eq!(v["top_preimage_count"], 1);

    let out = ccrk(&["degree", "--n", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_config_errors_exit_2() {
    let out = ccrk(&["verify", "--suite", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    let out = ccrk(&["verify", "--suite", "sporadic", "--n", "4..99"]);
    assert_eq!(out.status.code(), Some(2));
    let out = ccrk(&["verify", "--suite", "sporadic", "--n", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_unwritable_output_exits_3() {
    let out = ccrk(&[
        "verify",
        "--suite",
        "sporadic",
        "--out",
        "/nonexistent-dir/report.json",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_small_suite_passes_and_reports() {
    let dir = tempfile::tempdir().unwrap();
    let report_path = dir.path().join("report.json");
    let out = ccrk(&[
        "verify",
        "--suite",
        "counterexample",
        "--g",
        "2..3",
        "--out",
        report_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    assert_eq!(report["schema"], 1);
    assert_eq!(report["payload"]["summary"]["fail"], 0);
    let checks = report["payload"]["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 2);
    assert_eq!(checks[0]["id"], "counterexample/g=2-n=1");
    assert_eq!(checks[1]["witness"]["witness_pair"][0], "I[1..3]");
}

#[test]
fn export_writes_a_range() {
    let dir = tempfile::tempdir().unwrap();
    let out = ccrk(&[
        "export",
        "assoc-dual",
        "--range",
        "3..5",
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success());
    for (m, facets) in [(3u32, 2usize), (4, 5), (5, 14)] {
        let path = dir.path().join(format!("assoc-dual-{m:02}.facets"));
        assert_eq!(facet_lines(&path), facets, "m={m}");
    }
}

#[test]
fn usage_error_exits_2() {
    let out = ccrk(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn rho_degree_suite_passes_through_the_binary() {
    let out = ccrk(&["verify", "--suite", "rho-degree", "--n", "4..8"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["payload"]["summary"]["fail"], 0);
    for check in report["payload"]["checks"].as_array().unwrap() {
        assert_eq!(check["witness"]["abs_degree"], 1, "{}", check["id"]);
    }
}

#[test]
fn jobs_default_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_ccrk"))
        .args(["verify", "--suite", "sporadic"])
        .env("CCRK_JOBS", "3")
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["config"]["jobs"], 3);
}
