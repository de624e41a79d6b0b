//! End-to-end tests of the binary: exit codes on all three paths, report
//! round trips, and the dump → verify loop.

use std::io::Write;
use std::process::Command;

use hyperlie::catalog::CaseId;
use hyperlie::coordgeom::MetricKind;
use hyperlie_cli::pipeline::{
    catalog_dump, run_curvature, run_verify, Options, PointsSpec, VerifyTarget,
};
use hyperlie_cli::report::{CurvatureRunReport, VerificationReport};

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hyperlie"))
}

/// The case-1 fixture with ω₂ perturbed by e^{12}: with the identity
/// metric this is J2 + E where E maps e1 ↦ -e2, e2 ↦ e1. Quaternion and
/// Hermitian checks fail softly; the Lee system becomes inconsistent.
fn perturbed_case1_json() -> String {
    let mut doc = catalog_dump(CaseId::Case1);
    doc.structure.j2[0][1] = "1".to_string();
    doc.structure.j2[1][0] = "-1".to_string();
    doc.to_json_pretty()
}

#[test]
fn exit_zero_on_passing_catalog_cases() {
    let status = binary().args(["verify", "abelian"]).status().unwrap();
    assert_eq!(status.code(), Some(0));
    let status = binary()
        .args(["verify", "case2", "--format", "json"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
}

#[test]
fn exit_one_on_a_failed_mathematical_check() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(perturbed_case1_json().as_bytes()).unwrap();
    let output = binary()
        .args(["verify", file.path().to_str().unwrap(), "--format", "json"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
    let report: VerificationReport =
        serde_json::from_slice(&output.stdout).expect("valid report JSON");
    assert_eq!(report.classification.as_deref(), Some("NOT_LCK"));
    assert!(!report.quaternion.as_ref().unwrap().passed);
    assert!(!report.hermitian.as_ref().unwrap().passed);
    assert!(!report.lee_form.as_ref().unwrap().consistent);
}

#[test]
fn exit_two_on_input_errors() {
    let status = binary()
        .args(["verify", "/no/such/input.json"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
    // unknown metric selector
    let status = binary()
        .args(["curvature", "--case", "case3", "--metric", "bogus"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
    // the abelian case has no coordinate model
    let status = binary()
        .args(["curvature", "--case", "abelian"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
    // clap usage error
    let status = binary().args(["frobnicate"]).status().unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn verification_report_json_round_trips() {
    let report = run_verify(&VerifyTarget::Catalog(CaseId::Case3), &Options::default()).unwrap();
    let json = serde_json::to_string_pretty(&report).unwrap();
    let parsed: VerificationReport = serde_json::from_str(&json).unwrap();
    let json_again = serde_json::to_string_pretty(&parsed).unwrap();
    assert_eq!(json, json_again, "serialize→parse→serialize is a fixed point");
    assert_eq!(parsed, report);
}

#[test]
fn curvature_report_json_round_trips() {
    let report = run_curvature(
        CaseId::Case3,
        MetricKind::HyperHermitian,
        &PointsSpec::Seeded(2),
        &Options::default(),
    )
    .unwrap();
    let json = serde_json::to_string_pretty(&report).unwrap();
    let parsed: CurvatureRunReport = serde_json::from_str(&json).unwrap();
    assert_eq!(serde_json::to_string_pretty(&parsed).unwrap(), json);
}

#[test]
fn dumped_fixture_verifies_cleanly() {
    let dump = binary()
        .args(["catalog", "dump", "--case", "case4"])
        .output()
        .unwrap();
    assert_eq!(dump.status.code(), Some(0));
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(&dump.stdout).unwrap();
    let output = binary()
        .args(["verify", file.path().to_str().unwrap(), "--format", "json"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
    let report: VerificationReport = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(
        report.classification.as_deref(),
        Some("CONFORMALLY_HYPERKAHLER")
    );
    assert_eq!(report.lee_form.as_ref().unwrap().theta, "-3/2 e1");
    // file input carries no coordinate model
    assert!(report.coordinate.is_none());
}

#[test]
fn curvature_text_output_contains_the_summary() {
    let output = binary()
        .args([
            "curvature",
            "--case",
            "case3",
            "--metric",
            "hyperhermitian",
            "--points",
            "0.4,-0.8,1.2,0.5",
        ])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
    let text = String::from_utf8(output.stdout).unwrap();
    assert!(text.contains("summary:"), "{text}");
    assert!(text.contains("sectional"), "{text}");
}

#[test]
fn case4_curvature_json_flags_the_closed_form_ratio() {
    let output = binary()
        .args([
            "curvature",
            "--case",
            "case4",
            "--metric",
            "hyperkahler-rescaled",
            "--count",
            "3",
            "--format",
            "json",
        ])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0), "flag must not fail the run");
    let report: CurvatureRunReport = serde_json::from_slice(&output.stdout).unwrap();
    let ratio = report.closed_form_ratio.expect("ratio recorded");
    assert!(ratio.flagged && !ratio.constant);
}
