use std::io::Write;
use std::process::{Command, Output};

use germlab::AnalysisReport;
use germlab_core::algebra::parse_polynomial;
use germlab_core::germ::{source_ring, BUNDLED_CATALOG};

fn catalog_file() -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(BUNDLED_CATALOG.as_bytes()).unwrap();
    f
}

fn germlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_germlab")).args(args).output().unwrap()
}

fn json_report(args: &[&str]) -> (AnalysisReport, i32) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = germlab(&full);
    let text = String::from_utf8(out.stdout).unwrap();
    let report: AnalysisReport = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}"));
    (report, out.status.code().unwrap())
}

#[test]
fn analyze_c5() {
    let cat = catalog_file();
    let (r, code) = json_report(&["analyze", cat.path().to_str().unwrap(), "C5"]);
    assert_eq!(code, 0);
    let dp = r.germ.double_point.as_ref().unwrap();
    let ring = source_ring();
    assert_eq!(
        parse_polynomial(&dp.lambda, &ring).unwrap(),
        parse_polynomial("x*y^2 - x^5", &ring).unwrap()
    );
    assert_eq!(dp.milnor_number, Some(6));
    let cl = dp.classification.as_ref().unwrap();
    assert_eq!((cl.identification_count, cl.fold_count), (2, 1));
    assert_eq!(cl.pairs, vec![["-1".to_string(), "1".to_string()]]);
    assert_eq!(dp.prediction.as_ref().unwrap().case, "c.2");
    assert_eq!(dp.prediction_match, Some(true));
    assert_eq!(dp.image.as_ref().unwrap().multiplicity, 2);
    let p = r.germ.presentation.as_ref().unwrap();
    assert_eq!((p.k, p.triple_points, p.cross_caps), (2, Some(0), Some(5)));
    assert!(p.image_equation_agrees);
}

#[test]
fn analyze_crosscap_is_stable() {
    let cat = catalog_file();
    let (r, code) = json_report(&["analyze", cat.path().to_str().unwrap(), "crosscap"]);
    assert_eq!(code, 0);
    let dp = r.germ.double_point.unwrap();
    assert_eq!((dp.lambda.as_str(), dp.form.as_str()), ("x", "III"));
    assert_eq!(dp.prediction.unwrap().case, "a");
    let p = r.germ.presentation.unwrap();
    assert_eq!((p.k, p.triple_points, p.cross_caps), (2, Some(0), Some(1)));
}

#[test]
fn human_output_is_a_table() {
    let cat = catalog_file();
    let out = germlab(&["analyze", cat.path().to_str().unwrap(), "C5"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("== double point curve =="));
    assert!(text.lines().any(|l| l.contains("μ(D(f))") && l.trim_end().ends_with("| 6")));
}

#[test]
fn unknown_names_and_bad_files_exit_1() {
    let cat = catalog_file();
    let out = germlab(&["analyze", cat.path().to_str().unwrap(), "no-such-germ"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cli::UnknownEntry"));

    let out = germlab(&["analyze", cat.path().to_str().unwrap(), "C5-y7"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cli::WrongKind"));

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    bad.write_all(b"germ \"g\" vars x y\n  map x | y^2 | x*y +\nend\n").unwrap();
    let out = germlab(&["analyze", bad.path().to_str().unwrap(), "g"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("catalog::ParseError") && err.contains("line 2"), "{err}");

    let out = germlab(&["analyze", "/nonexistent/catalog.germ", "C5"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn corank2_remark_block() {
    let cat = catalog_file();
    let (r, code) = json_report(&["unfolding", cat.path().to_str().unwrap(), "corank2-remark"]);
    assert_eq!(code, 2);
    let u = r.unfolding.unwrap();
    assert_eq!(u.length, Some(3));
    assert_eq!(u.hilbert_samuel.unwrap().e, 3);
    let cm = u.cm.unwrap();
    assert!(cm.cohen_macaulay && cm.length_route && cm.quotient_route);
    assert!(u.corank_caveat);
    assert_eq!(r.germ.image_multiplicity, Some(4));
    assert!(r.hypothesis_failures.iter().any(|h| h == "theorem B: corank 1"));
    assert!(r.errors.is_empty());
}

#[test]
fn theorem_b_pass_and_hypothesis_failure() {
    let cat = catalog_file();
    let path = cat.path().to_str().unwrap();
    let (r, code) = json_report(&["unfolding", path, "C5-y7", "--samples", "1,-1,1/2"]);
    assert_eq!(code, 0, "{:?}", r.hypothesis_failures);
    let u = r.unfolding.unwrap();
    assert_eq!(u.samples, vec!["1", "-1", "1/2"]);
    assert!(u.theorem_b.unwrap().confirmed);
    assert!(u.equimultiplicity.unwrap().equimultiple);
    assert!(u.mu.unwrap().constant);

    let (r, code) = json_report(&["unfolding", path, "C5-low"]);
    assert_eq!(code, 2);
    assert!(r.hypothesis_failures.iter().any(|h| h == "theorem B: non-decreasing weights"));
    assert!(!r.unfolding.unwrap().theorem_b.unwrap().confirmed);
}

#[test]
fn depth_and_samples_are_validated() {
    let cat = catalog_file();
    let path = cat.path().to_str().unwrap();
    let (r, _) = json_report(&["unfolding", path, "crosscap-nonCM", "--depth", "8"]);
    assert_eq!(r.unfolding.unwrap().hilbert_samuel.unwrap().lengths, vec![2, 3, 4, 5, 6, 7, 8, 9]);
    let out = germlab(&["unfolding", path, "C5-y7", "--samples", "1,abc"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cli::InvalidSample"));
    let out = germlab(&["unfolding", path, "C5-y7", "--samples", "0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn json_reports_round_trip() {
    let cat = catalog_file();
    let path = cat.path().to_str().unwrap();
    for args in [["analyze", path, "B-orbit"], ["unfolding", path, "S3-xy3"]] {
        let (r, _) = json_report(&args);
        let again: AnalysisReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(again, r);
    }
}

#[test]
fn catalog_list_and_verify() {
    let out = germlab(&["--format", "json", "catalog", "list"]);
    assert_eq!(out.status.code(), Some(0));
    let entries: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let entries = entries.as_array().unwrap();
    assert!(entries.iter().any(|e| e["name"] == "C5" && e["kind"] == "germ"));
    assert!(entries.iter().any(|e| e["name"] == "C5-y7" && e["base"] == "C5"));

    let out = germlab(&["catalog", "verify", "--seed", "7", "--germs", "10", "--unfoldings", "5"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(!text.contains("FAIL"));
    let again = germlab(&["catalog", "verify", "--seed", "7", "--germs", "10", "--unfoldings", "5"]);
    assert_eq!(String::from_utf8(again.stdout).unwrap(), text);
}

#[test]
fn verify_names_a_corrupted_entry() {
    let text = BUNDLED_CATALOG.replace("germ \"S3+\"", "germ \"S3-\"");
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    let out = germlab(&["catalog", "verify", "--file", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("catalog::ValidationError") && err.contains("S3-"), "{err}");
}
