use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use superquad_core::catalog::{self, Params};
use superquad_core::format;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superquad"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn validate_catalog_entry() {
    let o = run(&["validate", "g_4_2_s"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "quadratic Lie superalgebra: OK");
}

#[test]
fn betti_table_ends_with_b2() {
    let o = run(&["betti", "g_4_2_s", "--max-degree", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().last(), Some("b_2 = 0"));
}

#[test]
fn broken_jacobi_names_axiom_and_witness() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("broken.json");
    fs::write(
        &file,
        r#"{"name":"broken","basis":[{"label":"A","parity":0},{"label":"B","parity":0},{"label":"C","parity":0}],
           "brackets":[{"left":"A","right":"B","terms":[{"coeff":"1","basis":"B"}]},
                       {"left":"A","right":"C","terms":[{"coeff":"1","basis":"C"}]},
                       {"left":"B","right":"C","terms":[{"coeff":"1","basis":"A"}]}]}"#,
    )
    .unwrap();
    let o = run(&["validate", path(&file)]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("super Jacobi identity fails at (A, B, C)"), "{out}");
}

#[test]
fn mutated_fixture_fails_validation() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("g.json");
    let q = catalog::build_quadratic("g_6_s", &Params::new()).unwrap();
    let mut doc: serde_json::Value = serde_json::from_str(&format::export_quadratic(&q).unwrap()).unwrap();
    doc["brackets"][0]["terms"][0]["coeff"] = serde_json::json!("5");
    fs::write(&file, doc.to_string()).unwrap();
    let o = run(&["validate", path(&file)]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.starts_with("quadratic Lie superalgebra: FAILED"), "{out}");
    assert!(out.contains(" fails at ("), "{out}");

    let json = run(&["validate", path(&file), "--format", "json"]);
    assert_eq!(json.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(v["ok"], false);
    assert!(!v["violations"][0]["witness"].as_array().unwrap().is_empty());
}

#[test]
fn export_import_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for key in ["g_6_s", "heisenberg", "g_8_2_8_s"] {
        assert_eq!(run(&["export", key, "-o", path(&a)]).status.code(), Some(0));
        assert_eq!(run(&["export", path(&a), "-o", path(&b)]).status.code(), Some(0));
        assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap(), "{key}");
        let built = catalog::build(key, &Params::new()).unwrap();
        let back = format::import_algebra(&fs::read_to_string(&b).unwrap()).unwrap();
        assert_eq!(back.algebra(), built.algebra());
    }
}

#[test]
fn reports_are_deterministic() {
    for args in [
        &["betti", "g_6_s", "--max-degree", "2", "--format", "json"][..],
        &["betti", "g_4_1_s", "--representatives"][..],
        &["list", "--format", "json"][..],
        &["poisson", "g_4_1_s", "I", "X0*∧X1*"][..],
    ] {
        let first = run(args);
        assert_eq!(first.status.code(), Some(0), "{args:?}");
        assert_eq!(first.stdout, run(args).stdout, "{args:?}");
    }
}

#[test]
fn betti_json_report_schema() {
    let o = run(&["betti", "g_4_1_s", "--max-degree", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    let d2 = &v["degrees"][2];
    assert_eq!(d2["degree"], 2);
    assert_eq!(d2["dim_cocycles"], 4);
    assert_eq!(d2["dim_coboundaries"], 2);
    assert_eq!(d2["betti"], 2);
    assert_eq!(d2["representatives"].as_array().unwrap().len(), 2);
}

#[test]
fn cohomology_single_degree() {
    let o = run(&["cohomology", "g_6_s", "--degree", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("b_2 = 6"));
}

#[test]
fn poisson_of_three_form_with_itself_vanishes() {
    let o = run(&["poisson", "g_6_s", "I", "I"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).trim().ends_with("= 0"), "{}", stdout(&o));
}

#[test]
fn double_extend_reproduces_catalog_entry() {
    let dir = tempfile::tempdir().unwrap();
    let base = dir.path().join("base.json");
    let der = dir.path().join("d.json");
    let out = dir.path().join("out.json");
    let params = Params::new();
    fs::write(&base, format::export_quadratic(&catalog::extension_base().unwrap()).unwrap()).unwrap();
    let d = catalog::extension_matrix("g_8_2_3_s", &params).unwrap();
    let rows: Vec<Vec<String>> = d
        .to_rows()
        .iter()
        .map(|r| r.iter().map(superquad_core::scalar::format).collect())
        .collect();
    fs::write(&der, serde_json::json!({ "degree": 0, "matrix": rows }).to_string()).unwrap();
    let o = run(&[
        "double-extend",
        path(&base),
        "--derivation",
        path(&der),
        "--labels",
        "X3,Z3",
        "-o",
        path(&out),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let got = format::import_algebra(&fs::read_to_string(&out).unwrap()).unwrap();
    let expect = catalog::build_quadratic("g_8_2_3_s", &params).unwrap();
    let got = got
        .quadratic()
        .unwrap()
        .reorder_by_labels(expect.algebra.basis().labels())
        .unwrap();
    assert_eq!(got.algebra.stored_brackets().collect::<Vec<_>>(), expect.algebra.stored_brackets().collect::<Vec<_>>());
    assert_eq!(got.form, expect.form);
}

#[test]
fn double_extend_rejects_non_derivation() {
    let dir = tempfile::tempdir().unwrap();
    let der = dir.path().join("d.json");
    // Scaling only X0 breaks the derivation rule on g_4_2_s.
    fs::write(&der, r#"{"degree":0,"matrix":[[1,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]]}"#).unwrap();
    let o = run(&["double-extend", "g_4_2_s", "--derivation", path(&der)]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    assert!(stderr(&o).starts_with("error: extension datum violates"));
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{ not json").unwrap();
    for args in [
        &["validate", "no_such_key"][..],
        &["validate", path(&bad)][..],
        &["validate", "g_6_2", "--param", "lambda=0"][..],
        &["validate", "g_6_2", "--param", "lambda=0.5"][..],
        &["validate", "g_6_2", "--param", "kappa=1"][..],
        &["betti", "heisenberg", "--param", "n=2", "--param", "m=2", "--max-degree", "9", "--limit", "100"][..],
        &["poisson", "heisenberg", "I", "I"][..],
        &["frobnicate"][..],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
        assert!(!stderr(&o).is_empty());
    }
}

#[test]
fn parameters_are_applied() {
    let o = run(&["export", "g_6_2", "--param", "lambda=-3/2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"-3/2\""));
}
