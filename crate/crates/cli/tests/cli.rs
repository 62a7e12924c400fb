use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bisetlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bisetlab"))
        .args(args)
        .env_remove("BISETLAB_CATALOG")
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn gram_of_trivial_groups() {
    let out = bisetlab(&["gram", "--H", "C1", "--L", "C1", "--T", "C1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["result"]["matrix"], serde_json::json!([[1]]));
    assert_eq!(r["cap"], 64);
    assert!(r["catalog_hash"].as_str().unwrap().len() == 64);
}

#[test]
fn certify_passes_for_c2_shifted_by_c3() {
    let out = bisetlab(&["certify", "--L", "C2", "--T", "C3", "--field", "rational", "--probes", "C1,C2,C3,C4,S3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert_eq!(r["pass"], true);
    assert_eq!(r["config"]["probes"].as_array().unwrap().len(), 5);
    assert_eq!(r["result"]["radical_dim"], 0);
}

#[test]
fn nilpotent_fixture_fails() {
    let out = bisetlab(&["radical", "--fixture", "nilpotent2"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(&out)["result"]["radical_dim"], 1);
    let out = bisetlab(&["radical", "--L", "C3", "--T", "C2"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn invalid_input_exits_with_two() {
    for args in [
        vec!["gram", "--H", "Nope", "--L", "C1"],
        vec!["gram", "--H", "C1", "--L", "C1", "--field", "real"],
        vec!["certify", "--L", "C12", "--T", "C12"],
        vec!["autmult", "--L", "C2", "--T", "C2", "--C", "C3"],
        vec!["radical", "--fixture", "unknown"],
        vec!["gram", "--H", "C1", "--L", "C1", "--cap", "0"],
    ] {
        let out = bisetlab(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn catalog_list_add_and_validate() {
    let out = bisetlab(&["catalog", "list"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for name in ["C1", "S3", "Q8", "A4", "Dic12", "C12"] {
        assert!(text.lines().any(|l| l.split('\t').next() == Some(name)), "{name}");
    }
    assert_eq!(text.lines().count(), 24);

    let dir = tempfile::tempdir().unwrap();
    let cat = dir.path().join("catalog.json");
    let cat = cat.to_str().unwrap();
    let s3 = write(dir.path(), "s3.json", r#"{"name": "S3", "degree": 3, "generators": [[1, 0, 2], [1, 2, 0]]}"#);
    let s4 = write(dir.path(), "s4.json", r#"{"name": "S4", "degree": 4, "generators": [[1, 0, 2, 3], [1, 2, 3, 0]]}"#);
    assert_eq!(bisetlab(&["catalog", "add", &s3, "--catalog", cat]).status.code(), Some(0));
    assert_eq!(bisetlab(&["catalog", "add", &s4, "--catalog", cat]).status.code(), Some(0));
    let out = bisetlab(&["catalog", "list", "--catalog", cat]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("S3\t6"));
    assert!(text.contains("S4\t24"));
    assert_eq!(bisetlab(&["catalog", "validate", "--catalog", cat]).status.code(), Some(0));

    // a Latin square that is not associative
    let broken = write(
        dir.path(),
        "broken.json",
        r#"{"name": "B5", "order": 5, "table": [[0,1,2,3,4],[1,0,3,4,2],[2,4,0,1,3],[3,2,4,0,1],[4,3,1,2,0]]}"#,
    );
    assert_eq!(bisetlab(&["catalog", "validate", &broken]).status.code(), Some(2));
    assert_eq!(bisetlab(&["catalog", "add", &broken, "--catalog", cat]).status.code(), Some(2));
    let junk = write(dir.path(), "junk.json", "{ not json");
    assert_eq!(bisetlab(&["catalog", "validate", &junk]).status.code(), Some(2));
}

#[test]
fn catalog_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let cat = write(dir.path(), "c.json", r#"[{"name": "Z13", "degree": 13, "generators": [[1,2,3,4,5,6,7,8,9,10,11,12,0]]}]"#);
    let out = Command::new(env!("CARGO_BIN_EXE_bisetlab"))
        .args(["gram", "--H", "Z13", "--L", "C1"])
        .env("BISETLAB_CATALOG", &cat)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(report(&out)["result"]["dim"], 2);
}

#[test]
fn render_reports() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("cert.json");
    let cert = cert.to_str().unwrap();
    let out = bisetlab(&["certify", "--L", "C2", "--probes", "C1,C2", "--out", cert]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = String::from_utf8(bisetlab(&["render", cert]).stdout).unwrap();
    assert!(text.contains("verdict: PASS"));
    assert!(text.lines().any(|l| l.starts_with("C2 ")));

    let empty = dir.path().join("empty.json");
    let empty = empty.to_str().unwrap();
    bisetlab(&["certify", "--L", "C2", "--probes", "", "--out", empty]);
    let out = bisetlab(&["render", empty]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("no probes"));

    let gram = dir.path().join("gram.json");
    let gram = gram.to_str().unwrap();
    bisetlab(&["gram", "--H", "C3", "--L", "C1", "--out", gram]);
    let text = String::from_utf8(bisetlab(&["render", gram]).stdout).unwrap();
    assert!(text.contains("[1 0]") && text.contains("[0 2]"), "{text}");

    let bad = write(dir.path(), "bad.json", r#"{"hello": 1}"#);
    assert_eq!(bisetlab(&["render", &bad]).status.code(), Some(2));
}

#[test]
fn oracle_autmult_essential_and_eval() {
    let out = bisetlab(&["oracle", "--G", "S3", "--H", "C2", "--K", "C3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["result"]["mismatches"], serde_json::json!([]));

    let out = bisetlab(&["autmult", "--L", "C3", "--T", "C2", "--C", "C3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let total: u64 = r["result"]["components"].as_array().unwrap().iter().map(|c| c["isotypic_dim"].as_u64().unwrap()).sum();
    assert_eq!(Some(total), r["result"]["dim_m"].as_u64());

    let out = bisetlab(&["essential", "--G", "C2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["result"]["essential_dim"], 0);

    let dir = tempfile::tempdir().unwrap();
    let v = write(dir.path(), "v.json", r#"{"dim": 1, "action": {"b0": [[1]]}}"#);
    let out = bisetlab(&["eval", "--C", "C1", "--G", "C2", "--module", &v]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!((r["result"]["dim_l"].as_u64(), r["result"]["dim_s"].as_u64()), (Some(2), Some(2)));
    let bad = write(dir.path(), "bad.json", r#"{"dim": 1, "action": {"b0": [[3]]}}"#);
    assert_eq!(bisetlab(&["eval", "--C", "C1", "--G", "C2", "--module", &bad]).status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let a = bisetlab(&["certify", "--L", "C3", "--T", "C2", "--probes", "C1,C2,S3", "--threads", "1"]);
    let b = bisetlab(&["certify", "--L", "C3", "--T", "C2", "--probes", "C1,C2,S3", "--threads", "2"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
