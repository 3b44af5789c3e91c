use magic_cli::run;
use serde_json::Value;

fn ok(args: &[&str]) -> String {
    let out = run(std::iter::once("magic").chain(args.iter().copied()));
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    out.stdout
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.push("--json");
    serde_json::from_str(&ok(&a)).unwrap()
}

fn code(args: &[&str]) -> (i32, String) {
    let out = run(std::iter::once("magic").chain(args.iter().copied()));
    (out.code, out.stderr)
}

#[test]
fn classify_examples() {
    assert!(ok(&["classify", "-3", "-3"]).starts_with("(S,(2,1))"));
    assert_eq!(ok(&["classify", "7", "-7/3"]), "hyperbolic\n");
    let v = json(&["classify", "1", "2", "2"]);
    assert_eq!(v["verdict"], "NonHyperbolic");
    let m = v["manifold"].as_str().unwrap();
    assert!(ok(&["eq", m, "SFS(S2;(2,1),(3,1),(7,1);-1)"]).starts_with("Equal"));
}

#[test]
fn normalize_output_reparses_equal() {
    for lit in ["L(49,30)", "SFS(D;(2,1),(3,2)) U[0,1;1,0] SFS(D;(2,1),(2,1))", "SFS(A;(2,1)) /[1,1;1,0]", "T[3,1;-1,0]"] {
        let v = json(&["normalize", lit]);
        let canon = v["canonical"].as_str().unwrap();
        assert!(ok(&["eq", lit, canon]).starts_with("Equal"), "{lit} -> {canon}");
        assert_eq!(json(&["normalize", canon])["canonical"], v["canonical"]);
    }
}

#[test]
fn homology_and_distinct() {
    assert_eq!(ok(&["homology", "L(12,5)"]), "Z/12\n");
    assert!(ok(&["eq", "L(7,1)", "L(7,2)"]).starts_with("Distinct"));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["classify", "1/0", "bad"]).0, 2);
    let (c, err) = code(&["normalize", "SFS(D;(2,4))"]);
    assert_eq!(c, 2);
    let e: Value = serde_json::from_str(&err).unwrap();
    assert_eq!(e["error"], "parse");
    assert_eq!(code(&["classify", "1", "2", "3", "4"]).0, 2);
    assert_eq!(code(&["exceptional", "-3"]).0, 1);
    assert_eq!(code(&["frobnicate"]).0, 2);
    assert_eq!(code(&["--help"]).0, 0);
}

#[test]
fn enumerate_counts() {
    assert_eq!(json(&["enumerate", "s1-tilde"])["count"], 28);
    assert_eq!(json(&["enumerate", "s1"])["count"], 23);
    let sq = json(&["enumerate", "short", "--shape", "0,1", "--area", "1", "--precision", "30"]);
    assert!(sq["count"].as_u64().unwrap() > 0);
}

#[test]
fn farey_svg_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.svg");
    let p = path.to_str().unwrap();
    ok(&["farey-svg", "inf", "0", "-1", "-2=S", "-3", "--out", p]);
    let doc = std::fs::read_to_string(&path).unwrap();
    assert_eq!(doc.matches("class=\"slope\"").count(), 5);
    assert_eq!(doc.matches("class=\"edge\"").count(), 7);
    assert!(doc.contains("-2: S"));
}

#[test]
fn ingest_cusps_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cusps.jsonl");
    let y = "1.32287565553229529525080549666";
    std::fs::write(&path, format!(r#"{{"filled":[],"cusp":0,"x":"0.5","y":"{y}","area":"{y}","digits":25}}"#) + "\n").unwrap();
    let out = ok(&["ingest-cusps", path.to_str().unwrap()]);
    assert!(out.contains("|S1|·|S2|·|S3|"), "{out}");
    assert_eq!(code(&["ingest-cusps", "/nonexistent/cusps.jsonl"]).0, 1);
}

#[test]
fn output_is_deterministic() {
    for args in [&["exceptional", "1", "2"][..], &["orbit", "-3/2", "-5/2", "2"], &["cosmetic", "-6"]] {
        let mut a = args.to_vec();
        a.push("--json");
        assert_eq!(ok(&a), ok(&a));
    }
}
