use std::path::Path;

use planeleaf::cli::{run, BUILTIN_CORPUS, EXIT_INPUT, EXIT_NOTHING_CHECKED, EXIT_OK, EXIT_VIOLATION};

fn call(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut argv = vec!["planeleaf"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const CUSP: &str = r#"{"field":{"type":"Q"},"polynomial":"y^2*z - x^3","factors":["y^2*z - x^3"],"components":1}"#;

#[test]
fn semigroup_summary() {
    let (code, out, _) = call(&["semigroup", "3,4,5"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "e=3 embdim=3 gaps={1,2} ℓ(B/A)=2 bound=3 verdict=strict\n");
    let (code, out, _) = call(&["semigroup", "2,3"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.ends_with("verdict=equality\n"));
    assert_eq!(call(&["semigroup", "1,2"]).0, EXIT_INPUT);
    assert_eq!(call(&["semigroup", "3,x"]).0, EXIT_INPUT);
}

#[test]
fn invariants_and_min_degree() {
    let dir = tempfile::tempdir().unwrap();
    let curve = write(dir.path(), "cusp.json", CUSP);
    let (code, out, _) = call(&["invariants", &curve]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["tau_total"], 2);
    assert_eq!(v["p_g"], 0);
    assert_eq!(v["points"][0]["point"], "(0:0:1)");
    let (code, out, _) = call(&["foliation", "min-degree", &curve]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "m=1 witness=(0, y, -2*z) kernel_dim=1\n");
}

#[test]
fn resolve_at_point() {
    let dir = tempfile::tempdir().unwrap();
    let curve = write(dir.path(), "cusp.json", CUSP);
    let (code, out, _) = call(&["resolve", &curve, "--point", "0,0,1", "--json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v[0]["delta"], 1);
    let (code, text, _) = call(&["resolve", &curve]);
    assert_eq!(code, EXIT_OK);
    assert!(!text.is_empty());
    assert_eq!(call(&["resolve", &curve, "--point", "1,0,0"]).0, EXIT_INPUT);
    assert_eq!(call(&["resolve", &curve, "--point", "0,0"]).0, EXIT_INPUT);
}

#[test]
fn singular_scheme_summary() {
    let dir = tempfile::tempdir().unwrap();
    let fol = write(dir.path(), "fol.json", r#"{"field":{"type":"Q"},"vector_field":["0","y","-2*z"]}"#);
    let (code, out, _) = call(&["foliation", "singular", &fol]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("m=1 deg_S=3 expected=3 finite=true"), "{out}");
    let radial = write(dir.path(), "radial.json", r#"{"field":{"type":"Q"},"vector_field":["x","y","z"]}"#);
    assert_eq!(call(&["foliation", "singular", &radial]).0, EXIT_INPUT);
}

#[test]
fn check_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let pair = format!(r#"{{"curve":{CUSP},"foliation":{{"field":{{"type":"Q"}},"vector_field":["0","y","-2*z"]}}}}"#);
    let pair = write(dir.path(), "cusp_pair.json", &pair);
    let report = dir.path().join("report.json");
    let (code, out, _) = call(&["check", &pair, "--report", report.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("leaf_identity"));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["curve"], "cusp_pair");
    let checks = v["checks"].as_array().unwrap();
    let verdict = |n: &str| checks.iter().find(|c| c["name"] == n).unwrap()["verdict"].clone();
    assert_eq!(verdict("leaf_identity"), "equality");
    assert_eq!(verdict("equality_line"), "equality");
}

#[test]
fn check_rejects_mixed_fields_and_bad_splits() {
    let dir = tempfile::tempdir().unwrap();
    let mixed = format!(r#"{{"curve":{CUSP},"foliation":{{"field":{{"type":"Fq","p":5}},"vector_field":["0","y","-2*z"]}}}}"#);
    let (code, _, err) = call(&["check", &write(dir.path(), "mixed.json", &mixed)]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("F_5"), "{err}");
    let split = format!(r#"{{"curve":{CUSP},"split":{{"a":"x","b":"y"}}}}"#);
    assert_eq!(call(&["check", &write(dir.path(), "split.json", &split)]).0, EXIT_INPUT);
}

#[test]
fn malformed_inputs_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad_poly = r#"{"field":{"type":"Q"},"polynomial":"x^2 +* y","factors":["x"],"components":1}"#;
    let (code, _, err) = call(&["invariants", &write(dir.path(), "p.json", bad_poly)]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("column"), "{err}");
    assert_eq!(call(&["invariants", &write(dir.path(), "j.json", "[1,")]).0, EXIT_INPUT);
    assert_eq!(call(&["invariants", "/nonexistent/curve.json"]).0, EXIT_INPUT);
    assert_eq!(call(&["no-such-command"]).0, EXIT_INPUT);
    let unknown = r#"{"field":{"type":"Q"},"polynomial":"x","factors":["x"],"components":1,"extra":1}"#;
    assert_eq!(call(&["invariants", &write(dir.path(), "u.json", unknown)]).0, EXIT_INPUT);
}

#[test]
fn corpus_directory_modes() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty");
    std::fs::create_dir(&empty).unwrap();
    assert_eq!(call(&["corpus", "verify", "--dir", empty.to_str().unwrap()]).0, EXIT_NOTHING_CHECKED);
    assert_eq!(call(&["corpus", "verify", "--bless"]).0, EXIT_INPUT);

    let corpus = dir.path().join("corpus");
    std::fs::create_dir(&corpus).unwrap();
    let (entry, golden) = BUILTIN_CORPUS[0];
    write(&corpus, "a.json", entry);
    let c = corpus.to_str().unwrap();
    let (code, out, _) = call(&["corpus", "verify", "--dir", c]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("golden=none"));
    assert_eq!(call(&["corpus", "verify", "--dir", c, "--bless"]).0, EXIT_OK);
    let blessed = std::fs::read_dir(corpus.join("golden")).unwrap().next().unwrap().unwrap().path();
    assert_eq!(std::fs::read_to_string(&blessed).unwrap(), golden);
    let (code, out, _) = call(&["corpus", "verify", "--dir", c]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("golden=match"));

    std::fs::write(&blessed, golden.replacen("\"d\": 2", "\"d\": 5", 1)).unwrap();
    let (code, out, _) = call(&["corpus", "verify", "--dir", c]);
    assert_eq!(code, EXIT_VIOLATION);
    assert!(out.contains("golden=MISMATCH"));

    write(&corpus, "b.json", entry);
    assert_eq!(call(&["corpus", "verify", "--dir", c]).0, EXIT_INPUT);
}

#[test]
fn builtin_corpus_matches_goldens() {
    let (code, out, _) = call(&["corpus", "verify", "--jobs", "2"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.ends_with("violations=0 golden_mismatches=0 input_errors=0 external_violations=0\n"));
    assert!(BUILTIN_CORPUS.len() >= 12);
}
