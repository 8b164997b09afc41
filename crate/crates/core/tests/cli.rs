use std::path::Path;

use k3glue::cli::{run, run_with_env, Outcome};
use k3glue::cyclotomic::{build_trace_form_lattice, CycloElement, CycloField};
use k3glue::certify::build_twisted_lattice;
use k3glue::lattice::io::LatticeDocument;
use tempfile::TempDir;

fn k3glue(args: &[&str]) -> Outcome {
    run_with_env(std::iter::once("k3glue").chain(args.iter().copied()), None)
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn load(path: &Path) -> LatticeDocument {
    LatticeDocument::parse(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn trace_set_small() {
    let out = k3glue(&["trace-set", "--max", "20"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "2 3 7 14 18\n"));
    let out = k3glue(&["--format", "json", "trace-set", "--max", "20"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["values"], serde_json::json!([2, 3, 7, 14, 18]));
}

#[test]
fn malformed_input_exits_2() {
    let dir = TempDir::new().unwrap();
    let asym = write(&dir, "asym.json", r#"{"rank": 2, "gram": [["2", "1"], ["0", "2"]]}"#);
    let out = k3glue(&["lattice-info", &asym]);
    assert_eq!(out.code, 2, "{}", out.stderr);
    assert!(out.stderr.starts_with("error:"));

    let numbers = write(&dir, "numbers.json", r#"{"rank": 1, "gram": [[2]]}"#);
    assert_eq!(k3glue(&["lattice-info", &numbers]).code, 2);
    let singular = write(&dir, "singular.json", r#"{"rank": 2, "gram": [["2", "2"], ["2", "2"]]}"#);
    assert_eq!(k3glue(&["lattice-info", &singular]).code, 2);
    let not_iso = write(&dir, "t.json", r#"{"rank": 2, "gram": [["2", "1"], ["1", "2"]], "isometry": [["2", "0"], ["0", "1"]]}"#);
    assert_eq!(k3glue(&["lattice-info", &not_iso]).code, 2);
    assert_eq!(k3glue(&["lattice-info", "/nonexistent/file.json"]).code, 2);

    assert_eq!(k3glue(&["trace-set", "--max", "20", "--bogus"]).code, 2);
    assert_eq!(k3glue(&["frobnicate"]).code, 2);
    assert_eq!(k3glue(&["table1", "--digits", "0"]).code, 2);
    assert_eq!(run_with_env(["k3glue", "table1"], Some("many")).code, 2);
}

#[test]
fn gram_documents_round_trip() {
    let dir = TempDir::new().unwrap();
    let out = k3glue(&["gram", "--which", "L2"]);
    assert_eq!(out.code, 0);
    let l2 = write(&dir, "l2.json", &out.stdout);
    let (lattice, iso) = LatticeDocument::parse(&out.stdout).unwrap().load().unwrap();
    let tl = build_twisted_lattice().unwrap();
    assert_eq!(&lattice, &tl.lattice);
    assert_eq!(iso.unwrap().matrix(), tl.isometry.matrix());

    let info = k3glue(&["--format", "json", "lattice-info", &l2]);
    assert_eq!(info.code, 0);
    let v: serde_json::Value = serde_json::from_str(&info.stdout).unwrap();
    assert_eq!(v["invariants"]["rank"], 20);
    assert_eq!(v["glue_group"]["orders"], serde_json::json!(["3001", "15005"]));
    assert_eq!(v["isometry"]["glue_action_identity"], false);
}

#[test]
fn glue_from_files() {
    let dir = TempDir::new().unwrap();
    let l1 = write(&dir, "l1.json", &k3glue(&["gram", "--which", "l1"]).stdout);
    let l2 = write(&dir, "l2.json", &k3glue(&["gram", "--which", "l2"]).stdout);
    let target = dir.path().join("k3.json");
    let out = k3glue(&["glue", &l1, &l2, "-o", target.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("index 45030005"));
    let (k3, t) = load(&target).load().unwrap();
    assert!(k3.is_even() && k3.is_unimodular());
    assert_eq!(k3.rank(), 22);
    assert_eq!(t.unwrap().charpoly().degree(), Some(22));
    // same output as the built-in assembly
    assert_eq!(std::fs::read_to_string(&target).unwrap(), k3glue(&["gram", "--which", "k3"]).stdout);

    // the 5-parts of L1 and U(5) = [[0, 5], [5, 0]] cannot be matched
    let u5 = write(&dir, "u5.json", r#"{"rank": 2, "gram": [["0", "5"], ["5", "0"]]}"#);
    let out = k3glue(&["glue", &l1, &u5]);
    assert_eq!(out.code, 1, "{}", out.stderr);
}

#[test]
fn twist_reproduces_la() {
    let dir = TempDir::new().unwrap();
    let f = CycloField::new(50);
    let (plain, zeta) = build_trace_form_lattice(&f, &CycloElement::one(&f)).unwrap();
    let base = write(&dir, "plain.json", &LatticeDocument::from_lattice(&plain, Some(&zeta)).to_text());
    let tl = build_twisted_lattice().unwrap();
    let coeffs: Vec<String> = tl.twist.a.to_int_poly().unwrap().coeffs().iter().map(|c| c.to_string()).collect();
    let out = k3glue(&["twist", &base, "--poly", &coeffs.join(",")]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let (twisted, iso) = LatticeDocument::parse(&out.stdout).unwrap().load().unwrap();
    assert_eq!(&twisted, &tl.lattice);
    assert!(iso.is_some());

    // a twist needs an isometry to evaluate A(t)
    let bare = write(&dir, "bare.json", &LatticeDocument::from_lattice(&plain, None).to_text());
    assert_eq!(k3glue(&["twist", &bare, "--poly", "1,1"]).code, 2);
}

#[test]
fn output_is_deterministic() {
    let a = k3glue(&["--format", "json", "certify-k3"]);
    let b = k3glue(&["--format", "json", "certify-k3"]);
    assert_eq!(a.code, 0);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a.stdout).unwrap();
    assert_eq!(v["verdict"], true);
}

#[test]
fn digits_flag_and_environment() {
    let out = run_with_env(["k3glue", "table1"], Some("3"));
    assert!(out.stdout.contains("-0.114"), "{}", out.stdout);
    let out = run_with_env(["k3glue", "table1", "--digits", "7"], Some("3"));
    assert!(out.stdout.contains("-0.1137230"), "{}", out.stdout);
    // run() without the variable set falls back to five digits
    if std::env::var_os("K3GLUE_DIGITS").is_none() {
        assert!(run(["k3glue", "table1"]).stdout.contains("-2.5494"));
    }
}
