use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_drinfeld"))
        .args(args)
        .env_remove("DRINFELD_CACHE_DIR")
        .output()
        .expect("spawn drinfeld")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn schema(name: &str) -> jsonschema::JSONSchema {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(format!("{name}.schema.json"));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    jsonschema::JSONSchema::compile(&doc).unwrap_or_else(|e| panic!("{name}: {e}"))
}

const CASES: &[(&str, &[&str])] = &[
    ("ss-enumerate", &["ss", "enumerate", "--q", "2", "--rank", "2", "--place", "t^2+t+1"]),
    ("ss-mass", &["ss", "mass", "--q", "3", "--rank", "2", "--place", "t", "--verify"]),
    ("ss-leveled", &["ss", "leveled", "--q", "2", "--rank", "2", "--place", "t", "--level", "t+1"]),
    ("ss-dim", &["ss", "dim", "--q", "2", "--rank", "2", "--place", "t", "--level", "t+1"]),
    ("brandt-matrix", &["brandt", "matrix", "--q", "2", "--rank", "2", "--place", "t+1", "--level", "t", "--primes", "t^2+t+1", "--weight", "1"]),
    ("brandt-eigensystems", &["brandt", "eigensystems", "--q", "2", "--rank", "2", "--place", "t+1", "--level", "t", "--prime-degree-max", "2"]),
    ("brandt-periodicity", &["brandt", "periodicity", "--q", "2", "--rank", "2", "--place", "t", "--level", "t+1", "--primes", "t^2+t+1"]),
    ("jl-verify", &["jl", "verify", "--q", "2", "--rank", "2", "--place", "t+1", "--prime-degree-max", "2"]),
    ("moduli-point", &["moduli", "point", "--q", "2", "--rank", "2", "--place", "t^2+t+1", "--seed", "5"]),
    ("moduli-form-basis", &["moduli", "form-basis", "--q", "2", "--rank", "2", "--weight", "3"]),
    ("moduli-hecke", &["moduli", "hecke", "--q", "2", "--rank", "2", "--weight", "1", "--primes", "t^2+t+1"]),
    ("moduli-strata", &["moduli", "strata", "--q", "2", "--rank", "2", "--place", "t+1", "--count", "40"]),
    ("moduli-components", &["moduli", "components", "--q", "2", "--level", "t^2+t+1"]),
    ("moduli-limit", &["moduli", "limit", "--q", "2", "--rank", "2", "--path", "[[[0,1],[1]],[[1],[1]]]"]),
    ("hecke-local-reps", &["hecke-local", "reps", "--q_w", "2", "--rank", "2", "--mu", "1,0"]),
    ("hecke-local-convolve", &["hecke-local", "convolve", "--q_w", "3", "--rank", "2", "--mu", "1,0", "--mu2", "1,1"]),
    ("hecke-local-commute", &["hecke-local", "commute", "--q_w", "2", "--rank", "2", "--bound", "1"]),
    ("drinfeld-phi", &["drinfeld", "phi", "--q", "2", "--field-degree", "2", "--place", "t+1", "--coeffs", "1,1", "--a", "t^2"]),
    ("drinfeld-height", &["drinfeld", "height", "--q", "2", "--field-degree", "2", "--place", "t^2+t+1", "--coeffs", "0,1"]),
    ("drinfeld-charpoly", &["drinfeld", "charpoly", "--q", "2", "--field-degree", "2", "--place", "t^2+t+1", "--coeffs", "1,1", "--primes", "t^3+t+1"]),
    ("drinfeld-stable-model", &["drinfeld", "stable-model", "--q", "2", "--coeffs", "pi^-1,pi^-3"]),
    ("drinfeld-weil-check", &["drinfeld", "weil-check", "--q", "2", "--rank", "2", "--place", "t", "--m", "2", "--poly", "t^2;0;1"]),
];

#[test]
fn documented_examples() {
    assert_eq!(json(&["ss", "mass", "--q", "2", "--rank", "2", "--place", "t"]), serde_json::json!({"mass": "1/3"}));
    let out = run(&["ss", "mass", "--q", "2", "--rank", "2", "--place", "t"]);
    assert_eq!(out.stdout, b"{\"mass\":\"1/3\"}\n");
    assert_eq!(json(&["moduli", "components", "--q", "2", "--level", "t^2+t+1"]), serde_json::json!({"components": 3}));
    assert_eq!(json(&["hecke-local", "reps", "--q_w", "2", "--rank", "2", "--mu", "1,0"])["count"], 3);
}

#[test]
fn every_subcommand_matches_its_schema() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas");
    assert_eq!(std::fs::read_dir(&dir).unwrap().count(), CASES.len());
    for (name, args) in CASES {
        let v = json(args);
        let s = schema(name);
        if let Err(errs) = s.validate(&v) {
            let msgs: Vec<String> = errs.map(|e| format!("{} at {}", e, e.instance_path)).collect();
            panic!("{name}: {msgs:?}\n{v}");
        };
    }
}

#[test]
fn schemas_reject_foreign_output() {
    let v = json(&["ss", "dim", "--q", "2", "--rank", "2", "--place", "t", "--level", "t+1"]);
    assert!(!schema("ss-mass").is_valid(&v));
    assert!(schema("ss-dim").is_valid(&v));
}

#[test]
fn outputs_are_reproducible() {
    for args in [
        &["moduli", "point", "--q", "2", "--rank", "3", "--place", "t+1", "--seed", "11"][..],
        &["moduli", "strata", "--q", "3", "--rank", "2", "--place", "t+1", "--count", "30", "--seed", "4"],
        &["brandt", "matrix", "--q", "2", "--rank", "2", "--place", "t", "--level", "t+1", "--prime-degree-max", "2", "--weight", "2", "--normalization-seed", "9"],
        &["ss", "enumerate", "--q", "2", "--rank", "3", "--place", "t"],
    ] {
        let a = run(args).stdout;
        assert!(!a.is_empty());
        assert_eq!(a, run(args).stdout, "{args:?}");
        let mut seq = args.to_vec();
        seq.extend(["--workers", "1"]);
        assert_eq!(a, run(&seq).stdout, "{args:?} sequential");
    }
    let a = json(&["moduli", "point", "--q", "2", "--rank", "2", "--place", "t+1", "--seed", "1"]);
    let b = json(&["moduli", "point", "--q", "2", "--rank", "2", "--place", "t+1", "--seed", "2"]);
    assert_ne!(a["lambda"], b["lambda"]);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| run(args).status.code();
    assert_eq!(code(&["ss", "mass", "--q", "4", "--rank", "2", "--place", "t"]), Some(1));
    assert_eq!(code(&["ss", "mass", "--q", "2", "--rank", "2", "--place", "t^2+1"]), Some(1));
    assert_eq!(code(&["ss", "leveled", "--q", "2", "--rank", "2", "--place", "t", "--level", "t"]), Some(1));
    assert_eq!(code(&["ss", "frobnicate"]), Some(1));
    assert_eq!(code(&["ss", "mass", "--q", "2"]), Some(1));
    assert_eq!(code(&["ss", "enumerate", "--q", "2", "--rank", "3", "--place", "t", "--cap", "10"]), Some(3));
    assert_eq!(code(&["--help"]), Some(0));
    let out = run(&["ss", "mass", "--q", "4", "--rank", "2", "--place", "t"]);
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("prime"));
}

#[test]
fn csv_output() {
    let out = run(&["ss", "enumerate", "--q", "2", "--rank", "2", "--place", "t", "--format", "csv"]);
    let mut rd = csv::Reader::from_reader(&out.stdout[..]);
    assert_eq!(rd.headers().unwrap(), vec!["path", "value"]);
    let rows: Vec<(String, String)> = rd.deserialize().map(|r| r.unwrap()).collect();
    assert!(rows.contains(&("mass".into(), "1/3".into())));
    assert!(rows.contains(&("classes.0.aut_order".into(), "3".into())));
}

#[test]
fn out_file_and_cache() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let cache = dir.path().join("cache");
    let args = ["ss", "enumerate", "--q", "3", "--rank", "2", "--place", "t", "--out", out.to_str().unwrap(), "--cache-dir", cache.to_str().unwrap()];
    let first = run(&args);
    assert!(first.status.success());
    assert!(first.stdout.is_empty());
    let a = std::fs::read(&out).unwrap();
    assert!(std::fs::read_dir(&cache).unwrap().count() >= 1);
    assert!(run(&args).status.success());
    assert_eq!(a, std::fs::read(&out).unwrap());
    let v: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["mass"], "1/8");
}
