use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_stplus"));
    c.env_remove("STB_CACHE_DIR");
    c
}

fn schemas() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schemas")
}

fn load(name: &str) -> Value {
    let text = std::fs::read_to_string(schemas().join(name)).unwrap();
    serde_json::from_str(&text).unwrap()
}

/// Inlines references to the config schema.
fn inline(v: &mut Value, config: &Value) {
    match v {
        Value::Object(m) => {
            if m.get("$ref").and_then(Value::as_str) == Some("config.schema.json") {
                *v = config.clone();
                return;
            }
            for x in m.values_mut() {
                inline(x, config);
            }
        }
        Value::Array(a) => a.iter_mut().for_each(|x| inline(x, config)),
        _ => {}
    }
}

fn validate(schema: &str, out: &[u8]) -> Value {
    let mut config = load("config.schema.json");
    let obj = config.as_object_mut().unwrap();
    obj.remove("$id");
    obj.remove("$schema");
    let mut s = load(schema);
    inline(&mut s, &config);
    let v = jsonschema::validator_for(&s).unwrap();
    let doc: Value = serde_json::from_slice(out).unwrap();
    let errors: Vec<String> = v.iter_errors(&doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{schema}: {errors:?}");
    doc
}

fn run(args: &[&str]) -> (Vec<u8>, bool) {
    let out = bin().args(args).output().unwrap();
    (out.stdout, out.status.success())
}

#[test]
fn tori_rows() {
    let (out, ok) = run(&["tori", "--dim", "5", "--q", "3", "--format", "json"]);
    assert!(ok);
    let doc = validate("tori.schema.json", &out);
    assert_eq!(doc["result"].as_array().unwrap().len(), 5);
    assert_eq!(doc["config"]["q"], 3);
}

#[test]
fn weyl_double_cosets() {
    let (out, ok) = run(&[
        "weyl",
        "--type",
        "D",
        "--n",
        "4",
        "--doublecosets",
        "--format",
        "json",
    ]);
    assert!(ok);
    let doc = validate("weyl.schema.json", &out);
    assert_eq!(doc["result"]["norms"]["cross_norm"], 2);
    assert_eq!(doc["result"]["norms"]["self_norm_D"], 3);
}

#[test]
fn omega_table() {
    let (out, ok) = run(&[
        "omega", "--dim", "4", "--type", "-", "--q", "3", "--format", "json",
    ]);
    assert!(ok);
    let doc = validate("omega.schema.json", &out);
    assert_eq!(doc["result"]["order"], 720);
}

#[test]
fn census_json() {
    let (out, ok) = run(&["census", "--dim", "3", "--q", "3", "--format", "json"]);
    assert!(ok);
    let doc = validate("census.schema.json", &out);
    assert_eq!(doc["result"]["totals"]["predicted_norm_sum"], 4);
    assert_eq!(doc["result"]["totals"]["bruteforce_norm"], "4");
    assert_eq!(doc["result"]["totals"]["match"], true);
}

#[test]
fn verify_census_passes() {
    let (out, ok) = run(&["verify", "census", "--dim", "3", "--q", "3"]);
    assert!(ok);
    let text = String::from_utf8(out).unwrap();
    assert!(
        text.contains("PASS census: census predicted 4 = brute force 4"),
        "{text}"
    );
}

#[test]
fn verify_all_json() {
    let (out, ok) = run(&[
        "verify", "--suite", "all", "--dim", "4", "--type", "-", "--q", "2", "--format", "json",
    ]);
    assert!(ok);
    let doc = validate("verify.schema.json", &out);
    assert_eq!(doc["result"]["pass"], true);
}

#[test]
fn cap_is_refused_with_required_order() {
    let out = bin()
        .args(["omega", "--dim", "5", "--q", "3", "--max-order", "1000"])
        .output()
        .unwrap();
    assert!(!out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("51840"), "{err}");
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let a = bin()
        .env("RAYON_NUM_THREADS", "1")
        .args(["omega", "--dim", "4", "--q", "3"])
        .output()
        .unwrap();
    let b = bin()
        .env("RAYON_NUM_THREADS", "4")
        .args(["omega", "--dim", "4", "--q", "3"])
        .output()
        .unwrap();
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn warm_cache_gives_identical_output() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "census", "--dim", "4", "--type", "+", "--q", "3", "--format", "json",
    ];
    let cold = bin()
        .env("STB_CACHE_DIR", dir.path())
        .args(args)
        .output()
        .unwrap();
    let warm = bin()
        .env("STB_CACHE_DIR", dir.path())
        .args(args)
        .output()
        .unwrap();
    assert!(cold.status.success());
    assert!(std::fs::read_dir(dir.path()).unwrap().next().is_some());
    assert_eq!(cold.stdout, warm.stdout);
}

#[test]
fn bad_type_is_rejected() {
    let out = bin()
        .args(["tori", "--dim", "4", "--type", "odd"])
        .output()
        .unwrap();
    assert!(!out.status.success());
}
