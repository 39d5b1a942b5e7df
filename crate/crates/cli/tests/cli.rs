use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn kres(args: &[&str], cache: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kres"))
        .args(args)
        .env("KRES_CACHE_DIR", cache)
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn cache() -> tempfile::TempDir {
    tempfile::tempdir().unwrap()
}

#[test]
fn rmap_sl2r_examples() {
    let c = cache();
    let out = kres(
        &["rmap", "--pair", "sl2r", "--lambda", "2", "--nu", "0"],
        c.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["schema_version"], 1);
    let terms = &doc["payload"]["image"]["terms"];
    assert_eq!(terms.as_array().unwrap().len(), 1);
    assert_eq!(terms[0]["lambda_bar"], serde_json::json!([0]));
    assert_eq!(terms[0]["nu"], serde_json::json!(["1"]));
    assert_eq!(terms[0]["mult"], 1);

    let out = kres(
        &[
            "rmap",
            "--pair",
            "sl2r",
            "--lambda",
            "2",
            "--nu",
            "0",
            "--convention",
            "nu",
        ],
        c.path(),
    );
    let terms = &json(&out)["payload"]["image"]["terms"];
    assert_eq!(terms[0]["nu"], serde_json::json!(["0"]));
}

#[test]
fn rmap_odd_lambda_reduces_to_sign() {
    let c = cache();
    let out = kres(
        &["rmap", "--pair", "sl2r", "--lambda", "-3", "--nu", "1/2"],
        c.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let terms = &json(&out)["payload"]["image"]["terms"];
    assert_eq!(terms[0]["lambda_bar"], serde_json::json!([1]));
}

#[test]
fn spherical_real_ktypes_are_even_weights() {
    let c = cache();
    let out = kres(&["ktypes", "--pair", "sl2r", "--bound", "5"], c.path());
    let table = json(&out)["payload"]["table"].as_array().unwrap().clone();
    let taus: Vec<i64> = table
        .iter()
        .map(|r| r["tau"][0].as_i64().unwrap())
        .collect();
    assert_eq!(taus, vec![-4, -2, 0, 2, 4]);
    assert!(table.iter().all(|r| r["mult"] == 1));
}

#[test]
fn verify_suites_pass_and_accept_both_spellings() {
    let c = cache();
    let a = kres(&["verify", "--pair", "sl2r", "split-prop"], c.path());
    let b = kres(
        &["verify", "--pair", "sl2r", "--suite", "split-prop"],
        c.path(),
    );
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["payload"]["passed"], true);
    for suite in ["koszul-ktypes", "infchar", "homology"] {
        let out = kres(&["verify", "--pair", "sl2r", suite], c.path());
        assert_eq!(out.status.code(), Some(0), "{suite}");
    }
}

#[test]
fn exit_codes() {
    let c = cache();
    let code = |args: &[&str]| kres(args, c.path()).status.code();
    assert_eq!(
        code(&["rmap", "--pair", "sl2r", "--lambda", "x", "--nu", "0"]),
        Some(2)
    );
    assert_eq!(
        code(&["rmap", "--pair", "nope", "--lambda", "0", "--nu", "0"]),
        Some(2)
    );
    assert_eq!(
        code(&[
            "verify",
            "--pair",
            "sl2r",
            "split-prop",
            "--suite",
            "infchar"
        ]),
        Some(2)
    );
    assert_eq!(
        code(&["verify", "--pair", "sl2r", "split-prop", "--degree", "0"]),
        Some(3)
    );
    assert_eq!(code(&["verify", "--pair", "su2", "split-prop"]), Some(4));
    assert_eq!(code(&["koszul", "--pair", "sl3r", "0", "0"]), Some(4));
}

#[test]
fn koszul_su2_examples() {
    let c = cache();
    let dims = |a: &str, b: &str| {
        json(&kres(&["koszul", "--pair", "su2", a, b], c.path()))["payload"]["dims"].clone()
    };
    assert_eq!(dims("0", "0"), serde_json::json!([1, 0, 0, 1]));
    assert_eq!(dims("2", "0"), serde_json::json!([3, 0, 0, 3]));
    assert_eq!(dims("1", "1"), serde_json::json!([0, 0, 0, 0]));
}

#[test]
fn catalog_lists_builtin_pairs() {
    let c = cache();
    let doc = json(&kres(&["catalog"], c.path()));
    let names: Vec<&str> = doc["payload"]["pairs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["name"].as_str().unwrap())
        .collect();
    assert_eq!(names, vec!["sl2r", "sl3r", "sp4r", "su2"]);
}

#[test]
fn out_file_matches_stdout() {
    let c = cache();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("result.json");
    let out = kres(
        &["ktypes", "--pair", "sl3r", "--out", path.to_str().unwrap()],
        c.path(),
    );
    assert_eq!(std::fs::read(&path).unwrap(), out.stdout);
}

#[test]
fn corrupt_cache_entries_are_recomputed() {
    let c = cache();
    let args = ["verify", "--pair", "sl2r", "infchar"];
    let first = kres(&args, c.path());
    for entry in std::fs::read_dir(c.path()).unwrap() {
        std::fs::write(entry.unwrap().path(), b"{not json").unwrap();
    }
    let second = kres(&args, c.path());
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(second.status.code(), Some(0));
}

#[test]
fn directory_catalog() {
    let c = cache();
    let dir = tempfile::tempdir().unwrap();
    let src = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/catalog/sl2r.toml");
    std::fs::copy(&src, dir.path().join("sl2r.toml")).unwrap();
    let cat = dir.path().to_str().unwrap();
    let out = kres(
        &[
            "--catalog",
            cat,
            "rmap",
            "--pair",
            "sl2r",
            "--lambda",
            "2",
            "--nu",
            "0",
        ],
        c.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let builtin = kres(
        &["rmap", "--pair", "sl2r", "--lambda", "2", "--nu", "0"],
        c.path(),
    );
    assert_eq!(json(&out)["payload"], json(&builtin)["payload"]);

    let text = std::fs::read_to_string(&src)
        .unwrap()
        .replace("invariant_degrees", "invariant_degreez");
    std::fs::write(dir.path().join("sl2r.toml"), text).unwrap();
    let out = kres(
        &[
            "--catalog",
            cat,
            "rmap",
            "--pair",
            "sl2r",
            "--lambda",
            "2",
            "--nu",
            "0",
        ],
        c.path(),
    );
    assert_eq!(out.status.code(), Some(4));
}
