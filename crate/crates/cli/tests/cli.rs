use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn brw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_brw"))
        .args(args)
        .env_remove("BRW_CAP_ORDER")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

fn csv_rows(out: &Output) -> Vec<csv::StringRecord> {
    csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(out.stdout.as_slice())
        .records()
        .collect::<Result<_, _>>()
        .unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn info_reports_structure() {
    let dir = tempfile::tempdir().unwrap();
    let b2 = write(
        dir.path(),
        "b2.json",
        r#"{"p": 3, "pattern": {"n": 2, "closed_pairs": [[1, 2]]}}"#,
    );
    let r = json(&brw(&["info", &b2]));
    assert_eq!(r["result"]["dim"], 3);
    assert_eq!(r["result"]["group_order"], 12);
    assert_eq!(r["result"]["torus_order"], 4);
    assert_eq!(r["result"]["p_group_order"], 3);
    assert_eq!(r["result"]["radical_dims"], serde_json::json!([1, 0]));
    assert_eq!(r["result"]["certificate"]["split_basic"], true);

    let u3 = write(
        dir.path(),
        "u3.json",
        r#"{"p": 2, "pattern": {"n": 3, "closed_pairs": [[1, 2], [2, 3], [1, 3]]}}"#,
    );
    let r = json(&brw(&["info", &u3]));
    assert_eq!(r["result"]["dim"], 6);
    assert_eq!(r["result"]["group_order"], 8);
    assert_eq!(r["result"]["radical_dims"], serde_json::json!([3, 1, 0]));
    assert_eq!(r["result"]["idempotents"].as_array().unwrap().len(), 3);
}

#[test]
fn malformed_specs_exit_with_spec_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"p": 3, "pattern": {"n": 2, "closed_pairs": [[2, 1]]}}"#,
    );
    let out = brw(&["info", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("closed_pairs"));

    let broken = write(dir.path(), "broken.json", "{\"p\": 3,\n \"pattern\": }");
    let out = brw(&["info", &broken]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let p11 = write(
        dir.path(),
        "p11.json",
        r#"{"p": 11, "pattern": {"n": 1, "closed_pairs": []}}"#,
    );
    assert_eq!(brw(&["info", &p11]).status.code(), Some(2));
    assert_eq!(brw(&["info", "corpus:nope"]).status.code(), Some(2));
    assert_eq!(brw(&["info", "corpus:b2_f3", "--format", "csv"]).status.code(), Some(2));
    assert_eq!(
        brw(&["info", "corpus:b2_f3", "--cap-order", "0"]).status.code(),
        Some(2)
    );
}

#[test]
fn chartable_csv() {
    let rows = csv_rows(&brw(&["chartable", "corpus:b2_f3", "--format", "csv"]));
    let mut degrees: Vec<i64> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
    degrees.sort();
    assert_eq!(degrees, vec![1, 1, 1, 1, 2, 2]);

    let rows = csv_rows(&brw(&["chartable", "corpus:b3_f2", "--format", "csv"]));
    assert_eq!(rows.len(), 5);

    let rows = csv_rows(&brw(&["chartable", "corpus:diag2_f5", "--format", "csv"]));
    assert_eq!(rows.len(), 16);
    assert!(rows.iter().all(|r| &r[1] == "1"));

    let r = json(&brw(&["chartable", "corpus:b3_f3"]));
    assert_eq!(r["verified"], true);
    assert_eq!(r["result"]["class_count"], 22);
    let sizes: u64 = r["result"]["class_sizes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_u64().unwrap())
        .sum();
    assert_eq!(sizes, 216);
}

#[test]
fn caps_exit_with_code_three() {
    assert_eq!(brw(&["chartable", "corpus:b3_f5"]).status.code(), Some(3));
    let out = Command::new(env!("CARGO_BIN_EXE_brw"))
        .args(["gutkin", "corpus:b2_f3"])
        .env("BRW_CAP_ORDER", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    // the flag wins over the environment
    let out = Command::new(env!("CARGO_BIN_EXE_brw"))
        .args(["info", "corpus:b2_f3", "--cap-order", "100"])
        .env("BRW_CAP_ORDER", "10")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(json(&out)["config"]["cap_order"], 100);
    // B4(F2) has dimension 10; a tiny scan budget stops the exhaustive search
    assert_eq!(
        brw(&["gutkin", "corpus:b4_f2", "--mode", "brute", "--cap-scan", "5"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn gutkin_modes() {
    let r = json(&brw(&["gutkin", "corpus:b2_f3", "--mode", "both"]));
    let w = r["result"]["witnesses"].as_array().unwrap();
    assert_eq!(w.len(), 6);
    assert!(w.iter().all(|x| x["checks"]["brute_agrees"] == true));
    assert_eq!(r["result"]["schema"], "brw.gutkin/1");

    let r = json(&brw(&["gutkin", "corpus:b3_f2"]));
    assert_eq!(r["result"]["witnesses"].as_array().unwrap().len(), 5);

    let r = json(&brw(&["gutkin", "corpus:b3_f3", "--mode", "constructive"]));
    assert_eq!(r["result"]["sum_of_squares"], 216);
    assert_eq!(r["result"]["all_witnessed"], true);
    assert!(r["result"]["brute"].is_null());

    let r = json(&brw(&["gutkin", "corpus:pat_c_f2", "--mode", "brute"]));
    assert!(r["result"]["witnesses"][0]["subalgebra_rows"].is_null());
    assert!(r["result"]["witnesses"]
        .as_array()
        .unwrap()
        .iter()
        .all(|x| x["brute_witnesses"].as_u64() > Some(0)));
}

#[test]
fn orbits_commands() {
    for q in [2u64, 3, 5] {
        let r = json(&brw(&["orbits", &format!("corpus:b2_f{q}")]));
        assert_eq!(r["result"]["orbit_count"], 2);
        let nontrivial = r["result"]["orbits"]
            .as_array()
            .unwrap()
            .iter()
            .find(|o| o["trivial"] == false)
            .unwrap();
        assert_eq!(nontrivial["stabilizer_order"].as_u64(), Some((q - 1) * q));
    }
    let r = json(&brw(&["orbits", "corpus:b3_f2", "--ideal", "J^2"]));
    assert!(r["result"]["orbits"].as_array().unwrap().iter().all(|o| o["size"] == 1));
    let r = json(&brw(&["orbits", "corpus:b4_f2", "--ideal", "basis:e14"]));
    assert!(r["result"]["orbits"].as_array().unwrap().iter().all(|o| o["size"] == 1));
    let r = json(&brw(&["orbits", "corpus:b3_f3", "--ideal", "basis:e12;0,0,1,0,0,0"]));
    assert_eq!(r["result"]["ideal_dim"], 2);
    assert_eq!(
        brw(&["orbits", "corpus:b3_f3", "--ideal", "basis:e12"]).status.code(),
        Some(2)
    );
    assert_eq!(
        brw(&["orbits", "corpus:b3_f3", "--ideal", "basis:e11"]).status.code(),
        Some(2)
    );
    assert_eq!(brw(&["orbits", "corpus:b3_f3", "--ideal", "K"]).status.code(), Some(2));
}

#[test]
fn local_commands() {
    let r = json(&brw(&["local", "chargroup", "--p", "2", "--k", "3"]));
    assert_eq!(r["result"]["divisors"], serde_json::json!([2, 2]));
    assert!(r["result"]["absolute_value_convention"]
        .as_str()
        .unwrap()
        .contains("r = p"));

    let r = json(&brw(&[
        "local", "factor", "--p", "5", "--k", "1", "--unit", "1", "--r", "3", "--phase", "4:1",
    ]));
    assert_eq!(r["verified"], true);
    assert_eq!(r["result"]["unitary"]["r"], "1");
    assert_eq!(
        r["result"]["unitary"]["phase"],
        serde_json::json!({"conductor": 4, "exponent": 1})
    );
    assert_eq!(r["result"]["twist"]["r"], "3");
    assert_eq!(r["result"]["twist"]["level"], 0);

    assert_eq!(
        brw(&["local", "factor", "--p", "5", "--r", "-1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        brw(&["local", "factor", "--p", "5", "--phase", "0:1"]).status.code(),
        Some(2)
    );
    assert_eq!(brw(&["local", "factor", "--p", "4"]).status.code(), Some(2));
    assert_eq!(
        brw(&["local", "factor", "--p", "2", "--k", "3", "--unit", "1"])
            .status
            .code(),
        Some(2)
    );

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().display().to_string();
    assert!(brw(&["gutkin", "corpus:b2_f5", "--out", &out]).status.success());
    let witness = dir.path().join("b2_f5.gutkin.json").display().to_string();
    let r = json(&brw(&["local", "admissible", &witness]));
    assert_eq!(r["result"]["shape_iff_degree_one"], true);
    assert_eq!(r["result"]["shapes"].as_array().unwrap().len(), 20);

    // a brute-only report has no constructive witnesses to classify
    assert!(brw(&["gutkin", "corpus:b2_f3", "--mode", "brute", "--out", &out])
        .status
        .success());
    let witness = dir.path().join("b2_f3.gutkin.json").display().to_string();
    assert_eq!(brw(&["local", "admissible", &witness]).status.code(), Some(4));
    let junk = write(dir.path(), "junk.json", "{}");
    assert_eq!(brw(&["local", "admissible", &junk]).status.code(), Some(2));
}

#[test]
fn corpus_listing_matches_shipped_files() {
    let r = json(&brw(&["corpus", "list"]));
    let entries = r["result"].as_array().unwrap();
    assert_eq!(entries.len(), 12);
    assert_eq!(entries.iter().filter(|e| e["gated"] == true).count(), 1);

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().display().to_string();
    assert!(brw(&["corpus", "export", "--out", &out]).status.success());
    let shipped = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    for e in entries {
        let id = e["id"].as_str().unwrap();
        let exported = std::fs::read_to_string(dir.path().join(format!("{id}.json"))).unwrap();
        let file = std::fs::read_to_string(shipped.join(format!("{id}.json"))).unwrap();
        assert_eq!(exported.trim_end(), file.trim_end(), "{id}");
        // shipped files load as plain specs
        let path = shipped.join(format!("{id}.json")).display().to_string();
        assert!(brw(&["info", &path]).status.success());
    }
    assert_eq!(brw(&["corpus", "export"]).status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [&a, &b] {
        let out = d.path().display().to_string();
        assert!(brw(&["gutkin", "corpus:b3_f2", "--seed", "9", "--out", &out])
            .status
            .success());
        assert!(brw(&["chartable", "corpus:pat_a_f3", "--format", "csv", "--out", &out])
            .status
            .success());
    }
    for name in ["b3_f2.gutkin.json", "pat_a_f3.chartable.csv"] {
        assert_eq!(
            std::fs::read(a.path().join(name)).unwrap(),
            std::fs::read(b.path().join(name)).unwrap(),
            "{name}"
        );
    }
    let r: Value = serde_json::from_slice(&std::fs::read(a.path().join("b3_f2.gutkin.json")).unwrap()).unwrap();
    assert_eq!(r["config"]["seed"], 9);
    assert_eq!(r["tool"]["version"], env!("CARGO_PKG_VERSION"));
}
