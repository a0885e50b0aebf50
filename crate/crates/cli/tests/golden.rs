//! Golden outputs for every subcommand. Set `UPDATE_GOLDEN=1` to rewrite them.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn nilqa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilqa"))
        .args(args)
        .env_remove("NILQA_DATA_DIR")
        .output()
        .expect("binary runs")
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

fn check_golden(name: &str, args: &[&str]) -> Output {
    let out = nilqa(args);
    assert!(out.status.success(), "{args:?} exited with {:?}", out.status.code());
    let path = golden_dir().join(name);
    let actual = String::from_utf8(out.stdout.clone()).expect("utf-8 output");
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::write(&path, &actual).expect("write golden");
    } else {
        let expected = fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {name}"));
        assert_eq!(actual, expected, "output of {args:?} differs from {name}");
    }
    out
}

fn json_keys(out: &Output) -> Vec<String> {
    let v: Value = serde_json::from_slice(&out.stdout).expect("valid JSON");
    v.as_object().expect("object").keys().cloned().collect()
}

fn assert_keys(out: &Output, expected: &[&str]) {
    assert_eq!(json_keys(out), expected);
}

#[test]
fn orbits() {
    check_golden("orbits_b2.txt", &["orbits", "B", "2"]);
    let out = check_golden("orbits_b2.json", &["orbits", "B", "2", "--json"]);
    assert_keys(&out, &["count", "group", "orbits"]);
    check_golden("orbits_d4_bound.txt", &["orbits", "D", "4", "--bound", "6"]);
}

#[test]
fn bv() {
    check_golden("bv_b2_1_single.txt", &["bv", "B", "2", "1", "1,1,1,1"]);
    check_golden("bv_c2_2.txt", &["bv", "C", "2", "2"]);
    let out = check_golden("bv_c2_2.json", &["bv", "C", "2", "2", "--json"]);
    assert_keys(&out, &["degree", "distinct_images", "dual_group", "group", "rows"]);
    let out = check_golden("bv_a4_2_single.json", &["bv", "A", "4", "2", "4", "--json"]);
    assert_keys(&out, &["degree", "dual_group", "group", "image", "partition"]);
}

#[test]
fn verify() {
    check_golden("verify_d4_7.txt", &["verify", "D", "4", "7"]);
    let out = check_golden("verify_b3_5.json", &["verify", "B", "3", "5", "--json"]);
    assert_keys(&out, &["cells", "failures", "family", "n_max", "orbits_checked", "per_cell", "rank_max", "violations"]);
}

#[test]
fn n0() {
    check_golden("n0_c6.txt", &["n0", "C", "6"]);
    let out = check_golden("n0_b4.json", &["n0", "B", "4", "--json"]);
    assert_keys(&out, &["bv_only", "equal", "group", "image_cap", "inclusion_holds", "n0_bv", "n0_qa", "qa_only"]);
}

#[test]
fn scan() {
    check_golden("scan_d7.txt", &["scan", "D", "7"]);
    let out = check_golden("scan_c5.json", &["scan", "C", "5", "--json"]);
    assert_keys(&out, &["family", "first_divergence", "inclusion_holds", "rows"]);
}

#[test]
fn exceptional() {
    check_golden("exceptional_e6_dump.txt", &["exceptional", "E6", "dump"]);
    let out = check_golden("exceptional_e6_dump.json", &["exceptional", "E6", "dump", "--json"]);
    assert_keys(&out, &["count", "group", "records"]);
    check_golden("exceptional_e7_check.txt", &["exceptional", "E7", "check"]);
    let out = check_golden("exceptional_e8_check.json", &["exceptional", "E8", "check", "--json"]);
    assert_keys(
        &out,
        &["diagrams_checked", "dims_checked", "group", "mismatches", "raisability_audited", "rows"],
    );
    let out = check_golden("exceptional_e8_n0.json", &["exceptional", "E8", "n0", "--json"]);
    assert_keys(&out, &["group", "n0_qa"]);
}

#[test]
fn gdim() {
    check_golden("gdim_e6.txt", &["gdim", "E6", "1", "0", "0", "0", "0", "1"]);
    let out = check_golden("gdim_f4.json", &["gdim", "F4", "0", "0", "0", "1", "--json"]);
    assert_keys(&out, &["center_dim", "dimension", "dims", "group", "labels", "levi", "levi_nodes"]);
}

#[test]
fn props() {
    check_golden("props_seed7.txt", &["props", "--seed", "7", "--samples", "300"]);
    let out = check_golden("props_seed7.json", &["props", "--seed", "7", "--samples", "300", "--json"]);
    assert_keys(&out, &["checks", "samples", "seed"]);
}

#[test]
fn exit_codes() {
    assert_eq!(nilqa(&["--help"]).status.code(), Some(0));
    assert_eq!(nilqa(&["orbits", "Q", "2"]).status.code(), Some(1));
    assert_eq!(nilqa(&["orbits", "B", "0"]).status.code(), Some(1));
    assert_eq!(nilqa(&["verify", "B", "2"]).status.code(), Some(1));
    assert_eq!(nilqa(&["gdim", "E6", "0", "1"]).status.code(), Some(1));
    assert_eq!(nilqa(&["gdim", "G2", "0", "5"]).status.code(), Some(1));
    assert_eq!(nilqa(&["bv", "B", "2", "1", "3,1"]).status.code(), Some(2));
    assert_eq!(nilqa(&["bv", "B", "2", "1", "x"]).status.code(), Some(2));
    assert_eq!(nilqa(&["scan", "A", "3"]).status.code(), Some(2));
    let err = nilqa(&["bv", "B", "2", "1", "3,1"]);
    assert!(String::from_utf8_lossy(&err.stderr).starts_with("error: "));
}

fn with_data_dir(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilqa"))
        .args(args)
        .env("NILQA_DATA_DIR", dir)
        .output()
        .expect("binary runs")
}

#[test]
fn data_directory_override() {
    let base = std::env::temp_dir().join(format!("nilqa-golden-{}", std::process::id()));
    let missing = base.join("missing");
    let corrupt = base.join("corrupt");
    let tampered = base.join("tampered");
    for d in [&corrupt, &tampered] {
        fs::create_dir_all(d).unwrap();
    }
    fs::write(corrupt.join("exceptional_orbits.json"), "{ not json").unwrap();

    let bundled = fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data/exceptional_orbits.json")).unwrap();
    let mut table: Value = serde_json::from_str(&bundled).unwrap();
    table["E6"][0]["qa_set"] = serde_json::json!({ "kind": "finite", "members": [5] });
    fs::write(tampered.join("exceptional_orbits.json"), table.to_string()).unwrap();

    assert_eq!(with_data_dir(&missing, &["exceptional", "E6", "dump"]).status.code(), Some(2));
    assert_eq!(with_data_dir(&corrupt, &["exceptional", "E6", "dump"]).status.code(), Some(2));
    assert_eq!(with_data_dir(&tampered, &["exceptional", "E6", "check"]).status.code(), Some(3));
    assert_eq!(with_data_dir(&tampered, &["exceptional", "E7", "check"]).status.code(), Some(0));
    fs::remove_dir_all(&base).ok();
}
