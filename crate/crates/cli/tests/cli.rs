use std::process::{Command, Output};

use serde_json::Value;

fn genwait(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_genwait"))
        .args(args)
        .env_remove("GENWAIT_ORDER_CAP")
        .env_remove("GENWAIT_LATTICE_CAP")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn estats_sym3() {
    let out = genwait(&["estats", "--group", "builtin:sym(3)"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], "genwait/1");
    assert_eq!(v["e"]["num"], "29");
    assert_eq!(v["e"]["den"], "10");
    assert_eq!(v["m_table"]["2"], 1);
    assert_eq!(v["m_table"]["3"], 3);
    assert_eq!(v["M"], "1");
    assert_eq!(v["bounds_ok"], true);
}

#[test]
fn generating_subset_reports_note() {
    let out = genwait(&["estats", "--group", "builtin:sym(3)", "--y", "(1,2)", "--y", "(1,2,3)"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["M"], "0");
    assert_eq!(v["note"], "Y generates G");
    assert_eq!(v["e"]["num"], "0");
}

#[test]
fn mc_cyclic2_matches_exact() {
    let out = genwait(&["mc", "--group", "builtin:cyclic(2)", "--samples", "100000", "--seed", "42"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let mean = v["estimate"]["mean"].as_f64().unwrap();
    assert!((mean - 2.0).abs() < 0.02, "mean {mean}");
    assert_eq!(v["exact"]["num"], "2");
}

#[test]
fn mc_is_reproducible() {
    let args = ["mc", "--group", "builtin:sym(3)", "--samples", "5000", "--seed", "7", "--workers", "3"];
    assert_eq!(genwait(&args).stdout, genwait(&args).stdout);
}

#[test]
fn mc_requires_seed() {
    let out = genwait(&["mc", "--group", "builtin:cyclic(2)"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn scan_csv_sym3() {
    let out = genwait(&["scan", "--group", "builtin:sym(3)", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let gaps: Vec<&str> = text.lines().skip(1).map(|l| l.rsplit(',').nth(2).unwrap()).collect();
    assert_eq!(gaps, ["0", "7/5", "9/10"]);
}

#[test]
fn crowns_sym3_has_two_classes() {
    let out = genwait(&["crowns", "--group", "builtin:sym(3)"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let classes = v["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 2);
    assert!(classes.iter().all(|c| c["formula_check"] == true));
}

#[test]
fn bounds_hold_on_dihedral() {
    let out = genwait(&["bounds", "--group", "builtin:dihedral(6)"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["all_hold"], true);
}

#[test]
fn construct_then_analyze_file() {
    let path = std::env::temp_dir().join(format!("genwait-cli-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let out = genwait(&["construct", "dihedral(5)", "-o", p]);
    assert_eq!(out.status.code(), Some(0));
    let info = json(&genwait(&["info", "--group", p]));
    assert_eq!(info["order"], 10);
    assert_eq!(info["min_generators"], 2);
    assert_eq!(info["conjugacy_classes"], 4);
    let from_file = genwait(&["estats", "--group", p]);
    let builtin = genwait(&["estats", "--group", "builtin:dihedral(5)"]);
    assert_eq!(json(&from_file)["e"], json(&builtin)["e"]);
    std::fs::remove_file(path).ok();
}

#[test]
fn construct_accepts_json() {
    let out = genwait(&["construct", r#"{"name":"direct_power","base":{"name":"cyclic","n":2},"t":2}"#]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["generators"].as_array().unwrap().len(), 2);
}

#[test]
fn parse_errors_exit_2() {
    let out = genwait(&["info", "--group", "builtin:nosuch(3)"]);
    assert_eq!(out.status.code(), Some(2));
    let diag: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(diag["error"], "input");
    let out = genwait(&["estats", "--group", "builtin:sym(3)", "--y", "(1,4)"]);
    assert_eq!(out.status.code(), Some(2));
    let out = genwait(&["estats", "--group", "builtin:sym(3)", "--y", "(1,2,3,4)"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn caps_exit_3() {
    let out = genwait(&["lattice", "--group", "builtin:sym(6)", "--lattice-cap", "100"]);
    assert_eq!(out.status.code(), Some(3));
    let out = genwait(&["info", "--group", "builtin:sym(8)", "--order-cap", "1000"]);
    assert_eq!(out.status.code(), Some(3));
    let out = Command::new(env!("CARGO_BIN_EXE_genwait"))
        .args(["info", "--group", "builtin:sym(8)"])
        .env("GENWAIT_ORDER_CAP", "1000")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn crowns_on_insoluble_group_reports_residue() {
    let out = genwait(&["crowns", "--group", "builtin:alt(5)"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["residue"], 21);
    assert!(v["classes"].as_array().unwrap().is_empty());
}

#[test]
fn lattice_export_lists_every_subgroup() {
    let out = genwait(&["lattice", "--group", "builtin:sym(4)", "--export"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["subgroup_count"], 30);
    assert_eq!(v["subgroups"].as_array().unwrap().len(), 30);
}
