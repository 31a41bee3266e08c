use std::process::{Command, Output};

fn pcode(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pcode"))
        .args(args)
        .output()
        .expect("pcode runs")
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = pcode(&all);
    serde_json::from_slice(&out.stdout).expect("valid JSON report")
}

#[test]
fn symmetric_subgroup_is_a_code() {
    let out = pcode(&["check-group", "--group", "S4", "--subgroup", "[(1 2 3),(1 2)]"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&["check-group", "--group", "S4", "--subgroup", "[(1 2 3),(1 2)]"]);
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["verdicts"][0]["status"], "perfect-code");
    assert_eq!(r["agreement"]["consistent"], true);
    assert_eq!(r["verdicts"][0]["witness"].as_array().unwrap().len(), 4);
}

#[test]
fn square_subgroup_of_c4_is_not_a_code() {
    let r = json(&["check-group", "--group", "C4", "--subgroup", "[(1 3)(2 4)]"]);
    assert_eq!(r["verdicts"][0]["status"], "not-perfect-code");
    let cells = r["agreement"]["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 4);
    assert!(cells.iter().all(|c| c["answer"] == false));
}

#[test]
fn whole_group_is_a_code() {
    let r = json(&["check-group", "--group", "D8", "--subgroup", "whole"]);
    assert_eq!(r["verdicts"][0]["status"], "perfect-code");
}

#[test]
fn pair_with_a_equal_g_has_identity_witness() {
    let r = json(&["check-pair", "--group", "S4", "--a", "whole", "--h", "[(1 2)]"]);
    assert_eq!(r["verdicts"][0]["status"], "perfect-code");
    assert_eq!(r["verdicts"][0]["witness"], serde_json::json!(["()"]));
}

#[test]
fn dihedral_construction_report() {
    let out = pcode(&["construct", "dihedral:1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&["construct", "dihedral:1"]);
    assert_eq!(r["verdicts"][0]["status"], "not-perfect-code");
    let claims = r["claims"].as_array().unwrap();
    let necessary = claims.iter().find(|c| c["claim"] == "necessary-condition-holds").unwrap();
    assert_eq!(necessary["holds"], true);
}

#[test]
fn survey_of_degree_five() {
    let r = json(&["survey-maximal", "-n", "5"]);
    let rows = r["survey"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|row| row["status"] == "perfect-code"));
}

#[test]
fn exit_codes_distinguish_errors() {
    // malformed cycle notation
    assert_eq!(pcode(&["check-group", "--group", "S4", "--subgroup", "[(1 2"]).status.code(), Some(2));
    // unknown preset
    assert_eq!(pcode(&["check-group", "--group", "S99", "--subgroup", "e"]).status.code(), Some(2));
    // unknown subcommand
    assert_eq!(pcode(&["frobnicate"]).status.code(), Some(2));
    // parses, but not a subgroup
    assert_eq!(pcode(&["check-group", "--group", "C4", "--subgroup", "[(1 2)]"]).status.code(), Some(4));
    // H not inside A
    assert_eq!(
        pcode(&["check-pair", "--group", "S3", "--a", "[(1 2)]", "--h", "[(1 3)]"]).status.code(),
        Some(4)
    );
}

#[test]
fn exhausted_budget_is_exit_three() {
    let out = pcode(&["--budget", "1", "check-pair", "--family", "dihedral:3"]);
    assert_eq!(out.status.code(), Some(0), "necessary-condition path needs no search");
    let out = pcode(&["--budget", "0", "check-group", "--group", "S5", "--subgroup", "[(1 2 3)]"]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn reports_are_byte_identical() {
    for args in [
        &["--json", "construct", "field-c2:2"][..],
        &["--json", "witness-graph", "--family", "sym-chain:1,2,4"][..],
        &["--json", "check-pair", "--family", "agammal:3,3"][..],
    ] {
        let a = pcode(args);
        let b = pcode(args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn timing_is_opt_in() {
    let r = json(&["check-group", "--group", "S3", "--subgroup", "[(1 2)]"]);
    assert!(r.get("elapsed_ms").is_none());
    assert!(r["verdicts"][0]["elapsed_ms"].is_null());
    let r = json(&["--timing", "check-group", "--group", "S3", "--subgroup", "[(1 2)]"]);
    assert!(r["elapsed_ms"].is_u64());
}

#[test]
fn witness_graph_dot_export() {
    let out = pcode(&["witness-graph", "--family", "sym-chain:1,2,3", "--dot"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("graph"));
    assert_eq!(text.matches("--").count(), 9);
}

#[test]
fn independent_mode_is_accepted() {
    let r = json(&["--mode", "independent", "witness-graph", "--family", "sym-chain:1,2,3"]);
    assert!(r["witness_connection_set"].is_object());
}
