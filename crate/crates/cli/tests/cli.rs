use std::process::{Command, Output};

fn whitehead(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_whitehead"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = whitehead(args);
    assert!(
        out.status.success(),
        "{:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf8 output")
}

#[test]
fn census_defaults_reproduce_eleven_rows() {
    let text = stdout(&["census"]);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 11);
    assert!(rows[0].starts_with("3 "));
    assert!(text.contains("[x1, y1]"));
}

#[test]
fn verify_passes_and_prints_summary() {
    let out = whitehead(&["verify", "--a", "1", "--max-dim", "13"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("PASS (12 dimensions checked)"), "{text}");
}

#[test]
fn verify_detects_a_capped_enumeration() {
    // weight-capped enumeration can no longer match the series oracle
    let out = whitehead(&["verify", "--max-dim", "13", "--max-weight", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(
        text.contains("FAIL (first disagreement at dimension 6"),
        "{text}"
    );
}

#[test]
fn spheres_and_a_are_mutually_exclusive() {
    let out = whitehead(&["basis", "--a", "2", "--spheres", "3,4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn census_rejects_sphere_alphabets() {
    let out = whitehead(&["census", "--spheres", "3,4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}

#[test]
fn max_dim_below_two_is_invalid() {
    let out = whitehead(&["ranks", "--max-dim", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_flags_exit_two() {
    let out = whitehead(&["census", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn ranks_for_a_single_odd_sphere() {
    let csv = stdout(&[
        "ranks",
        "--spheres",
        "3",
        "--max-dim",
        "20",
        "--format",
        "csv",
    ]);
    let mut nonzero = Vec::new();
    for line in csv.lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        if fields[4] != "0" {
            nonzero.push(line.to_string());
        }
    }
    assert_eq!(nonzero, ["3,1,0,0,1"]);
}

#[test]
fn basis_json_lines_parse_and_round_trip_schema() {
    let text = stdout(&["basis", "--max-dim", "9", "--format", "json"]);
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).expect("valid json line");
        assert!(v["whitehead"].is_string());
        assert!(v["weight"].is_u64());
        assert!(v["height"].is_u64());
        assert!(v["class"].is_string());
        assert!(v["multidegree"].is_object());
    }
    let first: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    assert_eq!(first["whitehead"], "x1");
    assert_eq!(first["commutator"], "phi_1");
}

#[test]
fn census_json_matches_schema() {
    let text = stdout(&["census", "--max-dim", "8", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&text).expect("valid json");
    let rows = v.as_array().expect("array of rows");
    assert_eq!(rows.len(), 6);
    assert_eq!(rows[0]["dim"], 3);
    assert_eq!(rows[0]["indecomposable"], "x1");
    assert!(rows[0]["pure"].is_array());
    assert!(rows[0]["hybrid"].is_array());
}

#[test]
fn verify_json_and_dump() {
    let text = stdout(&["verify", "--max-dim", "7", "--format", "json", "--dump"]);
    let v: serde_json::Value = serde_json::from_str(&text).expect("valid json");
    assert_eq!(v["pass"], true);
    assert!(v["rows"].as_array().unwrap().len() == 6);
    let expansions = v["expansions"].as_array().unwrap();
    assert!(expansions
        .iter()
        .any(|e| e["product"] == "[x1, y1]" && e["expansion"] == "1*u1.v1 + -1*v1.u1"));
}

#[test]
fn verify_dump_text_prints_expansions() {
    let text = stdout(&["verify", "--max-dim", "6", "--dump"]);
    assert!(
        text.contains("dim 6: [x1, y1] = 1*u1.v1 + -1*v1.u1"),
        "{text}"
    );
}

#[test]
fn skeleton_lists_decomposables() {
    let text = stdout(&["skeleton", "--max-dim", "8"]);
    let line = text
        .lines()
        .find(|l| l.ends_with("[x1, y1]"))
        .expect("skeleton row for [x1, y1]");
    assert!(line.starts_with("6    5"), "{line}");
    let json = stdout(&["skeleton", "--max-dim", "8", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    let row = v
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["product"] == "[x1, y1]")
        .unwrap();
    assert_eq!(row["skeleton_dim"], 5);
    assert_eq!(row["class"], "HYBRID");
}

#[test]
fn aut_ledger_rows_follow_the_schedule() {
    let csv = stdout(&["aut", "--max-dim", "6", "--format", "csv"]);
    let rows: Vec<&str> = csv.lines().skip(1).collect();
    assert_eq!(
        rows,
        ["1,3,1,0,0,2", "2,4,1,0,0,2", "3,5,1,0,0,2", "4,6,1,1,1,2"]
    );
}

#[test]
fn unicode_flag_switches_glyphs() {
    let text = stdout(&["census", "--max-dim", "6", "--unicode"]);
    assert!(text.contains("[χ1, η1]"));
    assert!(text.contains("η2"));
}

#[test]
fn identical_configs_produce_identical_bytes() {
    for args in [
        vec!["census", "--max-dim", "13", "--format", "json"],
        vec!["basis", "--max-dim", "12", "--format", "csv"],
        vec!["verify", "--a", "2", "--max-dim", "12", "--format", "json"],
    ] {
        let first = whitehead(&args);
        let second = whitehead(&args);
        assert_eq!(first.stdout, second.stdout, "{args:?}");
    }
}
