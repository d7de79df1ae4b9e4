use std::fs;
use std::path::Path;
use std::process::Command;

fn cfcalc(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cfcalc"))
        .args(args)
        .output()
        .expect("running cfcalc");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const CIRCLE: &str = r#"{"vertices":["p","q","r"],"top_cells":[["p","q"],["q","r"],["p","r"]]}"#;

#[test]
fn info_on_a_circle() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "circle.json", CIRCLE);
    let (code, out, _) = cfcalc(&["info", &f]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "vertices              3\nsimplices             6\ndimension             1\n\
         f-vector              3 3\neuler-characteristic  0\nlabels                none\n"
    );
    let (_, json, _) = cfcalc(&["info", &f, "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["euler_characteristic"], 0);
    assert_eq!(v["f_vector"], serde_json::json!([3, 3]));
}

#[test]
fn sullivan_passes_on_a_circle() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "circle.json", CIRCLE);
    let (code, out, _) = cfcalc(&["sullivan", &f]);
    assert_eq!(code, 0);
    assert_eq!(out, "verdict  pass-within-budget\n");
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad_cell = write(
        dir.path(),
        "bad.json",
        r#"{"vertices":["p"],"top_cells":[["p","p"]]}"#,
    );
    let (code, out, err) = cfcalc(&["info", &bad_cell]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("top_cells[0]: malformed cell"), "{err}");

    let unknown = write(
        dir.path(),
        "unknown.json",
        r#"{"vertices":["p"],"top_cells":[["p","z"]]}"#,
    );
    let (code, _, err) = cfcalc(&["info", &unknown]);
    assert_eq!(code, 2);
    assert!(
        err.contains("top_cells[0][1]: unknown vertex \"z\""),
        "{err}"
    );

    let circle = write(dir.path(), "circle.json", CIRCLE);
    let (code, _, err) = cfcalc(&["eval", &circle, "--expr", "1+"]);
    assert_eq!(code, 2);
    assert!(err.contains("offset 2"), "{err}");

    let (code, _, err) = cfcalc(&["table", &circle]);
    assert_eq!(code, 2);
    assert!(err.contains("labeled"), "{err}");

    let (code, _, _) = cfcalc(&["check-set", &circle, "--depth", "0"]);
    assert_eq!(code, 2);
    let (code, _, _) = cfcalc(&["info", "/nonexistent/file.json"]);
    assert_eq!(code, 2);
    let (code, _, err) = cfcalc(&["fixtures", "torus", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown fixture"), "{err}");
}

#[test]
fn table_rows_and_formats() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    assert_eq!(cfcalc(&["fixtures", "figure-eight", "--out", out]).0, 0);
    let f = dir.path().join("figure-eight.json");
    let f = f.to_str().unwrap();
    let (code, csv, _) = cfcalc(&[
        "table", f, "--row", "1", "--row", "L(1) + 1", "--format", "csv",
    ]);
    assert_eq!(code, 0);
    assert_eq!(csv, "term,arc,wedge,integral\n1,1,1,-1\n1 + L(1),2,3,-1\n");
    let (code, json, _) = cfcalc(&["table", f, "--row", "W(1)", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["rows"][0]["values"]["wedge"], -1);
    assert_eq!(v["rows"][0]["integral"], -1);
}

#[test]
fn exported_fixtures_reload() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let (code, listing, _) = cfcalc(&["fixtures", "--out", out]);
    assert_eq!(code, 0);
    assert_eq!(listing.lines().count(), 7);
    let y = dir.path().join("y.json");
    let (code, info, _) = cfcalc(&["info", y.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(code, 0);
    assert!(info.contains("euler-characteristic,0\n"), "{info}");
    assert!(info.contains("labels,a b c d e f\n"), "{info}");
}

#[test]
fn exhaustive_reports_a_count() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    cfcalc(&["fixtures", "y", "--out", out]);
    let y = dir.path().join("y.json");
    let (code, json, _) = cfcalc(&[
        "check-link",
        y.to_str().unwrap(),
        "--exhaustive",
        "--max-functions",
        "300",
        "--format",
        "json",
    ]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert!(v["obstructions_found"].as_u64().unwrap() > 1);
    assert_eq!(v["budget_used"]["functions"], 300);
}
