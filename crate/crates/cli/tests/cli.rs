use std::process::{Command, Output};

fn patcount(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_patcount"))
        .args(args)
        .env("PATCOUNT_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn count_both_reports_match() {
    let o = patcount(&["count", "--family", "p321-2", "--n", "6", "--mode", "both"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "133 / 133 / match");
}

#[test]
fn count_formula_only() {
    let o = patcount(&["count", "--family", "simion-schmidt", "--n", "1"]);
    assert_eq!(stdout(&o).trim(), "1");
    let o = patcount(&["count", "--family", "p132-1", "--n", "20", "--mode", "formula"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "15905368710");
}

#[test]
fn count_json_is_exact() {
    let o = patcount(&["count", "--family", "p132-1", "--n", "10", "--mode", "both", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["formula"], 19448);
    assert_eq!(v["oracle"], 19448);
    assert_eq!(v["match"], true);
    assert_eq!(v["family"], "p132-1");
}

#[test]
fn exit_codes() {
    assert_eq!(code(&patcount(&["count", "--family", "nope", "--n", "3"])), 2);
    assert_eq!(code(&patcount(&["count", "--family", "p132-1", "--n", "20", "--mode", "oracle"])), 3);
    assert_eq!(code(&patcount(&["biject", "--name", "kratt", "--input", "3 2 1"])), 4);
    assert_eq!(code(&patcount(&["verify", "--suite", "nope"])), 2);
    assert_eq!(code(&patcount(&["verify", "--suite", "formulas", "--nmax", "12"])), 3);
    assert_eq!(code(&patcount(&["frobnicate"])), 2);
}

#[test]
fn domain_errors_name_the_predicate() {
    let o = patcount(&["biject", "--name", "kratt", "--input", "3 2 1"]);
    assert!(stderr(&o).contains("avoids 321"), "{}", stderr(&o));
}

#[test]
fn kratt_example() {
    let o = patcount(&["biject", "--name", "kratt", "--input", "2 1 4 7 3 5 6"]);
    assert_eq!(stdout(&o).trim(), "UUDDUUDUUUDDDD");
    let o = patcount(&["biject", "--name", "kratt", "--input", "2 1 4 7 3 5 6", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["ascents"], serde_json::json!([2, 2, 3]));
    assert_eq!(v["descents"], serde_json::json!([2, 1, 4]));
    let o = patcount(&["biject", "--name", "kratt-inv", "--input", "UUDDUUDUUUDDDD"]);
    assert_eq!(stdout(&o).trim(), "2 1 4 7 3 5 6");
}

#[test]
fn one321_decomposes_321() {
    let o = patcount(&["biject", "--name", "one321", "--input", "3 2 1"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rho"], serde_json::json!([2, 1]));
    assert_eq!(v["sigma"], serde_json::json!([2, 1]));
}

#[test]
fn roundtrips() {
    let cases: &[&[&str]] = &[
        &["--name", "kratt", "--input", "2 1 4 7 3 5 6"],
        &["--name", "one321", "--input", "1 4 3 2 5"],
        &["--name", "phi", "--input", "2 1 3 4 5", "--param", "2"],
        &["--name", "returns", "--input", "UUDDUDUU"],
        &["--name", "nonfinal", "--input", "UUDUDUUDDUDD", "--param", "2"],
        &["--name", "lemma11", "--input", "1 3 2"],
        &["--name", "lemma12", "--input", "3 5 1 2 4"],
    ];
    for args in cases {
        let mut full = vec!["biject"];
        full.extend_from_slice(args);
        full.push("--roundtrip");
        let o = patcount(&full);
        assert_eq!(code(&o), 0, "{args:?}: {}", stderr(&o));
        assert!(stderr(&o).contains("roundtrip ok"), "{args:?}");
    }
}

#[test]
fn table_csv_header_and_rows() {
    let o = patcount(&["table", "--family", "p321-1", "--nmax", "8", "--mode", "both"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,family,formula,oracle,match"));
    let want = [0, 0, 1, 6, 27, 110, 429, 1638];
    for (line, w) in lines.zip(want) {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols[2], w.to_string());
        assert_eq!(cols[3], w.to_string());
        assert_eq!(cols[4], "true");
    }
}

#[test]
fn table_json() {
    let o = patcount(&["table", "--family", "simion-schmidt", "--nmax", "4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let values: Vec<u64> = v.as_array().unwrap().iter().map(|r| r["formula"].as_u64().unwrap()).collect();
    assert_eq!(values, [1, 2, 4, 8]);
}

#[test]
fn enumerate_with_filter() {
    let o = patcount(&["enumerate", "--n", "3", "--filter", "pattern(2 1)==1"]);
    assert_eq!(stdout(&o), "1 3 2\n2 1 3\n");
    let o = patcount(&["enumerate", "--n", "4", "--filter", "pattern(321)==1", "--filter-preset", "last2up"]);
    assert_eq!(stdout(&o).lines().count(), 2);
    let o = patcount(&["enumerate", "--n", "3", "--objects", "dyck", "--filter", "height<=2"]);
    assert_eq!(stdout(&o).lines().count(), 4);
}

#[test]
fn filter_errors_report_column() {
    let o = patcount(&["enumerate", "--n", "3", "--filter", "pattern(2 1)=1"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("column 13"), "{}", stderr(&o));
}

#[test]
fn output_does_not_depend_on_threads() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_patcount"))
            .args(["enumerate", "--n", "6", "--filter", "pattern(132)==1"])
            .env("PATCOUNT_THREADS", threads)
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run("1"), run("4"));
}

#[test]
fn verify_identities() {
    let o = patcount(&["verify", "--suite", "identities", "--nmax", "12"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).ends_with("14 passed, 0 failed\n"));
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("patcount-out-{}.csv", std::process::id()));
    let o = patcount(&["table", "--family", "p132-1", "--nmax", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert!(text.starts_with("n,family,formula,oracle,match\n"));
    assert_eq!(text.lines().count(), 4);
}
