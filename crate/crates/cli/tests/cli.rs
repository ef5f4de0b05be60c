use ellpair_cli::{run, EXIT_INVALID, EXIT_NOT_FOUND, EXIT_OK};
use ellpair_core::census::parse_csv;
use serde_json::Value;

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn ellpair(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("ellpair").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn json(args: &[&str]) -> Value {
    let mut args = args.to_vec();
    args.push("--json");
    let r = ellpair(&args);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    serde_json::from_str(&r.out).unwrap()
}

#[test]
fn pair_text_and_json_agree() {
    let text = ellpair(&["pair", "7", "13"]);
    assert_eq!(text.code, EXIT_OK);
    assert_eq!(text.out.trim(), "(7, 13)_3 is an elliptic pair, A = 1");
    let v = json(&["pair", "7", "13"]);
    assert_eq!(v["command"], "pair");
    let p = &v["payload"];
    assert_eq!(
        (p["d"].as_u64(), p["a"].as_i64(), p["is_pair"].as_bool()),
        (Some(3), Some(1), Some(true))
    );
    assert!(
        text.out.contains(&format!("_{}", p["d"]))
            && text.out.ends_with(&format!("A = {}\n", p["a"]))
    );
}

#[test]
fn pair_with_wrong_d() {
    let r = ellpair(&["pair", "7", "13", "--d", "11"]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.out.contains("not an elliptic pair over 11"));
    assert_eq!(json(&["pair", "7", "23"])["payload"]["is_pair"], false);
}

#[test]
fn smallest_proper_cycle() {
    let v = json(&["cycle-search", "--bound", "300000"]);
    let cycles = v["payload"].as_array().unwrap();
    assert_eq!(cycles.len(), 1);
    let values: Vec<u64> = cycles[0]["values"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_u64().unwrap())
        .collect();
    assert_eq!(values, [275269, 274723, 275227, 276277, 276823, 276319]);
    assert_eq!(
        (cycles[0]["a"].as_i64(), cycles[0]["b"].as_i64()),
        (Some(251), Some(266))
    );
}

#[test]
fn mod7_table_has_one_survivor() {
    let v = json(&["mod7-table"]);
    let rows = v["payload"].as_array().unwrap();
    assert_eq!(rows.len(), 49);
    let nonzero: Vec<_> = rows.iter().filter(|r| r["product"] != 0).collect();
    assert_eq!(nonzero.len(), 1);
    assert_eq!(
        (
            nonzero[0]["a"].as_u64(),
            nonzero[0]["b"].as_u64(),
            nonzero[0]["product"].as_u64()
        ),
        (Some(6), Some(0), Some(1))
    );
    let csv = ellpair(&["mod7-table", "--csv"]);
    assert_eq!(csv.out.lines().count(), 50);
    assert!(csv.out.contains("\n6,0,1,1,1,1,1,1,1\n"));
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["frobnicate"][..],
        &["pair", "7"],
        &["pair", "seven", "13"],
        &["census", "11"],
        &["order", "7", "3", "--threads", "0"],
        &["pair", "7", "13", "--json", "--csv"],
        &[],
    ] {
        let r = ellpair(args);
        assert_eq!(r.code, EXIT_INVALID, "{args:?}");
        assert!(r.out.is_empty(), "{args:?}");
        assert!(r.err.contains("Usage"), "{args:?}: {}", r.err);
    }
}

#[test]
fn domain_errors_exit_one() {
    for args in [
        &["orders", "11"][..],
        &["census", "7", "--x", "100"],
        &["class-number", "99"],
        &["cycle-from-ab", "1", "2"],
    ] {
        let r = ellpair(args);
        assert_eq!(r.code, EXIT_INVALID, "{args:?}");
        assert!(r.err.starts_with("error:"), "{args:?}");
    }
}

#[test]
fn exhausted_search_exits_two() {
    let r = ellpair(&["aliquot", "7", "19", "--limit", "100"]);
    assert_eq!(r.code, EXIT_NOT_FOUND);
    assert!(r.err.contains("100"));
}

#[test]
fn help_and_version_go_to_stdout() {
    for args in [&["--help"][..], &["census", "--help"], &["--version"]] {
        let r = ellpair(args);
        assert_eq!(r.code, EXIT_OK, "{args:?}");
        assert!(!r.out.is_empty() && r.err.is_empty());
    }
}

#[test]
fn negative_arguments() {
    let v = json(&["order", "7", "-3"]);
    assert_eq!(v["payload"]["order"], 3);
    let v = json(&["cycle-from-ab", "2", "-1"]);
    assert!(v["payload"][0]["values"].is_array());
}

#[test]
fn seed_is_echoed_and_reproducible() {
    let a = ellpair(&["order", "1000003", "5", "--seed", "42", "--json"]);
    let b = ellpair(&["order", "1000003", "5", "--seed", "42", "--json"]);
    assert_eq!(a.out, b.out);
    let v: Value = serde_json::from_str(&a.out).unwrap();
    assert_eq!(v["seed"], 42);
    assert!(json(&["pair", "7", "13"]).get("seed").is_none());
}

#[test]
fn thread_count_does_not_change_output() {
    for args in [
        &[
            "table2", "--x", "200000", "--hmax", "2", "--dmax", "500", "--csv",
        ][..],
        &["scan-census", "--x", "20000", "--json"],
        &["longest-list", "43", "--bound", "5000"],
    ] {
        let one = ellpair(&[args, &["--threads", "1"]].concat());
        let four = ellpair(&[args, &["--threads", "4"]].concat());
        assert_eq!(one.code, EXIT_OK);
        assert_eq!(one.out, four.out, "{args:?}");
    }
}

#[test]
fn table2_writes_census_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("census.csv");
    let r = ellpair(&[
        "table2",
        "--x",
        "100000",
        "--hmax",
        "1",
        "--dmax",
        "200",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("d,h,sqrt_d_over_h2,Y,c_hat\n3,1,1.732051,"));
    let rows = parse_csv(&text).unwrap();
    assert_eq!(
        rows.iter().map(|r| r.d).collect::<Vec<_>>(),
        [3, 11, 19, 43, 67, 163]
    );
    let census = json(&["census", "163", "--x", "100000"]);
    assert_eq!(census["payload"]["Y"].as_u64(), Some(rows[5].y));
}

#[test]
fn table2_reports_unwritable_path() {
    let r = ellpair(&[
        "table2",
        "--x",
        "1000",
        "--hmax",
        "1",
        "--dmax",
        "20",
        "--out",
        "/nonexistent/dir/t.csv",
    ]);
    assert_eq!(r.code, EXIT_INVALID);
    assert!(r.err.contains("i/o"));
}

#[test]
fn lists_and_bounds() {
    let v = json(&["list", "41", "163"]);
    assert_eq!(v["payload"]["primes"].as_array().unwrap().len(), 40);
    let v = json(&["mld", "163", "--bound", "100"]);
    let p = &v["payload"];
    assert_eq!(
        (p["m"].as_u64(), p["l_hat"].as_u64(), p["f_hat"].as_i64()),
        (Some(41), Some(40), Some(1))
    );
    let v = json(&["anomalous", "3", "--below", "100"]);
    assert_eq!(v["payload"]["primes"], serde_json::json!([7, 19, 37, 61]));
    assert_eq!(json(&["class-number", "1555"])["payload"]["h"], 4);
    assert_eq!(
        json(&["decompose", "7", "3"])["payload"]["representation"]["a"],
        2
    );
}
