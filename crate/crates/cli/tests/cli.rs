//! End-to-end tests of the `dickson` binary: exit codes, formats,
//! determinism across worker counts, and the JSON round trip.

use std::process::{Command, Output};

use dickson_cli::report::read_report;

fn dickson(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dickson"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn eval_single_element() {
    let out = dickson(&["eval", "--q", "5", "--n", "2", "--a", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "4\n");
}

#[test]
fn eval_full_table() {
    let out = dickson(&["eval", "--q", "5", "--n", "1"]);
    assert!(out.status.success());
    for a in 0..5 {
        assert!(stdout(&out).contains(&format!("a={a} d=1")));
    }

    // d_3 = 1 + a in characteristic 2; codes add by XOR.
    let out = dickson(&["eval", "--q", "4", "--n", "3"]);
    let text = stdout(&out);
    for (a, d) in [(0, 1), (1, 0), (2, 3), (3, 2)] {
        assert!(
            text.contains(&format!("a={a} d={d}")),
            "missing a={a}: {text}"
        );
    }
}

#[test]
fn eval_rejects_bad_element() {
    let out = dickson(&["eval", "--q", "5", "--n", "2", "--a", "7"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sum_both_methods_match() {
    let out = dickson(&[
        "sum", "--q", "5", "--n", "2", "--power", "3", "--method", "both",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("closed=0"));
    assert!(text.contains("oracle=0"));
    assert!(text.contains("match=true"));

    let out = dickson(&[
        "sum", "--q", "4", "--n", "3", "--power", "3", "--method", "both",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("closed=1"));
    assert!(text.contains("oracle=1"));
}

#[test]
fn sum_csv_row() {
    let out = dickson(&[
        "sum", "--q", "5", "--n", "6", "--power", "1", "--method", "both", "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("q,n,u,v,u_prime,v_prime,closed,oracle,match")
    );
    // 3n = 18 decomposes as u' = 3, v' = 3 over q = 5.
    assert_eq!(lines.next(), Some("5,6,1,1,3,3,0,0,true"));
}

#[test]
fn sum_rejects_odd_endpoint_for_cube_closed_form() {
    let out = dickson(&[
        "sum", "--q", "5", "--n", "24", "--power", "3", "--method", "closed",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("outside the closed-form range"));
    // The oracle still serves that index.
    let out = dickson(&[
        "sum", "--q", "5", "--n", "24", "--power", "3", "--method", "oracle",
    ]);
    assert!(out.status.success());
}

#[test]
fn sum_power_two_has_no_closed_form() {
    let out = dickson(&["sum", "--q", "5", "--n", "2", "--power", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = dickson(&[
        "sum", "--q", "5", "--n", "2", "--power", "2", "--method", "oracle",
    ]);
    assert!(out.status.success());
}

#[test]
fn verify_suites_pass() {
    let out = dickson(&["verify", "--qset", "2,3,4,5", "--suite", "identities"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("status=pass"));

    let out = dickson(&["verify", "--qset", "2,3,4,5,7,8,9", "--suite", "h"]);
    assert!(out.status.success());

    let out = dickson(&["verify", "--qset", "5", "--suite", "sums"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("cases=23"));
}

#[test]
fn verify_rejects_bad_qset_and_suite() {
    let out = dickson(&["verify", "--qset", "6", "--suite", "sums"]);
    assert_eq!(out.status.code(), Some(2));
    let out = dickson(&["verify", "--qset", "5", "--suite", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn search_csv_records() {
    let out = dickson(&["search", "--q", "5", "--filters", "off", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "q,n,u,v,u_prime,v_prime,cube_sum,filter_verdict,is_permutation"
    );
    assert_eq!(lines.len(), 24); // header + n in [1, 23]
    assert!(lines
        .iter()
        .any(|l| l.starts_with("5,2,") && l.ends_with("true")));
    assert!(lines
        .iter()
        .any(|l| l.starts_with("5,3,") && l.ends_with("true")));
    // Summary goes to stderr for machine formats.
    assert!(stderr(&out).contains("desirable pairs"));
}

#[test]
fn search_filters_do_not_change_desirable_set() {
    let on = dickson(&["search", "--q", "7", "--filters", "on"]);
    let off = dickson(&["search", "--q", "7", "--filters", "off"]);
    let pick = |s: &str| {
        s.lines()
            .filter(|l| l.trim_start().starts_with("n="))
            .map(String::from)
            .collect::<Vec<_>>()
    };
    assert_eq!(pick(&stdout(&on)), pick(&stdout(&off)));
}

#[test]
fn search_below_hypothesis_reports_not_applicable() {
    let out = dickson(&["search", "--q", "4"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("not_applicable=14"));
}

#[test]
fn search_deterministic_across_jobs() {
    let reference = stdout(&dickson(&[
        "search", "--q", "9", "--format", "csv", "--jobs", "1",
    ]));
    for jobs in ["1", "2", "4"] {
        for _ in 0..2 {
            let got = stdout(&dickson(&[
                "search", "--q", "9", "--format", "csv", "--jobs", jobs,
            ]));
            assert_eq!(got, reference, "jobs={jobs}");
        }
    }
}

#[test]
fn json_reports_round_trip() {
    for args in [
        vec!["search", "--q", "5", "--format", "json"],
        vec!["eval", "--q", "9", "--n", "4", "--format", "json"],
        vec![
            "sum", "--q", "8", "--n", "9", "--power", "3", "--format", "json",
        ],
        vec![
            "verify", "--qset", "4,5", "--suite", "cases", "--format", "json",
        ],
        vec!["field-info", "--q", "9", "--format", "json"],
    ] {
        let out = dickson(&args);
        assert!(out.status.success(), "{args:?}");
        let text = stdout(&out);
        let report = read_report(&text).expect("parses");
        let reserialized = serde_json::to_value(&report).unwrap();
        let original: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(reserialized, original, "{args:?}");
    }
}

#[test]
fn field_info_shows_modulus_tower() {
    let out = dickson(&["field-info", "--q", "9"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("GF(9) = F_3[T]/(T^2 + 1)"));
    assert!(text.contains("GF(81) = GF(9)[T]/("));

    let out = dickson(&["field-info", "--p", "2", "--e", "2"]);
    assert!(stdout(&out).contains("T^2 + T + 1"));
}

#[test]
fn inconsistent_field_selection_is_usage_error() {
    let out = dickson(&["field-info", "--q", "9", "--p", "2", "--e", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = dickson(&["eval", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = dickson(&["eval", "--q", "12", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
    // Bound: default maximum order is 512.
    let out = dickson(&["eval", "--q", "1024", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("records.csv");
    let out = dickson(&[
        "search",
        "--q",
        "5",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "");
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.starts_with("q,n,u,v,"));
    assert_eq!(written.lines().count(), 24);
}
