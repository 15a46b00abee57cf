use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn qsp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(args: &[&str]) -> Value {
    let out = qsp(args);
    assert_eq!(
        code(&out),
        0,
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn crate_file(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(rel)
}

fn schema(name: &str) -> jsonschema::Validator {
    let text = std::fs::read_to_string(crate_file(&format!("schemas/{name}.schema.json"))).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn assert_valid(name: &str, v: &Value) {
    let s = schema(name);
    let errs: Vec<String> = s
        .iter_errors(v)
        .map(|e| format!("{} at {}", e, e.instance_path))
        .collect();
    assert!(errs.is_empty(), "{name}: {errs:?}");
}

#[test]
fn verify_table_row() {
    let v = json(&["verify", "--p", "2", "--n", "7", "--f", "X^3+X+1"]);
    let r = &v["results"];
    assert_eq!(r["splits"], true);
    assert_eq!(
        (r["beta_num"].as_i64(), r["beta_den"].as_i64()),
        (Some(7), Some(9))
    );
    assert_eq!(r["root_count"], "8");
    assert_eq!(r["companion_dim"], 3);
}

#[test]
fn verify_binomial_example() {
    let v = json(&[
        "verify", "--p", "2", "--n", "4", "--mult", "--a", "3", "--nprime", "3",
    ]);
    let r = &v["results"]["report"];
    assert_eq!(r["root_count"], "6");
    assert!((r["beta"].as_f64().unwrap() - 0.7044).abs() < 1e-4);
}

#[test]
fn verify_non_splitting_exits_2() {
    let out = qsp(&["verify", "--p", "2", "--n", "4", "--f", "X^2+X+1"]);
    assert_eq!(code(&out), 2);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"]["splits"], false);
}

#[test]
fn near_split_fraction() {
    // X^2+X+1 over F_{3^2}: (X−1)^2 leaves a one-dimensional root space, 3 of 9 roots
    let out = qsp(&[
        "verify",
        "--p",
        "3",
        "--n",
        "2",
        "--f",
        "X^2+X+1",
        "--min-fraction",
        "0.3",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let out = qsp(&[
        "verify",
        "--p",
        "3",
        "--n",
        "2",
        "--f",
        "X^2+X+1",
        "--min-fraction",
        "0.5",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn parse_error_points_at_position() {
    let out = qsp(&["verify", "--p", "2", "--n", "4", "--f", "X^2+*X+1"]);
    assert_eq!(code(&out), 4);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("position 4"), "{err}");
    assert!(err.contains("      ^"), "{err}");
}

#[test]
fn usage_errors_exit_4() {
    assert_eq!(
        code(&qsp(&[
            "search",
            "--p",
            "2",
            "--nprime-max",
            "4",
            "--coeffs",
            ""
        ])),
        4
    );
    assert_eq!(
        code(&qsp(&[
            "search",
            "--p",
            "2",
            "--nprime-max",
            "4",
            "--coeffs",
            "0"
        ])),
        4
    );
    assert_eq!(code(&qsp(&["verify", "--p", "2"])), 4);
    assert_eq!(code(&qsp(&["frobnicate"])), 4);
    assert_eq!(
        code(&qsp(&["families", "--type", "m2", "--k", "2", "--n", "1"])),
        4
    );
    assert_eq!(
        code(&qsp(&[
            "--workers",
            "0",
            "bound",
            "--nprime",
            "3",
            "--ell",
            "1"
        ])),
        4
    );
    assert_eq!(code(&qsp(&["--help"])), 0);
}

#[test]
fn caps_exit_3() {
    // 2^13 − 1 is prime but too large to enumerate divisors
    assert_eq!(code(&qsp(&["mersenne", "--k", "13"])), 3);
    assert_eq!(code(&qsp(&["ecdlp-demo", "--p", "5", "--n", "7"])), 3);
}

#[test]
fn table_scope_p7() {
    let out = qsp(&["search", "--table-b1", "--p", "7", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text
        .lines()
        .any(|l| l.starts_with("X^7+X+1,48,") && l.contains(",7,")));
    assert!(text
        .lines()
        .any(|l| l.starts_with("X^8+X+1,57,") && l.contains(",7,")));
}

#[test]
fn table_scope_p2_against_transcription() {
    let v = json(&["search", "--table-b1", "--p", "2"]);
    let cmp = &v["results"]["table_comparison"];
    assert_eq!(cmp["missing"], 0);
    assert_eq!(cmp["rows_in_scope"], 29);
    assert_valid("search", &v["results"]);
    for rec in v["results"]["records"].as_array().unwrap() {
        assert_valid("search_record", rec);
    }
}

#[test]
fn bound_example() {
    let v = json(&["bound", "--nprime", "3", "--ell", "1"]);
    let r = &v["results"];
    assert_eq!(r["min_n"], 7);
    assert_eq!(r["oracles_agree"], true);
    assert_eq!(r["bound_certified"], true);
    let ns: Vec<i64> = r["steps"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["n"].as_i64().unwrap())
        .collect();
    for n in 3..=6 {
        assert!(ns.contains(&n));
    }
    let text = stdout(&qsp(&[
        "bound", "--nprime", "3", "--ell", "1", "--format", "text",
    ]));
    assert!(text.contains("oracle agreement: PASS"));
}

#[test]
fn mersenne_contains_type2_member() {
    let v = json(&["mersenne", "--k", "5", "--ell-max", "7"]);
    let sparse = v["results"]["sparse"].as_array().unwrap();
    assert!(sparse.iter().any(|d| d["f"] == "X^15+X^7+X^3+X+1"));
}

#[test]
fn families_records() {
    let v = json(&[
        "families", "--type", "t1", "--p", "2", "--r", "1", "--a", "1",
    ]);
    assert_eq!(v["results"]["display"], "X^3+X+1");
    assert_eq!(v["results"]["record"]["n"], 7);
    let v = json(&[
        "families", "--type", "t3", "--of", "t2", "--p", "2", "--r", "1", "--d", "2", "--a", "1",
    ]);
    assert_eq!(v["results"]["record"]["n"], 7);
    let v = json(&["families", "--type", "m2", "--k", "2", "--n", "2"]);
    assert_eq!(v["results"]["p"], "5");
    assert_eq!(v["results"]["root_count"], "4");
}

#[test]
fn schemas_validate_every_subcommand() {
    let cases: [(&str, &[&str]); 11] = [
        (
            "verify",
            &["verify", "--p", "2", "--n", "7", "--f", "X^3+X+1"],
        ),
        (
            "verify",
            &[
                "verify", "--p", "2", "--n", "4", "--mult", "--a", "3", "--nprime", "3",
            ],
        ),
        ("search", &["search", "--p", "3", "--nprime-max", "4"]),
        (
            "families",
            &[
                "families", "--type", "t2", "--p", "2", "--r", "1", "--d", "2", "--a", "1",
            ],
        ),
        (
            "families",
            &["families", "--type", "m3", "--k", "2", "--n", "3"],
        ),
        ("bound", &["bound", "--nprime", "4", "--ell", "2"]),
        ("mersenne", &["mersenne", "--k", "3", "--ell-max", "2"]),
        ("estimate", &["estimate", "--beta", "0.5", "--optimal"]),
        ("estimate", &["estimate", "--table"]),
        ("ecdlp_demo", &["ecdlp-demo", "--instances", "2"]),
        (
            "families",
            &["families", "--type", "t1bis", "--p", "3", "--a", "3"],
        ),
    ];
    for (name, args) in cases {
        let v = json(args);
        assert_valid("envelope", &v);
        assert_valid(name, &v["results"]);
    }
}

fn golden(name: &str, args: &[&str]) {
    let want = std::fs::read_to_string(crate_file(&format!("tests/golden/{name}"))).unwrap();
    let out = qsp(args);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), want, "{name} drifted");
}

#[test]
fn golden_csv() {
    golden(
        "estimate_table.csv",
        &["estimate", "--table", "--format", "csv"],
    );
    golden(
        "search_p3_n6.csv",
        &["search", "--p", "3", "--nprime-max", "6", "--format", "csv"],
    );
    golden(
        "mersenne_k5.csv",
        &["mersenne", "--k", "5", "--ell-max", "7", "--format", "csv"],
    );
}

#[test]
fn results_independent_of_workers() {
    for args in [
        &[
            "search",
            "--p",
            "2",
            "--nprime-max",
            "10",
            "--coeffs",
            "binary",
        ][..],
        &["ecdlp-demo", "--instances", "3", "--seed", "7"][..],
    ] {
        let one = json(&[&["--workers", "1"], args].concat());
        let four = json(&[&["--workers", "4"], args].concat());
        assert_eq!(one["results"], four["results"]);
        assert_eq!(one["config"]["seed"], four["config"]["seed"]);
    }
}

#[test]
fn demo_seed_is_recorded_and_changes_instances() {
    let a = json(&["ecdlp-demo", "--instances", "3", "--seed", "1"]);
    let b = json(&["ecdlp-demo", "--instances", "3", "--seed", "2"]);
    assert_eq!(a["config"]["seed"], 1);
    assert_eq!(a["results"]["agreements"], 3);
    assert_ne!(a["results"]["instances"], b["results"]["instances"]);
}
