//! End-to-end tests against the compiled binary.

use std::process::{Command, Output};

use serde_json::Value;

fn trigon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trigon"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn moments_gf_matches_the_exact_values() {
    let out = trigon(&["moments", "--n", "6", "--weight", "ears", "--method", "gf"]);
    let v = stdout_json(&out);
    assert_eq!(v["command"], "moments");
    assert_eq!(v["n"], 6);
    assert_eq!(v["weight"], "ears");
    assert_eq!(v["method"], "gf");
    assert_eq!(v["payload"]["mean"], "15/7");
    assert_eq!(v["payload"]["variance"], "6/49");
    assert_eq!(v["payload"]["exact"], true);
    assert!(v["meta"]["runtime_ms"].is_u64());
}

#[test]
fn moment_methods_agree() {
    let mut means = Vec::new();
    for method in ["gf", "closed", "enum"] {
        let out = trigon(&[
            "moments", "--n", "7", "--weight", "oneside", "--method", method,
        ]);
        let v = stdout_json(&out);
        means.push(v["payload"]["mean"].as_str().unwrap().to_string());
    }
    assert!(means.iter().all(|m| m == "7/3"), "{means:?}");

    let out = trigon(&[
        "moments", "--n", "7", "--weight", "oneside", "--method", "numeric",
    ]);
    let v = stdout_json(&out);
    let numeric: f64 = v["payload"]["mean"].as_str().unwrap().parse().unwrap();
    assert!((numeric - 7.0 / 3.0).abs() < 1e-9);
}

#[test]
fn csv_and_json_payloads_carry_identical_values() {
    let json_out = stdout_json(&trigon(&[
        "dist", "--n", "6", "--weight", "ears", "--method", "gf",
    ]));
    let csv_out = stdout_str(&trigon(&[
        "dist", "--n", "6", "--weight", "ears", "--method", "gf", "--format", "csv",
    ]));
    let mut lines = csv_out.lines();
    assert_eq!(lines.next(), Some("value,probability"));
    let csv_rows: Vec<(String, String)> = lines
        .map(|l| {
            let (a, b) = l.split_once(',').unwrap();
            (a.to_string(), b.to_string())
        })
        .collect();
    let json_rows: Vec<(String, String)> = json_out["payload"]["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| {
            (
                e["value"].as_str().unwrap().to_string(),
                e["prob"].as_str().unwrap().to_string(),
            )
        })
        .collect();
    assert_eq!(csv_rows, json_rows);
    assert_eq!(
        csv_rows,
        vec![
            ("2".to_string(), "6/7".to_string()),
            ("3".to_string(), "1/7".to_string())
        ]
    );

    let json_out = stdout_json(&trigon(&[
        "moments", "--n", "8", "--weight", "bluesum", "--method", "gf",
    ]));
    let csv_out = stdout_str(&trigon(&[
        "moments", "--n", "8", "--weight", "bluesum", "--method", "gf", "--format", "csv",
    ]));
    let mut lines = csv_out.lines();
    assert_eq!(lines.next(), Some("mean,variance,exact"));
    let row = lines.next().unwrap();
    let parts: Vec<&str> = row.split(',').collect();
    assert_eq!(parts[0], json_out["payload"]["mean"].as_str().unwrap());
    assert_eq!(parts[1], json_out["payload"]["variance"].as_str().unwrap());
}

#[test]
fn identical_invocations_are_byte_identical_up_to_runtime() {
    let args = [
        "sample",
        "--n",
        "8",
        "--weight",
        "ears",
        "--samples",
        "5000",
        "--seed",
        "7",
    ];
    let mut a = stdout_json(&trigon(&args));
    let mut b = stdout_json(&trigon(&args));
    a["meta"]["runtime_ms"] = 0.into();
    b["meta"]["runtime_ms"] = 0.into();
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
}

#[test]
fn sample_estimates_land_near_the_exact_mean() {
    let out = trigon(&[
        "sample",
        "--n",
        "9",
        "--weight",
        "oneside",
        "--samples",
        "100000",
        "--seed",
        "42",
    ]);
    let v = stdout_json(&out);
    let mean: f64 = v["payload"]["mean"].as_str().unwrap().parse().unwrap();
    let stderr: f64 = v["payload"]["stderr"].as_str().unwrap().parse().unwrap();
    assert!((mean - 45.0 / 13.0).abs() <= 3.0 * stderr);
    assert_eq!(v["meta"]["seed"], 42);
    assert_eq!(v["meta"]["samples"], 100000);
}

#[test]
fn emitted_triangulations_are_valid_and_deterministic() {
    let args = [
        "sample",
        "--n",
        "7",
        "--weight",
        "ears",
        "--samples",
        "50",
        "--seed",
        "3",
        "--emit-triangulations",
    ];
    let a = stdout_json(&trigon(&args));
    let b = stdout_json(&trigon(&args));
    assert_eq!(
        a["payload"]["triangulations"],
        b["payload"]["triangulations"]
    );
    let ts = a["payload"]["triangulations"].as_array().unwrap();
    assert_eq!(ts.len(), 50);
    for t in ts {
        let parsed: trigon::Triangulation = t.as_str().unwrap().parse().unwrap();
        assert_eq!(parsed.n(), 7);
    }
}

#[test]
fn portfolio_square_split() {
    let out = trigon(&["portfolio", "--n", "4", "--k", "2,0"]);
    let v = stdout_json(&out);
    assert_eq!(v["payload"]["probability"], "1/2");
    assert_eq!(v["payload"]["K"], 2);

    let out = trigon(&["portfolio", "--n", "4", "--k", "1,1"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("constraint"), "{err}");
}

#[test]
fn enumerate_text_is_the_golden_order() {
    let out = trigon(&["enumerate", "--n", "5"]);
    assert_eq!(
        stdout_str(&out),
        "5;2-5,3-5\n5;2-4,2-5\n5;1-3,3-5\n5;1-4,2-4\n5;1-3,1-4\n"
    );
    let out = trigon(&["enumerate", "--n", "4", "--format", "json"]);
    let v = stdout_json(&out);
    assert_eq!(v["payload"]["count"], 2);
}

#[test]
fn verify_small_matrix_exits_zero() {
    let out = trigon(&["verify", "--n-max", "5", "--samples", "2000"]);
    let v = stdout_json(&out);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(v["payload"]["pass"], true);
    assert_eq!(v["payload"]["failures"], 0);
    assert!(v["payload"]["checks_total"].as_u64().unwrap() > 40);
    // the report names every comparison
    let reports = v["payload"]["reports"].as_array().unwrap();
    let names: Vec<&str> = reports
        .iter()
        .flat_map(|r| r["checks"].as_array().unwrap())
        .filter_map(|c| c["name"].as_str())
        .collect();
    for expected in [
        "enumeration vs gf",
        "gf vs closed-form",
        "closed-form vs monte-carlo",
        "constancy vs flip-criterion",
        "M*D = I for n=2..25",
        "portfolio vs enumeration",
    ] {
        assert!(names.contains(&expected), "missing {expected}");
    }
}

#[test]
fn exit_codes_match_the_contract() {
    let out = trigon(&["moments", "--n", "6", "--weight", "nope", "--method", "gf"]);
    assert_eq!(out.status.code(), Some(1));
    let out = trigon(&[
        "moments", "--n", "6", "--weight", "ears", "--method", "bogus",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = trigon(&["not-a-command"]);
    assert_eq!(out.status.code(), Some(2));
    // domain error: enumeration cap
    let out = trigon(&["dist", "--n", "20", "--weight", "ears", "--method", "enum"]);
    assert_eq!(out.status.code(), Some(1));
    // domain error: empty sampling run
    let out = trigon(&["sample", "--n", "6", "--weight", "ears", "--samples", "0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn custom_weight_tables_run_through_the_pipeline() {
    // table listing the ear indicator of P_5
    let dir = std::env::temp_dir().join(format!("trigon-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("ears5.csv");
    let mut rows = String::new();
    for l in 1..=5usize {
        for j in l + 1..=5 {
            for r in j + 1..=5 {
                let is_edge = |a: usize, b: usize| b - a == 1 || (a == 1 && b == 5);
                let edges = [is_edge(l, j), is_edge(j, r), is_edge(l, r)]
                    .iter()
                    .filter(|x| **x)
                    .count();
                rows.push_str(&format!("{l},{j},{r},{}\n", u32::from(edges >= 2)));
            }
        }
    }
    std::fs::write(&path, rows).unwrap();
    let spec = format!("custom:{}", path.display());

    let custom = stdout_json(&trigon(&[
        "dist", "--n", "5", "--weight", &spec, "--method", "gf",
    ]));
    let builtin = stdout_json(&trigon(&[
        "dist", "--n", "5", "--weight", "ears", "--method", "gf",
    ]));
    assert_eq!(custom["payload"]["entries"], builtin["payload"]["entries"]);
    std::fs::remove_dir_all(&dir).ok();
}
