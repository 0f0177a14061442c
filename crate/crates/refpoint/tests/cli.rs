//! End-to-end checks of the `refpoint` binary: exit codes, document shapes,
//! and byte-identical verification reports.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_refpoint"))
}

fn write_temp(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("refpoint-cli-{}-{}", std::process::id(), name));
    std::fs::write(&path, contents).expect("temp file");
    path
}

fn routes_file() -> PathBuf {
    write_temp(
        "routes.json",
        r#"{"k":2,"points":[[10,1],[6,6],[1,10]],"M":10}"#,
    )
}

fn run_ok(output: &Output) -> serde_json::Value {
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    serde_json::from_slice(&output.stdout).expect("JSON document")
}

#[test]
fn rp_solves_and_reports_exact_rationals() {
    let file = routes_file();
    let output = bin()
        .args(["rp", file.to_str().unwrap(), "--norm", "inf", "--refpoint", "1,1"])
        .output()
        .unwrap();
    let doc = run_ok(&output);
    assert_eq!(doc["objective_vector"], serde_json::json!(["6", "6"]));
    assert_eq!(doc["r_value"], "6");
    assert_eq!(doc["method"], "brute-force");
}

#[test]
fn exit_codes() {
    let file = routes_file();
    // Infeasible reference point: exit 3.
    let output = bin()
        .args(["rp", file.to_str().unwrap(), "--refpoint", "5,5"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(3));

    // Unparseable instance: exit 2.
    let bad = write_temp("bad.json", "{\"nope\":1}");
    let output = bin()
        .args(["rp", bad.to_str().unwrap(), "--refpoint", "0,0"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn pareto_gap_route_reports_coverage() {
    let file = routes_file();
    let output = bin()
        .args([
            "pareto",
            file.to_str().unwrap(),
            "--epsilon",
            "0.1",
            "--via",
            "gap",
        ])
        .output()
        .unwrap();
    let doc = run_ok(&output);
    assert_eq!(doc["alpha"], "121/100");
    assert_eq!(doc["points"].as_array().unwrap().len(), 3);
}

#[test]
fn verify_reports_are_byte_identical_across_runs() {
    let run_once = || {
        bin()
            .args(["verify", "reductions", "--seed", "0", "--trials", "4"])
            .output()
            .unwrap()
    };
    let first = run_once();
    let second = run_once();
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);

    // Thread fan-out must not change the bytes either.
    let threaded = bin()
        .args(["verify", "reductions", "--seed", "0", "--trials", "4"])
        .env("REFPOINT_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(first.stdout, threaded.stdout);
}

#[test]
fn graph_and_lp_dispatch() {
    let graph = write_temp(
        "graph.json",
        r#"{"k":2,"n":2,"s":0,"t":1,"edges":[[0,1,[10,1]],[0,1,[6,6]],[0,1,[1,10]]]}"#,
    );
    let output = bin()
        .args([
            "fptas-sp",
            graph.to_str().unwrap(),
            "--epsilon",
            "0.1",
            "--refpoint",
            "1,1",
            "--norm",
            "cornered:2",
        ])
        .output()
        .unwrap();
    let doc = run_ok(&output);
    assert_eq!(doc["objective_vector"], serde_json::json!(["6", "6"]));
    assert_eq!(doc["method"], "fptas-sp");
    assert_eq!(doc["factor_guarantee"], "11/10");

    let lp = write_temp(
        "lp.json",
        r#"{"n":2,"nonneg":[true,true],
            "rows":[{"a":["1","1"],"rel":"=","b":"1"}],
            "objectives":[["1","0"],["0","1"]]}"#,
    );
    let output = bin()
        .args(["lp-rp", lp.to_str().unwrap(), "--refpoint", "0,0"])
        .output()
        .unwrap();
    let doc = run_ok(&output);
    assert_eq!(doc["r_value"], "1/2");
    assert_eq!(doc["solution"]["x"], serde_json::json!(["1/2", "1/2"]));
}

#[test]
fn fixtures_roundtrip_through_solver() {
    let output = bin().args(["fixtures", "ws-max"]).output().unwrap();
    assert_eq!(output.status.code(), Some(0));
    let fixture = write_temp("wsmax.json", &String::from_utf8_lossy(&output.stdout));
    let output = bin()
        .args(["pareto", fixture.to_str().unwrap(), "--via", "exact"])
        .output()
        .unwrap();
    let doc = run_ok(&output);
    assert_eq!(doc["points"].as_array().unwrap().len(), 3);
}
