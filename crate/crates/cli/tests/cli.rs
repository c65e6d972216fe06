use std::process::{Command, Output};

use serde_json::Value;

fn dwbc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dwbc"))
        .args(args)
        .env_remove("DWBC_PRECISION")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn two_point_routes_agree() {
    let out = dwbc(&[
        "twopoint", "--n", "3", "--lambda", "pi/2", "--eta", "pi/6", "--route", "all",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = json(&out);
    assert_eq!(v["schema_version"], 1);
    assert!(v["deviation"].as_f64().unwrap() < 1e-40);
    let routes = v["routes"].as_object().unwrap();
    for r in ["det", "identity", "ortho", "oracle"] {
        assert_eq!(routes[r].as_array().unwrap().len(), 9, "{r}");
    }
}

#[test]
fn census_total_is_the_two_enumeration() {
    let out = dwbc(&["census", "--n", "4", "--x", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["values"]["evaluations"][0]["total"], "64");
}

#[test]
fn census_csv_is_long_format() {
    let out = dwbc(&["census", "--n", "3", "--x", "1", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,table,r1,r2,value"));
    assert_eq!(lines.next(), Some("1,total,,,7"));
    assert_eq!(text.lines().count(), 1 + 1 + 3 + 9);
}

#[test]
fn verify_passes() {
    let out = dwbc(&["verify", "--n-max", "5", "--seed", "7"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let v = json(&out);
    assert!(v["values"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["passed"] == true));
}

#[test]
fn output_is_deterministic_without_timing() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<_> = (0..2)
        .map(|i| dir.path().join(format!("run{i}.json")))
        .collect();
    for p in &paths {
        let out = dwbc(&[
            "onepoint",
            "--n",
            "4",
            "--route",
            "all",
            "--no-timing",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    let a = std::fs::read(&paths[0]).unwrap();
    assert_eq!(a, std::fs::read(&paths[1]).unwrap());
    let v: Value = serde_json::from_slice(&a).unwrap();
    assert!(v["elapsed_ms"].is_null());
}

#[test]
fn left_origin_reverses_positions() {
    let right = json(&dwbc(&[
        "onepoint", "--n", "4", "--eta", "0.3", "--lambda", "1.1", "--r", "1",
    ]));
    let left = json(&dwbc(&[
        "onepoint",
        "--n",
        "4",
        "--eta",
        "0.3",
        "--lambda",
        "1.1",
        "--r",
        "4",
        "--left-origin",
    ]));
    assert_eq!(right["values"][0]["value"], left["values"][0]["value"]);
}

#[test]
fn inhomogeneous_routes_agree() {
    let base = [
        "--lambdas",
        "1.2,1.3,pi/3",
        "--nus",
        "0,0.05,-0.04",
        "--eta",
        "0.4",
        "--route",
        "all",
    ];
    for cmd in ["partition", "onepoint", "twopoint"] {
        let mut args = vec![cmd];
        args.extend(base);
        let out = dwbc(&args);
        assert_eq!(out.status.code(), Some(0), "{cmd}");
        assert!(json(&out)["deviation"].as_f64().unwrap() < 1e-40, "{cmd}");
    }
}

#[test]
fn usage_errors_exit_with_two() {
    let cases: &[&[&str]] = &[
        &["onepoint", "--bogus"],
        &["onepoint", "--n", "4", "--r", "5"],
        &["onepoint", "--n", "4", "--route", "sum"],
        &["partition", "--n", "3", "--eta", "2"],
        &["partition", "--n", "0"],
        &["partition", "--n", "10", "--route", "oracle"],
        &["partition", "--lambdas", "1,1.1", "--nus", "0"],
        &["partition", "--n", "3", "--lambda", "pi/x"],
    ];
    for args in cases {
        assert_eq!(dwbc(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn genfun_identity_holds() {
    let out = dwbc(&["genfun", "--n", "4", "--lambda", "1.1", "--eta", "0.35"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["deviation"].as_f64().unwrap() <= v["tolerance"].as_f64().unwrap());
    assert_eq!(v["values"]["onepoint"].as_array().unwrap().len(), 4);
}
