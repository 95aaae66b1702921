use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use sha2::{Digest, Sha256};

// the square root of 5 to 40 places
const SQRT5: &str = "2.2360679774997896964091736687312762354406";

fn lagrange(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lagrange"))
        .current_dir(dir)
        .env_clear()
        .args(["--cache-dir", "cache"])
        .args(args)
        .output()
        .unwrap()
}

fn report(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn num(v: &Value) -> f64 {
    v.as_str().unwrap().parse().unwrap()
}

fn sha256(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

#[test]
fn rauzy_class_members_and_cache() {
    let dir = tempfile::tempdir().unwrap();
    let r = report(&lagrange(dir.path(), &["rauzy-class", "A B/B A"]));
    assert_eq!(r["result"]["member_count"], 1);
    let first = lagrange(dir.path(), &["rauzy-class", "A B C D/D C B A"]);
    let r = report(&first);
    assert_eq!(r["result"]["member_count"], 7);
    assert_eq!(r["result"]["arrows"].as_array().unwrap().len(), 14);
    let cache = dir.path().join(r["result"]["cache_file"].as_str().unwrap());
    assert!(cache.is_file());
    // a second run reads the cache and reports the same bytes
    let second = lagrange(dir.path(), &["rauzy-class", "A B C D/D C B A"]);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn malformed_pair_is_a_parse_error_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let out = lagrange(dir.path(), &["rauzy-class", "A B C/C B"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("position"));
    let out = lagrange(dir.path(), &["rauzy-class", "A B/A B"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn golden_loop_gives_hurwitz_constant() {
    let dir = tempfile::tempdir().unwrap();
    let r = report(&lagrange(
        dir.path(),
        &["spectrum", "periodic", "--class", "A B/B A", "--loop", "tb"],
    ));
    let v = r["result"]["value"].as_str().unwrap();
    assert!(v.starts_with(SQRT5), "{v}");
    let lam: Vec<f64> = r["result"]["lambda_star"]
        .as_array()
        .unwrap()
        .iter()
        .map(num)
        .collect();
    assert!((lam[0] + lam[1] - 1.0).abs() < 1e-15);
    assert_eq!(r["result"]["loop"], "tb");
}

#[test]
fn enumeration_file_is_sorted_json_lines() {
    let dir = tempfile::tempdir().unwrap();
    let r = report(&lagrange(
        dir.path(),
        &["--max-len", "7", "spectrum", "enum", "--out", "vals.jsonl"],
    ));
    let body = std::fs::read(dir.path().join("vals.jsonl")).unwrap();
    assert_eq!(r["result"]["file"]["sha256"], sha256(&body));
    let lines: Vec<Value> = String::from_utf8(body)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len() as u64, r["result"]["count"].as_u64().unwrap());
    let vals: Vec<f64> = lines.iter().map(|l| num(&l["value"])).collect();
    assert!(vals.windows(2).all(|w| w[0] < w[1]));
    assert!(lines[0]["value"].as_str().unwrap().starts_with(SQRT5));
    // the next two values of the classical spectrum
    assert!((vals[1] - 8f64.sqrt()).abs() < 1e-12);
    assert!((vals[2] - 221f64.sqrt() / 5.0).abs() < 1e-12);
}

#[test]
fn crosscheck_on_golden_data() {
    let dir = tempfile::tempdir().unwrap();
    let r = report(&lagrange(
        dir.path(),
        &["--window", "2000:120", "spectrum", "crosscheck"],
    ));
    assert!(num(&r["result"]["rel_diff"]) <= 0.05);
    assert_eq!(r["result"]["passed"], true);
    let out = lagrange(
        dir.path(),
        &[
            "--window",
            "2000:120",
            "--tolerance",
            "statistical=1e-12",
            "spectrum",
            "crosscheck",
        ],
    );
    assert_eq!(out.status.code(), Some(2));
    // the report is still printed
    assert!(serde_json::from_slice::<Value>(&out.stdout).is_ok());
}

#[test]
fn bounds_hold_on_random_and_periodic_data() {
    let dir = tempfile::tempdir().unwrap();
    let r = report(&lagrange(
        dir.path(),
        &[
            "--window",
            "100:60",
            "--seed",
            "3",
            "spectrum",
            "bounds",
            "--class",
            "A B C/C B A",
            "--samples",
            "4",
        ],
    ));
    assert_eq!(r["result"]["violations"], 0);
    assert!(r["result"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["checked"].as_u64().unwrap() > 0));
    let r = report(&lagrange(
        dir.path(),
        &["--window", "100:60", "spectrum", "bounds"],
    ));
    assert_eq!(r["result"]["violations"], 0);
    assert!(num(&r["result"]["periodic_consistency"]["rel_diff"]) <= 1e-6);
    assert!(r["result"]["periodic_consistency"]["stream_value"]
        .as_str()
        .unwrap()
        .starts_with(SQRT5));
}

#[test]
fn rational_datum_reports_a_connection() {
    let dir = tempfile::tempdir().unwrap();
    let datum = r#"{"pi":"A B/B A","lambda":["0.5","0.25"],"tau":["1","-1"]}"#;
    let out = lagrange(dir.path(), &["spectrum", "value", "--datum", datum]);
    assert_eq!(out.status.code(), Some(3));
    let out = lagrange(dir.path(), &["spectrum", "value", "--datum", "{\"pi\":"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn datum_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let text = r#"{"pi":"A B C/C B A","lambda":["0.3141592653589793","0.2718281828459045","0.4142135623730950"],"tau":["1","0.1","-1.2"]}"#;
    std::fs::write(dir.path().join("d.json"), text).unwrap();
    let r = report(&lagrange(
        dir.path(),
        &[
            "--window", "100:40", "spectrum", "value", "--datum", "d.json",
        ],
    ));
    assert_eq!(r["inputs"][0]["sha256"], sha256(text.as_bytes()));
    let v = num(&r["result"]["value"]);
    let a = num(&r["result"]["a_estimate"]);
    assert!(v > 0.0 && (v * a - 1.0).abs() < 1e-12);
}

#[test]
fn torus_info_and_multiplicity() {
    let dir = tempfile::tempdir().unwrap();
    let r = report(&lagrange(dir.path(), &["origami", "info"]));
    assert_eq!(r["result"]["n"], 1);
    assert_eq!(r["result"]["genus"], 1);
    assert_eq!(r["result"]["reduced"], true);
    let r = report(&lagrange(
        dir.path(),
        &["origami", "multiplicity", "--slope", "3/5"],
    ));
    assert!(r["result"]["multiplicity"].as_u64().unwrap() >= 1);
    let r = report(&lagrange(
        dir.path(),
        &[
            "origami",
            "multiplicity",
            "--origami",
            "2;(0 1);",
            "--slope",
            "-1/2",
        ],
    ));
    assert!(r["result"]["multiplicity"].as_u64().unwrap() >= 1);
    let out = lagrange(
        dir.path(),
        &["origami", "info", "--origami", "2;(0)(1);(0)(1)"],
    );
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn six_square_orbit() {
    let dir = tempfile::tempdir().unwrap();
    let json = r#"{"n":6,"right":[1,2,3,4,0,5],"up":[5,1,2,3,4,0]}"#;
    std::fs::write(dir.path().join("x.json"), json).unwrap();
    let r = report(&lagrange(
        dir.path(),
        &["origami", "orbit", "--origami", "x.json"],
    ));
    let res = &r["result"];
    let widths: u64 = res["cusp_widths"]
        .as_array()
        .unwrap()
        .iter()
        .map(|w| w.as_u64().unwrap())
        .sum();
    assert_eq!(widths, res["size"].as_u64().unwrap());
    assert_eq!(res["vertices"].as_array().unwrap().len() as u64, widths);
    assert_eq!(res["m_minus"], 1);
}

#[test]
fn torus_hall_ray() {
    let dir = tempfile::tempdir().unwrap();
    let r = report(&lagrange(
        dir.path(),
        &[
            "--window", "100:40", "origami", "hall", "--x", "9.3", "--out", "d.txt",
        ],
    ));
    let res = &r["result"];
    assert!(num(&res["perron_error"]) <= 1e-4);
    assert!((num(&res["perron"]) - 9.3).abs() <= 1e-4);
    assert_eq!(res["certificate_holds"], true);
    let body = std::fs::read(dir.path().join("d.txt")).unwrap();
    assert_eq!(res["digits_sha256"], sha256(&body));
    assert_eq!(
        body.iter().filter(|&&b| b == b'\n').count() as u64,
        res["digit_count"].as_u64().unwrap()
    );
    let out = lagrange(dir.path(), &["origami", "hall", "--x", "6.5"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn skew_at_golden_digits() {
    let dir = tempfile::tempdir().unwrap();
    let ones = vec!["1"; 200].join(",");
    let r = report(&lagrange(
        dir.path(),
        &["--window", "100:150", "origami", "skew", "--digits", &ones],
    ));
    assert!((num(&r["result"]["value"]) - 5f64.sqrt()).abs() < 1e-12);
    let out = lagrange(dir.path(), &["origami", "skew", "--alpha", "0.5"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn reports_are_reproducible_and_self_describing() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "--window",
        "100:30",
        "origami",
        "hall",
        "--origami",
        "6;(0 1 2 3 4)(5);(0 5)",
        "--x",
        "10",
    ];
    let a = lagrange(dir.path(), &args);
    let b = lagrange(dir.path(), &args);
    assert_eq!(a.stdout, b.stdout);
    let r = report(&a);
    assert_eq!(r["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(r["config"]["precision_bits"], 256);
    assert_eq!(r["config"]["window"]["steps"], 30);
    assert_eq!(r["inputs"][0]["sha256"], sha256(b"6;(0 1 2 3 4)(5);(0 5)"));
    assert_eq!(r["inputs"][1]["sha256"], sha256(b"10"));
}

#[test]
fn environment_overrides_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_lagrange"))
        .current_dir(dir.path())
        .env_clear()
        .env("TL_PRECISION", "128")
        .env("TL_FORMAT", "csv")
        .args(["origami", "info"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("key,value\n"));
    assert!(text.contains("config.precision_bits,128\n"));
    assert!(text.contains("result.genus,1\n"));
    // a flag beats the environment
    let out = Command::new(env!("CARGO_BIN_EXE_lagrange"))
        .current_dir(dir.path())
        .env_clear()
        .env("TL_PRECISION", "128")
        .args(["--precision", "96", "origami", "info"])
        .output()
        .unwrap();
    assert_eq!(report(&out)["config"]["precision_bits"], 96);
}

#[test]
fn usage_errors_use_the_parse_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        lagrange(dir.path(), &["--precision", "32", "origami", "info"])
            .status
            .code(),
        Some(4)
    );
    assert_eq!(
        lagrange(dir.path(), &["spectrum", "nope"]).status.code(),
        Some(4)
    );
    assert_eq!(lagrange(dir.path(), &["--help"]).status.code(), Some(0));
}
