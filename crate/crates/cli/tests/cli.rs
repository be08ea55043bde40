//! End-to-end runs of the `sympow` binary against the fixture corpus.
//!
//! Reports are compared byte for byte with `tests/golden/`. Set
//! `SYMPOW_BLESS=1` to rewrite the golden files after a verified change.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).to_path_buf()
}

fn sympow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sympow"))
        .args(args)
        .env_remove("SYMPOW_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn fixture(name: &str) -> String {
    root().join("fixtures").join(name).display().to_string()
}

fn report(args: &[&str]) -> (Value, i32) {
    let out = sympow(args);
    let code = out.status.code().unwrap();
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stderr));
    });
    (v, code)
}

/// (golden name, fixture, command arguments)
const GOLDEN: &[(&str, &str, &[&str])] = &[
    ("fano.resurgence", "fano.json", &["resurgence"]),
    ("fano.rees-degree", "fano.json", &["rees-degree"]),
    ("ten_cubics.resurgence", "ten_cubics.json", &["resurgence"]),
    (
        "ten_quartics.resurgence",
        "ten_quartics.json",
        &["resurgence"],
    ),
    (
        "triangle3.containment-2-2",
        "triangle3.json",
        &["containment", "2", "2"],
    ),
    (
        "triangle3.containment-3-2",
        "triangle3.json",
        &["containment", "3", "2"],
    ),
    ("triangle3.resurgence", "triangle3.json", &["resurgence"]),
    ("triangle3.gamma-2", "triangle3.json", &["gamma", "2"]),
    ("triangle3.lambda", "triangle3.json", &["lambda", "3", "6"]),
    (
        "triangle3.strict-bound-2-2",
        "triangle3.json",
        &["strict-bound", "2", "2"],
    ),
    (
        "triangle3.chudnovsky-3-2-1",
        "triangle3.json",
        &["chudnovsky", "3", "2", "1"],
    ),
    (
        "triangle3.certify-expected",
        "triangle3.json",
        &["certify-expected"],
    ),
    (
        "sixteen_quadrics.waldschmidt",
        "sixteen_quadrics.json",
        &["waldschmidt"],
    ),
    (
        "sixteen_quadrics.asymptotic",
        "sixteen_quadrics.json",
        &["asymptotic"],
    ),
    (
        "three_triangles.resurgence",
        "three_triangles.json",
        &["resurgence"],
    ),
    (
        "pair_intersection3.resurgence",
        "pair_intersection3.txt",
        &["resurgence"],
    ),
    (
        "pair_intersection4.resurgence",
        "pair_intersection4.txt",
        &["resurgence"],
    ),
    (
        "pair_intersection5.resurgence",
        "pair_intersection5.txt",
        &["resurgence"],
    ),
    (
        "pair_intersection4.closure-3",
        "pair_intersection4.txt",
        &["closure", "3"],
    ),
    (
        "nonradical.symbolic-4",
        "nonradical.txt",
        &["symbolic", "4"],
    ),
    (
        "nonradical.containment-4-3",
        "nonradical.txt",
        &["containment", "4", "3"],
    ),
    ("nonradical.decompose", "nonradical.txt", &["decompose"]),
    ("nonradical.asymptotic", "nonradical.txt", &["asymptotic"]),
    (
        "four_cubics.resurgence",
        "four_cubics.json",
        &["resurgence"],
    ),
    ("four_cubics.b", "four_cubics.json", &["b"]),
    ("principal.waldschmidt", "principal.json", &["waldschmidt"]),
];

#[test]
fn golden_reports() {
    let bless = std::env::var_os("SYMPOW_BLESS").is_some();
    let dir = root().join("tests").join("golden");
    let mut mismatches = Vec::new();
    for (name, file, cmd) in GOLDEN {
        let path = fixture(file);
        let mut args: Vec<&str> = cmd.to_vec();
        args.extend(["--ideal", &path]);
        let out = sympow(&args);
        assert!(
            out.status.code() == Some(0),
            "{name}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let golden = dir.join(format!("{name}.json"));
        if bless {
            std::fs::create_dir_all(&dir).unwrap();
            std::fs::write(&golden, &out.stdout).unwrap();
            continue;
        }
        let expected = std::fs::read(&golden).unwrap_or_default();
        if expected != out.stdout {
            mismatches.push(*name);
        }
    }
    assert!(mismatches.is_empty(), "golden mismatches: {mismatches:?}");
}

#[test]
fn fano_report_values() {
    let (r, code) = report(&["resurgence", "--ideal", &fixture("fano.json")]);
    assert_eq!(code, 0);
    let res = &r["result"];
    assert_eq!(res["rho"], "3/2");
    assert_eq!(res["rho_hat"], "9/7");
    assert_eq!(res["b"], 1);
    assert_eq!(res["witness"]["s"], 3);
    assert_eq!(res["witness"]["r"], 2);
    assert_eq!(r["status"], "exact");
}

#[test]
fn fano_file_lists_the_seven_lines() {
    let (r, _) = report(&["decompose", "--ideal", &fixture("fano.json")]);
    let gens: Vec<String> = r["input"]["gens"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g.as_str().unwrap().replace('*', ""))
        .collect();
    assert_eq!(gens.join(", "), "abd, bce, cdf, aef, acg, deg, bfg");
}

#[test]
fn triangle_containment_fails_with_witness() {
    let (r, code) = report(&[
        "containment",
        "2",
        "2",
        "--ideal",
        &fixture("triangle3.json"),
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["holds"], false);
    assert_eq!(r["result"]["witness"], "x*y*z");
}

#[test]
fn principal_waldschmidt_is_one() {
    let (r, _) = report(&["waldschmidt", "--ideal", &fixture("principal.json")]);
    assert_eq!(r["result"]["waldschmidt"], "1/1");
}

#[test]
fn human_and_json_forms_agree() {
    let (a, _) = report(&["resurgence", "--ideal", &fixture("triangle3.json")]);
    let (b, _) = report(&["resurgence", "--ideal", &fixture("triangle3.txt")]);
    assert_eq!(a, b);
}

#[test]
fn byte_identical_across_thread_counts() {
    let path = fixture("three_triangles.json");
    let one = sympow(&["resurgence", "--threads", "1", "--ideal", &path]);
    let four = sympow(&["resurgence", "--threads", "4", "--ideal", &path]);
    let again = sympow(&["resurgence", "--threads", "4", "--ideal", &path]);
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(four.stdout, again.stdout);
}

#[test]
fn failed_hypothesis_exits_two() {
    let (r, code) = report(&[
        "rho-hat-bound",
        "0",
        "2",
        "--ideal",
        &fixture("triangle3.json"),
    ]);
    assert_eq!(code, 2);
    assert_eq!(r["status"], "hypothesis-failed");
    assert!(r["result"]["witness"].is_string());
}

#[test]
fn errors_exit_one() {
    let out = sympow(&["resurgence", "--ideal", "/nonexistent/ideal.json"]);
    assert_eq!(out.status.code(), Some(1));
    let out = sympow(&[
        "containment",
        "x",
        "2",
        "--ideal",
        &fixture("triangle3.json"),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let out = sympow(&[
        "resurgence",
        "--mode",
        "sqfree",
        "--ideal",
        &fixture("nonradical.txt"),
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn parse_errors_report_position() {
    let dir = std::env::temp_dir().join(format!("sympow-parse-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "vars: x y\ngens: x*y, x*q\n").unwrap();
    let out = sympow(&["decompose", "--ideal", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2, column 14"), "{err}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn out_flag_and_cache_reproduce_stdout() {
    let dir = std::env::temp_dir().join(format!("sympow-cache-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    let path = fixture("fano.json");
    let plain = sympow(&["resurgence", "--ideal", &path]).stdout;
    let out_file = dir.join("report.json");
    let run_cached = || {
        Command::new(env!("CARGO_BIN_EXE_sympow"))
            .args([
                "resurgence",
                "--ideal",
                &path,
                "--out",
                out_file.to_str().unwrap(),
            ])
            .env("SYMPOW_CACHE_DIR", dir.join("cache"))
            .status()
            .unwrap()
    };
    assert!(run_cached().success());
    assert_eq!(std::fs::read(&out_file).unwrap(), plain);
    let entries = std::fs::read_dir(dir.join("cache")).unwrap().count();
    assert_eq!(entries, 1);
    assert!(run_cached().success());
    assert_eq!(std::fs::read(&out_file).unwrap(), plain);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn timing_is_opt_in() {
    let path = fixture("triangle3.json");
    let (plain, _) = report(&["waldschmidt", "--ideal", &path]);
    assert!(plain.get("timing_ms").is_none());
    let (timed, _) = report(&["waldschmidt", "--timing", "--ideal", &path]);
    assert!(timed["timing_ms"].is_u64());
}
