use std::f64::consts::PI;
use std::process::{Command, Output};

use serde_json::Value;

fn hexf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hexf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = hexf(args);
    assert!(
        out.status.success(),
        "hexf {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("UTF-8 output")
}

/// Data lines below the comment header and the column header.
fn csv_rows(text: &str) -> Vec<Vec<f64>> {
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    lines.next().expect("column header");
    lines
        .map(|l| l.split(',').map(|x| x.parse().expect("number")).collect())
        .collect()
}

fn json_body(text: &str) -> Value {
    serde_json::from_str(text).expect("valid JSON")
}

#[test]
fn outputs_start_with_invocation_header() {
    let text = stdout(&["kernel", "--type", "dirichlet", "--n", "0", "--grid", "4"]);
    let first = text.lines().next().unwrap();
    assert!(first.starts_with("# hexf "), "{first}");
    assert!(first.ends_with("kernel --type dirichlet --n 0 --grid 4"));
    let doc = json_body(&stdout(&["expand", "--f", "const", "--n", "2"]));
    assert!(doc["generator"]
        .as_str()
        .unwrap()
        .contains("expand --f const --n 2"));
}

#[test]
fn dirichlet_kernel_of_degree_zero_is_one() {
    let text = stdout(&["kernel", "--type", "dirichlet", "--n", "0", "--grid", "4"]);
    assert!(text.contains("\ns1,s2,t1,t2,t3,value\n"));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 16);
    for r in &rows {
        assert_eq!(r.len(), 6);
        assert_eq!(r[5], 1.0);
        assert!((r[2] + r[3] + r[4]).abs() < 1e-15);
    }
}

#[test]
fn cesaro2_kernel_is_nonnegative() {
    let rows = csv_rows(&stdout(&[
        "kernel", "--type", "cesaro2", "--n", "8", "--grid", "256",
    ]));
    assert_eq!(rows.len(), 256 * 256);
    let min = rows.iter().map(|r| r[5]).fold(f64::INFINITY, f64::min);
    assert!(min >= -1e-10, "{min}");
}

#[test]
fn poisson_kernel_at_origin() {
    let r: f64 = 0.5;
    let want = (1.0 + 4.0 * r + r * r) / (1.0 - r).powi(2);
    let rows = csv_rows(&stdout(&[
        "kernel", "--type", "poisson", "--r", "0.5", "--grid", "64",
    ]));
    let origin = rows.iter().find(|row| row[0] == 0.0 && row[1] == 0.0).unwrap();
    assert!((origin[5] - want).abs() < 1e-10, "{}", origin[5]);
}

#[test]
fn expand_exponential_gives_single_unit_entry() {
    let doc = json_body(&stdout(&["expand", "--f", "phi:1,0,-1", "--n", "4"]));
    let entries = doc["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 1);
    assert_eq!(entries[0]["j"], serde_json::json!([1, 0, -1]));
    assert!((entries[0]["re"].as_f64().unwrap() - 1.0).abs() < 1e-14);
    assert!(entries[0]["im"].as_f64().unwrap().abs() < 1e-14);
    assert_eq!(doc["grid_N"], 9);

    let doc = json_body(&stdout(&["expand", "--f", "const", "--n", "2"]));
    assert_eq!(doc["entries"].as_array().unwrap().len(), 1);
}

#[test]
fn expand_gaussian_matches_poisson_summation() {
    let sigma: f64 = 0.3;
    let doc = json_body(&stdout(&["expand", "--f", "gauss:0.3", "--n", "16"]));
    let entries = doc["entries"].as_array().unwrap();
    assert!(!entries.is_empty());
    let mut worst: f64 = 0.0;
    for e in entries {
        let j: Vec<f64> = e["j"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.as_f64().unwrap())
            .collect();
        let e2: f64 = j.iter().map(|x| x * x).sum();
        // Fourier transform of exp(-|t|^2/σ^2) on the plane, divided by |Ω| = 3
        let want = PI * sigma * sigma / 3f64.sqrt() * (-PI * PI * sigma * sigma * e2 / 9.0).exp() / 3.0;
        worst = worst.max((e["re"].as_f64().unwrap() - want).abs());
        worst = worst.max(e["im"].as_f64().unwrap().abs());
    }
    assert!(worst < 1e-8, "{worst}");
}

fn errors(args: &[&str]) -> Vec<f64> {
    let text = stdout(args);
    assert!(text.contains("\nn,error_p\n"));
    csv_rows(&text).into_iter().map(|r| r[1]).collect()
}

#[test]
fn summability_sweeps() {
    let e = errors(&[
        "summab",
        "--f",
        "gauss:0.3",
        "--method",
        "cesaro:1",
        "--ns",
        "4,8,16,32",
    ]);
    assert!(e.windows(2).all(|w| w[1] < w[0]), "{e:?}");
    let e = errors(&["summab", "--f", "poly:4", "--method", "dirichlet", "--ns", "4,6"]);
    assert!(e.iter().all(|&v| v < 1e-12), "{e:?}");
    let e = errors(&[
        "summab",
        "--f",
        "gauss:0.3",
        "--method",
        "abel",
        "--ns",
        "4,8,16,32",
    ]);
    assert!(e.windows(2).all(|w| w[1] < w[0]), "{e:?}");
    let e = errors(&["summab", "--f", "cone", "--method", "jackson:2,2", "--ns", "8,16"]);
    assert!(e[1] < e[0]);
    let e = errors(&[
        "summab", "--f", "poly:3", "--method", "eta", "--ns", "3", "--p", "2",
    ]);
    assert!(e[0] < 1e-10);
}

#[test]
fn lebesgue_and_moment_reports() {
    let text = stdout(&["report", "lebesgue", "--ns", "8,16,32"]);
    assert!(text.contains("# summary fit_b="));
    let doc = json_body(&stdout(&[
        "report",
        "moments",
        "--r",
        "2",
        "--nu",
        "2",
        "--ns",
        "4,8,16,32",
        "--format",
        "json",
    ]));
    let spread = doc["summary"]["spread_nu=2"].as_f64().unwrap();
    assert!(spread < 4.0, "{spread}");
    assert_eq!(doc["rows"].as_array().unwrap().len(), 4);
}

#[test]
fn seeded_reports_are_byte_identical() {
    let args = [
        "report",
        "bernstein",
        "--alpha",
        "1,0,0",
        "--seed",
        "7",
        "--trials",
        "40",
    ];
    let a = hexf(&args);
    let b = hexf(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let single = Command::new(env!("CARGO_BIN_EXE_hexf"))
        .args(args)
        .env("HEXF_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(a.stdout, single.stdout);
    let other = hexf(&[
        "report",
        "bernstein",
        "--alpha",
        "1,0,0",
        "--seed",
        "8",
        "--trials",
        "40",
    ]);
    assert_ne!(csv_body(&a.stdout), csv_body(&other.stdout));
}

fn csv_body(bytes: &[u8]) -> String {
    String::from_utf8_lossy(bytes)
        .lines()
        .filter(|l| !l.starts_with('#'))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("hexf-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("k.csv");
    let p = path.to_str().unwrap();
    let out = hexf(&["kernel", "--type", "theta", "--n", "2", "--grid", "8", "--out", p]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(csv_rows(&text).len(), 64);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_errors_exit_with_two() {
    let cases: [&[&str]; 6] = [
        &["summab", "--f", "gauss:0.3", "--method", "cesaro", "--ns", "4"],
        &["summab", "--f", "sinc", "--method", "dirichlet", "--ns", "4"],
        &["kernel", "--type", "poisson", "--r", "1.5"],
        &["kernel", "--type", "jackson", "--n", "3", "--r", "0.5"],
        &["expand", "--f", "phi:1,1,1", "--n", "2"],
        &["frobnicate"],
    ];
    for args in cases {
        let out = hexf(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    let out = Command::new(env!("CARGO_BIN_EXE_hexf"))
        .args(["kernel", "--type", "theta", "--n", "1", "--grid", "2"])
        .env("HEXF_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
