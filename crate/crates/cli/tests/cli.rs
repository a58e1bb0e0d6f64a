use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use qentropy_cli::manifest::RunManifest;
use qentropy_cli::output::{
    CURVE_HEADER, DIM_SCAN_HEADER, GLOBAL_HEADER, MINIMA_HEADER, SCATTER_HEADER,
};
use qentropy_cli::run;
use tempfile::TempDir;

fn path_arg(p: &Path) -> String {
    p.to_str().expect("UTF-8 temp path").to_string()
}

fn invoke(args: &[&str]) -> i32 {
    run(std::iter::once("qentropy").chain(args.iter().copied()))
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_path(path).expect("readable CSV");
    let header = r.headers().unwrap().iter().map(str::to_string).collect();
    let rows = r
        .records()
        .map(|rec| rec.unwrap().iter().map(str::to_string).collect())
        .collect();
    (header, rows)
}

fn out(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

#[test]
fn binary_selftest_exits_zero() {
    let status = Command::new(env!("CARGO_BIN_EXE_qentropy"))
        .arg("selftest")
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(0));
    let stdout = String::from_utf8(status.stdout).unwrap();
    assert!(stdout.lines().any(|l| l.starts_with("PASS werner q=2")));
    assert!(!stdout.contains("FAIL"));
}

#[test]
fn binary_reports_usage_errors_with_code_two() {
    let status = Command::new(env!("CARGO_BIN_EXE_qentropy"))
        .args(["volume-curve", "--no-such-flag"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn invalid_parameters_exit_two() {
    let dir = TempDir::new().unwrap();
    let o = path_arg(&out(&dir, "x.csv"));
    for args in [
        vec!["global-vs-q", "--q", "0", "--out", &o],
        vec!["global-vs-q", "--q", "-2", "--out", &o],
        vec!["global-vs-q", "--q", "nan", "--out", &o],
        vec!["volume-curve", "--dims", "1", "2", "--out", &o],
        vec!["volume-curve", "--samples", "0", "--out", &o],
        vec![
            "volume-curve",
            "--workers",
            "0",
            "--samples",
            "10",
            "--out",
            &o,
        ],
        vec!["volume-curve", "--axis", "purity", "--out", &o],
        vec!["dim-scan", "--pairs", "6x7", "--samples", "10", "--out", &o],
        vec!["dim-scan", "--pairs", "2by2", "--out", &o],
        vec![
            "c2-scatter",
            "--dims",
            "2",
            "3",
            "--samples",
            "10",
            "--out",
            &o,
        ],
    ] {
        assert_eq!(invoke(&args), 2, "{args:?}");
    }
}

#[test]
fn unwritable_output_exits_three() {
    let dir = TempDir::new().unwrap();
    let o = path_arg(&dir.path().join("missing").join("x.csv"));
    assert_eq!(invoke(&["global-vs-q", "--samples", "50", "--out", &o]), 3);
}

#[test]
fn volume_curve_schema_and_exact_round_trip() {
    let dir = TempDir::new().unwrap();
    let path = out(&dir, "volume.csv");
    let code = invoke(&[
        "volume-curve",
        "--samples",
        "3000",
        "--q",
        "0.5,1,inf",
        "--bins",
        "12",
        "--out",
        &path_arg(&path),
    ]);
    assert_eq!(code, 0);
    let (header, rows) = read_csv(&path);
    assert_eq!(header, CURVE_HEADER);
    assert_eq!(rows.len(), 4 * 12);
    let labels: Vec<&str> = rows.iter().step_by(12).map(|r| r[0].as_str()).collect();
    assert_eq!(labels, ["0.5", "1", "inf", "ppt"]);
    let mut total = 0;
    for row in &rows[..12] {
        let n: u64 = row[3].parse().unwrap();
        let k: u64 = row[4].parse().unwrap();
        total += n;
        if n == 0 {
            assert!(row[5].is_empty() && row[6].is_empty());
        } else {
            let p: f64 = row[5].parse().unwrap();
            assert_eq!(p, k as f64 / n as f64);
            let se: f64 = row[6].parse().unwrap();
            assert_eq!(se, (p * (1.0 - p) / n as f64).sqrt());
        }
    }
    assert_eq!(total, 3000);
}

#[test]
fn coincidence_curve_writes_minima() {
    let dir = TempDir::new().unwrap();
    let path = out(&dir, "coinc.csv");
    let code = invoke(&[
        "coincidence-curve",
        "--samples",
        "2000",
        "--axis",
        "lmax",
        "--bins",
        "10",
        "--out",
        &path_arg(&path),
    ]);
    assert_eq!(code, 0);
    let (header, rows) = read_csv(&path);
    assert_eq!(header, CURVE_HEADER);
    assert!(rows.iter().all(|r| r[1] == "lmax"));
    let (mheader, minima) = read_csv(&dir.path().join("coinc.minima.csv"));
    assert_eq!(mheader, MINIMA_HEADER);
    let qs: Vec<&str> = minima.iter().map(|r| r[0].as_str()).collect();
    assert_eq!(qs, ["1", "2", "5", "inf"]);
    for m in &minima {
        let p: f64 = m[2].parse().unwrap();
        assert!((0.0..=1.0).contains(&p));
    }
}

#[test]
fn global_vs_q_covers_both_limits() {
    let dir = TempDir::new().unwrap();
    let path = out(&dir, "global.csv");
    assert_eq!(
        invoke(&[
            "global-vs-q",
            "--samples",
            "4000",
            "--out",
            &path_arg(&path)
        ]),
        0
    );
    let (header, rows) = read_csv(&path);
    assert_eq!(header, GLOBAL_HEADER);
    assert_eq!(rows.len(), 10);
    assert_eq!(rows[0][0], "1");
    assert_eq!(rows[0][1].parse::<f64>().unwrap(), 1.0);
    assert_eq!(rows[9][0], "inf");
    assert_eq!(rows[9][1].parse::<f64>().unwrap(), 0.0);
    assert!(rows.iter().all(|r| r[4] == "4000"));
}

#[test]
fn dim_scan_and_scatter_schemas() {
    let dir = TempDir::new().unwrap();
    let scan = out(&dir, "scan.csv");
    assert_eq!(
        invoke(&[
            "dim-scan",
            "--pairs",
            "2x2,2x3",
            "--samples",
            "500",
            "--out",
            &path_arg(&scan)
        ]),
        0
    );
    let (header, rows) = read_csv(&scan);
    assert_eq!(header, DIM_SCAN_HEADER);
    assert_eq!(rows.len(), 2);
    assert_eq!(&rows[1][..3], ["2", "3", "6"]);

    let scatter = out(&dir, "scatter.csv");
    assert_eq!(
        invoke(&[
            "c2-scatter",
            "--samples",
            "3000",
            "--out",
            &path_arg(&scatter)
        ]),
        0
    );
    let (header, rows) = read_csv(&scatter);
    assert_eq!(header, SCATTER_HEADER);
    assert!(!rows.is_empty());
    for r in rows {
        assert_eq!(r[0], "inf");
        assert!(r[1].parse::<f64>().unwrap() > 0.0);
        assert!(r[2].parse::<f64>().unwrap() > 0.0);
    }
}

#[test]
fn manifest_replays_the_run() {
    let dir = TempDir::new().unwrap();
    let first = out(&dir, "first.csv");
    let code = invoke(&[
        "volume-curve",
        "--dims",
        "2",
        "3",
        "--samples",
        "1500",
        "--seed",
        "11",
        "--q",
        "2,inf",
        "--bins",
        "8",
        "--out",
        &path_arg(&first),
    ]);
    assert_eq!(code, 0);
    let manifest_path = RunManifest::path_for(&first);
    assert_eq!(manifest_path, dir.path().join("first.manifest.json"));
    let mut manifest =
        RunManifest::from_json(&fs::read_to_string(&manifest_path).unwrap()).unwrap();
    assert_eq!(manifest.get("subcommand"), Some("volume-curve"));
    assert!(manifest.get("version").is_some());
    assert!(manifest.get("wall_time_seconds").is_some());

    let replay = out(&dir, "replay.csv");
    manifest.set("out", replay.display());
    assert_eq!(run(manifest.to_argv()), 0);
    assert_eq!(fs::read(&first).unwrap(), fs::read(&replay).unwrap());
}

#[test]
fn output_is_independent_of_worker_count() {
    let dir = TempDir::new().unwrap();
    let mut files = Vec::new();
    for workers in ["1", "2", "3"] {
        let path = out(&dir, &format!("w{workers}.csv"));
        let code = invoke(&[
            "coincidence-curve",
            "--samples",
            "5000",
            "--seed",
            "3",
            "--workers",
            workers,
            "--out",
            &path_arg(&path),
        ]);
        assert_eq!(code, 0);
        files.push(fs::read(path).unwrap());
    }
    assert!(files.windows(2).all(|w| w[0] == w[1]));
}
