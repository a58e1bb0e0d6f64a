//! Command-line front end: parses arguments, runs one survey, writes the CSV
//! and its manifest.
//!
//! Exit codes: 0 success, 1 numerical failure or failed self-test, 2 usage
//! error, 3 I/O failure.

pub mod args;
pub mod error;
pub mod manifest;
pub mod output;

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::Parser;

use qentropy::survey::{self, DimScanConfig, SurveyConfig};
use qentropy::{selftest, EntropicParameter};

use args::{Cli, Command, CurveArgs, RunArgs};
pub use error::CliError;
use manifest::RunManifest;

/// Parses `argv` (program name first), runs the command and returns the exit
/// status.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}

fn default_out(name: &str, out: &Option<PathBuf>) -> PathBuf {
    out.clone()
        .unwrap_or_else(|| PathBuf::from(format!("{name}.csv")))
}

fn survey_config(run: &RunArgs) -> Result<SurveyConfig, CliError> {
    Ok(SurveyConfig::new(run.dims()?, run.samples, run.seed).with_workers(run.workers))
}

fn base_manifest(name: &str, run: &RunArgs, out: &Path) -> RunManifest {
    let mut m = RunManifest::new(name, run.seed, run.workers);
    m.set("dims", format!("{} {}", run.dims[0], run.dims[1]));
    m.set("samples", run.samples);
    m.set("out", out.display());
    m
}

fn join_q(list: &[EntropicParameter]) -> String {
    list.iter()
        .map(|q| q.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn finish(manifest: &mut RunManifest, started: Instant, out: &Path) -> Result<i32, CliError> {
    manifest.set(
        "wall_time_seconds",
        format!("{:.3}", started.elapsed().as_secs_f64()),
    );
    let mpath = manifest.write_next_to(out)?;
    println!("wrote {} and {}", out.display(), mpath.display());
    Ok(0)
}

fn curve_setup(
    name: &str,
    a: &CurveArgs,
) -> Result<(SurveyConfig, RunManifest, PathBuf), CliError> {
    let q_list = args::parse_q_list(&a.q)?;
    let cfg = survey_config(&a.run)?
        .with_q_list(q_list.clone())
        .with_axis(a.axis.into(), a.bins);
    let out = default_out(name, &a.run.out);
    let mut m = base_manifest(name, &a.run, &out);
    m.set("q", join_q(&q_list));
    m.set("axis", cfg.axis.name());
    m.set("bins", a.bins);
    Ok((cfg, m, out))
}

fn dispatch(command: Command) -> Result<i32, CliError> {
    let started = Instant::now();
    match command {
        Command::VolumeCurve(a) => {
            let (cfg, mut m, out) = curve_setup("volume-curve", &a)?;
            let curves = survey::run_positive_volume_curve(&cfg)?;
            output::to_file(&out, |f| output::write_curves(f, &curves))?;
            finish(&mut m, started, &out)
        }
        Command::CoincidenceCurve(a) => {
            let (cfg, mut m, out) = curve_setup("coincidence-curve", &a)?;
            let (curves, minima) = survey::run_coincidence_curve(&cfg)?;
            output::to_file(&out, |f| output::write_curves(f, &curves))?;
            let minima_path = out.with_extension("minima.csv");
            output::to_file(&minima_path, |f| {
                output::write_minima(f, &cfg.q_list, &minima)
            })?;
            finish(&mut m, started, &out)
        }
        Command::GlobalVsQ(a) => {
            let grid = match &a.q {
                Some(list) => args::parse_q_list(list)?,
                None => survey::default_q_grid(),
            };
            let cfg = survey_config(&a.run)?;
            let out = default_out("global-vs-q", &a.run.out);
            let mut m = base_manifest("global-vs-q", &a.run, &out);
            m.set("q", join_q(&grid));
            let rows = survey::run_global_coincidence_vs_q(&cfg, &grid)?;
            output::to_file(&out, |f| output::write_global(f, &rows))?;
            finish(&mut m, started, &out)
        }
        Command::DimScan(a) => {
            let pairs = args::parse_pairs(&a.pairs)?;
            let cfg = DimScanConfig {
                pairs,
                samples: a.samples,
                seed: a.seed,
                workers: a.workers,
                max_total_dim: a.max_dim,
            };
            let out = default_out("dim-scan", &a.out);
            let mut m = RunManifest::new("dim-scan", a.seed, a.workers);
            m.set("pairs", &a.pairs);
            m.set("samples", a.samples);
            m.set("max_dim", a.max_dim);
            m.set("out", out.display());
            let rows = survey::run_dimension_scan(&cfg)?;
            output::to_file(&out, |f| output::write_dim_scan(f, &rows))?;
            finish(&mut m, started, &out)
        }
        Command::C2Scatter(a) => {
            let q = args::parse_q_token(&a.q)?;
            let cfg = survey_config(&a.run)?;
            let out = default_out("c2-scatter", &a.run.out);
            let mut m = base_manifest("c2-scatter", &a.run, &out);
            m.set("q", q);
            let points = survey::run_c2_scatter(&cfg, q)?;
            output::to_file(&out, |f| output::write_scatter(f, q, &points))?;
            finish(&mut m, started, &out)
        }
        Command::Selftest => {
            let checks = selftest::run()?;
            let mut failed = 0;
            for c in &checks {
                let verdict = if c.passed() { "PASS" } else { "FAIL" };
                if !c.passed() {
                    failed += 1;
                }
                println!(
                    "{verdict} {}: observed {:.15} expected {:.15} (tol {:e})",
                    c.name, c.observed, c.expected, c.tolerance
                );
            }
            println!(
                "{} of {} checks passed",
                checks.len() - failed,
                checks.len()
            );
            Ok(if failed == 0 { 0 } else { 1 })
        }
    }
}
