//! CSV schemas. Reals are written with 17 significant digits so that parsing
//! them back reproduces the in-memory values exactly.

use std::fs::File;
use std::io::Write;
use std::path::Path;

use qentropy::survey::{BinCurve, CurveMinimum, DimScanRow, GlobalRow, ScatterPoint};
use qentropy::EntropicParameter;

use crate::error::CliError;

pub const CURVE_HEADER: [&str; 7] = [
    "q",
    "axis",
    "bin_center",
    "n_total",
    "n_event",
    "p",
    "std_err",
];
pub const MINIMA_HEADER: [&str; 3] = ["q", "r_m", "p_m"];
pub const GLOBAL_HEADER: [&str; 5] = ["q", "inv_q", "p", "std_err", "n"];
pub const DIM_SCAN_HEADER: [&str; 8] = [
    "n_a",
    "n_b",
    "n_total_dim",
    "p_entropic_inf",
    "se_entropic",
    "p_ppt",
    "se_ppt",
    "n",
];
pub const SCATTER_HEADER: [&str; 3] = ["q", "delta", "c_squared"];

/// 17 significant digits in scientific notation.
pub fn real(x: f64) -> String {
    format!("{x:.16e}")
}

fn optional(x: Option<f64>) -> String {
    x.map(real).unwrap_or_default()
}

fn writer<W: Write>(sink: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(sink)
}

pub fn write_curves<W: Write>(sink: W, curves: &[BinCurve]) -> Result<(), CliError> {
    let mut w = writer(sink);
    w.write_record(CURVE_HEADER)?;
    for curve in curves {
        let q = curve.kind.q_label();
        for bin in &curve.bins {
            w.write_record([
                q.clone(),
                curve.axis.name().to_string(),
                real(bin.center),
                bin.n_total.to_string(),
                bin.n_event.to_string(),
                optional(bin.p()),
                optional(bin.std_err()),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_minima<W: Write>(
    sink: W,
    q_list: &[EntropicParameter],
    minima: &[CurveMinimum],
) -> Result<(), CliError> {
    let mut w = writer(sink);
    w.write_record(MINIMA_HEADER)?;
    for (q, m) in q_list.iter().zip(minima) {
        w.write_record([q.to_string(), real(m.r_m), real(m.p_m)])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_global<W: Write>(sink: W, rows: &[GlobalRow]) -> Result<(), CliError> {
    let mut w = writer(sink);
    w.write_record(GLOBAL_HEADER)?;
    for row in rows {
        w.write_record([
            row.q.to_string(),
            real(row.q.inverse_q()),
            real(row.p),
            real(row.std_err),
            row.n.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_dim_scan<W: Write>(sink: W, rows: &[DimScanRow]) -> Result<(), CliError> {
    let mut w = writer(sink);
    w.write_record(DIM_SCAN_HEADER)?;
    for row in rows {
        w.write_record([
            row.dims.n_a().to_string(),
            row.dims.n_b().to_string(),
            row.dims.total().to_string(),
            real(row.entropic_inf.p),
            real(row.entropic_inf.std_err),
            real(row.ppt.p),
            real(row.ppt.std_err),
            row.n.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_scatter<W: Write>(
    sink: W,
    q: EntropicParameter,
    points: &[ScatterPoint],
) -> Result<(), CliError> {
    let mut w = writer(sink);
    w.write_record(SCATTER_HEADER)?;
    let label = q.to_string();
    for p in points {
        w.write_record([label.clone(), real(p.delta), real(p.c_squared)])?;
    }
    w.flush()?;
    Ok(())
}

/// Creates `path` and hands the open file to `write`.
pub fn to_file<F>(path: &Path, write: F) -> Result<(), CliError>
where
    F: FnOnce(File) -> Result<(), CliError>,
{
    let file = File::create(path)?;
    write(file)
}
