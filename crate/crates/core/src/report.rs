//! Plot-ready renderings of results.
//!
//! Every CSV starts with a `# config: <json>` line holding the resolved
//! configuration; JSON documents carry it in a leading `config` field. Floats
//! use the shortest representation that round-trips, so identical inputs give
//! byte-identical files.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::analysis::SpectrumPoint;
use crate::error::{Error, Result};
use crate::harness::{ExperimentResult, InterBitSweep, LevelsRow, ScalingReport, SweepPoint};

fn header(config: &Value, columns: &str) -> String {
    format!("# config: {config}\n{columns}\n")
}

fn opt(v: Option<f64>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

/// `cycle,cdr` for cycles `1..=plays`.
pub fn cdr_csv(config: &Value, result: &ExperimentResult) -> String {
    let mut out = header(config, "cycle,cdr");
    for (i, c) in result.cdr.iter().enumerate() {
        let _ = writeln!(out, "{},{c}", i + 1);
    }
    out
}

/// `param,value,cdr`.
pub fn sweep_csv(config: &Value, points: &[SweepPoint]) -> String {
    let mut out = header(config, "param,value,cdr");
    for p in points {
        let _ = writeln!(out, "{},{},{}", p.param, p.value, p.cdr);
    }
    out
}

/// One row per Δ_L: the CDR of each problem type, then the CV across types.
pub fn inter_bit_csv(config: &Value, sweep: &InterBitSweep) -> String {
    let mut types: Vec<u8> = sweep.rows.iter().map(|r| r.problem_type).collect();
    types.sort_unstable();
    types.dedup();
    let mut columns = String::from("delta_l");
    for t in &types {
        let _ = write!(columns, ",type{t}");
    }
    columns.push_str(",cv");
    let mut out = header(config, &columns);
    for &(dl, cv) in &sweep.cv {
        let _ = write!(out, "{dl}");
        for &t in &types {
            let _ = write!(out, ",{}", opt(sweep.cdr(t, dl)));
        }
        let _ = writeln!(out, ",{}", opt(cv));
    }
    out
}

/// `p1,k,cdr`.
pub fn levels_csv(config: &Value, rows: &[LevelsRow]) -> String {
    let mut out = header(config, "p1,k,cdr");
    for r in rows {
        let _ = writeln!(out, "{},{},{}", r.p1, r.k, r.cdr);
    }
    out
}

/// `freq_ghz,power_db`.
pub fn spectrum_csv(config: &Value, points: &[SpectrumPoint]) -> String {
    let mut out = header(config, "freq_ghz,power_db");
    for p in points {
        let _ = writeln!(out, "{},{}", p.freq_ghz, p.power_db);
    }
    out
}

/// `lag,acf`.
pub fn acf_csv(config: &Value, acf: &[f64]) -> String {
    let mut out = header(config, "lag,acf");
    for (lag, r) in acf.iter().enumerate() {
        let _ = writeln!(out, "{lag},{r}");
    }
    out
}

/// `tau,etmsd`.
pub fn etmsd_csv(config: &Value, taus: &[usize], values: &[f64]) -> String {
    let mut out = header(config, "tau,etmsd");
    for (tau, v) in taus.iter().zip(values) {
        let _ = writeln!(out, "{tau},{v}");
    }
    out
}

#[derive(Serialize)]
struct WithConfig<'a, T: Serialize> {
    config: &'a Value,
    #[serde(flatten)]
    body: &'a T,
}

/// Pretty JSON of `body` (which must serialize as a map) with a leading
/// `config` field.
pub fn json_with_config<T: Serialize>(config: &Value, body: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(&WithConfig { config, body })
        .map_err(|e| Error::InvalidExperiment(format!("serializing output: {e}")))?;
    s.push('\n');
    Ok(s)
}

#[derive(Serialize)]
struct FitBody<'a> {
    a: Option<f64>,
    b: Option<f64>,
    residuals: Option<&'a [f64]>,
    points: &'a [crate::harness::ScalingPoint],
}

/// `fit.json`: `a`, `b` (null when fewer than two arm counts reached the
/// target), the residuals and every scaling point.
pub fn fit_json(config: &Value, report: &ScalingReport) -> Result<String> {
    let fit = report.fit.as_ref();
    json_with_config(
        config,
        &FitBody {
            a: fit.map(|f| f.a),
            b: fit.map(|f| f.b),
            residuals: fit.map(|f| f.residuals.as_slice()),
            points: &report.points,
        },
    )
}

/// Write via a temporary file in the same directory, then rename over `path`.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let io = |source| Error::Output {
        path: path.to_path_buf(),
        source,
    };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}
