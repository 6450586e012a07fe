//! Plain-text CSV output with `#` metadata lines.
//!
//! Values are rendered with 17 significant digits so a written file parses back
//! to the identical `f64`. Non-finite values are written as `nan`, `inf`, `-inf`.

use super::config::{bc_label, sigma_label, RunConfig};
use super::convergence::ConvergenceTable;
use super::sweep::SweepRow;
use crate::domain::{Grid1D, ModelKind, State};
use crate::error::{Error, Result};
use std::fmt::Write as _;
use std::path::Path;

/// Bit-stable decimal rendering.
pub fn fmt_f64(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{v:.16e}")
    }
}

fn header_names(kind: ModelKind) -> (&'static str, &'static str) {
    match kind {
        ModelKind::Hhe => ("E", "F"),
        ModelKind::EulerFriction => ("rho", "rhou"),
    }
}

fn push_meta(out: &mut String, meta: &[(String, String)]) {
    for (k, v) in meta {
        let _ = writeln!(out, "# {k}={v}");
    }
}

/// Metadata lines describing a run configuration at time `t`.
pub fn run_metadata(config: &RunConfig, t: f64) -> Vec<(String, String)> {
    let model = match config.model() {
        ModelKind::Hhe => "hhe",
        ModelKind::EulerFriction => "euler",
    };
    vec![
        ("model".into(), model.into()),
        ("scheme".into(), config.scheme.name().into()),
        ("case".into(), config.case.name().into()),
        ("bc".into(), bc_label(&config.boundary())),
        ("eps".into(), fmt_f64(config.eps)),
        ("sigma".into(), sigma_label(&config.sigma)),
        ("N".into(), config.n_cells.to_string()),
        ("dt_policy".into(), config.dt_policy.to_string()),
        ("cfl".into(), fmt_f64(config.cfl)),
        ("seed".into(), config.seed.to_string()),
        ("t".into(), fmt_f64(t)),
    ]
}

/// Snapshot text: metadata, header `x,<a>,<b>`, one row per interior cell.
pub fn snapshot_string(state: &State, grid: &Grid1D, meta: &[(String, String)]) -> Result<String> {
    state.check_grid(grid)?;
    let mut out = String::new();
    push_meta(&mut out, meta);
    let (a, b) = header_names(state.kind);
    let _ = writeln!(out, "x,{a},{b}");
    for (j, i) in grid.interior().enumerate() {
        let _ = writeln!(out, "{},{},{}", fmt_f64(grid.centers[j]), fmt_f64(state.a[i]), fmt_f64(state.b[i]));
    }
    Ok(out)
}

pub fn write_snapshot(path: &Path, state: &State, grid: &Grid1D, meta: &[(String, String)]) -> Result<()> {
    std::fs::write(path, snapshot_string(state, grid, meta)?)?;
    Ok(())
}

/// Convergence text: metadata, one `# eoc_eps=...` line per eps, then the rows.
pub fn convergence_string(table: &ConvergenceTable, meta: &[(String, String)]) -> String {
    let mut out = String::new();
    push_meta(&mut out, meta);
    for e in &table.eoc {
        let _ = writeln!(
            out,
            "# eoc_eps={} slope_linf_a={} slope_linf_b={} slope_l2_a={} slope_l2_b={}",
            fmt_f64(e.eps),
            fmt_f64(e.linf_a),
            fmt_f64(e.linf_b),
            fmt_f64(e.l2_a),
            fmt_f64(e.l2_b)
        );
    }
    out.push_str("eps,ncells,dx,linf_a,linf_b,l2_a,l2_b\n");
    for r in &table.rows {
        let e = &r.errors;
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            fmt_f64(r.eps),
            r.n_cells,
            fmt_f64(r.dx),
            fmt_f64(e.linf_a),
            fmt_f64(e.linf_b),
            fmt_f64(e.l2_a),
            fmt_f64(e.l2_b)
        );
    }
    out
}

pub fn write_convergence(path: &Path, table: &ConvergenceTable, meta: &[(String, String)]) -> Result<()> {
    std::fs::write(path, convergence_string(table, meta))?;
    Ok(())
}

pub fn sweep_string(rows: &[SweepRow], meta: &[(String, String)]) -> String {
    let mut out = String::new();
    push_meta(&mut out, meta);
    out.push_str("dt,l2_ratio,linf_ratio\n");
    for r in rows {
        let _ = writeln!(out, "{},{},{}", fmt_f64(r.dt), fmt_f64(r.l2_ratio), fmt_f64(r.linf_ratio));
    }
    out
}

pub fn write_sweep(path: &Path, rows: &[SweepRow], meta: &[(String, String)]) -> Result<()> {
    std::fs::write(path, sweep_string(rows, meta))?;
    Ok(())
}

/// A parsed CSV file: `# key=value` metadata, header and numeric columns.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    pub meta: Vec<(String, String)>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl CsvTable {
    pub fn meta_value(&self, key: &str) -> Option<&str> {
        self.meta.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }
}

/// Parses text written by any of the writers above.
pub fn parse_csv(text: &str) -> Result<CsvTable> {
    let meta = text
        .lines()
        .filter_map(|l| l.strip_prefix("# "))
        .filter_map(|l| l.split_once('=').filter(|(k, _)| !k.contains(' ')))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect();
    let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
    let header = reader.headers()?.iter().map(str::to_string).collect();
    let mut rows = Vec::new();
    for rec in reader.records() {
        let rec = rec?;
        let row = rec
            .iter()
            .map(|s| s.parse::<f64>().map_err(|_| Error::InvalidConfig(format!("not a number: '{s}'"))))
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    Ok(CsvTable { meta, header, rows })
}

pub fn read_csv(path: &Path) -> Result<CsvTable> {
    parse_csv(&std::fs::read_to_string(path)?)
}
