use super::config::RunConfig;
use super::run::{run_simulation, ErrorNorms};
use crate::error::{Error, Result};
use crate::exec::Execution;

/// One (eps, N) point of a convergence study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub eps: f64,
    pub n_cells: usize,
    pub dx: f64,
    /// NaN entries mark a run that failed or produced no reference error.
    pub errors: ErrorNorms,
}

/// Least-squares slopes of log(error) against log(dx) for one eps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EocSummary {
    pub eps: f64,
    pub linf_a: f64,
    pub linf_b: f64,
    pub l2_a: f64,
    pub l2_b: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceTable {
    /// Sorted by (eps, N).
    pub rows: Vec<ConvergenceRow>,
    /// One entry per distinct eps, in the order of `rows`.
    pub eoc: Vec<EocSummary>,
}

impl ConvergenceTable {
    pub fn eoc_for(&self, eps: f64) -> Option<&EocSummary> {
        self.eoc.iter().find(|e| e.eps == eps)
    }
}

/// Least-squares slope of `log y` against `log x`, skipping non-finite or non-positive points.
///
/// NaN when fewer than two usable points remain.
pub fn fit_slope(x: &[f64], y: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> = x
        .iter()
        .zip(y)
        .filter(|(a, b)| **a > 0.0 && **b > 0.0 && a.is_finite() && b.is_finite())
        .map(|(a, b)| (a.ln(), b.ln()))
        .collect();
    if pts.len() < 2 {
        return f64::NAN;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

/// Builds per-eps slopes for rows sorted by (eps, N).
pub fn summarize(rows: &[ConvergenceRow]) -> Vec<EocSummary> {
    let mut out: Vec<EocSummary> = Vec::new();
    let mut start = 0;
    while start < rows.len() {
        let eps = rows[start].eps;
        let end = start + rows[start..].iter().take_while(|r| r.eps == eps).count();
        let group = &rows[start..end];
        let dx: Vec<f64> = group.iter().map(|r| r.dx).collect();
        let slope = |pick: fn(&ErrorNorms) -> f64| {
            let e: Vec<f64> = group.iter().map(|r| pick(&r.errors)).collect();
            fit_slope(&dx, &e)
        };
        out.push(EocSummary {
            eps,
            linf_a: slope(|e| e.linf_a),
            linf_b: slope(|e| e.linf_b),
            l2_a: slope(|e| e.l2_a),
            l2_b: slope(|e| e.l2_b),
        });
        start = end;
    }
    out
}

/// Runs `base` for every (eps, N) pair and fits the orders of convergence.
///
/// The case must provide a reference solution. Runs that fail numerically are kept as NaN rows.
pub fn convergence_study(base: &RunConfig, eps_list: &[f64], n_list: &[usize], exec: Execution) -> Result<ConvergenceTable> {
    if eps_list.is_empty() || n_list.is_empty() {
        return Err(Error::Empty("convergence study needs eps and N values".into()));
    }
    let mut points: Vec<(f64, usize)> = eps_list
        .iter()
        .flat_map(|&e| n_list.iter().map(move |&n| (e, n)))
        .collect();
    points.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    points.dedup();
    let mut configs = Vec::with_capacity(points.len());
    for &(eps, n) in &points {
        let mut c = base.clone();
        c.eps = eps;
        c.n_cells = n;
        c.snapshots.clear();
        c.validate()?;
        configs.push(c);
    }
    let results = exec.map(&configs, |c| run_simulation(c));
    let mut rows = Vec::with_capacity(points.len());
    for (c, r) in configs.iter().zip(results) {
        let dx = (c.x_right - c.x_left) / c.n_cells as f64;
        let errors = match r {
            Ok(res) => match res.errors {
                Some(e) => e,
                None => {
                    return Err(Error::InvalidConfig(format!(
                        "case '{}' has no reference solution",
                        c.case.name()
                    )))
                }
            },
            Err(e @ (Error::InvalidConfig(_) | Error::UnsupportedBound { .. })) => return Err(e),
            Err(e) => {
                log::warn!("run eps={} N={} failed: {e}", c.eps, c.n_cells);
                ErrorNorms::nan()
            }
        };
        rows.push(ConvergenceRow {
            eps: c.eps,
            n_cells: c.n_cells,
            dx,
            errors,
        });
    }
    let eoc = summarize(&rows);
    Ok(ConvergenceTable { rows, eoc })
}
