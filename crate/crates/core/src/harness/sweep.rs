use super::config::{CaseKind, RunConfig};
use super::run::setup;
use crate::domain::{to_invariants, ModelParams, SigmaProfile, State, StiffnessFactors};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::hhe;
use crate::scheme::{LinearSchemeId, SchemeId};

/// Worst one-step growth of the diagonal-variable norms at one time step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub dt: f64,
    /// max over steps of `||w^{n+1}||_2 / ||w^n||_2`.
    pub l2_ratio: f64,
    /// max over steps of `||w^{n+1}||_inf / ||w^n||_inf`.
    pub linf_ratio: f64,
}

/// Weights of the monitored diagonal variables at a given step.
pub fn invariant_weights(scheme: LinearSchemeId, sigma: f64, dt: f64, eps: f64) -> Result<(f64, f64)> {
    if scheme.is_second_order_imex() {
        Ok(StiffnessFactors::from_x(sigma * dt / (eps * eps))?.tilde_weights())
    } else {
        Ok((1.0, 1.0))
    }
}

/// `(l2, linf)` norms of the diagonal variables of a state.
pub fn invariant_norms(state: &State, weights: (f64, f64), dx: f64) -> (f64, f64) {
    let (u, v) = to_invariants(state, weights);
    let l2 = (u.iter().chain(&v).map(|x| x * x).sum::<f64>() * dx).sqrt();
    let linf = u.iter().chain(&v).fold(0.0_f64, |m, x| m.max(x.abs()));
    (l2, linf)
}

/// Runs `n_steps` of a linear scheme on seeded random periodic data for every `dt`.
pub fn stability_sweep(
    scheme: LinearSchemeId,
    eps: f64,
    sigma: f64,
    n_cells: usize,
    dt_grid: &[f64],
    n_steps: usize,
    seed: u64,
    exec: Execution,
) -> Result<Vec<SweepRow>> {
    if let Some(bad) = dt_grid.iter().find(|&&d| !(d > 0.0 && d.is_finite())) {
        return Err(Error::InvalidConfig(format!("sweep time steps must be > 0, got {bad}")));
    }
    let mut base = RunConfig::new(SchemeId::Hhe(scheme), CaseKind::Random);
    base.eps = eps;
    base.sigma = SigmaProfile::Const(sigma);
    base.n_cells = n_cells;
    base.seed = seed;
    let problem = setup(&base)?;
    let rows = exec.map(dt_grid, |&dt| -> Result<SweepRow> {
        let weights = invariant_weights(scheme, sigma, dt, eps)?;
        sweep_one(scheme, &problem.initial, &problem.params, dt, n_steps, weights, &problem.bc)
    });
    rows.into_iter().collect()
}

fn sweep_one(
    scheme: LinearSchemeId,
    initial: &State,
    params: &ModelParams,
    dt: f64,
    n_steps: usize,
    weights: (f64, f64),
    bc: &crate::domain::BoundaryCondition,
) -> Result<SweepRow> {
    let mut state = initial.clone();
    let (mut l2, mut linf) = invariant_norms(&state, weights, params.dx);
    let mut row = SweepRow {
        dt,
        l2_ratio: 0.0,
        linf_ratio: 0.0,
    };
    for _ in 0..n_steps {
        state = hhe::step(scheme, &state, params, dt, bc)?;
        let (a, b) = invariant_norms(&state, weights, params.dx);
        let (ra, rb) = (a / l2, b / linf);
        if !(ra.is_finite() && rb.is_finite()) {
            row.l2_ratio = f64::INFINITY;
            row.linf_ratio = f64::INFINITY;
            break;
        }
        row.l2_ratio = row.l2_ratio.max(ra);
        row.linf_ratio = row.linf_ratio.max(rb);
        (l2, linf) = (a, b);
    }
    Ok(row)
}
