//! Single-step updates for the hyperbolic heat equation
//! `E_t + F_x / eps = 0`, `F_t + E_x / eps = -sigma F / eps^2`.

use crate::domain::{fill_ghosts, BoundaryCondition, ModelParams, State, StiffnessFactors};
use crate::error::{Error, Result};
use crate::muscl::{self, LinearTransport};
pub use crate::scheme::LinearSchemeId;

/// Standard minmod limiter.
#[inline]
pub fn minmod(a: f64, b: f64) -> f64 {
    if a * b <= 0.0 {
        0.0
    } else if a > 0.0 {
        a.min(b)
    } else {
        a.max(b)
    }
}

fn prepare(state: &State, params: &ModelParams, dt: f64, bc: &BoundaryCondition, ghosts: usize) -> Result<State> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidConfig(format!("time step must be positive, got {dt}")));
    }
    if state.n_ghost < ghosts {
        return Err(Error::InvalidConfig(format!(
            "scheme needs {ghosts} ghost layers, state has {}",
            state.n_ghost
        )));
    }
    if params.sigma.len() != state.a.len() {
        return Err(Error::SizeMismatch {
            expected: state.a.len(),
            found: params.sigma.len(),
        });
    }
    let mut w = state.clone();
    fill_ghosts(&mut w, bc);
    Ok(w)
}

fn finish(mut out: State, dt: f64, bc: &BoundaryCondition) -> State {
    fill_ghosts(&mut out, bc);
    out.time += dt;
    out
}

fn factors(params: &ModelParams, i: usize, dt: f64) -> Result<StiffnessFactors> {
    StiffnessFactors::from_x(params.sigma[i] * dt / (params.eps * params.eps))
}

/// Dispatches to the scheme-specific step.
///
/// The iterative-flux variant takes its energy floor from the current state.
pub fn step(id: LinearSchemeId, state: &State, params: &ModelParams, dt: f64, bc: &BoundaryCondition) -> Result<State> {
    match id {
        LinearSchemeId::Upwind => step_upwind(state, params, dt, bc),
        LinearSchemeId::ImEx1Ctr => step_imex1_ctr(state, params, dt, bc),
        LinearSchemeId::ImEx1Upwd => step_imex1_upwd(state, params, dt, bc),
        LinearSchemeId::ImEx1Itr => step_imex1_itr(state, params, dt, bc, default_energy_floor(state)),
        LinearSchemeId::ImEx2Ctr => step_imex2_ctr(state, params, dt, bc),
        LinearSchemeId::ImEx2Minmod => step_imex2_minmod(state, params, dt, bc),
        LinearSchemeId::MusclHancockStrang => step_muscl_hancock_strang(state, params, dt, bc),
    }
}

/// `1e-3 * max |E|` over interior cells.
pub fn default_energy_floor(state: &State) -> f64 {
    1e-3 * state.interior_a().iter().fold(0.0_f64, |m, v| m.max(v.abs()))
}

/// Explicit upwind scheme with centered source.
pub fn step_upwind(state: &State, params: &ModelParams, dt: f64, bc: &BoundaryCondition) -> Result<State> {
    let w = prepare(state, params, dt, bc, 1)?;
    let eps = params.eps;
    let dx = params.dx;
    let k = dt / (2.0 * eps * dx);
    let mut out = w.clone();
    for i in interior(&w) {
        let (e, f) = (&w.a, &w.b);
        out.a[i] = e[i] - k * (f[i + 1] - f[i - 1]) + k * (e[i + 1] - 2.0 * e[i] + e[i - 1]);
        out.b[i] = f[i] - k * (e[i + 1] - e[i - 1]) + k * (f[i + 1] - 2.0 * f[i] + f[i - 1])
            - params.sigma[i] * dt / (2.0 * eps * eps) * f[i];
    }
    Ok(finish(out, dt, bc))
}

fn imex1_family(
    w: &State,
    params: &ModelParams,
    dt: f64,
    dx: f64,
    lambda: impl Fn(usize) -> f64,
) -> Result<State> {
    let eps = params.eps;
    let mut out = w.clone();
    let flux = dt / (2.0 * eps * dx);
    let diff = dt * dt / (eps * eps * dx * dx);
    for i in interior(w) {
        let m = factors(params, i, dt)?.m;
        let (e, f) = (&w.a, &w.b);
        let (lp, lm) = (lambda(i), lambda(i - 1));
        let de = m * flux * (lp * (e[i + 1] - e[i]) - lm * (e[i] - e[i - 1]));
        let df = m * flux * (lp * (f[i + 1] - f[i]) - lm * (f[i] - f[i - 1]));
        out.a[i] = e[i] - m * flux * (f[i + 1] - f[i - 1]) + m * diff * (e[i + 1] - 2.0 * e[i] + e[i - 1]) + de;
        // f - x M f written as M f.
        out.b[i] = m * f[i] - m * flux * (e[i + 1] - e[i - 1]) + m * diff * (f[i + 1] - 2.0 * f[i] + f[i - 1]) + df;
    }
    Ok(out)
}

/// First-order ImEx scheme with centered fluxes.
pub fn step_imex1_ctr(state: &State, params: &ModelParams, dt: f64, bc: &BoundaryCondition) -> Result<State> {
    let w = prepare(state, params, dt, bc, 1)?;
    let dx = params.dx;
    let out = imex1_family(&w, params, dt, dx, |_| 0.0)?;
    Ok(finish(out, dt, bc))
}

/// First-order ImEx scheme with upwind (unit-speed Rusanov) fluxes.
pub fn step_imex1_upwd(state: &State, params: &ModelParams, dt: f64, bc: &BoundaryCondition) -> Result<State> {
    let w = prepare(state, params, dt, bc, 1)?;
    let dx = params.dx;
    let out = imex1_family(&w, params, dt, dx, |_| 1.0)?;
    Ok(finish(out, dt, bc))
}

/// First-order ImEx scheme whose interface dissipation is scaled by `max |F| / E`.
///
/// Denominators are clamped from below by `e_floor`; clamped cells are logged.
pub fn step_imex1_itr(
    state: &State,
    params: &ModelParams,
    dt: f64,
    bc: &BoundaryCondition,
    e_floor: f64,
) -> Result<State> {
    let w = prepare(state, params, dt, bc, 1)?;
    let dx = params.dx;
    let floor = e_floor.max(f64::MIN_POSITIVE);
    let ratio: Vec<f64> = w
        .a
        .iter()
        .zip(&w.b)
        .map(|(&e, &f)| f.abs() / e.max(floor))
        .collect();
    let clamped = interior(&w).filter(|&i| w.a[i] < floor).count();
    if clamped > 0 {
        log::debug!("energy floor {floor:e} applied in {clamped} cells");
    }
    let out = imex1_family(&w, params, dt, dx, |i| ratio[i].max(ratio[i + 1]))?;
    Ok(finish(out, dt, bc))
}

fn imex2_family(w: &State, params: &ModelParams, dt: f64, dx: f64, limited: bool) -> Result<State> {
    let eps = params.eps;
    let mut out = w.clone();
    let mu = dt / (2.0 * eps * dx);
    let d = dt * dt / (2.0 * eps * eps * dx * dx);
    // Jump of the reconstructed F at interface i + 1/2.
    let jump = |i: usize| -> f64 {
        let f = &w.b;
        let right_of_i = f[i] + 0.5 * minmod(f[i] - f[i - 1], f[i + 1] - f[i]);
        let left_of_next = f[i + 1] - 0.5 * minmod(f[i + 1] - f[i], f[i + 2] - f[i + 1]);
        left_of_next - right_of_i
    };
    for i in interior(w) {
        let fac = factors(params, i, dt)?;
        let (e, f) = (&w.a, &w.b);
        let f_curv = (f[i + 1] - 2.0 * f[i] + f[i - 1]) / 6.0;
        out.a[i] = e[i] - fac.m1 * mu * (f[i + 1] - f[i - 1]) + fac.m1p * d * (e[i + 1] - 2.0 * e[i] + e[i - 1]);
        // f - x M2 f_avg regrouped as M3 f - x M2 (f_avg - f) to avoid cancellation when x is large.
        let mut fnew = fac.m3 * f[i] - fac.m2 * mu * (e[i + 1] - e[i - 1])
            + fac.m2p * d * (f[i + 1] - 2.0 * f[i] + f[i - 1])
            - fac.x * fac.m2 * f_curv;
        if limited {
            fnew += fac.m2 * mu * (jump(i) - jump(i - 1));
        }
        out.b[i] = fnew;
    }
    Ok(out)
}

/// Second-order ImEx scheme with centered fluxes.
pub fn step_imex2_ctr(state: &State, params: &ModelParams, dt: f64, bc: &BoundaryCondition) -> Result<State> {
    let w = prepare(state, params, dt, bc, 1)?;
    let dx = params.dx;
    let out = imex2_family(&w, params, dt, dx, false)?;
    Ok(finish(out, dt, bc))
}

/// Second-order ImEx scheme with minmod-limited dissipation on F.
pub fn step_imex2_minmod(state: &State, params: &ModelParams, dt: f64, bc: &BoundaryCondition) -> Result<State> {
    let w = prepare(state, params, dt, bc, 2)?;
    let dx = params.dx;
    let out = imex2_family(&w, params, dt, dx, true)?;
    Ok(finish(out, dt, bc))
}

/// Strang splitting of a MUSCL-Hancock transport step with reverse RK2 relaxation.
pub fn step_muscl_hancock_strang(
    state: &State,
    params: &ModelParams,
    dt: f64,
    bc: &BoundaryCondition,
) -> Result<State> {
    let w = prepare(state, params, dt, bc, 2)?;
    let dx = params.dx;
    let out = muscl::strang_step(&LinearTransport, &w, params, dt, dx, bc)?;
    Ok(finish(out, dt, bc))
}

pub(crate) fn interior(w: &State) -> std::ops::Range<usize> {
    w.n_ghost..w.n_ghost + w.n_cells()
}
