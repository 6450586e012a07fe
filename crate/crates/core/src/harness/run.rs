use super::config::{CaseKind, DtPolicy, RunConfig};
use crate::cases::{hhe_exact_state, riemann_ic, DensityProduct, ExactHheParams, SteadyState};
use crate::domain::{fill_ghosts, norm, BoundaryCondition, Grid1D, ModelKind, ModelParams, NormKind, SigmaProfile, State};
use crate::error::{Error, Result};
use crate::scheme::{LinearSchemeId, SchemeId};
use crate::stability::{dt_bounds, dt_imex2_linf_refined, BoundInputs, BoundKind};
use crate::{euler, hhe};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};

/// Global error of a final state against its reference, interior cells only.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorNorms {
    pub linf_a: f64,
    pub linf_b: f64,
    pub l2_a: f64,
    pub l2_b: f64,
}

impl ErrorNorms {
    pub fn between(state: &State, reference: &State, dx: f64) -> Result<Self> {
        let diff = |x: &[f64], y: &[f64]| -> Vec<f64> { x.iter().zip(y).map(|(p, q)| p - q).collect() };
        let da = diff(state.interior_a(), reference.interior_a());
        let db = diff(state.interior_b(), reference.interior_b());
        Ok(Self {
            linf_a: norm(&da, dx, NormKind::Linf)?,
            linf_b: norm(&db, dx, NormKind::Linf)?,
            l2_a: norm(&da, dx, NormKind::L2)?,
            l2_b: norm(&db, dx, NormKind::L2)?,
        })
    }

    pub fn nan() -> Self {
        Self {
            linf_a: f64::NAN,
            linf_b: f64::NAN,
            l2_a: f64::NAN,
            l2_b: f64::NAN,
        }
    }
}

/// Output of [`run_simulation`].
#[derive(Debug, Clone)]
pub struct RunResult {
    pub config: RunConfig,
    pub grid: Grid1D,
    pub initial: State,
    pub final_state: State,
    /// States at the requested snapshot times, in increasing time order.
    pub snapshots: Vec<State>,
    pub reference: Option<State>,
    pub errors: Option<ErrorNorms>,
    pub wall_time: Duration,
    pub steps: usize,
    pub dts: Vec<f64>,
}

/// Grid, parameters, boundary condition and initial state of a configuration.
#[derive(Debug, Clone)]
pub struct Problem {
    pub grid: Grid1D,
    pub params: ModelParams,
    pub bc: BoundaryCondition,
    pub initial: State,
}

fn exact_params(config: &RunConfig) -> ExactHheParams {
    let sigma = match config.sigma {
        SigmaProfile::Const(s) => s,
        SigmaProfile::Arctan { sigma_max, .. } => sigma_max,
    };
    let (e_left, e_right) = match config.boundary() {
        BoundaryCondition::HybridDirichletNeumann { left, right } => (left, right),
        _ => (config.left, config.right),
    };
    ExactHheParams {
        alpha: 1.0,
        eps: config.eps,
        sigma,
        e_left,
        e_right,
        x_left: config.x_left,
        x_right: config.x_right,
    }
}

fn steady(config: &RunConfig) -> Result<SteadyState> {
    SteadyState::new(
        config.left,
        config.right,
        config.pressure.sound_speed(1.0),
        config.eps,
        config.sigma,
        config.x_left,
        config.x_right,
        1e-12,
        DensityProduct::LeftRight,
    )
}

/// Builds the discrete problem described by `config`.
pub fn setup(config: &RunConfig) -> Result<Problem> {
    config.validate()?;
    let grid = Grid1D::new(config.x_left, config.x_right, config.n_cells, config.scheme.ghost_layers())?;
    let params = ModelParams::new(config.eps, config.sigma, &grid, config.pressure)?;
    let bc = config.boundary();
    let kind = config.model();
    let mut initial = match config.case {
        CaseKind::Exact => hhe_exact_state(&grid, &exact_params(config), 0.0),
        CaseKind::Riemann => riemann_ic(&grid, kind, config.left, config.right),
        CaseKind::Steady => {
            let (l, r, xl, len) = (config.left, config.right, config.x_left, grid.length());
            State::sample(kind, &grid, |x| (l + (r - l) * (x - xl) / len, 0.0))
        }
        CaseKind::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            let mut s = State::zeros(kind, &grid);
            for i in grid.interior() {
                let (p, q): (f64, f64) = (rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0));
                (s.a[i], s.b[i]) = match kind {
                    ModelKind::Hhe => (p, q),
                    ModelKind::EulerFriction => (1.0 + 0.5 * p, 0.5 * q),
                };
            }
            s
        }
    };
    fill_ghosts(&mut initial, &bc);
    initial.time = 0.0;
    Ok(Problem {
        grid,
        params,
        bc,
        initial,
    })
}

/// Reference solution at time `t`, when the case has one.
pub fn reference_state(config: &RunConfig, grid: &Grid1D, t: f64) -> Result<Option<State>> {
    match config.case {
        CaseKind::Exact => Ok(Some(hhe_exact_state(grid, &exact_params(config), t))),
        CaseKind::Steady => {
            let mut s = steady(config)?.state(grid)?;
            s.time = t;
            Ok(Some(s))
        }
        _ => Ok(None),
    }
}

/// Time step prescribed by the configuration for the current state.
pub fn choose_dt(config: &RunConfig, params: &ModelParams, state: &State) -> Result<f64> {
    let (u_max, c) = match config.model() {
        ModelKind::Hhe => (0.0, 1.0),
        ModelKind::EulerFriction => euler::speed_extrema(state, &params.pressure),
    };
    let inputs = BoundInputs {
        eps: params.eps,
        sigma_min: params.sigma_min,
        sigma_max: params.sigma_max,
        dx: params.dx,
        u_max,
        c,
    };
    let scheme = config.scheme;
    let dt = match config.dt_policy {
        DtPolicy::Fixed(v) => v,
        DtPolicy::L2 => config.cfl * dt_bounds(scheme, BoundKind::L2, &inputs)?.dt_max,
        DtPolicy::Scaled(k) => k * dt_bounds(scheme, BoundKind::L2, &inputs)?.dt_max,
        DtPolicy::Positivity => config.cfl * dt_bounds(scheme, BoundKind::Positivity, &inputs)?.dt_max,
        DtPolicy::Linf => {
            let b = if scheme == SchemeId::Hhe(LinearSchemeId::ImEx2Ctr) {
                dt_imex2_linf_refined(params.eps, params.sigma_min, params.dx, 1e-12)?.bounds
            } else {
                dt_bounds(scheme, BoundKind::Linf, &inputs)?
            };
            if b.is_empty() {
                return Err(Error::EmptyInterval(format!("{scheme}: [{}, {}]", b.dt_min, b.dt_max)));
            }
            b.interpolate(config.cfl)
        }
    };
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::NonFinite(format!("time step {dt}")));
    }
    Ok(dt)
}

/// Advances one step of the configured scheme.
pub fn step(scheme: SchemeId, state: &State, params: &ModelParams, dt: f64, bc: &BoundaryCondition) -> Result<State> {
    match scheme {
        SchemeId::Hhe(id) => hhe::step(id, state, params, dt, bc),
        SchemeId::Euler(id) => euler::step(id, state, params, dt, bc),
    }
}

/// Integrates the configured problem from `t = 0` to `t_final`.
pub fn run_simulation(config: &RunConfig) -> Result<RunResult> {
    let started = Instant::now();
    let Problem {
        grid,
        params,
        bc,
        initial,
    } = setup(config)?;
    let t_final = config.t_final;
    let mut targets: Vec<f64> = config.snapshots.clone();
    targets.sort_by(f64::total_cmp);
    targets.dedup();
    let mut snapshots = Vec::new();
    let mut pending = targets.iter().peekable();
    while let Some(_) = pending.next_if(|&&t| t <= 0.0) {
        snapshots.push(initial.clone());
    }
    let nonlinear = config.model() == ModelKind::EulerFriction;
    let dt_floor = 1e-14 * t_final;
    let mut fixed_dt = None;
    let mut state = initial.clone();
    let mut dts = Vec::new();
    let mut t = 0.0;
    while t < t_final {
        let target = pending.peek().map_or(t_final, |&&s| s.min(t_final));
        let nominal = match fixed_dt {
            Some(v) => v,
            None => {
                let v = choose_dt(config, &params, &state)?;
                if !nonlinear {
                    fixed_dt = Some(v);
                }
                v
            }
        };
        let mut dt = nominal;
        let (next, landed) = loop {
            let landed = t + dt >= target - 1e-12 * t_final.max(dt);
            let h = if landed { target - t } else { dt };
            match step(config.scheme, &state, &params, h, &bc) {
                Ok(s) if s.is_finite() => break (s, landed.then_some(h)),
                Ok(_) => return Err(Error::NonFinite(format!("state at t={t} after dt={h}"))),
                Err(Error::Positivity { .. }) if nonlinear && 0.5 * dt >= dt_floor => {
                    log::debug!("positivity rejection at t={t}, dt={dt:e}: halving");
                    dt *= 0.5;
                }
                Err(e) => return Err(e),
            }
        };
        state = next;
        match landed {
            Some(h) => {
                dts.push(h);
                t = target;
                while let Some(_) = pending.next_if(|&&s| s <= t) {
                    let mut snap = state.clone();
                    snap.time = t;
                    snapshots.push(snap);
                }
            }
            None => {
                dts.push(dt);
                t += dt;
            }
        }
        state.time = t;
    }
    let reference = reference_state(config, &grid, t_final)?;
    let errors = match &reference {
        Some(r) => Some(ErrorNorms::between(&state, r, grid.dx)?),
        None => None,
    };
    Ok(RunResult {
        config: config.clone(),
        grid,
        initial,
        final_state: state,
        snapshots,
        reference,
        errors,
        wall_time: started.elapsed(),
        steps: dts.len(),
        dts,
    })
}
