//! Single-step updates for the barotropic Euler system with friction
//! `rho_t + (rho u)_x / eps = 0`, `(rho u)_t + (rho u^2 + p)_x / eps = -sigma rho u / eps^2`.

use crate::domain::{fill_ghosts, BoundaryCondition, ModelParams, Pressure, State, StiffnessFactors};
use crate::error::{Error, Result};
use crate::hhe::minmod;
use crate::muscl::{self, EulerTransport};
pub use crate::scheme::EulerSchemeId;

/// `p(rho)`, rejecting non-positive densities.
pub fn pressure(rho: f64, law: &Pressure) -> Result<f64> {
    if rho > 0.0 {
        Ok(law.p(rho))
    } else {
        Err(Error::Positivity { cell: 0, rho })
    }
}

/// `c(rho) = sqrt(p'(rho))`, rejecting non-positive densities.
pub fn sound_speed(rho: f64, law: &Pressure) -> Result<f64> {
    if rho > 0.0 {
        Ok(law.sound_speed(rho))
    } else {
        Err(Error::Positivity { cell: 0, rho })
    }
}

/// Physical flux `(rho u, rho u^2 + p)`.
#[inline]
pub fn flux(rho: f64, m: f64, law: &Pressure) -> (f64, f64) {
    (m, m * m / rho + law.p(rho))
}

/// Flux with the momentum partially relaxed: `(M rho u, (2M - 1) rho u^2 + p)`.
#[inline]
pub fn flux_m(rho: f64, m: f64, big_m: f64, law: &Pressure) -> (f64, f64) {
    (big_m * m, (2.0 * big_m - 1.0) * m * m / rho + law.p(rho))
}

/// `A(w) I_M` applied to a flux increment `d`, with the Jacobian evaluated at `(rho, u)`.
#[inline]
pub fn a_m_times(rho: f64, u: f64, big_m: f64, d: (f64, f64), law: &Pressure) -> (f64, f64) {
    (big_m * d.1, (law.dp(rho) - u * u) * d.0 + 2.0 * u * big_m * d.1)
}

/// Square-root-density weighted average velocity at an interface.
#[inline]
pub fn roe_velocity(rho_l: f64, u_l: f64, rho_r: f64, u_r: f64) -> f64 {
    let (sl, sr) = (rho_l.sqrt(), rho_r.sqrt());
    (sl * u_l + sr * u_r) / (sl + sr)
}

/// Flux treatment inside the second-order scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EfFlux {
    /// Pure centered differences.
    Centered,
    /// Unit dissipation on minmod-reconstructed momentum, none on density.
    Muscl,
}

/// Largest |u| and largest sound speed over interior cells.
pub fn speed_extrema(state: &State, law: &Pressure) -> (f64, f64) {
    state
        .interior_a()
        .iter()
        .zip(state.interior_b())
        .fold((0.0_f64, 0.0_f64), |(um, cm), (&r, &m)| {
            (um.max((m / r).abs()), cm.max(law.sound_speed(r)))
        })
}

/// Dispatches to the scheme-specific step.
pub fn step(id: EulerSchemeId, state: &State, params: &ModelParams, dt: f64, bc: &BoundaryCondition) -> Result<State> {
    match id {
        EulerSchemeId::ImEx1 => step_ef_imex1(state, params, dt, bc),
        EulerSchemeId::ImEx2Ctr => step_ef_imex2(state, params, dt, bc, EfFlux::Centered),
        EulerSchemeId::ImEx2Minmod => step_ef_imex2(state, params, dt, bc, EfFlux::Muscl),
        EulerSchemeId::MusclHancockStrang => step_muscl_hancock_strang(state, params, dt, bc),
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
    if let Some((i, &rho)) = w.a.iter().enumerate().find(|(_, &r)| !(r > 0.0)) {
        return Err(Error::Positivity {
            cell: i.saturating_sub(w.n_ghost),
            rho,
        });
    }
    Ok(w)
}

fn finish(mut out: State, dt: f64, bc: &BoundaryCondition) -> Result<State> {
    let g = out.n_ghost;
    if let Some((j, &rho)) = out.interior_a().iter().enumerate().find(|(_, &r)| !(r > 0.0)) {
        return Err(Error::Positivity { cell: j, rho });
    }
    debug_assert!(g > 0);
    fill_ghosts(&mut out, bc);
    out.time += dt;
    Ok(out)
}

fn x_of(params: &ModelParams, sigma: f64, dt: f64) -> f64 {
    sigma * dt / (params.eps * params.eps)
}

/// Interface value of `A_K d_x f` for every face `i + 1/2`, `K` taken at the face sigma.
fn face_diffusion(w: &State, params: &ModelParams, dt: f64, pick: impl Fn(&StiffnessFactors) -> f64) -> Result<Vec<Pair>> {
    let law = &params.pressure;
    let dx = params.dx;
    let mut out = vec![(0.0, 0.0); w.a.len() - 1];
    for (i, slot) in out.iter_mut().enumerate() {
        let (rl, ml, rr, mr) = (w.a[i], w.b[i], w.a[i + 1], w.b[i + 1]);
        let fl = flux(rl, ml, law);
        let fr = flux(rr, mr, law);
        let k = pick(&StiffnessFactors::from_x(x_of(params, params.sigma_face(i), dt))?);
        let u = roe_velocity(rl, ml / rl, rr, mr / rr);
        let d = ((fr.0 - fl.0) / dx, (fr.1 - fl.1) / dx);
        *slot = a_m_times(0.5 * (rl + rr), u, k, d, law);
    }
    Ok(out)
}

type Pair = (f64, f64);

/// First-order ImEx scheme with modified Rusanov fluxes.
pub fn step_ef_imex1(state: &State, params: &ModelParams, dt: f64, bc: &BoundaryCondition) -> Result<State> {
    let w = prepare(state, params, dt, bc, 1)?;
    let law = &params.pressure;
    let (eps, dx) = (params.eps, params.dx);
    let len = w.a.len();
    let mut big_m = Vec::with_capacity(len);
    for i in 0..len {
        big_m.push(StiffnessFactors::from_x(x_of(params, params.sigma[i], dt))?.m);
    }
    let u: Vec<f64> = w.a.iter().zip(&w.b).map(|(r, m)| m / r).collect();
    let lambda: Vec<f64> = (0..len - 1)
        .map(|i| (big_m[i + 1] * u[i + 1].abs()).max(big_m[i] * u[i].abs()))
        .collect();
    let g_face = face_diffusion(&w, params, dt, |f| f.m)?;
    let fm = |j: usize| flux_m(w.a[j], w.b[j], big_m[j], law);
    let mut out = w.clone();
    for i in super::hhe::interior(&w) {
        debug_assert!(lambda[i] >= big_m[i + 1] * u[i + 1].abs() && lambda[i] >= big_m[i] * u[i].abs());
        let (fp, fq) = (fm(i + 1), fm(i - 1));
        let (lp, lq) = (lambda[i], lambda[i - 1]);
        let diss = |v: &[f64]| (lp * (v[i + 1] - v[i]) - lq * (v[i] - v[i - 1])) / (2.0 * dx);
        let fl = (
            (fp.0 - fq.0) / (2.0 * dx) - diss(&w.a),
            (fp.1 - fq.1) / (2.0 * dx) - diss(&w.b),
        );
        let div = ((g_face[i].0 - g_face[i - 1].0) / dx, (g_face[i].1 - g_face[i - 1].1) / dx);
        let mi = big_m[i];
        let r2 = dt * dt / (eps * eps);
        out.a[i] = w.a[i] - dt / eps * fl.0 + r2 * div.0;
        out.b[i] = mi * w.b[i] - dt / eps * mi * fl.1 + r2 * mi * div.1;
    }
    finish(out, dt, bc)
}

/// Second-order ImEx scheme with reverse RK2 relaxation and the `M3` family of factors.
pub fn step_ef_imex2(
    state: &State,
    params: &ModelParams,
    dt: f64,
    bc: &BoundaryCondition,
    variant: EfFlux,
) -> Result<State> {
    let ghosts = match variant {
        EfFlux::Centered => 1,
        EfFlux::Muscl => 2,
    };
    let w = prepare(state, params, dt, bc, ghosts)?;
    let law = &params.pressure;
    let (eps, dx) = (params.eps, params.dx);
    let len = w.a.len();
    let mut fac = Vec::with_capacity(len);
    for i in 0..len {
        fac.push(StiffnessFactors::from_x(x_of(params, params.sigma[i], dt))?);
    }
    let g1 = face_diffusion(&w, params, dt, |f| f.m1p)?;
    let g0 = face_diffusion(&w, params, dt, |f| f.m)?;
    let m = &w.b;
    let jump = |i: usize| -> f64 {
        match variant {
            EfFlux::Centered => 0.0,
            EfFlux::Muscl => {
                let right_of_i = m[i] + 0.5 * minmod(m[i] - m[i - 1], m[i + 1] - m[i]);
                let left_of_next = m[i + 1] - 0.5 * minmod(m[i + 1] - m[i], m[i + 2] - m[i + 1]);
                left_of_next - right_of_i
            }
        }
    };
    let mut out = w.clone();
    for i in super::hhe::interior(&w) {
        let f = &fac[i];
        let diss = (jump(i) - jump(i - 1)) / (2.0 * dx);
        let fp1 = flux_m(w.a[i + 1], m[i + 1], fac[i + 1].m1, law);
        let fq1 = flux_m(w.a[i - 1], m[i - 1], fac[i - 1].m1, law);
        let fp0 = flux_m(w.a[i + 1], m[i + 1], fac[i + 1].m, law);
        let fq0 = flux_m(w.a[i - 1], m[i - 1], fac[i - 1].m, law);
        let d1 = (
            (fp1.0 - fq1.0) / (2.0 * dx) - 0.5 * dt / eps * (g1[i].0 - g1[i - 1].0) / dx,
            (fp1.1 - fq1.1) / (2.0 * dx) - diss - 0.5 * dt / eps * (g1[i].1 - g1[i - 1].1) / dx,
        );
        let d2 = (fp0.1 - fq0.1) / (2.0 * dx) - diss - dt / eps * (g0[i].1 - g0[i - 1].1) / dx;
        let m_curv = (m[i + 1] - 2.0 * m[i] + m[i - 1]) / 6.0;
        out.a[i] = w.a[i] - dt / eps * d1.0;
        out.b[i] = f.m3 * m[i] - dt / eps * f.m3 * (d1.1 + 0.5 * f.x * d2) - f.x * f.m2 * m_curv;
    }
    finish(out, dt, bc)
}

/// MUSCL-Hancock transport with HLL fluxes, Strang-split with reverse RK2 friction.
pub fn step_muscl_hancock_strang(
    state: &State,
    params: &ModelParams,
    dt: f64,
    bc: &BoundaryCondition,
) -> Result<State> {
    let w = prepare(state, params, dt, bc, 2)?;
    let out = muscl::strang_step(&EulerTransport, &w, params, dt, params.dx, bc)?;
    finish(out, dt, bc)
}
