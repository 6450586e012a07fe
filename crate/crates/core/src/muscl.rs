//! MUSCL-Hancock transport with HLL fluxes, Strang-split with reverse RK2 relaxation.

use crate::domain::{fill_ghosts, BoundaryCondition, ModelParams, Pressure, State};
use crate::error::{Error, Result};
use crate::hhe::minmod;
use crate::rrk::rrk2_decay;

/// Flux and wave-speed estimates of a 2x2 conservation law.
pub trait Transport {
    fn flux(&self, a: f64, b: f64, p: &Pressure) -> (f64, f64);
    /// Slowest and fastest signal speeds.
    fn speeds(&self, a: f64, b: f64, p: &Pressure) -> (f64, f64);
    fn admissible(&self, a: f64, b: f64) -> bool;
}

/// Hyperbolic heat equation: flux (F, E), speeds -1 and 1.
pub struct LinearTransport;

/// Barotropic Euler: flux (rho u, rho u^2 + p), speeds u -/+ c.
pub struct EulerTransport;

impl Transport for LinearTransport {
    fn flux(&self, a: f64, b: f64, _: &Pressure) -> (f64, f64) {
        (b, a)
    }
    fn speeds(&self, _: f64, _: f64, _: &Pressure) -> (f64, f64) {
        (-1.0, 1.0)
    }
    fn admissible(&self, _: f64, _: f64) -> bool {
        true
    }
}

impl Transport for EulerTransport {
    fn flux(&self, rho: f64, m: f64, p: &Pressure) -> (f64, f64) {
        (m, m * m / rho + p.p(rho))
    }
    fn speeds(&self, rho: f64, m: f64, p: &Pressure) -> (f64, f64) {
        let u = m / rho;
        let c = p.sound_speed(rho);
        (u - c, u + c)
    }
    fn admissible(&self, rho: f64, m: f64) -> bool {
        rho > 0.0 && m.is_finite()
    }
}

fn hll<T: Transport>(sys: &T, l: (f64, f64), r: (f64, f64), p: &Pressure) -> (f64, f64) {
    let fl = sys.flux(l.0, l.1, p);
    let fr = sys.flux(r.0, r.1, p);
    let (sl_min, sl_max) = sys.speeds(l.0, l.1, p);
    let (sr_min, sr_max) = sys.speeds(r.0, r.1, p);
    let sl = sl_min.min(sr_min);
    let sr = sl_max.max(sr_max);
    if sl >= 0.0 {
        fl
    } else if sr <= 0.0 {
        fr
    } else {
        let inv = 1.0 / (sr - sl);
        (
            (sr * fl.0 - sl * fr.0 + sl * sr * (r.0 - l.0)) * inv,
            (sr * fl.1 - sl * fr.1 + sl * sr * (r.1 - l.1)) * inv,
        )
    }
}

fn relax_half(w: &mut State, params: &ModelParams, dt: f64, bc: &BoundaryCondition) {
    let g = w.n_ghost;
    let k = 0.5 * dt / (params.eps * params.eps);
    for i in g..g + w.n_cells() {
        w.b[i] *= rrk2_decay(params.sigma[i] * k);
    }
    fill_ghosts(w, bc);
}

/// One MUSCL-Hancock step of `w_t + f(w)_x / eps = 0`; `w` must carry two filled ghost layers.
pub fn transport_step<T: Transport>(sys: &T, w: &State, params: &ModelParams, dt: f64, dx: f64) -> Result<State> {
    let g = w.n_ghost;
    let n = w.n_cells();
    let p = &params.pressure;
    let half = 0.5 * dt / (params.eps * dx);
    // Predicted interface states for cells g-1 ..= g+n.
    let cells = g - 1..g + n + 1;
    let mut left = vec![(0.0, 0.0); w.a.len()];
    let mut right = vec![(0.0, 0.0); w.a.len()];
    for i in cells {
        let (a, b) = (w.a[i], w.b[i]);
        let mut sa = minmod(a - w.a[i - 1], w.a[i + 1] - a);
        let mut sb = minmod(b - w.b[i - 1], w.b[i + 1] - b);
        if !(sys.admissible(a - 0.5 * sa, b - 0.5 * sb) && sys.admissible(a + 0.5 * sa, b + 0.5 * sb)) {
            sa = 0.0;
            sb = 0.0;
        }
        let wl = (a - 0.5 * sa, b - 0.5 * sb);
        let wr = (a + 0.5 * sa, b + 0.5 * sb);
        let fl = sys.flux(wl.0, wl.1, p);
        let fr = sys.flux(wr.0, wr.1, p);
        let (da, db) = (half * (fr.0 - fl.0), half * (fr.1 - fl.1));
        let pl = (wl.0 - da, wl.1 - db);
        let pr = (wr.0 - da, wr.1 - db);
        if sys.admissible(pl.0, pl.1) && sys.admissible(pr.0, pr.1) {
            left[i] = pl;
            right[i] = pr;
        } else {
            left[i] = (a, b);
            right[i] = (a, b);
        }
    }
    let faces: Vec<(f64, f64)> = (g - 1..g + n).map(|i| hll(sys, right[i], left[i + 1], p)).collect();
    let k = dt / (params.eps * dx);
    let mut out = w.clone();
    for (idx, i) in (g..g + n).enumerate() {
        let (fm, fp) = (faces[idx], faces[idx + 1]);
        out.a[i] = w.a[i] - k * (fp.0 - fm.0);
        out.b[i] = w.b[i] - k * (fp.1 - fm.1);
        if !sys.admissible(out.a[i], out.b[i]) {
            return Err(Error::Positivity { cell: i - g, rho: out.a[i] });
        }
    }
    Ok(out)
}

/// Half relaxation, full transport, half relaxation.
pub fn strang_step<T: Transport>(
    sys: &T,
    w: &State,
    params: &ModelParams,
    dt: f64,
    dx: f64,
    bc: &BoundaryCondition,
) -> Result<State> {
    let mut s = w.clone();
    relax_half(&mut s, params, dt, bc);
    let mut s = transport_step(sys, &s, params, dt, dx)?;
    fill_ghosts(&mut s, bc);
    relax_half(&mut s, params, dt, bc);
    Ok(s)
}
