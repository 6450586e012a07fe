//! Reference solutions and initial data of the verification cases.

use crate::domain::{Grid1D, ModelKind, SigmaProfile, State};
use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Parameters of the smooth boundary-value solution of the hyperbolic heat equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactHheParams {
    pub alpha: f64,
    pub eps: f64,
    pub sigma: f64,
    pub e_left: f64,
    pub e_right: f64,
    pub x_left: f64,
    pub x_right: f64,
}

/// Temporal decay rates `lambda` solving `eps^2 lambda^2 + sigma lambda + kappa^2 = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TemporalRates {
    /// Two distinct real roots `(lambda_plus, lambda_minus)`.
    Real { plus: f64, minus: f64 },
    /// Complex pair `-gamma +/- i omega`.
    Complex { gamma: f64, omega: f64 },
    /// Double root.
    Critical { rate: f64 },
}

impl ExactHheParams {
    /// Amplitude and relaxation of one, unit domain, boundary values `e_left`, `e_right`.
    pub fn unit(eps: f64, e_left: f64, e_right: f64) -> Self {
        Self {
            alpha: 1.0,
            eps,
            sigma: 1.0,
            e_left,
            e_right,
            x_left: 0.0,
            x_right: 1.0,
        }
    }

    /// Spatial wavenumber `pi / (x_right - x_left)`.
    pub fn kappa(&self) -> f64 {
        PI / (self.x_right - self.x_left)
    }

    /// Initial slope of the temporal factor, chosen so that `f'(0) = O(eps)`.
    pub fn beta(&self) -> f64 {
        -self.kappa().powi(2) * self.alpha / self.sigma
    }

    pub fn rates(&self) -> TemporalRates {
        let (eps, sigma, kappa) = (self.eps, self.sigma, self.kappa());
        let q = 2.0 * kappa * eps / sigma;
        let disc = 1.0 - q * q;
        let gamma = sigma / (2.0 * eps * eps);
        if disc.abs() < 1e-12 {
            TemporalRates::Critical { rate: -gamma }
        } else if disc > 0.0 {
            let minus = -gamma * (1.0 + disc.sqrt());
            // Vieta keeps the slow root accurate when eps is small.
            let plus = kappa * kappa / (eps * eps) / minus;
            TemporalRates::Real { plus, minus }
        } else {
            TemporalRates::Complex {
                gamma,
                omega: gamma * (-disc).sqrt(),
            }
        }
    }

    /// `(lambda_plus, lambda_minus)`, failing outside the overdamped regime.
    pub fn real_rates(&self) -> Result<(f64, f64)> {
        match self.rates() {
            TemporalRates::Real { plus, minus } => Ok((plus, minus)),
            _ => Err(Error::ParameterRange(format!(
                "rates are not real and distinct for eps={}, sigma={} (need 2 kappa eps < sigma)",
                self.eps, self.sigma
            ))),
        }
    }

    /// Temporal factor `f(t)` and its derivative.
    pub fn temporal(&self, t: f64) -> (f64, f64) {
        let (a, b) = (self.alpha, self.beta());
        match self.rates() {
            TemporalRates::Real { plus, minus } => {
                let (ep, em) = ((plus * t).exp(), (minus * t).exp());
                let inv = 1.0 / (plus - minus);
                let f = a * (plus * em - minus * ep) * inv + b * (ep - em) * inv;
                let df = a * plus * minus * (em - ep) * inv + b * (plus * ep - minus * em) * inv;
                (f, df)
            }
            TemporalRates::Complex { gamma, omega } => {
                let decay = (-gamma * t).exp();
                let (s, c) = (omega * t).sin_cos();
                let k = (b + gamma * a) / omega;
                let f = decay * (a * c + k * s);
                let df = decay * (b * c - (a * omega + gamma * k) * s);
                (f, df)
            }
            TemporalRates::Critical { rate } => {
                let e = (rate * t).exp();
                let k = b - rate * a;
                (e * (a + k * t), e * (b + rate * k * t))
            }
        }
    }
}

/// Exact `(E, F)` at `(t, x)`.
pub fn hhe_exact(t: f64, x: f64, p: &ExactHheParams) -> (f64, f64) {
    let (f, df) = p.temporal(t);
    let kappa = p.kappa();
    let xi = kappa * (x - p.x_left);
    let slope = (p.e_right - p.e_left) / (p.x_right - p.x_left);
    let e = f * xi.sin() + slope * (x - p.x_left) + p.e_left;
    let flux = p.eps * df * xi.cos() / kappa - p.eps / p.sigma * slope * (p.x_right - p.x_left);
    (e, flux)
}

/// Exact solution sampled at every storage cell center at time `t`.
pub fn hhe_exact_state(grid: &Grid1D, p: &ExactHheParams, t: f64) -> State {
    let mut s = State::sample(ModelKind::Hhe, grid, |x| hhe_exact(t, x, p));
    s.time = t;
    s
}

/// Piecewise-constant data: `left` for centers at or left of the midpoint, `right` beyond, second field zero.
pub fn riemann_ic(grid: &Grid1D, kind: ModelKind, left: f64, right: f64) -> State {
    let mid = grid.midpoint();
    State::sample(kind, grid, |x| (if x <= mid { left } else { right }, 0.0))
}

/// Smooth decreasing arctan ramp equal to `sigma_max` at `x_left`.
pub fn sigma_arctan_profile(x: f64, sigma_max: f64, sigma_min: f64, gamma: f64, x_left: f64, x_right: f64) -> f64 {
    let xc = 0.5 * (x_left + x_right);
    let tau = arctan_tau(xc, gamma);
    let shape = |y: f64| 1.0 - 2.0 / PI * ((y - 0.5 * xc) / tau).atan();
    (sigma_max - sigma_min) * shape(x) / shape(x_left) + sigma_min
}

/// Width `tau` for which `1 - (2/pi) atan(x_c / (2 tau)) = gamma`.
pub fn arctan_tau(xc: f64, gamma: f64) -> f64 {
    xc / (2.0 * (0.5 * PI * (1.0 - gamma)).tan())
}

/// Adaptive Simpson quadrature of `f` on `[a, b]` to absolute tolerance `tol`.
pub fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(fa: f64, fm: f64, fb: f64, h: f64) -> f64 {
        h / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse(f: &impl Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = simpson(fa, flm, fm, m - a);
        let right = simpson(fm, frm, fb, b - m);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
                + recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
        }
    }
    if a == b {
        return 0.0;
    }
    let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
    recurse(f, a, b, fa, fm, fb, simpson(fa, fm, fb, b - a), tol, 50)
}

/// How the density product inside the momentum formula is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DensityProduct {
    /// `rho_L rho_R`.
    #[default]
    LeftRight,
    /// `rho_L rho_L`, as typeset.
    LeftLeft,
}

/// Closed-form steady state of isothermal Euler with friction and Dirichlet densities.
#[derive(Debug, Clone, PartialEq)]
pub struct SteadyState {
    pub rho_left: f64,
    pub rho_right: f64,
    pub c: f64,
    pub eps: f64,
    pub profile: SigmaProfile,
    pub x_left: f64,
    pub x_right: f64,
    pub quad_tol: f64,
    /// Scaled momentum, `rho u = eps a`.
    pub a: f64,
    /// Integral of sigma over the domain.
    pub i_sigma: f64,
}

impl SteadyState {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        rho_left: f64,
        rho_right: f64,
        c: f64,
        eps: f64,
        profile: SigmaProfile,
        x_left: f64,
        x_right: f64,
        quad_tol: f64,
        reading: DensityProduct,
    ) -> Result<Self> {
        if !(rho_left > 0.0 && rho_right > 0.0 && c > 0.0 && eps > 0.0 && quad_tol > 0.0 && x_left < x_right) {
            return Err(Error::InvalidConfig("steady state needs positive densities, c, eps, tolerance".into()));
        }
        let sigma = |x: f64| profile.eval(x, x_left, x_right);
        let i_sigma = adaptive_simpson(&sigma, x_left, x_right, quad_tol * (x_right - x_left));
        let d = rho_left - rho_right;
        let prod = match reading {
            DensityProduct::LeftRight => rho_left * rho_right,
            DensityProduct::LeftLeft => rho_left * rho_left,
        };
        // Rationalised form: finite and exactly zero when the densities agree.
        let a = 2.0 * c * c * d / (i_sigma + (i_sigma * i_sigma + 4.0 * eps * eps * c * c * d * d / prod).sqrt());
        Ok(Self {
            rho_left,
            rho_right,
            c,
            eps,
            profile,
            x_left,
            x_right,
            quad_tol,
            a,
            i_sigma,
        })
    }

    fn momentum_flux(&self, rho: f64) -> f64 {
        self.eps * self.eps * self.a * self.a / rho + self.c * self.c * rho
    }

    /// Cumulative fraction `I_x / I_sigma`.
    pub fn beta_sigma(&self, x: f64) -> f64 {
        let sigma = |y: f64| self.profile.eval(y, self.x_left, self.x_right);
        adaptive_simpson(&sigma, self.x_left, x, self.quad_tol * (self.x_right - self.x_left)) / self.i_sigma
    }

    /// `(rho, rho u)` at `x`.
    pub fn eval(&self, x: f64) -> Result<(f64, f64)> {
        let beta = self.beta_sigma(x);
        let fbar = beta * self.momentum_flux(self.rho_right) + (1.0 - beta) * self.momentum_flux(self.rho_left);
        let fmin = 2.0 * self.eps * self.a * self.c;
        let disc = 1.0 - (fmin / fbar).powi(2);
        if !(disc >= 0.0) || !(fbar > 0.0) {
            return Err(Error::ParameterRange(format!("steady state has no subsonic branch at x={x}")));
        }
        Ok((fbar / (2.0 * self.c * self.c) * (1.0 + disc.sqrt()), self.eps * self.a))
    }

    /// Steady state sampled at every storage cell center.
    pub fn state(&self, grid: &Grid1D) -> Result<State> {
        let mut s = State::zeros(ModelKind::EulerFriction, grid);
        for i in 0..grid.len_with_ghosts() {
            let (r, m) = self.eval(grid.center_at(i).clamp(self.x_left, self.x_right))?;
            s.a[i] = r;
            s.b[i] = m;
        }
        Ok(s)
    }

    /// Integrates `d/dx (eps^2 a^2 / rho + c^2 rho) = -sigma a` from the left end with RK4
    /// and returns the density reached at the right end.
    pub fn shoot(&self, steps: usize) -> f64 {
        let rhs = |x: f64, rho: f64| {
            let s = self.profile.eval(x, self.x_left, self.x_right);
            let ea = self.eps * self.a;
            -s * self.a / (self.c * self.c - ea * ea / (rho * rho))
        };
        let h = (self.x_right - self.x_left) / steps as f64;
        let mut rho = self.rho_left;
        for k in 0..steps {
            let x = self.x_left + k as f64 * h;
            let k1 = rhs(x, rho);
            let k2 = rhs(x + 0.5 * h, rho + 0.5 * h * k1);
            let k3 = rhs(x + 0.5 * h, rho + 0.5 * h * k2);
            let k4 = rhs(x + h, rho + h * k3);
            rho += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        rho
    }
}

/// `(rho, rho u)` of the closed-form steady state at a single point.
#[allow(clippy::too_many_arguments)]
pub fn steady_state_solution(
    x: f64,
    rho_left: f64,
    rho_right: f64,
    c: f64,
    eps: f64,
    profile: SigmaProfile,
    x_left: f64,
    x_right: f64,
    quad_tol: f64,
) -> Result<(f64, f64)> {
    SteadyState::new(rho_left, rho_right, c, eps, profile, x_left, x_right, quad_tol, DensityProduct::LeftRight)?
        .eval(x)
}

/// Boundary treatment of the limit diffusion solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DiffusionBc {
    Dirichlet { left: f64, right: f64 },
    Neumann,
}

/// Explicit centered solve of `E_t = (E_x / sigma)_x` with harmonic-mean interface coefficients.
pub fn diffusion_reference(
    e0: &[f64],
    profile: &SigmaProfile,
    grid: &Grid1D,
    t_final: f64,
    bc: DiffusionBc,
) -> Result<Vec<f64>> {
    let n = grid.n_cells;
    if e0.len() != n {
        return Err(Error::SizeMismatch { expected: n, found: e0.len() });
    }
    if !(t_final >= 0.0) {
        return Err(Error::InvalidConfig("final time must be non-negative".into()));
    }
    let sig: Vec<f64> = (0..n + 2)
        .map(|i| profile.eval(grid.x_left + (i as f64 - 0.5) * grid.dx, grid.x_left, grid.x_right))
        .collect();
    let sigma_min = sig[1..=n].iter().cloned().fold(f64::INFINITY, f64::min);
    let coeff: Vec<f64> = (0..=n).map(|i| 2.0 / (sig[i] + sig[i + 1])).collect();
    let dt_stable = 0.4 * sigma_min * grid.dx * grid.dx;
    let steps = (t_final / dt_stable).ceil().max(1.0) as usize;
    let dt = t_final / steps as f64;
    let r = dt / (grid.dx * grid.dx);
    let mut e = vec![0.0; n + 2];
    e[1..=n].copy_from_slice(e0);
    let mut next = e.clone();
    for _ in 0..steps {
        match bc {
            DiffusionBc::Dirichlet { left, right } => {
                e[0] = 2.0 * left - e[1];
                e[n + 1] = 2.0 * right - e[n];
            }
            DiffusionBc::Neumann => {
                e[0] = e[1];
                e[n + 1] = e[n];
            }
        }
        for j in 1..=n {
            next[j] = e[j] + r * (coeff[j] * (e[j + 1] - e[j]) - coeff[j - 1] * (e[j] - e[j - 1]));
        }
        std::mem::swap(&mut e, &mut next);
    }
    Ok(e[1..=n].to_vec())
}
