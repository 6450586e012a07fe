//! Admissible time-step bounds and Fourier amplification matrices.

use crate::domain::StiffnessFactors;
use crate::error::{Error, Result};
use crate::scheme::{EulerSchemeId, LinearSchemeId, SchemeId};
use num_complex::Complex64;
use std::fmt;

/// Which property a time-step bound guarantees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundKind {
    Linf,
    L2,
    Positivity,
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundKind::Linf => "linf",
            BoundKind::L2 => "l2",
            BoundKind::Positivity => "positivity",
        })
    }
}

/// Admissible interval `[dt_min, dt_max]`; `dt_min = 0` when no lower bound applies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimestepBounds {
    pub dt_min: f64,
    pub dt_max: f64,
    pub scheme: SchemeId,
    pub kind: BoundKind,
}

impl TimestepBounds {
    pub fn is_empty(&self) -> bool {
        self.dt_min > self.dt_max
    }

    pub fn contains(&self, dt: f64) -> bool {
        dt >= self.dt_min && dt <= self.dt_max
    }

    /// `dt_min + fraction * (dt_max - dt_min)`.
    pub fn interpolate(&self, fraction: f64) -> f64 {
        self.dt_min + fraction * (self.dt_max - self.dt_min)
    }
}

/// Physical and mesh inputs of the closed-form bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundInputs {
    pub eps: f64,
    pub sigma_min: f64,
    pub sigma_max: f64,
    pub dx: f64,
    /// Largest |u| on the grid (nonlinear bounds only).
    pub u_max: f64,
    /// Largest sound speed on the grid (nonlinear bounds only).
    pub c: f64,
}

impl BoundInputs {
    /// Constant sigma, unit characteristic speed.
    pub fn hhe(eps: f64, sigma: f64, dx: f64) -> Self {
        Self {
            eps,
            sigma_min: sigma,
            sigma_max: sigma,
            dx,
            u_max: 0.0,
            c: 1.0,
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = self.eps > 0.0
            && self.sigma_min > 0.0
            && self.sigma_max >= self.sigma_min
            && self.dx > 0.0
            && self.u_max >= 0.0
            && self.c > 0.0
            && [self.eps, self.sigma_max, self.dx, self.u_max, self.c]
                .iter()
                .all(|v| v.is_finite());
        if ok {
            Ok(())
        } else {
            Err(Error::ParameterRange(format!("invalid bound inputs {self:?}")))
        }
    }
}

/// Inner power of the mesh size in the l2 bound of the second-order scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ImEx2L2Variant {
    /// Root of `6 dt^2 - sigma dx^2 dt - eps^2 dx^2 = 0`, i.e. `(2 eps / (sigma dx))^2` under the root.
    #[default]
    Corrected,
    /// `(2 eps / (sigma dx^2))^2` under the root, as typeset in the original statement.
    Printed,
}

/// Form of the density-positivity bound of the first-order Euler-friction scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PositivityForm {
    /// As typeset: no `1/(u^2+c^2)` prefactor and `sigma_max` under the root.
    Printed,
    /// Positive root of the quadratic obtained from the cell-coefficient condition.
    #[default]
    Derived,
}

/// Switches between alternative readings of two closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BoundOptions {
    pub imex2_l2: ImEx2L2Variant,
    pub positivity: PositivityForm,
}

fn upwind_max(eps: f64, sigma: f64, dx: f64) -> f64 {
    eps * eps * dx / (eps + sigma * dx)
}

fn imex1_linf_max(eps: f64, sigma: f64, dx: f64) -> f64 {
    let r = 4.0 * eps / (sigma * dx);
    0.25 * sigma * dx * dx * 0.5 * (1.0 + (1.0 + 2.0 * r * r).sqrt())
}

fn imex1_l2_max(eps: f64, sigma: f64, dx: f64) -> f64 {
    let r = 4.0 * eps / (sigma * dx);
    0.25 * sigma * dx * dx * 0.5 * (1.0 + (1.0 + r * r).sqrt())
}

fn imex1_upwd_max(eps: f64, sigma: f64, dx: f64) -> f64 {
    let q = eps / (sigma * dx);
    let h = 0.5 - q;
    0.25 * sigma * dx * dx * (h + (h * h + 8.0 * q * q).sqrt())
}

fn imex2_linf_closed(eps: f64, sigma: f64, dx: f64) -> (f64, f64) {
    let r = 2.0 * eps / (sigma * dx);
    let dt_min = eps * dx + sigma * dx / 6.0;
    let dt_max = sigma * dx * dx / 4.5 * 0.5 * (1.0 + (1.0 + 4.5 * r * r).sqrt());
    (dt_min, dt_max)
}

fn imex2_l2_max(eps: f64, sigma: f64, dx: f64, variant: ImEx2L2Variant) -> f64 {
    let r = match variant {
        ImEx2L2Variant::Corrected => 2.0 * eps / (sigma * dx),
        ImEx2L2Variant::Printed => 2.0 * eps / (sigma * dx * dx),
    };
    sigma * dx * dx / 6.0 * 0.5 * (1.0 + (1.0 + 6.0 * r * r).sqrt())
}

fn positivity_max(inp: &BoundInputs, form: PositivityForm) -> f64 {
    let BoundInputs {
        eps,
        sigma_min,
        sigma_max,
        dx,
        u_max,
        c,
    } = *inp;
    let k = u_max * u_max + c * c;
    let h = 1.0 - eps * u_max / (sigma_min * dx);
    match form {
        PositivityForm::Printed => {
            let disc = h * h + 8.0 * eps * eps * k / (sigma_max * sigma_max * dx * dx);
            0.5 * sigma_min * dx * dx * 0.5 * (h + disc.sqrt())
        }
        PositivityForm::Derived => {
            let disc = h * h + 8.0 * eps * eps * k / (sigma_min * sigma_min * dx * dx);
            sigma_min * dx * dx / (4.0 * k) * (h + disc.sqrt())
        }
    }
}

fn muscl_hancock_max(inp: &BoundInputs) -> f64 {
    0.9 * (2.0 * inp.eps * inp.eps / inp.sigma_max).min(inp.eps * inp.dx / (inp.u_max + inp.c))
}

/// Closed-form bounds with the default readings of [`BoundOptions`].
pub fn dt_bounds(scheme: SchemeId, kind: BoundKind, inputs: &BoundInputs) -> Result<TimestepBounds> {
    dt_bounds_with(scheme, kind, inputs, BoundOptions::default())
}

/// Closed-form bounds for a (scheme, property) pair.
pub fn dt_bounds_with(
    scheme: SchemeId,
    kind: BoundKind,
    inputs: &BoundInputs,
    options: BoundOptions,
) -> Result<TimestepBounds> {
    inputs.validate()?;
    let BoundInputs {
        eps,
        sigma_min,
        sigma_max,
        dx,
        u_max,
        c,
    } = *inputs;
    // Euler-friction bounds reuse the linear ones after rescaling by the fastest speed.
    let s = u_max + c;
    let (eps_s, sigma_s) = (eps / s, sigma_min / (s * s));
    use BoundKind::*;
    let (dt_min, dt_max) = match (scheme, kind) {
        (SchemeId::Hhe(LinearSchemeId::Upwind), L2) => (0.0, upwind_max(eps, sigma_max, dx)),
        (SchemeId::Hhe(LinearSchemeId::ImEx1Ctr), Linf) => {
            (0.5 * eps * dx, imex1_linf_max(eps, sigma_min, dx))
        }
        (SchemeId::Hhe(LinearSchemeId::ImEx1Ctr | LinearSchemeId::ImEx1Itr), L2) => {
            (0.0, imex1_l2_max(eps, sigma_min, dx))
        }
        (SchemeId::Hhe(LinearSchemeId::ImEx1Upwd), Linf) => (0.0, imex1_upwd_max(eps, sigma_min, dx)),
        (SchemeId::Hhe(LinearSchemeId::ImEx2Ctr), Linf) => imex2_linf_closed(eps, sigma_min, dx),
        (SchemeId::Hhe(LinearSchemeId::ImEx2Ctr | LinearSchemeId::ImEx2Minmod), L2) => {
            (0.0, imex2_l2_max(eps, sigma_min, dx, options.imex2_l2))
        }
        (SchemeId::Hhe(LinearSchemeId::MusclHancockStrang), _)
        | (SchemeId::Euler(EulerSchemeId::MusclHancockStrang), _) => (0.0, muscl_hancock_max(inputs)),
        (SchemeId::Euler(EulerSchemeId::ImEx1), Positivity) => {
            (0.0, positivity_max(inputs, options.positivity))
        }
        (SchemeId::Euler(EulerSchemeId::ImEx1), L2) => (0.0, imex1_l2_max(eps_s, sigma_s, dx)),
        (SchemeId::Euler(EulerSchemeId::ImEx2Ctr | EulerSchemeId::ImEx2Minmod), L2) => {
            (0.0, imex2_l2_max(eps_s, sigma_s, dx, options.imex2_l2))
        }
        _ => {
            return Err(Error::UnsupportedBound {
                scheme: scheme.to_string(),
                norm: kind.to_string(),
            })
        }
    };
    if !(dt_max.is_finite() && dt_max > 0.0 && dt_min.is_finite()) {
        return Err(Error::NonFinite(format!(
            "bound for {scheme} ({kind}) evaluated to [{dt_min}, {dt_max}]"
        )));
    }
    Ok(TimestepBounds {
        dt_min,
        dt_max,
        scheme,
        kind,
    })
}

/// The three cell-coefficient conditions behind the l-infinity bound of the second-order scheme.
///
/// Each is non-negative exactly when the corresponding coefficient of the
/// update written in the diagonal variables is non-negative.
#[derive(Debug, Clone, Copy)]
pub struct ImEx2LinfConditions {
    pub eps: f64,
    pub sigma: f64,
    pub dx: f64,
}

impl ImEx2LinfConditions {
    fn parts(&self, dt: f64) -> (StiffnessFactors, f64, f64) {
        let f = StiffnessFactors::from_x(self.sigma * dt / (self.eps * self.eps))
            .expect("finite stiffness ratio");
        let mu = dt / (self.eps * self.dx);
        (f, mu * mu, mu)
    }

    /// Coefficient of the diagonal variable at the cell itself.
    pub fn a(&self, dt: f64) -> f64 {
        let (f, d, _) = self.parts(dt);
        1.0 - f.m_plus_plus * d - f.m2 * f.x / 3.0
    }

    /// Coefficient of the upwind-side neighbour.
    pub fn b(&self, dt: f64) -> f64 {
        let (f, d, mu) = self.parts(dt);
        0.5 * f.m_plus_plus * d - 0.5 * f.m_tilde * mu - f.m2 * f.x / 12.0
    }

    /// Coupling coefficient between the two diagonal variables.
    pub fn c(&self, dt: f64) -> f64 {
        let (f, d, _) = self.parts(dt);
        f.m2 * f.x / 3.0 - f.m_minus_plus * d
    }
}

/// Refined interval together with the diagnostic on the coupling condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RefinedBounds {
    pub bounds: TimestepBounds,
    /// Whether the coupling condition held on every sample of the interval.
    pub coupling_holds: bool,
}

const SCAN_POINTS: usize = 400;

fn bisect(f: impl Fn(f64) -> f64, mut neg: f64, mut pos: f64, tol: f64) -> (f64, f64) {
    for _ in 0..400 {
        if (pos - neg).abs() <= tol * pos.abs().min(neg.abs()) {
            break;
        }
        let mid = 0.5 * (neg + pos);
        if f(mid) >= 0.0 {
            pos = mid;
        } else {
            neg = mid;
        }
    }
    (neg, pos)
}

fn geometric_grid(hi: f64) -> impl DoubleEndedIterator<Item = f64> + Clone {
    let lo = hi * 1e-12;
    let ratio = (hi / lo).ln() / (SCAN_POINTS - 1) as f64;
    (0..SCAN_POINTS).map(move |i| lo * (ratio * i as f64).exp())
}

/// Numerically refined l-infinity interval of the second-order centered scheme.
///
/// `dt_max` is the first root of the cell condition and `dt_min` the last root
/// of the neighbour condition, both located to relative tolerance `tol`.
pub fn dt_imex2_linf_refined(eps: f64, sigma: f64, dx: f64, tol: f64) -> Result<RefinedBounds> {
    if !(tol > 0.0) {
        return Err(Error::ParameterRange(format!("tolerance must be > 0, got {tol}")));
    }
    BoundInputs::hhe(eps, sigma, dx).validate()?;
    let cond = ImEx2LinfConditions { eps, sigma, dx };
    let (closed_min, closed_max) = imex2_linf_closed(eps, sigma, dx);
    let scheme = SchemeId::Hhe(LinearSchemeId::ImEx2Ctr);

    // Upper end: first crossing of the cell condition below zero.
    let mut prev = None;
    let mut upper = None;
    for t in geometric_grid(10.0 * closed_max) {
        if cond.a(t) < 0.0 {
            upper = Some((prev.unwrap_or(0.0), t));
            break;
        }
        prev = Some(t);
    }
    let (lo, hi) = upper.ok_or_else(|| {
        Error::EmptyInterval(format!("cell condition never fails below {}", 10.0 * closed_max))
    })?;
    let (_, dt_max) = bisect(|t| cond.a(t), hi, lo, tol);

    // Lower end: last crossing of the neighbour condition from negative to positive.
    let mut next = None;
    let mut lower = None;
    for t in geometric_grid(10.0 * closed_min).rev() {
        if cond.b(t) < 0.0 {
            match next {
                Some(n) => lower = Some((t, n)),
                None => {
                    return Err(Error::EmptyInterval(format!(
                        "neighbour condition fails at the bracket end {}",
                        10.0 * closed_min
                    )))
                }
            }
            break;
        }
        next = Some(t);
    }
    let (neg, pos) = lower.ok_or_else(|| Error::EmptyInterval("neighbour condition never fails".into()))?;
    let (_, dt_min) = bisect(|t| cond.b(t), neg, pos, tol);

    if dt_min > dt_max || cond.a(dt_min) < 0.0 || cond.b(dt_max) < 0.0 {
        return Err(Error::EmptyInterval(format!(
            "refined bounds [{dt_min:e}, {dt_max:e}] for eps={eps}, sigma={sigma}, dx={dx}"
        )));
    }
    let coupling_holds = (0..=32).all(|i| {
        let t = dt_min + (dt_max - dt_min) * i as f64 / 32.0;
        cond.c(t) >= 0.0
    });
    if !coupling_holds {
        log::warn!("coupling condition violated inside [{dt_min:e}, {dt_max:e}] (eps={eps}, dx={dx})");
    }
    Ok(RefinedBounds {
        bounds: TimestepBounds {
            dt_min,
            dt_max,
            scheme,
            kind: BoundKind::Linf,
        },
        coupling_holds,
    })
}

/// Two-by-two Fourier symbol of a linear scheme for the mode `exp(+i j k dx)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplificationMatrix {
    pub k: f64,
    pub entries: [[Complex64; 2]; 2],
}

impl AmplificationMatrix {
    /// Largest singular value.
    pub fn norm2(&self) -> f64 {
        let [[a, b], [c, d]] = self.entries;
        let h11 = a.norm_sqr() + c.norm_sqr();
        let h22 = b.norm_sqr() + d.norm_sqr();
        let h12 = a.conj() * b + c.conj() * d;
        let gap = ((h11 - h22).powi(2) + 4.0 * h12.norm_sqr()).sqrt();
        (0.5 * (h11 + h22 + gap)).sqrt()
    }

    /// Largest eigenvalue modulus.
    pub fn spectral_radius(&self) -> f64 {
        let [[a, b], [c, d]] = self.entries;
        let half_tr = 0.5 * (a + d);
        let root = (half_tr * half_tr - (a * d - b * c)).sqrt();
        (half_tr + root).norm().max((half_tr - root).norm())
    }

    pub fn apply(&self, w: [Complex64; 2]) -> [Complex64; 2] {
        let [[a, b], [c, d]] = self.entries;
        [a * w[0] + b * w[1], c * w[0] + d * w[1]]
    }
}

/// Fourier symbol of the centered ImEx schemes in their diagonal variables.
///
/// First order uses (u, v) = (E + F, E - F); second order uses
/// (sqrt(M2) E + sqrt(M1) F, sqrt(M2) E - sqrt(M1) F).
pub fn amplification_matrix(
    scheme: LinearSchemeId,
    k: f64,
    dt: f64,
    dx: f64,
    eps: f64,
    sigma: f64,
) -> Result<AmplificationMatrix> {
    if !(dt > 0.0 && dx > 0.0 && eps > 0.0 && sigma > 0.0) {
        return Err(Error::ParameterRange("symbol needs dt, dx, eps, sigma > 0".into()));
    }
    let f = StiffnessFactors::from_x(sigma * dt / (eps * eps))?;
    let theta = k * dx;
    let s2 = (0.5 * theta).sin().powi(2);
    let i = Complex64::i();
    let one = Complex64::new(1.0, 0.0);
    let entries = match scheme {
        LinearSchemeId::ImEx1Ctr => {
            let a = 4.0 * f.m * dt * dt / (eps * eps * dx * dx) * s2;
            let c = f.m * dt / (eps * dx) * theta.sin();
            let b = sigma * f.m * dt / (2.0 * eps * eps);
            [
                [one * (1.0 - a - b) - i * c, one * b],
                [one * b, one * (1.0 - a - b) + i * c],
            ]
        }
        LinearSchemeId::ImEx2Ctr => {
            let a = 2.0 * dt * dt / (eps * eps * dx * dx) * s2;
            let c = dt / (eps * dx) * theta.sin();
            let b = (2.0 + theta.cos()) / 3.0 * sigma * dt / (2.0 * eps * eps);
            let diag = 1.0 - f.m_plus_plus * a - f.m2 * b;
            let off = f.m2 * b - f.m_minus_plus * a;
            [
                [one * diag - i * (f.m_tilde * c), one * off],
                [one * off, one * diag + i * (f.m_tilde * c)],
            ]
        }
        other => {
            return Err(Error::UnsupportedBound {
                scheme: SchemeId::Hhe(other).to_string(),
                norm: "fourier".into(),
            })
        }
    };
    Ok(AmplificationMatrix { k, entries })
}
