use super::Grid1D;
use crate::cases::sigma_arctan_profile;
use crate::error::{Error, Result};

/// Barotropic pressure law p(rho) = C rho^iota.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pressure {
    pub coeff: f64,
    pub exponent: f64,
}

impl Pressure {
    pub fn new(coeff: f64, exponent: f64) -> Result<Self> {
        if !(coeff > 0.0 && coeff.is_finite()) || !(exponent >= 1.0 && exponent.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "pressure law needs C > 0 and iota >= 1 (got C={coeff}, iota={exponent})"
            )));
        }
        Ok(Self { coeff, exponent })
    }

    /// Isothermal law p = c^2 rho.
    pub fn isothermal(c: f64) -> Self {
        Self {
            coeff: c * c,
            exponent: 1.0,
        }
    }

    #[inline]
    pub fn p(&self, rho: f64) -> f64 {
        if self.exponent == 1.0 {
            self.coeff * rho
        } else {
            self.coeff * rho.powf(self.exponent)
        }
    }

    #[inline]
    pub fn dp(&self, rho: f64) -> f64 {
        if self.exponent == 1.0 {
            self.coeff
        } else {
            self.coeff * self.exponent * rho.powf(self.exponent - 1.0)
        }
    }

    #[inline]
    pub fn sound_speed(&self, rho: f64) -> f64 {
        self.dp(rho).sqrt()
    }
}

impl Default for Pressure {
    fn default() -> Self {
        Self::isothermal(1.0)
    }
}

/// Spatial shape of the relaxation coefficient sigma(x).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SigmaProfile {
    Const(f64),
    /// Smooth decreasing arctan ramp from `sigma_max` at the left end towards `sigma_min`.
    Arctan {
        sigma_max: f64,
        sigma_min: f64,
        gamma: f64,
    },
}

impl SigmaProfile {
    pub fn eval(&self, x: f64, x_left: f64, x_right: f64) -> f64 {
        match *self {
            SigmaProfile::Const(v) => v,
            SigmaProfile::Arctan {
                sigma_max,
                sigma_min,
                gamma,
            } => sigma_arctan_profile(x, sigma_max, sigma_min, gamma, x_left, x_right),
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            SigmaProfile::Const(v) if v > 0.0 && v.is_finite() => Ok(()),
            SigmaProfile::Const(v) => Err(Error::InvalidConfig(format!("sigma must be > 0, got {v}"))),
            SigmaProfile::Arctan {
                sigma_max,
                sigma_min,
                gamma,
            } => {
                if sigma_max > sigma_min && sigma_min > 0.0 && gamma > 0.0 && gamma < 1.0 {
                    Ok(())
                } else {
                    Err(Error::InvalidConfig(format!(
                        "arctan profile needs sigma_max > sigma_min > 0 and 0 < gamma < 1 \
                         (got {sigma_max}, {sigma_min}, {gamma})"
                    )))
                }
            }
        }
    }
}

/// Model parameters sampled on a grid: epsilon, per-cell sigma and the pressure law.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelParams {
    pub eps: f64,
    /// sigma at every storage index (ghost cells included).
    pub sigma: Vec<f64>,
    pub sigma_min: f64,
    pub sigma_max: f64,
    pub pressure: Pressure,
    pub n_ghost: usize,
    /// Mesh size of the grid the profile was sampled on.
    pub dx: f64,
}

impl ModelParams {
    pub fn new(eps: f64, profile: SigmaProfile, grid: &Grid1D, pressure: Pressure) -> Result<Self> {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Error::InvalidConfig(format!("epsilon must be > 0, got {eps}")));
        }
        profile.validate()?;
        let sigma: Vec<f64> = (0..grid.len_with_ghosts())
            .map(|i| profile.eval(grid.center_at(i), grid.x_left, grid.x_right))
            .collect();
        if sigma.iter().any(|&s| !(s > 0.0 && s.is_finite())) {
            return Err(Error::InvalidConfig("sigma profile is not positive on the grid".into()));
        }
        let inner = &sigma[grid.interior()];
        let sigma_min = inner.iter().cloned().fold(f64::INFINITY, f64::min);
        let sigma_max = inner.iter().cloned().fold(0.0, f64::max);
        Ok(Self {
            eps,
            sigma,
            sigma_min,
            sigma_max,
            pressure,
            n_ghost: grid.n_ghost,
            dx: grid.dx,
        })
    }

    /// Constant sigma, isothermal pressure with c = 1.
    pub fn constant(eps: f64, sigma: f64, grid: &Grid1D) -> Result<Self> {
        Self::new(eps, SigmaProfile::Const(sigma), grid, Pressure::default())
    }

    /// sigma at the interface between storage cells `i` and `i + 1`.
    #[inline]
    pub fn sigma_face(&self, i: usize) -> f64 {
        0.5 * (self.sigma[i] + self.sigma[i + 1])
    }
}
