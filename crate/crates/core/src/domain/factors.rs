use crate::error::{Error, Result};

/// Implicitness factors produced by solving the relaxation source exactly.
///
/// All of them are rational functions of `x = sigma dt / eps^2` with values in (0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StiffnessFactors {
    pub x: f64,
    pub m: f64,
    pub m_half: f64,
    pub m1: f64,
    pub m1p: f64,
    pub m2: f64,
    pub m2p: f64,
    pub m_tilde: f64,
    pub m_plus_plus: f64,
    pub m_minus_plus: f64,
    pub m3: f64,
}

const LARGE_X: f64 = 1e8;

impl StiffnessFactors {
    /// Factors as functions of `x` directly.
    pub fn from_x(x: f64) -> Result<Self> {
        if !(x >= 0.0) || !x.is_finite() {
            return Err(Error::ParameterRange(format!(
                "stiffness ratio sigma*dt/eps^2 = {x} is not finite and non-negative"
            )));
        }
        let (m, m_half, m1, m1p, m2, m2p, m3) = if x > LARGE_X {
            // Rewritten in y = 1/x so that no intermediate overflows.
            let y = 1.0 / x;
            let y2 = y * y;
            (
                y / (1.0 + y),
                2.0 * y / (1.0 + 2.0 * y),
                y2 / (y2 + 0.5 * y + 0.25),
                (y2 + 0.5 * y) / (y2 + 0.5 * y + 0.25),
                (y2 + 0.5 * y) / (y2 + y + 0.5),
                (y2 + y) / (y2 + y + 0.5),
                y2 / (y2 + y + 0.5),
            )
        } else {
            let h = 0.5 * x;
            let d1 = 1.0 + h * (1.0 + h);
            let d3 = 1.0 + x * (1.0 + h);
            (
                1.0 / (1.0 + x),
                1.0 / (1.0 + h),
                1.0 / d1,
                (1.0 + h) / d1,
                (1.0 + h) / d3,
                (1.0 + x) / d3,
                1.0 / d3,
            )
        };
        let f = Self {
            x,
            m,
            m_half,
            m1,
            m1p,
            m2,
            m2p,
            m_tilde: (m1 * m2).sqrt(),
            m_plus_plus: 0.5 * (m1p + m2p),
            m_minus_plus: 0.5 * (m1p - m2p),
            m3,
        };
        Ok(f)
    }

    /// Weights (sqrt(M2), sqrt(M1)) of the diagonal variables of the second-order scheme.
    pub fn tilde_weights(&self) -> (f64, f64) {
        (self.m2.sqrt(), self.m1.sqrt())
    }
}

/// Factors for a cell with relaxation coefficient `sigma_j`, step `dt` and scaling `eps`.
pub fn compute_factors(sigma_j: f64, dt: f64, eps: f64) -> Result<StiffnessFactors> {
    if !(sigma_j > 0.0 && dt > 0.0 && eps > 0.0) {
        return Err(Error::ParameterRange(format!(
            "factors need sigma, dt, eps > 0 (got {sigma_j}, {dt}, {eps})"
        )));
    }
    StiffnessFactors::from_x((sigma_j * dt) / (eps * eps))
}
