//! Reverse Runge-Kutta integrators for affine right-hand sides `f(U) = L U + g`.

use crate::error::{Error, Result};
use nalgebra::{DMatrix, DVector, SMatrix, SVector};
use num_complex::Complex64;

/// Butcher array of a two-stage implicit method.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Butcher {
    pub a: [[f64; 2]; 2],
    pub b: [f64; 2],
    pub c: [f64; 2],
}

/// Reverse Runge-Kutta method of order 1 (backward Euler) or 2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RrkMethod {
    pub order: u8,
    pub alpha: f64,
}

impl RrkMethod {
    pub fn order1() -> Self {
        Self { order: 1, alpha: 1.0 }
    }

    /// Second-order member with the default `alpha = 1/2`.
    pub fn order2() -> Self {
        Self { order: 2, alpha: 0.5 }
    }

    pub fn order2_with(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::ParameterRange(format!("alpha must lie in (0, 1], got {alpha}")));
        }
        Ok(Self { order: 2, alpha })
    }

    /// Butcher array obtained by running the explicit two-stage method backwards.
    pub fn butcher(&self) -> Butcher {
        if self.order == 1 {
            return Butcher {
                a: [[1.0, 0.0], [0.0, 0.0]],
                b: [1.0, 0.0],
                c: [1.0, 0.0],
            };
        }
        let al = self.alpha;
        let w = 1.0 / (2.0 * al);
        Butcher {
            a: [[w, 1.0 - w - al], [w, 1.0 - w]],
            b: [w, 1.0 - w],
            c: [1.0 - al, 1.0],
        }
    }
}

impl Default for RrkMethod {
    fn default() -> Self {
        Self::order2()
    }
}

/// One step for `U' = L U + g` in closed form.
///
/// Order 1 solves `(I - dt L) U1 = U0 + dt g`. For order 2 the implicit relation
/// collapses, for any alpha, to `(I - dt L + dt^2 L^2 / 2) U1 = U0 + dt g - dt^2 L g / 2`.
pub fn rrk_step_affine<const D: usize>(
    method: &RrkMethod,
    l: &SMatrix<f64, D, D>,
    g: &SVector<f64, D>,
    u: &SVector<f64, D>,
    dt: f64,
) -> Result<SVector<f64, D>> {
    let id = SMatrix::<f64, D, D>::identity();
    let (lhs, rhs) = match method.order {
        1 => (id - l * dt, u + g * dt),
        2 => (
            id - l * dt + l * l * (0.5 * dt * dt),
            u + g * dt - l * g * (0.5 * dt * dt),
        ),
        o => return Err(Error::InvalidConfig(format!("reverse RK order {o} is not available"))),
    };
    let lhs = DMatrix::from_column_slice(D, D, lhs.as_slice());
    let rhs = DVector::from_column_slice(rhs.as_slice());
    let sol = lhs
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::Singular("reverse Runge-Kutta step".into()))?;
    Ok(SVector::<f64, D>::from_column_slice(sol.as_slice()))
}

/// Scalar convenience wrapper of [`rrk_step_affine`].
pub fn rrk_step_scalar(method: &RrkMethod, lambda: f64, g: f64, u: f64, dt: f64) -> Result<f64> {
    let out = rrk_step_affine(
        method,
        &SMatrix::<f64, 1, 1>::new(lambda),
        &SVector::<f64, 1>::new(g),
        &SVector::<f64, 1>::new(u),
        dt,
    )?;
    Ok(out[0])
}

/// One step through the full stage system of the Butcher array.
///
/// Solves `K_i = f(U0 + dt sum_j a_ij K_j)` for both stages at once and returns
/// `U0 + dt sum_i b_i K_i`. Independent of [`rrk_step_affine`], used to cross-check it.
pub fn rrk_step_stages<const D: usize>(
    method: &RrkMethod,
    l: &SMatrix<f64, D, D>,
    g: &SVector<f64, D>,
    u: &SVector<f64, D>,
    dt: f64,
) -> Result<SVector<f64, D>> {
    let tab = method.butcher();
    let s = if method.order == 1 { 1 } else { 2 };
    let n = s * D;
    let mut m = DMatrix::<f64>::identity(n, n);
    let mut rhs = DVector::<f64>::zeros(n);
    let lu0 = l * u + g;
    for i in 0..s {
        for j in 0..s {
            let blk = l * (dt * tab.a[i][j]);
            for r in 0..D {
                for c in 0..D {
                    m[(i * D + r, j * D + c)] -= blk[(r, c)];
                }
            }
        }
        for r in 0..D {
            rhs[i * D + r] = lu0[r];
        }
    }
    let k = m
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::Singular("reverse Runge-Kutta stage system".into()))?;
    let mut out = *u;
    for i in 0..s {
        for r in 0..D {
            out[r] += dt * tab.b[i] * k[i * D + r];
        }
    }
    Ok(out)
}

/// `R*(z) = 1 / (1 - z + z^2 / 2)`, the stability function of the order-2 method.
pub fn rrk2_stability_function(z: Complex64, _alpha: f64) -> Result<Complex64> {
    let den = 1.0 - z + 0.5 * z * z;
    if den.norm() == 0.0 {
        return Err(Error::Singular(format!("pole of the stability function at z = {z}")));
    }
    Ok(1.0 / den)
}

/// Factor applied to the relaxing component over `dt` by one order-2 step of `y' = -k y`.
pub fn rrk2_decay(k_dt: f64) -> f64 {
    1.0 / (1.0 + k_dt + 0.5 * k_dt * k_dt)
}
