//! Asymptotic-preserving implicit-explicit finite-volume schemes for one-dimensional
//! hyperbolic relaxation systems in the diffusive scaling.
//!
//! The hyperbolic heat equation (`E`, `F`) and the isothermal or barotropic Euler
//! equations with friction (`rho`, `rho u`) share the same data layout, boundary
//! handling and stiffness-factor algebra. Each scheme is an out-of-place map
//! `State -> State`.

pub mod cases;
pub mod domain;
pub mod error;
pub mod euler;
pub mod exec;
pub mod harness;
pub mod hhe;
pub mod muscl;
pub mod rrk;
pub mod scheme;
pub mod stability;

pub use domain::{
    apply_boundary, compute_factors, norm, BoundaryCondition, Grid1D, ModelKind, ModelParams, NormKind,
    Pressure, SigmaProfile, State, StiffnessFactors,
};
pub use error::{Error, Result};
pub use exec::Execution;
pub use scheme::{EulerSchemeId, LinearSchemeId, SchemeId};
pub use stability::{dt_bounds, dt_imex2_linf_refined, BoundKind, BoundInputs, TimestepBounds};
