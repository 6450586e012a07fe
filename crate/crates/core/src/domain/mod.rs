//! Grid, state storage, model parameters, stiffness factors, boundary
//! conditions and norms shared by every scheme.

mod boundary;
mod factors;
mod grid;
mod norms;
mod params;
mod state;

pub use boundary::{apply_boundary, fill_ghosts, BoundaryCondition};
pub use factors::{compute_factors, StiffnessFactors};
pub use grid::Grid1D;
pub use norms::{norm, NormKind};
pub use params::{ModelParams, Pressure, SigmaProfile};
pub use state::{from_invariants, to_invariants, ModelKind, State};
