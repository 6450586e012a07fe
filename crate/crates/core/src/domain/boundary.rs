use super::{Grid1D, State};
use crate::error::Result;

/// Ghost-cell rule at both ends of the domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryCondition {
    /// Wrap-around.
    Periodic,
    /// Dirichlet mean on the first field, homogeneous Neumann on the second.
    HybridDirichletNeumann { left: f64, right: f64 },
    /// Copy of the nearest interior cell into every ghost layer.
    ZeroGradient,
}

/// Fills the ghost layers of `state` in place.
pub fn fill_ghosts(state: &mut State, bc: &BoundaryCondition) {
    let g = state.n_ghost;
    let n = state.n_cells();
    let last = g + n - 1;
    for k in 1..=g {
        let (lo, hi) = (g - k, last + k);
        match *bc {
            BoundaryCondition::Periodic => {
                state.a[lo] = state.a[g + n - k];
                state.b[lo] = state.b[g + n - k];
                state.a[hi] = state.a[g + k - 1];
                state.b[hi] = state.b[g + k - 1];
            }
            BoundaryCondition::HybridDirichletNeumann { left, right } => {
                let il = g + k - 1;
                let ir = last + 1 - k;
                state.a[lo] = 2.0 * left - state.a[il];
                state.b[lo] = state.b[il];
                state.a[hi] = 2.0 * right - state.a[ir];
                state.b[hi] = state.b[ir];
            }
            BoundaryCondition::ZeroGradient => {
                state.a[lo] = state.a[g];
                state.b[lo] = state.b[g];
                state.a[hi] = state.a[last];
                state.b[hi] = state.b[last];
            }
        }
    }
}

/// Returns a copy of `state` with ghosts filled according to `bc`.
pub fn apply_boundary(state: &State, bc: &BoundaryCondition, grid: &Grid1D) -> Result<State> {
    state.check_grid(grid)?;
    let mut out = state.clone();
    fill_ghosts(&mut out, bc);
    Ok(out)
}
