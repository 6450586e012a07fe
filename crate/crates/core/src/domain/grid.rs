use crate::error::{Error, Result};
use std::ops::Range;

/// Uniform 1D mesh of `n_cells` cells with `n_ghost` ghost layers per side.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid1D {
    pub x_left: f64,
    pub x_right: f64,
    pub n_cells: usize,
    pub n_ghost: usize,
    pub dx: f64,
    pub centers: Vec<f64>,
}

impl Grid1D {
    pub fn new(x_left: f64, x_right: f64, n_cells: usize, n_ghost: usize) -> Result<Self> {
        if !(x_left.is_finite() && x_right.is_finite()) || x_left >= x_right {
            return Err(Error::InvalidConfig(format!(
                "domain [{x_left}, {x_right}] is not a proper interval"
            )));
        }
        if n_cells == 0 {
            return Err(Error::InvalidConfig("grid needs at least one cell".into()));
        }
        if !(1..=2).contains(&n_ghost) {
            return Err(Error::InvalidConfig(format!(
                "ghost layers must be 1 or 2, got {n_ghost}"
            )));
        }
        let dx = (x_right - x_left) / n_cells as f64;
        let centers = (0..n_cells)
            .map(|j| x_left + (j as f64 + 0.5) * dx)
            .collect();
        Ok(Self {
            x_left,
            x_right,
            n_cells,
            n_ghost,
            dx,
            centers,
        })
    }

    /// Unit interval with two ghost layers, the layout every scheme accepts.
    pub fn unit(n_cells: usize) -> Result<Self> {
        Self::new(0.0, 1.0, n_cells, 2)
    }

    /// Storage length including ghosts.
    pub fn len_with_ghosts(&self) -> usize {
        self.n_cells + 2 * self.n_ghost
    }

    /// Storage indices of the interior cells.
    pub fn interior(&self) -> Range<usize> {
        self.n_ghost..self.n_ghost + self.n_cells
    }

    /// Center of the cell at storage index `i` (ghost cells included).
    pub fn center_at(&self, i: usize) -> f64 {
        self.x_left + (i as f64 - self.n_ghost as f64 + 0.5) * self.dx
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.x_left + self.x_right)
    }

    pub fn length(&self) -> f64 {
        self.x_right - self.x_left
    }
}
