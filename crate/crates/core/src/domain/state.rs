use super::Grid1D;
use crate::error::{Error, Result};

/// Which conservation system a [`State`] belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    /// Hyperbolic heat equation, fields (E, F).
    Hhe,
    /// Barotropic Euler with friction, fields (rho, rho u).
    EulerFriction,
}

/// Conserved pair stored cell-wise with ghost layers on both sides.
#[derive(Debug, Clone, PartialEq)]
pub struct State {
    pub kind: ModelKind,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub time: f64,
    pub n_ghost: usize,
}

impl State {
    /// Zero-filled state sized for `grid`.
    pub fn zeros(kind: ModelKind, grid: &Grid1D) -> Self {
        let n = grid.len_with_ghosts();
        Self {
            kind,
            a: vec![0.0; n],
            b: vec![0.0; n],
            time: 0.0,
            n_ghost: grid.n_ghost,
        }
    }

    /// State built from interior values; ghosts start at zero.
    pub fn from_interior(kind: ModelKind, grid: &Grid1D, a: &[f64], b: &[f64]) -> Result<Self> {
        for v in [a, b] {
            if v.len() != grid.n_cells {
                return Err(Error::SizeMismatch {
                    expected: grid.n_cells,
                    found: v.len(),
                });
            }
        }
        let mut s = Self::zeros(kind, grid);
        let g = grid.n_ghost;
        s.a[g..g + grid.n_cells].copy_from_slice(a);
        s.b[g..g + grid.n_cells].copy_from_slice(b);
        Ok(s)
    }

    /// Samples `f(x) -> (a, b)` at every cell center, ghosts included.
    pub fn sample(kind: ModelKind, grid: &Grid1D, f: impl Fn(f64) -> (f64, f64)) -> Self {
        let mut s = Self::zeros(kind, grid);
        for i in 0..grid.len_with_ghosts() {
            let (a, b) = f(grid.center_at(i));
            s.a[i] = a;
            s.b[i] = b;
        }
        s
    }

    pub fn n_cells(&self) -> usize {
        self.a.len() - 2 * self.n_ghost
    }

    pub fn interior_a(&self) -> &[f64] {
        &self.a[self.n_ghost..self.a.len() - self.n_ghost]
    }

    pub fn interior_b(&self) -> &[f64] {
        &self.b[self.n_ghost..self.b.len() - self.n_ghost]
    }

    pub fn interior_a_mut(&mut self) -> &mut [f64] {
        let end = self.a.len() - self.n_ghost;
        &mut self.a[self.n_ghost..end]
    }

    pub fn interior_b_mut(&mut self) -> &mut [f64] {
        let end = self.b.len() - self.n_ghost;
        &mut self.b[self.n_ghost..end]
    }

    /// Checks that the storage matches `grid`.
    pub fn check_grid(&self, grid: &Grid1D) -> Result<()> {
        let n = grid.len_with_ghosts();
        if self.a.len() != n || self.b.len() != n || self.n_ghost != grid.n_ghost {
            return Err(Error::SizeMismatch {
                expected: n,
                found: self.a.len(),
            });
        }
        Ok(())
    }

    /// True when every interior value is finite.
    pub fn is_finite(&self) -> bool {
        self.interior_a().iter().chain(self.interior_b()).all(|v| v.is_finite())
    }

    /// Sum of the first field over interior cells.
    pub fn total_a(&self) -> f64 {
        self.interior_a().iter().sum()
    }
}

/// Maps interior (E, F) to (u, v) = (wa E + wb F, wa E - wb F).
pub fn to_invariants(state: &State, weights: (f64, f64)) -> (Vec<f64>, Vec<f64>) {
    let (wa, wb) = weights;
    state
        .interior_a()
        .iter()
        .zip(state.interior_b())
        .map(|(&e, &f)| (wa * e + wb * f, wa * e - wb * f))
        .unzip()
}

/// Inverse of [`to_invariants`].
pub fn from_invariants(u: &[f64], v: &[f64], weights: (f64, f64)) -> (Vec<f64>, Vec<f64>) {
    let (wa, wb) = weights;
    u.iter()
        .zip(v)
        .map(|(&u, &v)| (0.5 * (u + v) / wa, 0.5 * (u - v) / wb))
        .unzip()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> Grid1D {
        Grid1D::new(0.0, 1.0, 3, 1).unwrap()
    }

    #[test]
    fn invariants_of_unit_vectors() {
        let g = grid();
        let s = State::from_interior(ModelKind::Hhe, &g, &[1.0, 0.0, 2.0], &[0.0, 1.0, 0.5]).unwrap();
        let (u, v) = to_invariants(&s, (1.0, 1.0));
        assert_eq!(u, vec![1.0, 1.0, 2.5]);
        assert_eq!(v, vec![1.0, -1.0, 1.5]);
        let (e, f) = from_invariants(&u, &v, (1.0, 1.0));
        assert_eq!(e, vec![1.0, 0.0, 2.0]);
        assert_eq!(f, vec![0.0, 1.0, 0.5]);
    }

    #[test]
    fn size_mismatch_is_reported() {
        let g = grid();
        let err = State::from_interior(ModelKind::Hhe, &g, &[1.0], &[0.0, 0.0, 0.0]).unwrap_err();
        assert_eq!(err, Error::SizeMismatch { expected: 3, found: 1 });
    }
}
