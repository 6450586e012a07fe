use crate::error::{Error, Result};

/// Discrete norm over interior cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NormKind {
    Linf,
    L2,
}

/// `Linf = max |v|`, `L2 = sqrt(dx * sum v^2)`.
pub fn norm(values: &[f64], dx: f64, which: NormKind) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::Empty("norm of an empty array".into()));
    }
    Ok(match which {
        NormKind::Linf => values.iter().fold(0.0, |m, v| m.max(v.abs())),
        NormKind::L2 => (values.iter().map(|v| v * v).sum::<f64>() * dx).sqrt(),
    })
}
