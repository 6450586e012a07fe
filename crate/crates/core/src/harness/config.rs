use crate::domain::{BoundaryCondition, ModelKind, Pressure, SigmaProfile};
use crate::error::{Error, Result};
use crate::scheme::SchemeId;
use std::str::FromStr;

/// Initial and reference data of a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseKind {
    /// Smooth exact solution of the hyperbolic heat equation.
    Exact,
    /// Piecewise-constant data with zero flux.
    Riemann,
    /// Euler-friction relaxation towards the closed-form steady state.
    Steady,
    /// Uniform random data on a periodic domain.
    Random,
}

impl FromStr for CaseKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Self::Exact),
            "riemann" => Ok(Self::Riemann),
            "steady" => Ok(Self::Steady),
            "random" => Ok(Self::Random),
            _ => Err(Error::InvalidConfig(format!("unknown case '{s}'"))),
        }
    }
}

impl CaseKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::Exact => "exact",
            Self::Riemann => "riemann",
            Self::Steady => "steady",
            Self::Random => "random",
        }
    }
}

/// How the time step is chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DtPolicy {
    /// `cfl * dt_max` of the l2 bound.
    L2,
    /// `dt_min + cfl (dt_max - dt_min)` of the l-infinity interval.
    Linf,
    /// `cfl * dt_max` of the density-positivity bound.
    Positivity,
    /// A fixed step.
    Fixed(f64),
    /// `k * dt_max` of the l2 bound, with `k` allowed above one.
    Scaled(f64),
}

impl FromStr for DtPolicy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let num = |v: &str| -> Result<f64> {
            v.parse::<f64>()
                .ok()
                .filter(|x| *x > 0.0 && x.is_finite())
                .ok_or_else(|| Error::InvalidConfig(format!("bad time-step value '{v}'")))
        };
        match s.split_once(':') {
            None => match s {
                "l2" => Ok(Self::L2),
                "linf" => Ok(Self::Linf),
                "positivity" => Ok(Self::Positivity),
                _ => Err(Error::InvalidConfig(format!("unknown dt policy '{s}'"))),
            },
            Some(("fixed", v)) => Ok(Self::Fixed(num(v)?)),
            Some(("scaled", v)) => Ok(Self::Scaled(num(v)?)),
            _ => Err(Error::InvalidConfig(format!("unknown dt policy '{s}'"))),
        }
    }
}

impl std::fmt::Display for DtPolicy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::L2 => f.write_str("l2"),
            Self::Linf => f.write_str("linf"),
            Self::Positivity => f.write_str("positivity"),
            Self::Fixed(v) => write!(f, "fixed:{v}"),
            Self::Scaled(v) => write!(f, "scaled:{v}"),
        }
    }
}

/// Parses `const:<v>` or `arctan:<max>,<min>,<gamma>`.
pub fn parse_sigma(s: &str) -> Result<SigmaProfile> {
    let bad = || Error::InvalidConfig(format!("bad sigma option '{s}'"));
    let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
    let vals: Vec<f64> = rest
        .split(',')
        .map(|v| v.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<Result<_>>()?;
    match (kind, vals.as_slice()) {
        ("const", [v]) => Ok(SigmaProfile::Const(*v)),
        ("arctan", [hi, lo, g]) => Ok(SigmaProfile::Arctan {
            sigma_max: *hi,
            sigma_min: *lo,
            gamma: *g,
        }),
        _ => Err(bad()),
    }
}

pub fn sigma_label(p: &SigmaProfile) -> String {
    match p {
        SigmaProfile::Const(v) => format!("const:{v}"),
        SigmaProfile::Arctan {
            sigma_max,
            sigma_min,
            gamma,
        } => format!("arctan:{sigma_max},{sigma_min},{gamma}"),
    }
}

/// Parses `periodic`, `zero-gradient` or `hybrid:<left>,<right>`.
pub fn parse_bc(s: &str) -> Result<BoundaryCondition> {
    let bad = || Error::InvalidConfig(format!("bad boundary option '{s}'"));
    match s {
        "periodic" => Ok(BoundaryCondition::Periodic),
        "zero-gradient" => Ok(BoundaryCondition::ZeroGradient),
        _ => {
            let rest = s.strip_prefix("hybrid:").ok_or_else(bad)?;
            let (l, r) = rest.split_once(',').ok_or_else(bad)?;
            let left = l.trim().parse::<f64>().map_err(|_| bad())?;
            let right = r.trim().parse::<f64>().map_err(|_| bad())?;
            if !(left.is_finite() && right.is_finite()) {
                return Err(bad());
            }
            Ok(BoundaryCondition::HybridDirichletNeumann { left, right })
        }
    }
}

pub fn bc_label(bc: &BoundaryCondition) -> String {
    match bc {
        BoundaryCondition::Periodic => "periodic".into(),
        BoundaryCondition::ZeroGradient => "zero-gradient".into(),
        BoundaryCondition::HybridDirichletNeumann { left, right } => format!("hybrid:{left},{right}"),
    }
}

/// Everything needed to reproduce one simulation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub scheme: SchemeId,
    pub case: CaseKind,
    /// Overrides the case's natural boundary condition when set.
    pub bc: Option<BoundaryCondition>,
    pub eps: f64,
    pub sigma: SigmaProfile,
    pub pressure: Pressure,
    pub n_cells: usize,
    pub x_left: f64,
    pub x_right: f64,
    pub t_final: f64,
    pub dt_policy: DtPolicy,
    pub cfl: f64,
    pub seed: u64,
    /// Times in `(0, t_final)` at which the state is recorded.
    pub snapshots: Vec<f64>,
    /// Left and right data values (Riemann states, boundary values).
    pub left: f64,
    pub right: f64,
}

pub const DEFAULT_SEED: u64 = 0x5EED;

impl RunConfig {
    /// Defaults for a scheme and case on the unit interval.
    pub fn new(scheme: SchemeId, case: CaseKind) -> Self {
        let (left, right) = match case {
            CaseKind::Exact => (1.0, 2.0),
            _ => (2.0, 1.0),
        };
        let sigma = match case {
            CaseKind::Steady => SigmaProfile::Arctan {
                sigma_max: 1.0,
                sigma_min: 0.1,
                gamma: 0.1,
            },
            _ => SigmaProfile::Const(1.0),
        };
        Self {
            scheme,
            case,
            bc: None,
            eps: 1.0,
            sigma,
            pressure: Pressure::default(),
            n_cells: 64,
            x_left: 0.0,
            x_right: 1.0,
            t_final: 0.1,
            dt_policy: DtPolicy::L2,
            cfl: 0.9,
            seed: DEFAULT_SEED,
            snapshots: Vec::new(),
            left,
            right,
        }
    }

    pub fn model(&self) -> ModelKind {
        self.scheme.model()
    }

    /// Boundary condition actually applied.
    pub fn boundary(&self) -> BoundaryCondition {
        if let Some(bc) = self.bc {
            return bc;
        }
        match (self.case, self.model()) {
            (CaseKind::Random, _) => BoundaryCondition::Periodic,
            (CaseKind::Riemann, ModelKind::EulerFriction) => BoundaryCondition::ZeroGradient,
            _ => BoundaryCondition::HybridDirichletNeumann {
                left: self.left,
                right: self.right,
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        if !(self.eps > 0.0 && self.eps.is_finite()) {
            return bad(format!("eps must be > 0, got {}", self.eps));
        }
        if self.n_cells < 2 {
            return bad(format!("need at least two cells, got {}", self.n_cells));
        }
        if !(self.x_left < self.x_right) {
            return bad("x_left must be below x_right".into());
        }
        if !(self.t_final >= 0.0 && self.t_final.is_finite()) {
            return bad(format!("t_final must be >= 0, got {}", self.t_final));
        }
        if !(self.cfl > 0.0 && self.cfl <= 1.0) {
            return bad(format!("cfl fraction must lie in (0, 1], got {}", self.cfl));
        }
        if self.snapshots.iter().any(|&t| !(t >= 0.0 && t <= self.t_final)) {
            return bad("snapshot times must lie in [0, t_final]".into());
        }
        match (self.case, self.model()) {
            (CaseKind::Exact, ModelKind::EulerFriction) => return bad("the exact case is linear only".into()),
            (CaseKind::Steady, ModelKind::Hhe) => return bad("the steady case needs the euler model".into()),
            (CaseKind::Exact, ModelKind::Hhe) if !matches!(self.sigma, SigmaProfile::Const(_)) => {
                return bad("the exact case needs constant sigma".into())
            }
            _ => {}
        }
        if self.case == CaseKind::Steady && !(self.left > 0.0 && self.right > 0.0) {
            return bad("steady densities must be positive".into());
        }
        if self.model() == ModelKind::EulerFriction && self.case == CaseKind::Riemann && !(self.left > 0.0 && self.right > 0.0) {
            return bad("Riemann densities must be positive".into());
        }
        if self.dt_policy == DtPolicy::Positivity && self.model() == ModelKind::Hhe {
            return bad("the positivity policy applies to the euler model only".into());
        }
        Ok(())
    }
}
