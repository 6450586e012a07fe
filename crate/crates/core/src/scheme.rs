use crate::domain::ModelKind;
use crate::error::{Error, Result};
use std::fmt;

/// Single-step methods for the hyperbolic heat equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LinearSchemeId {
    Upwind,
    ImEx1Ctr,
    ImEx1Upwd,
    ImEx1Itr,
    ImEx2Ctr,
    ImEx2Minmod,
    MusclHancockStrang,
}

/// Single-step methods for the Euler-friction system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EulerSchemeId {
    ImEx1,
    ImEx2Ctr,
    ImEx2Minmod,
    MusclHancockStrang,
}

/// Any scheme known to the solver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SchemeId {
    Hhe(LinearSchemeId),
    Euler(EulerSchemeId),
}

impl LinearSchemeId {
    pub const ALL: [LinearSchemeId; 7] = [
        LinearSchemeId::Upwind,
        LinearSchemeId::ImEx1Ctr,
        LinearSchemeId::ImEx1Upwd,
        LinearSchemeId::ImEx1Itr,
        LinearSchemeId::ImEx2Ctr,
        LinearSchemeId::ImEx2Minmod,
        LinearSchemeId::MusclHancockStrang,
    ];

    /// Ghost layers needed by the stencil.
    pub fn ghost_layers(self) -> usize {
        match self {
            LinearSchemeId::ImEx2Minmod | LinearSchemeId::MusclHancockStrang => 2,
            _ => 1,
        }
    }

    /// Whether the (E, F) pair is monitored through the M-weighted variables.
    pub fn is_second_order_imex(self) -> bool {
        matches!(self, LinearSchemeId::ImEx2Ctr | LinearSchemeId::ImEx2Minmod)
    }
}

impl EulerSchemeId {
    pub const ALL: [EulerSchemeId; 4] = [
        EulerSchemeId::ImEx1,
        EulerSchemeId::ImEx2Ctr,
        EulerSchemeId::ImEx2Minmod,
        EulerSchemeId::MusclHancockStrang,
    ];
}

impl SchemeId {
    pub fn model(self) -> ModelKind {
        match self {
            SchemeId::Hhe(_) => ModelKind::Hhe,
            SchemeId::Euler(_) => ModelKind::EulerFriction,
        }
    }

    /// Resolves a command-line scheme name for the given model.
    pub fn parse(model: ModelKind, name: &str) -> Result<Self> {
        let id = match (model, name) {
            (ModelKind::Hhe, "upwind") => SchemeId::Hhe(LinearSchemeId::Upwind),
            (ModelKind::Hhe, "imex1-ctr") => SchemeId::Hhe(LinearSchemeId::ImEx1Ctr),
            (ModelKind::Hhe, "imex1-upwd") => SchemeId::Hhe(LinearSchemeId::ImEx1Upwd),
            (ModelKind::Hhe, "imex1-itr") => SchemeId::Hhe(LinearSchemeId::ImEx1Itr),
            (ModelKind::Hhe, "imex2-ctr") => SchemeId::Hhe(LinearSchemeId::ImEx2Ctr),
            (ModelKind::Hhe, "imex2-minmod") => SchemeId::Hhe(LinearSchemeId::ImEx2Minmod),
            (ModelKind::Hhe, "mh-strang") => SchemeId::Hhe(LinearSchemeId::MusclHancockStrang),
            (ModelKind::EulerFriction, "imex1-ctr") => SchemeId::Euler(EulerSchemeId::ImEx1),
            (ModelKind::EulerFriction, "imex2-ctr") => SchemeId::Euler(EulerSchemeId::ImEx2Ctr),
            (ModelKind::EulerFriction, "imex2-minmod") => SchemeId::Euler(EulerSchemeId::ImEx2Minmod),
            (ModelKind::EulerFriction, "mh-strang") => SchemeId::Euler(EulerSchemeId::MusclHancockStrang),
            _ => {
                return Err(Error::InvalidConfig(format!(
                    "scheme '{name}' is not available for model {model:?}"
                )))
            }
        };
        Ok(id)
    }

    pub fn name(self) -> &'static str {
        match self {
            SchemeId::Hhe(LinearSchemeId::Upwind) => "upwind",
            SchemeId::Hhe(LinearSchemeId::ImEx1Ctr) | SchemeId::Euler(EulerSchemeId::ImEx1) => "imex1-ctr",
            SchemeId::Hhe(LinearSchemeId::ImEx1Upwd) => "imex1-upwd",
            SchemeId::Hhe(LinearSchemeId::ImEx1Itr) => "imex1-itr",
            SchemeId::Hhe(LinearSchemeId::ImEx2Ctr) | SchemeId::Euler(EulerSchemeId::ImEx2Ctr) => "imex2-ctr",
            SchemeId::Hhe(LinearSchemeId::ImEx2Minmod) | SchemeId::Euler(EulerSchemeId::ImEx2Minmod) => {
                "imex2-minmod"
            }
            SchemeId::Hhe(LinearSchemeId::MusclHancockStrang)
            | SchemeId::Euler(EulerSchemeId::MusclHancockStrang) => "mh-strang",
        }
    }

    pub fn ghost_layers(self) -> usize {
        match self {
            SchemeId::Hhe(s) => s.ghost_layers(),
            SchemeId::Euler(EulerSchemeId::ImEx1) => 1,
            SchemeId::Euler(_) => 2,
        }
    }
}

impl fmt::Display for SchemeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let model = match self.model() {
            ModelKind::Hhe => "hhe",
            ModelKind::EulerFriction => "euler",
        };
        write!(f, "{model}/{}", self.name())
    }
}
