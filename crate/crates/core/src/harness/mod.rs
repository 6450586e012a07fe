//! Run driver, convergence and stability studies, and CSV output.

pub mod config;
pub mod convergence;
pub mod csv;
pub mod run;
pub mod sweep;

pub use config::{parse_bc, parse_sigma, CaseKind, DtPolicy, RunConfig, DEFAULT_SEED};
pub use convergence::{convergence_study, fit_slope, ConvergenceRow, ConvergenceTable, EocSummary};
pub use run::{choose_dt, reference_state, run_simulation, setup, step, ErrorNorms, Problem, RunResult};
pub use sweep::{invariant_norms, invariant_weights, stability_sweep, SweepRow};
