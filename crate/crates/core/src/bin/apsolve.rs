use apsolve::cases::{DensityProduct, SteadyState};
use apsolve::harness::csv::{fmt_f64, run_metadata, snapshot_string, sweep_string, convergence_string};
use apsolve::harness::{
    convergence_study, parse_bc, parse_sigma, run_simulation, stability_sweep, CaseKind, DtPolicy, RunConfig,
};
use apsolve::stability::{dt_bounds, dt_imex2_linf_refined, BoundInputs, BoundKind};
use apsolve::{Error, Execution, Grid1D, ModelKind, Pressure, Result, SchemeId, SigmaProfile};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "apsolve", version, about = "Asymptotic-preserving ImEx solvers for 1D relaxation systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate one configuration and write the final snapshot.
    Run(RunArgs),
    /// Error and convergence-order table over eps and N.
    Converge(ConvergeArgs),
    /// Time-step bounds and empirical norm growth on random periodic data.
    Stability(StabilityArgs),
    /// Closed-form steady state of isothermal Euler with friction.
    Steady(SteadyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Hhe,
    Euler,
}

impl From<Model> for ModelKind {
    fn from(m: Model) -> Self {
        match m {
            Model::Hhe => ModelKind::Hhe,
            Model::Euler => ModelKind::EulerFriction,
        }
    }
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long, value_enum, default_value = "hhe")]
    model: Model,
    #[arg(long, default_value = "imex2-ctr")]
    scheme: String,
    #[arg(long, default_value = "exact")]
    case: String,
    /// const:<v> | arctan:<max>,<min>,<gamma>; defaults to the case's own profile.
    #[arg(long)]
    sigma: Option<String>,
    /// Sound speed of the isothermal pressure law.
    #[arg(long, default_value_t = 1.0)]
    sound_speed: f64,
    #[arg(long, default_value_t = 0.1)]
    tfinal: f64,
    /// l2 | linf | positivity | fixed:<dt> | scaled:<multiple of the l2 bound>
    #[arg(long, default_value = "l2")]
    dt_policy: String,
    #[arg(long, default_value_t = 0.9)]
    cfl: f64,
    /// periodic | zero-gradient | hybrid:<left>,<right>
    #[arg(long)]
    bc: Option<String>,
    /// Left data value (Riemann state, boundary value or density).
    #[arg(long)]
    left: Option<f64>,
    #[arg(long)]
    right: Option<f64>,
    #[arg(long, default_value_t = apsolve::harness::DEFAULT_SEED)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn config(&self, eps: f64, n: usize) -> Result<RunConfig> {
        let scheme = SchemeId::parse(self.model.into(), &self.scheme)?;
        let case: CaseKind = self.case.parse()?;
        let mut c = RunConfig::new(scheme, case);
        c.eps = eps;
        c.n_cells = n;
        if let Some(text) = &self.sigma {
            c.sigma = parse_sigma(text)?;
        }
        if !(self.sound_speed > 0.0) {
            return Err(Error::InvalidConfig("sound speed must be > 0".into()));
        }
        c.pressure = Pressure::isothermal(self.sound_speed);
        c.t_final = self.tfinal;
        c.dt_policy = self.dt_policy.parse::<DtPolicy>()?;
        c.cfl = self.cfl;
        c.seed = self.seed;
        if let Some(bc) = &self.bc {
            let bc = parse_bc(bc)?;
            if let apsolve::BoundaryCondition::HybridDirichletNeumann { left, right } = bc {
                (c.left, c.right) = (left, right);
            }
            c.bc = Some(bc);
        }
        if let Some(v) = self.left {
            c.left = v;
        }
        if let Some(v) = self.right {
            c.right = v;
        }
        c.validate()?;
        Ok(c)
    }
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value_t = 1.0)]
    eps: f64,
    #[arg(long, default_value_t = 64)]
    ncells: usize,
    /// Comma-separated times at which extra snapshots are written next to --out.
    #[arg(long, value_delimiter = ',')]
    snapshots: Vec<f64>,
}

#[derive(Args)]
struct ConvergeArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_delimiter = ',', default_value = "1,1e-3,1e-6")]
    eps_list: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "32,64,128,256,512")]
    n_list: Vec<usize>,
    #[arg(long)]
    sequential: bool,
}

#[derive(Args)]
struct StabilityArgs {
    #[arg(long, default_value = "imex1-ctr")]
    scheme: String,
    #[arg(long, default_value_t = 1.0)]
    eps: f64,
    #[arg(long, default_value_t = 1.0)]
    sigma: f64,
    #[arg(long, default_value_t = 64)]
    ncells: usize,
    /// Time steps as multiples of the l2 bound.
    #[arg(long, value_delimiter = ',', default_value = "0.5,0.9,0.99,1.1,1.5,2")]
    fractions: Vec<f64>,
    #[arg(long, default_value_t = 1000)]
    steps: usize,
    #[arg(long, default_value_t = apsolve::harness::DEFAULT_SEED)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SteadyArgs {
    #[arg(long, default_value_t = 2.0)]
    rho_left: f64,
    #[arg(long, default_value_t = 1.0)]
    rho_right: f64,
    #[arg(long, default_value_t = 1e-2)]
    eps: f64,
    #[arg(long, default_value_t = 1.0)]
    sound_speed: f64,
    #[arg(long, default_value = "arctan:1,0.1,0.1")]
    sigma: String,
    #[arg(long, default_value_t = 64)]
    ncells: usize,
    /// Read the density product in the momentum formula as rho_L^2.
    #[arg(long)]
    left_left: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(Error::from),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_run(a: &RunArgs) -> Result<()> {
    let mut c = a.common.config(a.eps, a.ncells)?;
    c.snapshots = a.snapshots.clone();
    c.validate()?;
    let r = run_simulation(&c)?;
    eprintln!(
        "{}: {} steps to t={} in {:.3}s",
        c.scheme,
        r.steps,
        r.final_state.time,
        r.wall_time.as_secs_f64()
    );
    if let Some(e) = r.errors {
        eprintln!(
            "error vs reference: linf_a={} linf_b={} l2_a={} l2_b={}",
            fmt_f64(e.linf_a),
            fmt_f64(e.linf_b),
            fmt_f64(e.l2_a),
            fmt_f64(e.l2_b)
        );
    }
    if let Some(base) = &a.common.out {
        for (k, s) in r.snapshots.iter().enumerate() {
            let p = base.with_extension(format!("snap{k}.csv"));
            std::fs::write(&p, snapshot_string(s, &r.grid, &run_metadata(&c, s.time))?)?;
        }
    }
    emit(&a.common.out, &snapshot_string(&r.final_state, &r.grid, &run_metadata(&c, r.final_state.time))?)
}

fn cmd_converge(a: &ConvergeArgs) -> Result<()> {
    let base = a.common.config(a.eps_list.first().copied().unwrap_or(1.0), a.n_list.first().copied().unwrap_or(32))?;
    let exec = if a.sequential { Execution::Sequential } else { Execution::best() };
    let table = convergence_study(&base, &a.eps_list, &a.n_list, exec)?;
    for e in &table.eoc {
        eprintln!(
            "eps={:e}: eoc linf_a={:.3} linf_b={:.3} l2_a={:.3} l2_b={:.3}",
            e.eps, e.linf_a, e.linf_b, e.l2_a, e.l2_b
        );
    }
    let mut meta = run_metadata(&base, base.t_final);
    meta.retain(|(k, _)| !matches!(k.as_str(), "eps" | "N" | "t"));
    meta.push(("t_final".into(), fmt_f64(base.t_final)));
    emit(&a.common.out, &convergence_string(&table, &meta))
}

fn cmd_stability(a: &StabilityArgs) -> Result<()> {
    let scheme = match SchemeId::parse(ModelKind::Hhe, &a.scheme)? {
        SchemeId::Hhe(s) => s,
        SchemeId::Euler(_) => unreachable!("parsed for the linear model"),
    };
    let grid = Grid1D::new(0.0, 1.0, a.ncells, scheme.ghost_layers())?;
    let inputs = BoundInputs::hhe(a.eps, a.sigma, grid.dx);
    let id = SchemeId::Hhe(scheme);
    let mut meta = vec![
        ("scheme".to_string(), id.name().to_string()),
        ("eps".into(), fmt_f64(a.eps)),
        ("sigma".into(), fmt_f64(a.sigma)),
        ("N".into(), a.ncells.to_string()),
        ("steps".into(), a.steps.to_string()),
        ("seed".into(), a.seed.to_string()),
    ];
    for kind in [BoundKind::L2, BoundKind::Linf] {
        if let Ok(b) = dt_bounds(id, kind, &inputs) {
            eprintln!("{kind} bound: [{:e}, {:e}]", b.dt_min, b.dt_max);
            meta.push((format!("{kind}_dt_min"), fmt_f64(b.dt_min)));
            meta.push((format!("{kind}_dt_max"), fmt_f64(b.dt_max)));
        }
    }
    if scheme == apsolve::LinearSchemeId::ImEx2Ctr {
        let r = dt_imex2_linf_refined(a.eps, a.sigma, grid.dx, 1e-12)?;
        eprintln!("refined linf interval: [{:e}, {:e}]", r.bounds.dt_min, r.bounds.dt_max);
        meta.push(("refined_dt_min".into(), fmt_f64(r.bounds.dt_min)));
        meta.push(("refined_dt_max".into(), fmt_f64(r.bounds.dt_max)));
    }
    let l2 = dt_bounds(id, BoundKind::L2, &inputs)
        .or_else(|_| dt_bounds(id, BoundKind::Linf, &inputs))?
        .dt_max;
    let dts: Vec<f64> = a.fractions.iter().map(|f| f * l2).collect();
    let rows = stability_sweep(scheme, a.eps, a.sigma, a.ncells, &dts, a.steps, a.seed, Execution::best())?;
    emit(&a.out, &sweep_string(&rows, &meta))
}

fn cmd_steady(a: &SteadyArgs) -> Result<()> {
    let profile: SigmaProfile = parse_sigma(&a.sigma)?;
    let reading = if a.left_left { DensityProduct::LeftLeft } else { DensityProduct::LeftRight };
    let s = SteadyState::new(a.rho_left, a.rho_right, a.sound_speed, a.eps, profile, 0.0, 1.0, 1e-12, reading)?;
    let shot = s.shoot(20_000);
    eprintln!(
        "a={} I_sigma={} shooting rho(x_R)={} (relative mismatch {:e})",
        fmt_f64(s.a),
        fmt_f64(s.i_sigma),
        fmt_f64(shot),
        (shot - a.rho_right).abs() / a.rho_right
    );
    let grid = Grid1D::new(0.0, 1.0, a.ncells, 1)?;
    let state = s.state(&grid)?;
    let meta = vec![
        ("model".to_string(), "euler".to_string()),
        ("case".into(), "steady".into()),
        ("eps".into(), fmt_f64(a.eps)),
        ("sigma".into(), a.sigma.clone()),
        ("N".into(), a.ncells.to_string()),
        ("a".into(), fmt_f64(s.a)),
    ];
    emit(&a.out, &snapshot_string(&state, &grid, &meta)?)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let res = match &cli.command {
        Command::Run(a) => cmd_run(a),
        Command::Converge(a) => cmd_converge(a),
        Command::Stability(a) => cmd_stability(a),
        Command::Steady(a) => cmd_steady(a),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
