use apsolve::harness::csv::{convergence_string, parse_csv, read_csv, run_metadata, snapshot_string, fmt_f64};
use apsolve::harness::{
    convergence_study, parse_bc, parse_sigma, run_simulation, stability_sweep, CaseKind, ConvergenceRow, ConvergenceTable,
    DtPolicy, ErrorNorms, RunConfig,
};
use apsolve::{BoundaryCondition, EulerSchemeId, Execution, LinearSchemeId, SchemeId, SigmaProfile};
use std::process::Command;

fn exact(scheme: LinearSchemeId) -> RunConfig {
    RunConfig::new(SchemeId::Hhe(scheme), CaseKind::Exact)
}

#[test]
fn smoke_run_imex2_ctr() {
    let mut c = exact(LinearSchemeId::ImEx2Ctr);
    c.t_final = 0.5;
    let r = run_simulation(&c).unwrap();
    assert!(r.final_state.is_finite());
    assert!((r.final_state.time - 0.5).abs() < 1e-14);
    assert!((r.dts.iter().sum::<f64>() - 0.5).abs() < 1e-12);
    let e = r.errors.unwrap();
    assert!(e.linf_a < 5e-3 && e.linf_b < 5e-3, "{e:?}");
}

#[test]
fn zero_final_time_is_the_initial_state() {
    for scheme in [SchemeId::Hhe(LinearSchemeId::ImEx1Ctr), SchemeId::Euler(EulerSchemeId::ImEx2Ctr)] {
        let case = if matches!(scheme, SchemeId::Hhe(_)) { CaseKind::Exact } else { CaseKind::Steady };
        let mut c = RunConfig::new(scheme, case);
        c.t_final = 0.0;
        let r = run_simulation(&c).unwrap();
        assert_eq!(r.steps, 0);
        assert_eq!(r.final_state, r.initial);
    }
}

#[test]
fn snapshots_land_on_requested_times() {
    let mut c = exact(LinearSchemeId::ImEx1Ctr);
    c.t_final = 0.2;
    c.snapshots = vec![0.05, 0.1];
    let r = run_simulation(&c).unwrap();
    let times: Vec<f64> = r.snapshots.iter().map(|s| s.time).collect();
    assert_eq!(times, vec![0.05, 0.1]);
}

#[test]
fn runs_are_deterministic() {
    let mut c = RunConfig::new(SchemeId::Hhe(LinearSchemeId::ImEx1Upwd), CaseKind::Random);
    c.dt_policy = DtPolicy::Linf;
    c.seed = 42;
    let text = |c: &RunConfig| {
        let r = run_simulation(c).unwrap();
        snapshot_string(&r.final_state, &r.grid, &run_metadata(c, r.final_state.time)).unwrap()
    };
    assert_eq!(text(&c), text(&c));
    let mut other = c.clone();
    other.seed = 43;
    assert_ne!(text(&c), text(&other));
}

#[test]
fn parallel_and_sequential_studies_agree() {
    let mut base = exact(LinearSchemeId::ImEx2Minmod);
    base.t_final = 0.05;
    let seq = convergence_study(&base, &[1.0, 1e-3], &[16, 32, 64], Execution::Sequential).unwrap();
    let best = convergence_study(&base, &[1.0, 1e-3], &[16, 32, 64], Execution::best()).unwrap();
    assert_eq!(seq, best);
    let dts = [1e-3, 2e-3, 4e-3];
    let a = stability_sweep(LinearSchemeId::ImEx1Ctr, 0.1, 1.0, 32, &dts, 50, 1, Execution::Sequential).unwrap();
    let b = stability_sweep(LinearSchemeId::ImEx1Ctr, 0.1, 1.0, 32, &dts, 50, 1, Execution::best()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn snapshot_csv_round_trips_bit_exactly() {
    let mut c = exact(LinearSchemeId::ImEx2Ctr);
    c.t_final = 0.03;
    let r = run_simulation(&c).unwrap();
    let text = snapshot_string(&r.final_state, &r.grid, &run_metadata(&c, r.final_state.time)).unwrap();
    let t = parse_csv(&text).unwrap();
    assert_eq!(t.header, vec!["x", "E", "F"]);
    assert_eq!(t.meta_value("scheme"), Some("imex2-ctr"));
    assert_eq!(t.column("E").unwrap(), r.final_state.interior_a());
    assert_eq!(t.column("F").unwrap(), r.final_state.interior_b());
    assert_eq!(t.column("x").unwrap(), r.grid.centers);
}

#[test]
fn failed_rows_are_written_as_nan() {
    let table = ConvergenceTable {
        rows: vec![ConvergenceRow { eps: 1.0, n_cells: 8, dx: 0.125, errors: ErrorNorms::nan() }],
        eoc: vec![],
    };
    let text = convergence_string(&table, &[]);
    assert!(text.contains("nan,nan,nan,nan"));
    let t = parse_csv(&text).unwrap();
    assert!(t.column("linf_a").unwrap()[0].is_nan());
    assert_eq!(fmt_f64(f64::NEG_INFINITY), "-inf");
}

#[test]
fn option_parsers() {
    assert_eq!(parse_sigma("const:2").unwrap(), SigmaProfile::Const(2.0));
    assert_eq!(
        parse_sigma("arctan:1,0.1,0.1").unwrap(),
        SigmaProfile::Arctan { sigma_max: 1.0, sigma_min: 0.1, gamma: 0.1 }
    );
    assert!(parse_sigma("arctan:1,0.1").is_err());
    assert_eq!(parse_bc("periodic").unwrap(), BoundaryCondition::Periodic);
    assert_eq!(parse_bc("hybrid:1,2").unwrap(), BoundaryCondition::HybridDirichletNeumann { left: 1.0, right: 2.0 });
    assert!(parse_bc("dirichlet").is_err());
    assert_eq!("fixed:0.01".parse::<DtPolicy>().unwrap(), DtPolicy::Fixed(0.01));
    assert!("sometimes".parse::<DtPolicy>().is_err());
}

#[test]
fn invalid_configurations_are_rejected() {
    let mut c = exact(LinearSchemeId::ImEx1Ctr);
    c.eps = -1.0;
    assert!(run_simulation(&c).is_err());
    let mut c = exact(LinearSchemeId::Upwind);
    c.dt_policy = DtPolicy::Linf;
    assert!(run_simulation(&c).is_err());
}

fn apsolve(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_apsolve")).args(args).output().unwrap()
}

#[test]
fn cli_run_writes_snapshot() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run.csv");
    let o = apsolve(&[
        "run", "--scheme", "imex2-ctr", "--eps", "1", "--ncells", "64", "--tfinal", "0.5",
        "--out", out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let t = read_csv(&out).unwrap();
    assert_eq!(t.rows.len(), 64);
    assert_eq!(t.meta_value("N"), Some("64"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error vs reference"));
}

#[test]
fn cli_converge_and_stability() {
    let dir = tempfile::tempdir().unwrap();
    let conv = dir.path().join("conv.csv");
    let o = apsolve(&[
        "converge", "--scheme", "imex1-ctr", "--eps-list", "1", "--n-list", "16,32", "--tfinal", "0.05",
        "--out", conv.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(read_csv(&conv).unwrap().rows.len(), 2);

    let sweep = dir.path().join("sweep.csv");
    let o = apsolve(&[
        "stability", "--scheme", "imex2-ctr", "--eps", "0.1", "--ncells", "32", "--steps", "20",
        "--fractions", "0.5,2", "--out", sweep.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let t = read_csv(&sweep).unwrap();
    assert_eq!(t.rows.len(), 2);
    assert!(t.meta_value("refined_dt_max").is_some());
}

#[test]
fn cli_steady_reports_shooting_mismatch() {
    let o = apsolve(&["steady", "--ncells", "16"]);
    assert!(o.status.success());
    let t = parse_csv(&String::from_utf8(o.stdout).unwrap()).unwrap();
    assert_eq!(t.header, vec!["x", "rho", "rhou"]);
    let m = t.column("rhou").unwrap();
    assert!(m.iter().all(|&v| v == m[0] && v > 0.0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("shooting"));
}

#[test]
fn cli_rejects_bad_arguments_with_code_two() {
    for args in [
        vec!["run", "--eps", "-1"],
        vec!["run", "--scheme", "nonsense"],
        vec!["run", "--dt-policy", "linf", "--scheme", "upwind"],
        vec!["explode"],
    ] {
        let o = apsolve(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}
