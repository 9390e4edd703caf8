//! Command-line front end. Every run writes `manifest.json` into `--out`.

use std::ffi::OsString;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::composite::{operator_identities_check, Variant};
use crate::error::{Error, Result};
use crate::scenario::ProblemData;
use crate::selftest;
use crate::solver::{solve, FieldGrid, GridRule};
use crate::study::{
    emit_fields, run_decay_study, run_rate_study, run_trace_study, sample_surface,
    write_report_file, FieldsConfig, MaskRule, RateReport, SweepConfig, VariantSelection, Verdict,
    DECAY_EPS, DEFAULT_EPS, STUDY_GRID_MULTIPLIER, THREADS_ENV,
};

/// Exit status for success.
pub const EXIT_OK: i32 = 0;
/// Exit status for a failed validation (a verdict or check missed).
pub const EXIT_FAIL: i32 = 1;
/// Exit status for usage errors and malformed scenarios.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "layered-advect",
    version,
    about = "Layered approximation of y_t - eps y_xx + M y_x = 0"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve with the reference solver and dump the field.
    Solve(SolveArgs),
    /// Sample the composite approximation on the solver grid.
    Approx(ApproxArgs),
    /// Error-rate study against the reference solver.
    Rates(RatesArgs),
    /// Solver-free rates of the boundary traces and the residual.
    Traces(TracesArgs),
    /// Decay of the solution at t = 1/M (requires v = 0).
    Decay(DecayArgs),
    /// Slices and the surface of the approximation.
    Fields(FieldsArgs),
    /// Operator identity report.
    Identities(OutArgs),
    /// Every acceptance check.
    Selftest(OutArgs),
}

#[derive(Debug, Args)]
pub struct OutArgs {
    /// Output directory.
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub scenario: PathBuf,
    #[arg(long)]
    pub eps: f64,
    /// Multiplier m in dx <= eps/m.
    #[arg(long, default_value_t = 8.0)]
    pub nx_rule: f64,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ApproxArgs {
    #[arg(long)]
    pub scenario: PathBuf,
    #[arg(long)]
    pub eps: f64,
    #[arg(long, default_value_t = 8.0)]
    pub nx_rule: f64,
    /// corrected or plain.
    #[arg(long, default_value = "corrected")]
    pub variant: String,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct RatesArgs {
    #[arg(long)]
    pub scenario: PathBuf,
    /// Comma-separated, strictly decreasing.
    #[arg(long, value_delimiter = ',')]
    pub eps: Option<Vec<f64>>,
    #[arg(long, default_value_t = STUDY_GRID_MULTIPLIER)]
    pub nx_rule: f64,
    /// corrected, plain or both.
    #[arg(long, default_value = "both")]
    pub variant: String,
    /// Exclude the initial transient (default).
    #[arg(long, overrides_with = "no_mask")]
    pub mask: bool,
    /// Measure over the whole time interval.
    #[arg(long, overrides_with = "mask")]
    pub no_mask: bool,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct TracesArgs {
    #[arg(long)]
    pub scenario: PathBuf,
    #[arg(long, value_delimiter = ',')]
    pub eps: Option<Vec<f64>>,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct DecayArgs {
    #[arg(long)]
    pub scenario: PathBuf,
    #[arg(long, value_delimiter = ',')]
    pub eps: Option<Vec<f64>>,
    #[arg(long, default_value_t = 8.0)]
    pub nx_rule: f64,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct FieldsArgs {
    #[arg(long)]
    pub scenario: PathBuf,
    #[arg(long)]
    pub eps: f64,
    /// Slice times in units of 1/M, comma-separated.
    #[arg(long, value_delimiter = ',', default_value = "0.5,1.0")]
    pub times: Vec<f64>,
    #[arg(long, default_value = "corrected")]
    pub variant: String,
    /// Also dump solver slices at the same times.
    #[arg(long)]
    pub with_solver: bool,
    #[arg(long, default_value_t = 8.0)]
    pub nx_rule: f64,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

/// Resolved configuration written next to the outputs.
#[derive(Debug, Serialize)]
struct Manifest {
    command: String,
    version: &'static str,
    scenario_path: Option<String>,
    scenario: Option<String>,
    eps: Vec<f64>,
    variant: Option<String>,
    nx_rule: Option<f64>,
    mask: Option<MaskManifest>,
    extrapolated_reference: Option<bool>,
    times: Option<Vec<f64>>,
    threads: Option<String>,
    outputs: Vec<String>,
    status: String,
}

#[derive(Debug, Serialize)]
struct MaskManifest {
    enabled: bool,
    factor: f64,
}

impl Manifest {
    fn new(command: &str) -> Self {
        Manifest {
            command: command.to_string(),
            version: env!("CARGO_PKG_VERSION"),
            scenario_path: None,
            scenario: None,
            eps: Vec::new(),
            variant: None,
            nx_rule: None,
            mask: None,
            extrapolated_reference: None,
            times: None,
            threads: std::env::var(THREADS_ENV).ok(),
            outputs: Vec::new(),
            status: String::new(),
        }
    }

    fn scenario(&mut self, path: &Path, p: &ProblemData) {
        self.scenario_path = Some(path.display().to_string());
        self.scenario = Some(p.to_scenario_text());
    }

    fn write(&self, out: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self).map_err(|e| Error::Config(e.to_string()))?;
        fs::write(out.join("manifest.json"), text + "\n")?;
        Ok(())
    }
}

/// Failure classes of a run.
enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::Config(_)
            | Error::InvalidProblem(_)
            | Error::Domain(_) => Failure::Usage(e.to_string()),
            Error::Io(_) => Failure::Runtime(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

type Outcome = std::result::Result<bool, Failure>;

/// Parse `args` (including the program name) and run. Returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(cli.command) {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_FAIL,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            EXIT_FAIL
        }
    }
}

fn dispatch(cmd: Command) -> Outcome {
    match cmd {
        Command::Solve(a) => cmd_solve(a),
        Command::Approx(a) => cmd_approx(a),
        Command::Rates(a) => cmd_rates(a),
        Command::Traces(a) => cmd_traces(a),
        Command::Decay(a) => cmd_decay(a),
        Command::Fields(a) => cmd_fields(a),
        Command::Identities(a) => cmd_identities(a),
        Command::Selftest(a) => cmd_selftest(a),
    }
}

fn load(path: &Path) -> std::result::Result<ProblemData, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read scenario {}: {e}", path.display())))?;
    ProblemData::parse(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn scenario_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "scenario".into())
}

fn prepare_out(out: &Path) -> std::result::Result<(), Failure> {
    fs::create_dir_all(out)
        .map_err(|e| Failure::Runtime(format!("cannot create {}: {e}", out.display())))
}

fn check_single_eps(eps: f64) -> std::result::Result<(), Failure> {
    if eps > 0.0 && eps < 1.0 {
        Ok(())
    } else {
        Err(Failure::Usage(format!(
            "--eps must lie in (0, 1), got {eps}"
        )))
    }
}

fn grid_rule(m: f64) -> std::result::Result<GridRule, Failure> {
    if m >= 1.0 && m.is_finite() {
        Ok(GridRule { multiplier: m })
    } else {
        Err(Failure::Usage(format!(
            "--nx-rule must be at least 1, got {m}"
        )))
    }
}

fn write_grid(path: &Path, g: &FieldGrid) -> std::result::Result<(), Failure> {
    let mut w = BufWriter::new(fs::File::create(path)?);
    g.write_csv(&mut w)?;
    w.flush()?;
    Ok(())
}

fn rel(out: &Path, p: &Path) -> String {
    p.strip_prefix(out).unwrap_or(p).display().to_string()
}

fn cmd_solve(a: SolveArgs) -> Outcome {
    let p = load(&a.scenario)?;
    check_single_eps(a.eps)?;
    let rule = grid_rule(a.nx_rule)?;
    prepare_out(&a.out)?;
    let mut man = Manifest::new("solve");
    man.scenario(&a.scenario, &p);
    man.eps = vec![a.eps];
    man.nx_rule = Some(a.nx_rule);
    let (nx, nt) = rule.grid(a.eps, &p);
    let g = solve(&p, a.eps, nx, nt, None)?;
    if g.peclet_warning {
        eprintln!(
            "warning: cell Peclet number exceeds 1 (dx = {:.3e}, eps = {})",
            g.dx, a.eps
        );
    }
    let path = a.out.join("solution.csv");
    write_grid(&path, &g)?;
    man.outputs.push(rel(&a.out, &path));
    man.status = "ok".into();
    man.write(&a.out)?;
    println!(
        "solution on {} x {} grid written to {}",
        nx,
        nt,
        path.display()
    );
    Ok(true)
}

fn cmd_approx(a: ApproxArgs) -> Outcome {
    let p = load(&a.scenario)?;
    check_single_eps(a.eps)?;
    let rule = grid_rule(a.nx_rule)?;
    let variant: Variant = a.variant.parse()?;
    prepare_out(&a.out)?;
    let mut man = Manifest::new("approx");
    man.scenario(&a.scenario, &p);
    man.eps = vec![a.eps];
    man.nx_rule = Some(a.nx_rule);
    man.variant = Some(variant.name().into());
    let (nx, nt) = rule.grid(a.eps, &p);
    let g = sample_surface(&p, a.eps, p.t_final, nx, nt, variant)?;
    let path = a.out.join(format!("approx_{}.csv", variant.name()));
    write_grid(&path, &g)?;
    man.outputs.push(rel(&a.out, &path));
    man.status = "ok".into();
    man.write(&a.out)?;
    println!(
        "approximation on {} x {} grid written to {}",
        nx,
        nt,
        path.display()
    );
    Ok(true)
}

fn print_reports(reports: &[&RateReport]) {
    for r in reports {
        println!(
            "{:<28} slope {:>8.4}  residual {:.2e}  {}",
            r.name,
            r.fit.slope,
            r.fit.residual,
            r.verdict.name()
        );
    }
}

/// Record the overall verdict; a failed or gate-invalid report fails the run.
fn finish(mut man: Manifest, out: &Path, reports: &[&RateReport]) -> Outcome {
    let ok = reports
        .iter()
        .all(|r| !matches!(r.verdict, Verdict::Fail | Verdict::Invalid));
    man.status = if ok { "ok" } else { "verdict failed" }.into();
    man.write(out)?;
    Ok(ok)
}

fn cmd_rates(a: RatesArgs) -> Outcome {
    let p = load(&a.scenario)?;
    let mut cfg = SweepConfig::new(scenario_name(&a.scenario), p);
    cfg.eps = a.eps.unwrap_or_else(|| DEFAULT_EPS.to_vec());
    cfg.grid = grid_rule(a.nx_rule)?;
    cfg.variant = a.variant.parse::<VariantSelection>()?;
    cfg.mask = MaskRule {
        enabled: !a.no_mask,
        ..MaskRule::default()
    };
    cfg.validate()?;
    prepare_out(&a.out)?;
    let mut man = Manifest::new("rates");
    man.scenario(&a.scenario, &cfg.problem);
    man.eps = cfg.eps.clone();
    man.nx_rule = Some(cfg.grid.multiplier);
    man.variant = Some(cfg.variant.name().into());
    man.mask = Some(MaskManifest {
        enabled: cfg.mask.enabled,
        factor: cfg.mask.factor,
    });
    man.extrapolated_reference = Some(cfg.extrapolate);

    let study = run_rate_study(&cfg)?;
    for v in cfg.variant.variants() {
        let path = a.out.join(format!("rates_{}.csv", v.name()));
        let mut w = BufWriter::new(fs::File::create(&path)?);
        study.write_rates_csv(v, &mut w)?;
        w.flush()?;
        man.outputs.push(rel(&a.out, &path));
    }
    let mut notes = vec![(
        "h1_hypothesis_y0_1_and_dy0_1_zero".to_string(),
        study.h1_hypothesis.to_string(),
    )];
    for v in cfg.variant.variants() {
        notes.push((
            format!("monotone_{}", v.name()),
            study.monotone(v).to_string(),
        ));
    }
    if let (Some(c), Some(pl)) = (
        study.report("linf_l2_corrected"),
        study.report("linf_l2_plain"),
    ) {
        notes.push((
            "slope_gap_corrected_plain".into(),
            format!("{:.6}", (c.fit.slope - pl.fit.slope).abs()),
        ));
    }
    let refs: Vec<&RateReport> = study.reports.iter().collect();
    let path = a.out.join("report.txt");
    write_report_file(&path, &refs, &notes)?;
    man.outputs.push(rel(&a.out, &path));
    print_reports(&refs);
    finish(man, &a.out, &refs)
}

fn cmd_traces(a: TracesArgs) -> Outcome {
    let p = load(&a.scenario)?;
    let mut cfg = SweepConfig::new(scenario_name(&a.scenario), p);
    cfg.eps = a.eps.unwrap_or_else(|| DEFAULT_EPS.to_vec());
    cfg.validate()?;
    prepare_out(&a.out)?;
    let mut man = Manifest::new("traces");
    man.scenario(&a.scenario, &cfg.problem);
    man.eps = cfg.eps.clone();
    let study = run_trace_study(&cfg)?;
    let path = a.out.join("traces.csv");
    let mut w = BufWriter::new(fs::File::create(&path)?);
    study.write_csv(&mut w)?;
    w.flush()?;
    man.outputs.push(rel(&a.out, &path));
    let refs: Vec<&RateReport> = study.reports.iter().collect();
    let path = a.out.join("report.txt");
    write_report_file(&path, &refs, &[])?;
    man.outputs.push(rel(&a.out, &path));
    print_reports(&refs);
    finish(man, &a.out, &refs)
}

fn cmd_decay(a: DecayArgs) -> Outcome {
    let p = load(&a.scenario)?;
    let mut cfg = SweepConfig::new(scenario_name(&a.scenario), p);
    cfg.eps = a.eps.unwrap_or_else(|| DECAY_EPS.to_vec());
    cfg.grid = grid_rule(a.nx_rule)?;
    cfg.validate()?;
    prepare_out(&a.out)?;
    let mut man = Manifest::new("decay");
    man.scenario(&a.scenario, &cfg.problem);
    man.eps = cfg.eps.clone();
    man.nx_rule = Some(cfg.grid.multiplier);
    man.extrapolated_reference = Some(cfg.extrapolate);
    let study = run_decay_study(&cfg)?;
    let path = a.out.join("decay.csv");
    let mut w = BufWriter::new(fs::File::create(&path)?);
    study.write_csv(&mut w)?;
    w.flush()?;
    man.outputs.push(rel(&a.out, &path));
    let path = a.out.join("report.txt");
    write_report_file(&path, &[&study.report], &[])?;
    man.outputs.push(rel(&a.out, &path));
    print_reports(&[&study.report]);
    finish(man, &a.out, &[&study.report])
}

fn cmd_fields(a: FieldsArgs) -> Outcome {
    let p = load(&a.scenario)?;
    check_single_eps(a.eps)?;
    let variant: Variant = a.variant.parse()?;
    let fc = FieldsConfig {
        include_solver: a.with_solver,
        variant,
        grid: grid_rule(a.nx_rule)?,
        ..FieldsConfig::default()
    };
    prepare_out(&a.out)?;
    let mut man = Manifest::new("fields");
    man.scenario(&a.scenario, &p);
    man.eps = vec![a.eps];
    man.variant = Some(variant.name().into());
    man.times = Some(a.times.clone());
    if a.with_solver {
        man.nx_rule = Some(a.nx_rule);
    }
    let written = emit_fields(&p, a.eps, &a.times, &a.out, &fc)?;
    for path in &written {
        println!("{}", path.display());
        man.outputs.push(rel(&a.out, path));
    }
    man.status = "ok".into();
    man.write(&a.out)?;
    Ok(true)
}

fn cmd_identities(a: OutArgs) -> Outcome {
    prepare_out(&a.out)?;
    let report = operator_identities_check();
    let path = a.out.join("identities.txt");
    let mut w = BufWriter::new(fs::File::create(&path)?);
    for (name, dev) in &report.entries {
        writeln!(w, "{name} = {dev:.3e}")?;
        println!("{name:<16} {dev:.3e}");
    }
    let ok = report.passes(1e-9);
    writeln!(w, "max_deviation = {:.3e}", report.max_deviation())?;
    writeln!(w, "verdict = {}", if ok { "pass" } else { "fail" })?;
    w.flush()?;
    let mut man = Manifest::new("identities");
    man.outputs.push(rel(&a.out, &path));
    man.status = if ok { "ok" } else { "verdict failed" }.into();
    man.write(&a.out)?;
    println!(
        "max deviation {:.3e} ({})",
        report.max_deviation(),
        if ok { "pass" } else { "fail" }
    );
    Ok(ok)
}

fn cmd_selftest(a: OutArgs) -> Outcome {
    prepare_out(&a.out)?;
    let checks = selftest::run_all()?;
    let path = a.out.join("selftest.txt");
    let mut w = BufWriter::new(fs::File::create(&path)?);
    for c in &checks {
        println!("{}", c.line());
        writeln!(w, "{}", c.line())?;
    }
    writeln!(w)?;
    for c in &checks {
        for r in &c.reports {
            writeln!(w, "{}", r.render())?;
        }
    }
    w.flush()?;
    let ok = checks.iter().all(|c| c.passed);
    let mut man = Manifest::new("selftest");
    man.outputs.push(rel(&a.out, &path));
    man.status = if ok { "ok" } else { "checks failed" }.into();
    man.write(&a.out)?;
    if !ok {
        eprintln!(
            "selftest: {} of {} checks failed",
            checks.iter().filter(|c| !c.passed).count(),
            checks.len()
        );
    }
    Ok(ok)
}
