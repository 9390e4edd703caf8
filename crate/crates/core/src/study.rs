//! Epsilon sweeps comparing the composite approximations with the reference
//! solver, log-log rate fits, field emission and report writers.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;

use crate::composite::{Composite, Variant};
use crate::error::{Error, Result};
use crate::scenario::{ProblemData, SmoothFunction};
use crate::solver::{
    l2_norm, march, march_hierarchy, richardson, FieldGrid, GridRule, NormAccumulator, NormSet,
    SolverOptions,
};

/// Environment variable capping the worker count.
pub const THREADS_ENV: &str = "LAYERED_ADVECT_THREADS";

/// Relative change on refinement above which a measurement is rejected.
pub const GATE_THRESHOLD: f64 = 0.05;

/// Worker pool sized by [`THREADS_ENV`] (unset, empty or `0` means one
/// worker per hardware thread).
pub fn thread_pool() -> Result<rayon::ThreadPool> {
    let n = match std::env::var(THREADS_ENV) {
        Ok(s) if !s.trim().is_empty() => s
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::Config(format!("{THREADS_ENV} must be a count, got '{s}'")))?,
        _ => 0,
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .map_err(|e| Error::Config(e.to_string()))
}

/// Which approximations a sweep measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VariantSelection {
    Corrected,
    Plain,
    Both,
}

impl VariantSelection {
    pub fn variants(self) -> Vec<Variant> {
        match self {
            VariantSelection::Corrected => vec![Variant::Corrected],
            VariantSelection::Plain => vec![Variant::Plain],
            VariantSelection::Both => vec![Variant::Corrected, Variant::Plain],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            VariantSelection::Corrected => "corrected",
            VariantSelection::Plain => "plain",
            VariantSelection::Both => "both",
        }
    }
}

impl FromStr for VariantSelection {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "corrected" => Ok(VariantSelection::Corrected),
            "plain" => Ok(VariantSelection::Plain),
            "both" => Ok(VariantSelection::Both),
            other => Err(Error::Config(format!(
                "unknown variant '{other}' (expected corrected, plain or both)"
            ))),
        }
    }
}

/// Exclusion of the initial transient `[0, t_min)` from the norms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaskRule {
    pub enabled: bool,
    /// `t_min = factor * eps |ln eps| / M^2`, rounded up to the time grid.
    pub factor: f64,
}

impl Default for MaskRule {
    fn default() -> Self {
        MaskRule {
            enabled: true,
            factor: 4.0,
        }
    }
}

impl MaskRule {
    /// First time kept. The initial layer decays like `exp(-M^2 t/(4 eps))`
    /// in `L^2`, so with the default factor its contribution has dropped to
    /// `eps^{3/2}` relative to its start by `t_min`.
    pub fn t_min(&self, eps: f64, m: f64, dt: f64) -> f64 {
        if !self.enabled {
            return 0.0;
        }
        let raw = self.factor * eps * eps.ln().abs() / (m * m);
        (raw / dt - 1e-9).ceil().max(0.0) * dt
    }
}

/// Configuration of one epsilon sweep.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub scenario_name: String,
    pub problem: ProblemData,
    pub eps: Vec<f64>,
    pub variant: VariantSelection,
    pub grid: GridRule,
    pub mask: MaskRule,
    /// Compare against the Richardson-extrapolated solver instead of the raw grid.
    pub extrapolate: bool,
}

/// Default sweep.
pub const DEFAULT_EPS: [f64; 4] = [0.04, 0.02, 0.01, 0.005];

/// Decay sweep.
pub const DECAY_EPS: [f64; 5] = [0.04, 0.02, 0.01, 0.005, 0.0025];

/// Multiplier `m` in `dx <= eps/m` used by rate studies.
pub const STUDY_GRID_MULTIPLIER: f64 = 16.0;

impl SweepConfig {
    pub fn new(scenario_name: impl Into<String>, problem: ProblemData) -> Self {
        SweepConfig {
            scenario_name: scenario_name.into(),
            problem,
            eps: DEFAULT_EPS.to_vec(),
            variant: VariantSelection::Both,
            grid: GridRule {
                multiplier: STUDY_GRID_MULTIPLIER,
            },
            mask: MaskRule::default(),
            extrapolate: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.problem.validate()?;
        if self.eps.len() < 2 {
            return Err(Error::Config(
                "a rate fit needs at least two eps values".into(),
            ));
        }
        if let Some(e) = self.eps.iter().find(|e| !(**e > 0.0 && **e < 1.0)) {
            return Err(Error::Config(format!(
                "eps values must lie in (0, 1), got {e}"
            )));
        }
        if self.eps.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::Config("eps list must be strictly decreasing".into()));
        }
        if !(self.grid.multiplier >= 1.0) {
            return Err(Error::Config(format!(
                "grid multiplier must be at least 1, got {}",
                self.grid.multiplier
            )));
        }
        if self.mask.enabled && !(self.mask.factor >= 0.0) {
            return Err(Error::Config("mask factor must be nonnegative".into()));
        }
        Ok(())
    }
}

/// Least-squares line through `(ln eps, ln value)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    /// Root mean square of the log residuals.
    pub residual: f64,
    /// Standard error of the slope (zero for two points).
    pub slope_stderr: f64,
}

pub fn fit_loglog(eps: &[f64], values: &[f64]) -> Result<LinearFit> {
    if eps.len() != values.len() || eps.len() < 2 {
        return Err(Error::Config(
            "a fit needs at least two paired samples".into(),
        ));
    }
    if eps
        .iter()
        .chain(values)
        .any(|v| !(*v > 0.0) || !v.is_finite())
    {
        return Err(Error::Domain(
            "log-log fit needs positive finite samples".into(),
        ));
    }
    let n = eps.len() as f64;
    let xs: Vec<f64> = eps.iter().map(|e| e.ln()).collect();
    let ys: Vec<f64> = values.iter().map(|v| v.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx <= 0.0 {
        return Err(Error::Config("eps values must be distinct".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ssr: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    let slope_stderr = if eps.len() > 2 {
        (ssr / (n - 2.0) / sxx).sqrt()
    } else {
        0.0
    };
    Ok(LinearFit {
        slope,
        intercept,
        residual: (ssr / n).sqrt(),
        slope_stderr,
    })
}

/// Acceptance rule for a fitted slope.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Criterion {
    /// `slope >= target - tol`.
    AtLeast { target: f64, tol: f64 },
    /// `|slope - target| <= tol`.
    Within { target: f64, tol: f64 },
    /// Reported without a verdict.
    Info,
}

impl Criterion {
    pub fn accepts(&self, slope: f64) -> Option<bool> {
        match *self {
            Criterion::AtLeast { target, tol } => Some(slope >= target - tol),
            Criterion::Within { target, tol } => Some((slope - target).abs() <= tol),
            Criterion::Info => None,
        }
    }

    fn describe(&self) -> (String, String, &'static str) {
        match *self {
            Criterion::AtLeast { target, tol } => (target.to_string(), tol.to_string(), "at_least"),
            Criterion::Within { target, tol } => (target.to_string(), tol.to_string(), "within"),
            Criterion::Info => ("none".into(), "none".into(), "info"),
        }
    }
}

/// Grid-independence result attached to a verdict.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GateSummary {
    pub passed: bool,
    /// Largest relative change of the gated norm on refinement.
    pub max_change: f64,
    pub threshold: f64,
}

impl GateSummary {
    pub fn from_changes(changes: impl IntoIterator<Item = f64>) -> Self {
        let max_change = changes.into_iter().fold(0.0, f64::max);
        GateSummary {
            passed: max_change < GATE_THRESHOLD,
            max_change,
            threshold: GATE_THRESHOLD,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// The grid gate failed, so the slope is not trusted.
    Invalid,
    Info,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Invalid => "invalid",
            Verdict::Info => "info",
        }
    }
}

/// Per-epsilon values of one norm with its fitted slope and verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct RateReport {
    pub name: String,
    pub scenario: String,
    pub eps: Vec<f64>,
    pub values: Vec<f64>,
    pub fit: LinearFit,
    pub criterion: Criterion,
    pub gate: Option<GateSummary>,
    pub verdict: Verdict,
}

impl RateReport {
    pub fn new(
        name: impl Into<String>,
        scenario: impl Into<String>,
        eps: Vec<f64>,
        values: Vec<f64>,
        criterion: Criterion,
        gate: Option<GateSummary>,
    ) -> Result<Self> {
        let fit = fit_loglog(&eps, &values)?;
        let verdict = match (criterion.accepts(fit.slope), gate) {
            (None, _) => Verdict::Info,
            (Some(_), Some(g)) if !g.passed => Verdict::Invalid,
            (Some(true), _) => Verdict::Pass,
            (Some(false), _) => Verdict::Fail,
        };
        Ok(RateReport {
            name: name.into(),
            scenario: scenario.into(),
            eps,
            values,
            fit,
            criterion,
            gate,
            verdict,
        })
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// `key = value` block under a `[name]` header.
    pub fn render(&self) -> String {
        let (target, tol, kind) = self.criterion.describe();
        let list = |v: &[f64]| {
            v.iter()
                .map(|x| format!("{x:.6e}"))
                .collect::<Vec<_>>()
                .join(", ")
        };
        let mut s = format!("[{}]\n", self.name);
        s += &format!("scenario = {}\n", self.scenario);
        s += &format!("epsilon = {}\n", list(&self.eps));
        s += &format!("values = {}\n", list(&self.values));
        s += &format!("criterion = {kind}\n");
        s += &format!("target_slope = {target}\n");
        s += &format!("tolerance = {tol}\n");
        s += &format!("fitted_slope = {:.6}\n", self.fit.slope);
        s += &format!("slope_stderr = {:.6}\n", self.fit.slope_stderr);
        s += &format!("fit_residual = {:.6e}\n", self.fit.residual);
        match self.gate {
            Some(g) => {
                s += &format!(
                    "grid_gate = {} (max change {:.4}, threshold {})\n",
                    if g.passed { "pass" } else { "fail" },
                    g.max_change,
                    g.threshold
                )
            }
            None => s += "grid_gate = not applicable\n",
        }
        s += &format!("verdict = {}\n", self.verdict.name());
        s
    }
}

/// Write reports (and free-form notes) as one structured text file.
pub fn write_report_file(
    path: &Path,
    reports: &[&RateReport],
    notes: &[(String, String)],
) -> Result<()> {
    let mut out = io::BufWriter::new(fs::File::create(path)?);
    if !notes.is_empty() {
        writeln!(out, "[summary]")?;
        for (k, v) in notes {
            writeln!(out, "{k} = {v}")?;
        }
        writeln!(out)?;
    }
    for r in reports {
        writeln!(out, "{}", r.render())?;
    }
    out.flush()?;
    Ok(())
}

/// Masked error norms must not grow as eps decreases; one inversion of at
/// most 5% is tolerated between the two coarsest values.
pub fn is_monotone_decreasing(values: &[f64]) -> bool {
    values
        .windows(2)
        .enumerate()
        .all(|(i, w)| w[1] <= w[0] || (i == 0 && w[1] <= 1.05 * w[0]))
}

/// Measurements of one variant at one epsilon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatePoint {
    pub eps: f64,
    pub variant: Variant,
    pub nx: usize,
    pub nt: usize,
    pub t_min: f64,
    pub masked: NormSet,
    pub unmasked: NormSet,
    /// Masked norms against the reference computed on the refined hierarchy.
    pub refined_masked: NormSet,
    pub peclet_warning: bool,
}

impl RatePoint {
    /// Relative change of the masked `L^inf(L^2)` error on refinement.
    pub fn gate_change(&self) -> f64 {
        let a = self.masked.linf_l2;
        let b = self.refined_masked.linf_l2;
        if a == 0.0 && b == 0.0 {
            0.0
        } else {
            (b - a).abs() / a.abs().max(b.abs())
        }
    }
}

/// Outcome of [`run_rate_study`].
#[derive(Debug, Clone)]
pub struct RateStudy {
    pub config: SweepConfig,
    pub points: Vec<RatePoint>,
    pub reports: Vec<RateReport>,
    /// `y0(1) = y0'(1) = 0`, under which the `L^2(H^1)` rate is expected.
    pub h1_hypothesis: bool,
}

impl RateStudy {
    pub fn points_for(&self, v: Variant) -> Vec<&RatePoint> {
        self.points.iter().filter(|p| p.variant == v).collect()
    }

    pub fn report(&self, name: &str) -> Option<&RateReport> {
        self.reports.iter().find(|r| r.name == name)
    }

    pub fn monotone(&self, v: Variant) -> bool {
        let vals: Vec<f64> = self
            .points_for(v)
            .iter()
            .map(|p| p.masked.linf_l2)
            .collect();
        is_monotone_decreasing(&vals)
    }

    /// Rates CSV for one variant: a masked and an unmasked row per epsilon.
    pub fn write_rates_csv<W: Write>(&self, v: Variant, mut out: W) -> io::Result<()> {
        writeln!(out, "epsilon,norm_linf_l2,norm_l2_h1,masked")?;
        for p in self.points_for(v) {
            for (norms, masked) in [(p.masked, true), (p.unmasked, false)] {
                writeln!(
                    out,
                    "{:.16e},{:.16e},{:.16e},{}",
                    p.eps, norms.linf_l2, norms.l2_h1, masked
                )?;
            }
        }
        Ok(())
    }
}

fn h1_hypothesis(p: &ProblemData) -> bool {
    p.y0.derivative(0, 1.0).abs() < 1e-14 && p.y0.derivative(1, 1.0).abs() < 1e-14
}

/// Solve once per epsilon (three-level hierarchy when extrapolating, two
/// otherwise) and measure every requested variant against it.
fn rate_points(cfg: &SweepConfig, eps: f64) -> Result<Vec<RatePoint>> {
    let p = &cfg.problem;
    let comp = Composite::new(p);
    let variants = cfg.variant.variants();
    let (nx, nt) = cfg.grid.grid(eps, p);
    let dx = 1.0 / nx as f64;
    let dt = p.t_final / nt as f64;
    let t_min = cfg.mask.t_min(eps, p.m, dt);
    let levels = if cfg.extrapolate { 3 } else { 2 };

    let new_acc = |t0: f64| NormAccumulator::new(dx, dt, t0, None);
    let mut accs: Vec<[NormAccumulator; 3]> = variants
        .iter()
        .map(|_| [new_acc(t_min), new_acc(0.0), new_acc(t_min)])
        .collect();
    let mut base = vec![0.0; nx + 1];
    let mut refined = vec![0.0; nx + 1];
    let mut approx = vec![0.0; nx + 1];
    let mut err = vec![0.0; nx + 1];
    let mut failure: Option<Error> = None;

    let info = march_hierarchy(
        p,
        eps,
        nx,
        nt,
        levels,
        None,
        SolverOptions::default(),
        |_, t, rows| {
            if failure.is_some() {
                return;
            }
            if cfg.extrapolate {
                richardson(&rows[0], &rows[1], &mut base);
                richardson(&rows[1], &rows[2], &mut refined);
            } else {
                base.copy_from_slice(&rows[0]);
                refined.copy_from_slice(&rows[1]);
            }
            for (v, acc) in variants.iter().zip(accs.iter_mut()) {
                let slice = match comp.slice(t, eps, *v) {
                    Ok(s) => s,
                    Err(e) => {
                        failure = Some(e);
                        return;
                    }
                };
                for (i, a) in approx.iter_mut().enumerate() {
                    *a = slice.value(i as f64 * dx);
                }
                for ((e, a), b) in err.iter_mut().zip(&approx).zip(&base) {
                    *e = a - b;
                }
                acc[0].push(t, &err, None);
                acc[1].push(t, &err, None);
                for ((e, a), r) in err.iter_mut().zip(&approx).zip(&refined) {
                    *e = a - r;
                }
                acc[2].push(t, &err, None);
            }
        },
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(variants
        .iter()
        .zip(&accs)
        .map(|(v, acc)| RatePoint {
            eps,
            variant: *v,
            nx,
            nt,
            t_min,
            masked: acc[0].finish(),
            unmasked: acc[1].finish(),
            refined_masked: acc[2].finish(),
            peclet_warning: info.peclet_warning,
        })
        .collect())
}

/// Masked `L^inf(L^2)` and `L^2(H^1)` error rates of the requested variants.
pub fn run_rate_study(cfg: &SweepConfig) -> Result<RateStudy> {
    cfg.validate()?;
    let pool = thread_pool()?;
    let per_eps: Vec<Vec<RatePoint>> = pool.install(|| {
        cfg.eps
            .par_iter()
            .map(|&e| rate_points(cfg, e))
            .collect::<Result<Vec<_>>>()
    })?;
    let points: Vec<RatePoint> = per_eps.into_iter().flatten().collect();
    let p = &cfg.problem;
    let h1 = h1_hypothesis(p);
    let compatible = (p.y0.derivative(0, 0.0) - p.v.derivative(0, 0.0)).abs() < 1e-14;

    let mut reports = Vec::new();
    for v in cfg.variant.variants() {
        let pts: Vec<&RatePoint> = points.iter().filter(|q| q.variant == v).collect();
        let eps: Vec<f64> = pts.iter().map(|q| q.eps).collect();
        let gate = GateSummary::from_changes(pts.iter().map(|q| q.gate_change()));
        let linf = match (v, compatible) {
            (Variant::Corrected, _) | (Variant::Plain, true) => Criterion::AtLeast {
                target: 1.5,
                tol: 0.15,
            },
            (Variant::Plain, false) => Criterion::Within {
                target: 0.5,
                tol: 0.15,
            },
        };
        let h1_rule = if v == Variant::Corrected && h1 {
            Criterion::AtLeast {
                target: 1.0,
                tol: 0.15,
            }
        } else {
            Criterion::Info
        };
        let column = |f: &dyn Fn(&RatePoint) -> f64| pts.iter().map(|q| f(q)).collect::<Vec<_>>();
        let name = v.name();
        reports.push(RateReport::new(
            format!("linf_l2_{name}"),
            &cfg.scenario_name,
            eps.clone(),
            column(&|q| q.masked.linf_l2),
            if cfg.mask.enabled {
                linf
            } else {
                Criterion::Info
            },
            Some(gate),
        )?);
        reports.push(RateReport::new(
            format!("l2_h1_{name}"),
            &cfg.scenario_name,
            eps.clone(),
            column(&|q| q.masked.l2_h1),
            if cfg.mask.enabled {
                h1_rule
            } else {
                Criterion::Info
            },
            Some(gate),
        )?);
        if cfg.mask.enabled {
            reports.push(RateReport::new(
                format!("linf_l2_{name}_unmasked"),
                &cfg.scenario_name,
                eps.clone(),
                column(&|q| q.unmasked.linf_l2),
                Criterion::Info,
                Some(gate),
            )?);
            reports.push(RateReport::new(
                format!("l2_h1_{name}_unmasked"),
                &cfg.scenario_name,
                eps.clone(),
                column(&|q| q.unmasked.l2_h1),
                Criterion::Info,
                Some(gate),
            )?);
        }
    }
    Ok(RateStudy {
        config: cfg.clone(),
        points,
        reports,
        h1_hypothesis: h1,
    })
}

/// Solver-free quantities at one epsilon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TracePoint {
    pub eps: f64,
    pub z0_l1: f64,
    pub z0_dt_l1: f64,
    pub residual_l1_l2: f64,
    /// Closed form of `z^eps(0, 0)`.
    pub z00: f64,
}

#[derive(Debug, Clone)]
pub struct TraceStudy {
    pub points: Vec<TracePoint>,
    pub reports: Vec<RateReport>,
}

impl TraceStudy {
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "epsilon,z0_l1,z0_dt_l1,residual_l1_l2,z00")?;
        for p in &self.points {
            writeln!(
                out,
                "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
                p.eps, p.z0_l1, p.z0_dt_l1, p.residual_l1_l2, p.z00
            )?;
        }
        Ok(())
    }
}

/// Boundary-trace and residual rates from closed forms and quadrature only.
pub fn run_trace_study(cfg: &SweepConfig) -> Result<TraceStudy> {
    cfg.validate()?;
    let pool = thread_pool()?;
    let comp = Composite::new(&cfg.problem);
    let points: Vec<TracePoint> = pool.install(|| {
        cfg.eps
            .par_iter()
            .map(|&eps| {
                let tr = comp.trace_l1_norms(eps)?;
                Ok(TracePoint {
                    eps,
                    z0_l1: tr.l1,
                    z0_dt_l1: tr.l1_dt,
                    residual_l1_l2: comp.residual_l1_l2(eps)?,
                    z00: tr.z00,
                })
            })
            .collect::<Result<Vec<_>>>()
    })?;
    let eps: Vec<f64> = points.iter().map(|p| p.eps).collect();
    let col = |f: fn(&TracePoint) -> f64| points.iter().map(f).collect::<Vec<_>>();
    let name = &cfg.scenario_name;
    let reports = vec![
        RateReport::new(
            "z0_l1",
            name,
            eps.clone(),
            col(|p| p.z0_l1),
            Criterion::AtLeast {
                target: 2.0,
                tol: 0.1,
            },
            None,
        )?,
        RateReport::new(
            "z0_dt_l1",
            name,
            eps.clone(),
            col(|p| p.z0_dt_l1),
            Criterion::AtLeast {
                target: 1.0,
                tol: 0.1,
            },
            None,
        )?,
        RateReport::new(
            "residual_l1_l2",
            name,
            eps,
            col(|p| p.residual_l1_l2),
            Criterion::AtLeast {
                target: 1.5,
                tol: 0.1,
            },
            None,
        )?,
    ];
    Ok(TraceStudy { points, reports })
}

/// Expected decay exponent of `|| y(., 1/M) ||` from the leading nonzero
/// derivative of `y0` at the inflow corner.
pub fn decay_criterion(p: &ProblemData) -> Criterion {
    let tiny = 1e-14;
    if p.y0.derivative(0, 0.0).abs() > tiny {
        Criterion::Within {
            target: 0.25,
            tol: 0.05,
        }
    } else if p.y0.derivative(1, 0.0).abs() > tiny {
        Criterion::Within {
            target: 0.75,
            tol: 0.07,
        }
    } else if p.y0.derivative(2, 0.0).abs() > tiny {
        Criterion::Within {
            target: 1.25,
            tol: 0.1,
        }
    } else {
        Criterion::Info
    }
}

/// The three decay families `y0 = 1`, `x`, `x^2` with `v = 0`, `T = 1/M`.
pub fn decay_families(m: f64) -> Vec<(String, ProblemData)> {
    [
        ("decay_const", vec![1.0]),
        ("decay_linear", vec![0.0, 1.0]),
        ("decay_quadratic", vec![0.0, 0.0, 1.0]),
    ]
    .into_iter()
    .map(|(name, c)| {
        (
            name.to_string(),
            ProblemData {
                m,
                t_final: 1.0 / m,
                y0: SmoothFunction::poly(&c),
                v: SmoothFunction::zero(),
            },
        )
    })
    .collect()
}

/// One decay measurement with its refined companion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayPoint {
    pub eps: f64,
    pub nx: usize,
    pub norm: f64,
    pub refined_norm: f64,
}

impl DecayPoint {
    pub fn gate_change(&self) -> f64 {
        (self.refined_norm - self.norm).abs() / self.norm.abs().max(self.refined_norm.abs())
    }
}

fn decay_point(cfg: &SweepConfig, eps: f64) -> Result<DecayPoint> {
    let p = &cfg.problem;
    let t_star = 1.0 / p.m;
    let mut short = p.clone();
    short.t_final = t_star;
    // nt = nx puts t* exactly on the last step with dt = dx/M.
    let nx = cfg.grid.nx(eps);
    let nt = nx;
    let dx = 1.0 / nx as f64;
    let levels = if cfg.extrapolate { 3 } else { 2 };
    let mut base = vec![0.0; nx + 1];
    let mut refined = vec![0.0; nx + 1];
    march_hierarchy(
        &short,
        eps,
        nx,
        nt,
        levels,
        None,
        SolverOptions::default(),
        |n, _, rows| {
            if n != nt {
                return;
            }
            if cfg.extrapolate {
                richardson(&rows[0], &rows[1], &mut base);
                richardson(&rows[1], &rows[2], &mut refined);
            } else {
                base.copy_from_slice(&rows[0]);
                refined.copy_from_slice(&rows[1]);
            }
        },
    )?;
    Ok(DecayPoint {
        eps,
        nx,
        norm: l2_norm(&base, dx),
        refined_norm: l2_norm(&refined, dx),
    })
}

#[derive(Debug, Clone)]
pub struct DecayStudy {
    pub points: Vec<DecayPoint>,
    pub report: RateReport,
}

impl DecayStudy {
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "epsilon,norm_l2_at_characteristic_time")?;
        for p in &self.points {
            writeln!(out, "{:.16e},{:.16e}", p.eps, p.norm)?;
        }
        Ok(())
    }
}

/// `|| y^eps(., 1/M) ||_{L^2}` against epsilon for `v = 0`.
pub fn run_decay_study(cfg: &SweepConfig) -> Result<DecayStudy> {
    cfg.validate()?;
    let p = &cfg.problem;
    if !p.v.is_zero() {
        return Err(Error::Config("the decay study needs v = 0".into()));
    }
    let pool = thread_pool()?;
    let points: Vec<DecayPoint> = pool.install(|| {
        cfg.eps
            .par_iter()
            .map(|&e| decay_point(cfg, e))
            .collect::<Result<Vec<_>>>()
    })?;
    let gate = GateSummary::from_changes(points.iter().map(|q| q.gate_change()));
    let report = RateReport::new(
        "decay",
        &cfg.scenario_name,
        points.iter().map(|q| q.eps).collect(),
        points.iter().map(|q| q.norm).collect(),
        decay_criterion(p),
        Some(gate),
    )?;
    Ok(DecayStudy { points, report })
}

/// Maximal monotone run of a sampled curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub start: usize,
    pub end: usize,
    pub rising: bool,
}

/// Split samples into monotone runs, ignoring reversals smaller than `tol`.
pub fn monotone_segments(values: &[f64], tol: f64) -> Vec<Segment> {
    let mut out = Vec::new();
    if values.len() < 2 {
        return out;
    }
    let (mut lo, mut hi) = (0usize, 0usize);
    let mut dir = 0i8;
    let mut start = 0usize;
    let mut ext = 0usize;
    for i in 1..values.len() {
        let y = values[i];
        match dir {
            0 => {
                if y < values[lo] {
                    lo = i;
                }
                if y > values[hi] {
                    hi = i;
                }
                if y - values[lo] > tol {
                    dir = 1;
                    start = lo;
                    ext = i;
                } else if values[hi] - y > tol {
                    dir = -1;
                    start = hi;
                    ext = i;
                }
            }
            1 => {
                if y >= values[ext] {
                    ext = i;
                } else if values[ext] - y > tol {
                    out.push(Segment {
                        start,
                        end: ext,
                        rising: true,
                    });
                    start = ext;
                    ext = i;
                    dir = -1;
                }
            }
            _ => {
                if y <= values[ext] {
                    ext = i;
                } else if y - values[ext] > tol {
                    out.push(Segment {
                        start,
                        end: ext,
                        rising: false,
                    });
                    start = ext;
                    ext = i;
                    dir = 1;
                }
            }
        }
    }
    if dir != 0 {
        out.push(Segment {
            start,
            end: ext,
            rising: dir > 0,
        });
    }
    out
}

/// Geometry of one transition between the end values of a segment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transition {
    pub rising: bool,
    pub from: f64,
    pub to: f64,
    /// Where the curve crosses the mean of `from` and `to`.
    pub center: f64,
    /// Distance between the 10% and 90% crossings.
    pub width: f64,
}

fn crossing(xs: &[f64], ys: &[f64], seg: &Segment, level: f64) -> f64 {
    let sign = if seg.rising { 1.0 } else { -1.0 };
    for i in seg.start..seg.end {
        let (a, b) = (sign * (ys[i] - level), sign * (ys[i + 1] - level));
        if a <= 0.0 && b >= 0.0 {
            let s = if b - a > 0.0 { -a / (b - a) } else { 0.0 };
            return xs[i] + s * (xs[i + 1] - xs[i]);
        }
    }
    xs[seg.end]
}

/// Monotone runs whose amplitude exceeds `min_jump`, with their geometry.
pub fn transitions(xs: &[f64], ys: &[f64], tol: f64, min_jump: f64) -> Vec<Transition> {
    monotone_segments(ys, tol)
        .into_iter()
        .filter(|s| (ys[s.end] - ys[s.start]).abs() >= min_jump)
        .map(|s| {
            let (a, b) = (ys[s.start], ys[s.end]);
            let at = |f: f64| crossing(xs, ys, &s, a + f * (b - a));
            Transition {
                rising: s.rising,
                from: a,
                to: b,
                center: at(0.5),
                width: (at(0.9) - at(0.1)).abs(),
            }
        })
        .collect()
}

/// Approximation sampled along `x` at one time.
pub fn sample_slice(
    p: &ProblemData,
    eps: f64,
    t: f64,
    nx: usize,
    variant: Variant,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let slice = Composite::new(p).slice(t, eps, variant)?;
    let xs: Vec<f64> = (0..=nx).map(|i| i as f64 / nx as f64).collect();
    let ys = xs.iter().map(|&x| slice.value(x)).collect();
    Ok((xs, ys))
}

/// Approximation on `[0,1] x [0, t_end]`.
pub fn sample_surface(
    p: &ProblemData,
    eps: f64,
    t_end: f64,
    nx: usize,
    nt: usize,
    variant: Variant,
) -> Result<FieldGrid> {
    let comp = Composite::new(p);
    let mut g = FieldGrid::zeros(nx, nt, t_end);
    for n in 0..=nt {
        let slice = comp.slice(g.t(n), eps, variant)?;
        let dx = g.dx;
        for (i, v) in g.row_mut(n).iter_mut().enumerate() {
            *v = slice.value(i as f64 * dx);
        }
    }
    Ok(g)
}

/// Sampling resolution for [`emit_fields`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldsConfig {
    pub slice_nx: usize,
    pub surface_nx: usize,
    pub surface_nt: usize,
    /// Also dump solver slices at the requested times.
    pub include_solver: bool,
    pub variant: Variant,
    pub grid: GridRule,
}

impl Default for FieldsConfig {
    fn default() -> Self {
        FieldsConfig {
            slice_nx: 2000,
            surface_nx: 200,
            surface_nt: 240,
            include_solver: false,
            variant: Variant::Corrected,
            grid: GridRule::default(),
        }
    }
}

fn write_xy_csv(path: &Path, xs: &[f64], t: f64, ys: &[f64]) -> Result<()> {
    let mut out = io::BufWriter::new(fs::File::create(path)?);
    writeln!(out, "x,t,value")?;
    for (x, y) in xs.iter().zip(ys) {
        writeln!(out, "{x:.16e},{t:.16e},{y:.16e}")?;
    }
    out.flush()?;
    Ok(())
}

/// Slices at `times` (in units of `1/M`) and the surface over
/// `(0,1) x (0, 1.2/M)`. Returns the written paths.
pub fn emit_fields(
    p: &ProblemData,
    eps: f64,
    times: &[f64],
    out_dir: &Path,
    fc: &FieldsConfig,
) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(out_dir)?;
    let mut written = Vec::new();
    let t_abs: Vec<f64> = times.iter().map(|s| s / p.m).collect();
    if let Some(t) = t_abs.iter().find(|t| !(**t >= 0.0)) {
        return Err(Error::Config(format!(
            "slice times must be nonnegative, got {t}"
        )));
    }
    for (s, &t) in times.iter().zip(&t_abs) {
        let (xs, ys) = sample_slice(p, eps, t, fc.slice_nx, fc.variant)?;
        let path = out_dir.join(format!("slice_eps{eps}_t{s}.csv"));
        write_xy_csv(&path, &xs, t, &ys)?;
        written.push(path);
    }
    let surface = sample_surface(p, eps, 1.2 / p.m, fc.surface_nx, fc.surface_nt, fc.variant)?;
    let path = out_dir.join(format!("surface_eps{eps}.csv"));
    surface.write_csv(io::BufWriter::new(fs::File::create(&path)?))?;
    written.push(path);

    if fc.include_solver {
        let t_end = t_abs.iter().copied().fold(0.0, f64::max);
        let mut prob = p.clone();
        prob.t_final = prob.t_final.max(t_end);
        let (nx, nt) = fc.grid.grid(eps, &prob);
        let dt = prob.t_final / nt as f64;
        let wanted: Vec<usize> = t_abs.iter().map(|t| (t / dt).round() as usize).collect();
        let mut rows: Vec<Option<Vec<f64>>> = vec![None; wanted.len()];
        march(
            &prob,
            eps,
            nx,
            nt,
            None,
            SolverOptions::default(),
            |n, _, row| {
                for (k, w) in wanted.iter().enumerate() {
                    if *w == n {
                        rows[k] = Some(row.to_vec());
                    }
                }
            },
        )?;
        let xs: Vec<f64> = (0..=nx).map(|i| i as f64 / nx as f64).collect();
        for ((s, n), row) in times.iter().zip(&wanted).zip(rows) {
            let row =
                row.ok_or_else(|| Error::Config(format!("time {s}/M lies beyond the horizon")))?;
            let path = out_dir.join(format!("solver_slice_eps{eps}_t{s}.csv"));
            write_xy_csv(&path, &xs, *n as f64 * dt, &row)?;
            written.push(path);
        }
    }
    Ok(written)
}
