//! Aggregated end-to-end checks: rate studies, exact identities and
//! property sweeps. Used by the `selftest` subcommand.

use std::f64::consts::PI;
use std::time::Instant;

use crate::boundary::BoundaryLayer;
use crate::composite::{operator_identities_check, Composite, Variant};
use crate::error::Result;
use crate::internal::{InternalLayer, Term};
use crate::outer::Side;
use crate::scenario::{jump_constants, ProblemData, SmoothFunction};
use crate::solver::{solve, FieldGrid};
use crate::special::{erfc, erfcx, FRAC_1_SQRT_PI};
use crate::study::{
    decay_families, run_decay_study, run_rate_study, run_trace_study, sample_slice, transitions,
    RateReport, SweepConfig, VariantSelection, DECAY_EPS,
};

/// Outcome of one acceptance check.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub reports: Vec<RateReport>,
}

impl Check {
    fn new(name: &str, passed: bool, detail: String) -> Self {
        Check {
            name: name.to_string(),
            passed,
            detail,
            reports: Vec::new(),
        }
    }

    pub fn line(&self) -> String {
        format!(
            "{} {}: {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.detail
        )
    }
}

/// The mixed scenario used by the solver-free suite: every jump constant
/// up to second order is nonzero and `y0(1) != 0`.
pub fn mixed_scenario() -> ProblemData {
    ProblemData {
        m: 1.0,
        t_final: 1.2,
        y0: SmoothFunction::poly(&[1.0, 1.0, -2.0, 1.0]),
        v: SmoothFunction::ScaledSine {
            amplitude: 0.5,
            frequency: 2.0,
        },
    }
}

/// Shock-scenario rate and the plain-variant degradation.
pub fn check_shock_rates() -> Result<[Check; 2]> {
    let start = Instant::now();
    let study = run_rate_study(&SweepConfig::new("shock", ProblemData::shock(1.0, 1.2)))?;
    let elapsed = start.elapsed().as_secs_f64();
    let corr = study
        .report("linf_l2_corrected")
        .cloned()
        .expect("corrected report");
    let plain = study
        .report("linf_l2_plain")
        .cloned()
        .expect("plain report");
    let gate = corr.gate.expect("gate");
    let rate_ok = corr.passed() && gate.passed && elapsed < 600.0;
    let mut rate = Check::new(
        "corrected L^inf(L^2) rate, shock",
        rate_ok,
        format!(
            "slope {:.3} (need >= 1.35), gate max change {:.2}% (< 5%), {:.1} s",
            corr.fit.slope,
            100.0 * gate.max_change,
            elapsed
        ),
    );
    rate.reports = study.reports.clone();
    let gap = (corr.fit.slope - plain.fit.slope).abs();
    let degr_ok = plain.passed() && gap >= 0.7;
    let degr = Check::new(
        "plain-variant degradation, shock",
        degr_ok,
        format!(
            "slope {:.3} (need 0.5 +- 0.15), gap to corrected {:.3} (need >= 0.7)",
            plain.fit.slope, gap
        ),
    );
    Ok([rate, degr])
}

/// `L^2(H^1)` rate on data with `y0(1) = y0'(1) = 0`.
pub fn check_h1_rate() -> Result<Check> {
    let mut cfg = SweepConfig::new("flat_outflow", ProblemData::flat_outflow(1.0, 1.2));
    cfg.variant = VariantSelection::Corrected;
    let study = run_rate_study(&cfg)?;
    let r = study.report("l2_h1_corrected").cloned().expect("h1 report");
    let mut c = Check::new(
        "corrected L^2(H^1) rate, flat outflow",
        r.passed() && study.h1_hypothesis,
        format!(
            "slope {:.3} (need >= 0.85), hypothesis y0(1) = y0'(1) = 0: {}",
            r.fit.slope, study.h1_hypothesis
        ),
    );
    c.reports = study.reports.clone();
    Ok(c)
}

/// Boundary traces and residual, without the solver.
pub fn check_trace_suite() -> Result<Check> {
    let start = Instant::now();
    let mut cfg = SweepConfig::new("mixed", mixed_scenario());
    cfg.variant = VariantSelection::Corrected;
    let study = run_trace_study(&cfg)?;
    let elapsed = start.elapsed().as_secs_f64();
    let slope = |i: usize| study.reports[i].fit.slope;
    let mut c = Check::new(
        "solver-free rates",
        study.reports.iter().all(|r| r.passed()),
        format!(
            "residual {:.3} (>= 1.4), z(0,.) {:.3} (>= 1.9), z_t(0,.) {:.3} (>= 0.9), {:.1} s",
            slope(2),
            slope(0),
            slope(1),
            elapsed
        ),
    );
    c.reports = study.reports;
    Ok(c)
}

/// Decay of the solution at `t = 1/M` for the three corner families.
pub fn check_decay() -> Result<Check> {
    let mut parts = Vec::new();
    let mut reports = Vec::new();
    let mut ok = true;
    for (name, p) in decay_families(1.0) {
        let mut cfg = SweepConfig::new(name.clone(), p);
        cfg.eps = DECAY_EPS.to_vec();
        cfg.grid.multiplier = 8.0;
        let d = run_decay_study(&cfg)?;
        ok &= d.report.passed();
        parts.push(format!("{name} {:.3}", d.report.fit.slope));
        reports.push(d.report);
    }
    let mut c = Check::new(
        "decay at t = 1/M",
        ok,
        format!(
            "{} (need 0.25 +- 0.05, 0.75 +- 0.07, 1.25 +- 0.1)",
            parts.join(", ")
        ),
    );
    c.reports = reports;
    Ok(c)
}

/// Transition features of the shock slices, measured on the sampled curves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FigureFeatures {
    /// Rising and falling centres at `t = 1/(2M)`.
    pub half: (f64, f64),
    /// Rising and falling centres at `t = 1/M`.
    pub full: (f64, f64),
    /// Width of the rising front at `t = 1/(2M)` for `eps` over `eps / 10`.
    pub width_ratio: f64,
}

fn shock_fronts(eps: f64, t: f64) -> Result<(f64, f64, f64)> {
    let (xs, ys) = sample_slice(
        &ProblemData::shock(1.0, 1.2),
        eps,
        t,
        4000,
        Variant::Corrected,
    )?;
    let tr = transitions(&xs, &ys, 1e-9, 0.3);
    let rise = tr.iter().find(|t| t.rising);
    let fall = tr.iter().rev().find(|t| !t.rising);
    Ok(match (rise, fall) {
        (Some(r), Some(f)) => (r.center, f.center, r.width),
        _ => (f64::NAN, f64::NAN, f64::NAN),
    })
}

pub fn figure_features() -> Result<FigureFeatures> {
    let eps = 0.01;
    let (r1, f1, w1) = shock_fronts(eps, 0.5)?;
    let (r2, f2, _) = shock_fronts(eps, 1.0)?;
    let (_, _, w_small) = shock_fronts(eps / 10.0, 0.5)?;
    Ok(FigureFeatures {
        half: (r1, f1),
        full: (r2, f2),
        width_ratio: w1 / w_small,
    })
}

/// Slices of the shock approximation at `eps = 0.01`: one front at the
/// characteristic and one at the outflow at `t = 1/(2M)`, merged at `t = 1/M`.
pub fn check_figure_features() -> Result<Check> {
    let f = figure_features()?;
    let se = 0.1;
    let ok = (f.half.0 - 0.5).abs() <= se
        && f.half.1 >= 0.98
        && f.full.0 >= 1.0 - 2.0 * se
        && f.full.1 >= 0.98
        && (f.width_ratio - 10f64.sqrt()).abs() <= 0.5;
    Ok(Check::new(
        "slice features, shock",
        ok,
        format!(
            "t = 1/2: fronts at {:.3} and {:.3}; t = 1: fronts at {:.3} and {:.3}; width ratio {:.2} (sqrt 10 = 3.16)",
            f.half.0, f.half.1, f.full.0, f.full.1, f.width_ratio
        ),
    ))
}

/// Deterministic points in the unit square (additive recurrence).
pub fn unit_points(n: usize) -> impl Iterator<Item = (f64, f64)> {
    const A1: f64 = 0.754_877_666_246_692_7;
    const A2: f64 = 0.569_840_290_998_053_2;
    (1..=n).map(|i| ((0.5 + A1 * i as f64).fract(), (0.5 + A2 * i as f64).fract()))
}

/// Independent closed form of `P~_eps` for `y0 = 1`, `v = 0`.
pub fn shock_closed_form(x: f64, t: f64, eps: f64, m: f64) -> f64 {
    let se = eps.sqrt();
    let a = m / se;
    // W(w) = (1 + erf(w/(2 sqrt t)))/2 + U(w), U = -exp(aw + a^2 t) erfc(eta)/2.
    let parts = |w: f64| {
        let st = t.sqrt();
        let xi = w / (2.0 * st);
        let gauss = (-xi * xi).exp();
        let eta = xi + a * st;
        let u = -0.5 * gauss * erfcx(eta);
        let k = gauss * 0.5 * FRAC_1_SQRT_PI / st;
        let v = 0.5 * erfc(-xi) + u;
        let v1 = 2.0 * k + a * u;
        let v2 = -w / t * k + a * k + a * a * u;
        let v3 =
            -k / t + w * w / (2.0 * t * t) * k - a * w / (2.0 * t) * k + a * a * k + a * a * a * u;
        (v, v1, v2, v3)
    };
    let w = (x - m * t) / se;
    let wt = (1.0 - m * t) / se;
    let z = (1.0 - x) / eps;
    let (v, _, _, _) = parts(w);
    let (b0, b1, b2, b3) = parts(wt);
    v - (b0 + se * z * b1 + eps * z * z / 2.0 * b2 + eps * se * z.powi(3) / 6.0 * b3)
        * (-m * z).exp()
}

fn scenarios() -> Vec<(&'static str, ProblemData)> {
    vec![
        ("shock", ProblemData::shock(1.0, 1.2)),
        ("angular", ProblemData::angular(1.0, 1.2)),
        ("flat_outflow", ProblemData::flat_outflow(1.0, 1.2)),
        ("compatible", ProblemData::compatible(1.0, 1.2)),
        ("mixed", mixed_scenario()),
        (
            "fast",
            ProblemData {
                m: 2.5,
                t_final: 0.5,
                y0: SmoothFunction::poly(&[0.3, -1.0, 0.5, 2.0, -1.0]),
                v: SmoothFunction::poly(&[-0.7, 1.5, 2.0, -1.0]),
            },
        ),
    ]
}

/// Largest deviation of each exact identity.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct IdentityDeviations {
    pub w0eps_trace: f64,
    pub w12eps_trace: f64,
    pub dirichlet: f64,
    pub z00: f64,
    pub shock_formula: f64,
    pub operator: f64,
}

pub fn identity_deviations() -> Result<IdentityDeviations> {
    let mut d = IdentityDeviations::default();
    for (_, p) in scenarios() {
        let jc = jump_constants(&p);
        let il = InternalLayer::new(jc, p.m);
        let comp = Composite::new(&p);
        for eps in [0.05f64, 0.01, 0.001] {
            for j in 1..=40 {
                let t = p.t_final * j as f64 / 40.0;
                let w = -p.m * t / eps.sqrt();
                d.w0eps_trace = d.w0eps_trace.max((il.w0eps(w, t, eps) - jc.c_minus).abs());
                let target = jc.d_minus * w;
                d.w12eps_trace = d
                    .w12eps_trace
                    .max((il.w12eps(w, t, eps) - target).abs() / target.abs().max(1.0));
                for v in [Variant::Corrected, Variant::Plain] {
                    d.dirichlet = d.dirichlet.max(comp.approx(1.0, t, eps, v)?.abs());
                }
            }
        }
        for eps in [0.5, 0.2, 0.1] {
            let z = comp.boundary_trace_z0(1e-30, eps)?;
            let closed = comp.z00_closed_form(eps);
            d.z00 = d.z00.max((z - closed).abs());
        }
    }
    let shock = ProblemData::shock(1.0, 1.2);
    let comp = Composite::new(&shock);
    for eps in [0.01, 0.001] {
        for (u, s) in unit_points(100) {
            let x = 1e-3 + (1.0 - 2e-3) * u;
            let t = 1e-3 + (1.2 - 1e-3) * s;
            let built = comp.approx(x, t, eps, Variant::Corrected)?;
            d.shock_formula = d
                .shock_formula
                .max((built - shock_closed_form(x, t, eps, 1.0)).abs());
        }
    }
    d.operator = operator_identities_check().max_deviation();
    Ok(d)
}

pub fn check_exact_identities() -> Result<Check> {
    let d = identity_deviations()?;
    let ok = d.w0eps_trace <= 1e-12
        && d.w12eps_trace <= 1e-12
        && d.dirichlet <= 1e-12
        && d.z00 <= 1e-12
        && d.shock_formula <= 1e-12
        && d.operator <= 1e-9;
    Ok(Check::new(
        "exact identities",
        ok,
        format!(
            "W0eps trace {:.1e}, W12eps trace {:.1e}, P(1,t) {:.1e}, z(0,0) {:.1e}, shock closed form {:.1e}, operator {:.1e}",
            d.w0eps_trace, d.w12eps_trace, d.dirichlet, d.z00, d.shock_formula, d.operator
        ),
    ))
}

/// Largest deviation of each property sweep.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PropertyDeviations {
    pub heat: f64,
    pub ode: f64,
    pub layer_tail: f64,
    pub boundary_tail: f64,
    /// Smallest margin of the erfc bounds (negative means violated).
    pub erfc_bound_margin: f64,
    pub solver_order: f64,
    pub theta: f64,
}

const LAYER_TERMS: [Term; 4] = [Term::W0, Term::W12, Term::W1, Term::W32];

pub fn property_deviations() -> Result<PropertyDeviations> {
    let mut d = PropertyDeviations {
        erfc_bound_margin: f64::INFINITY,
        ..Default::default()
    };
    for (_, p) in scenarios() {
        let jc = jump_constants(&p);
        let il = InternalLayer::new(jc, p.m);
        let eps_list = [0.02f64, 0.005];
        // Heat residual with a centered t-difference against the analytic w_ww.
        let mut terms: Vec<Term> = LAYER_TERMS.to_vec();
        for eps in eps_list {
            terms.push(Term::W0Eps { eps });
            terms.push(Term::W12Eps { eps });
        }
        for term in &terms {
            for (u, s) in unit_points(60) {
                let w = -6.0 + 12.0 * u;
                let t = 0.05 + 1.0 * s;
                let h = 1e-4 * t;
                let ut = (il.eval(*term, w, t + h) - il.eval(*term, w, t - h)) / (2.0 * h);
                let uww = il.dw(*term, 2, w, t);
                let scale = 1.0 + uww.abs() + il.eval(*term, w, t).abs();
                d.heat = d.heat.max((ut - uww).abs() / scale);
            }
        }
        // Matching tails far from the characteristic.
        for (k, term) in LAYER_TERMS.iter().enumerate() {
            for t in [0.1, 0.5, 1.0] {
                for w in [-40.0, 40.0] {
                    let side = if w > 0.0 { Side::Above } else { Side::Below };
                    let (tail, _) = il.matching_tail(k, side, w, t);
                    let dev = (il.eval(*term, w, t) - tail).abs() / tail.abs().max(1.0);
                    d.layer_tail = d.layer_tail.max(dev);
                }
            }
        }
        let bl = BoundaryLayer::new(&p);
        for eps in eps_list {
            let se = eps.sqrt();
            for corrected in [true, false] {
                for k in 0..4 {
                    for (u, s) in unit_points(40) {
                        let t = 0.05 + (p.t_final - 0.05) * s;
                        let tau = (1.0 / p.m - t) / se;
                        let z = 20.0 * u;
                        let r = bl.ode_residual(k, z, tau, t, eps, corrected)?;
                        let y = bl.y_profile(k, z, tau, t, eps, corrected)?;
                        d.ode = d.ode.max(r.abs() / y.abs().max(1.0));
                    }
                    for t in [0.2, 0.7, 1.1] {
                        let tau = (1.0 / p.m - t) / se;
                        let z = 60.0 / p.m;
                        let y = bl.y_profile(k, z, tau, t, eps, corrected)?;
                        let c = bl.match_coeffs(k, z, tau, t, eps, corrected)?;
                        d.boundary_tail = d.boundary_tail.max((y - c).abs() / c.abs().max(1.0));
                    }
                }
            }
        }
    }
    for i in 0..=20_000 {
        let y = 6.0 * i as f64 / 20_000.0;
        let e = erfc(y);
        let lo = 0.5 * (-4.0 * y * y / PI).exp();
        let hi = (-y * y).exp();
        d.erfc_bound_margin = d.erfc_bound_margin.min(e - lo).min(hi - e);
    }
    d.solver_order = manufactured_order()?;
    // Initial profile near the outflow wall.
    let p = ProblemData::angular(1.0, 1.2);
    let comp = Composite::new(&p);
    for x in [0.9, 0.95, 0.99] {
        let eps = 0.01;
        let approx = comp.approx(x, 1e-8, eps, Variant::Corrected)?;
        let dev = approx - p.y0.derivative(0, x) - comp.theta_initial_profile(x, eps);
        d.theta = d.theta.max(dev.abs());
    }
    Ok(d)
}

/// Observed order of the solver on `y = exp(-t) sin(pi x)`, from the two
/// finest of four grids.
pub fn manufactured_order() -> Result<f64> {
    let (eps, m) = (0.1, 1.0);
    let p = ProblemData {
        m,
        t_final: 1.0,
        y0: SmoothFunction::ScaledSine {
            amplitude: 1.0,
            frequency: PI,
        },
        v: SmoothFunction::zero(),
    };
    let exact = |x: f64, t: f64| (-t).exp() * (PI * x).sin();
    let source = move |x: f64, t: f64| {
        (-t).exp() * ((eps * PI * PI - 1.0) * (PI * x).sin() + m * PI * (PI * x).cos())
    };
    let mut errors = Vec::new();
    for n in [20usize, 40, 80, 160] {
        let g = solve(&p, eps, n, n, Some(&source))?;
        let e = FieldGrid::from_fn(n, n, 1.0, exact);
        let err = g
            .values
            .iter()
            .zip(&e.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        errors.push(err);
    }
    let k = errors.len();
    Ok((errors[k - 2] / errors[k - 1]).log2())
}

pub fn check_property_suites() -> Result<Check> {
    let d = property_deviations()?;
    let ok = d.heat <= 1e-6
        && d.ode <= 1e-6
        && d.layer_tail <= 1e-10
        && d.boundary_tail <= 1e-10
        && d.erfc_bound_margin >= 0.0
        && d.solver_order >= 1.9
        && d.theta <= 1e-6;
    Ok(Check::new(
        "property suites",
        ok,
        format!(
            "heat {:.1e}, ode {:.1e}, tails {:.1e}/{:.1e}, erfc bound margin {:.1e}, solver order {:.3}, theta {:.1e}",
            d.heat, d.ode, d.layer_tail, d.boundary_tail, d.erfc_bound_margin, d.solver_order, d.theta
        ),
    ))
}

/// Every check, in acceptance order.
pub fn run_all() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    out.extend(check_shock_rates()?);
    out.push(check_h1_rate()?);
    out.push(check_trace_suite()?);
    out.push(check_decay()?);
    out.push(check_exact_identities()?);
    out.push(check_property_suites()?);
    out.push(check_figure_features()?);
    Ok(out)
}
