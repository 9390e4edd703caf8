use std::fs;

use layered_advect::selftest::{figure_features, mixed_scenario};
use layered_advect::solver::GridRule;
use layered_advect::study::{
    decay_criterion, decay_families, emit_fields, fit_loglog, is_monotone_decreasing,
    monotone_segments, run_decay_study, run_rate_study, run_trace_study, sample_slice, transitions,
    Criterion, FieldsConfig, MaskRule, RateReport, SweepConfig, VariantSelection, Verdict,
};
use layered_advect::{ProblemData, Variant};

fn small_rate_config() -> SweepConfig {
    let mut cfg = SweepConfig::new("shock", ProblemData::shock(1.0, 1.2));
    cfg.eps = vec![0.04, 0.02];
    cfg.grid = GridRule { multiplier: 8.0 };
    cfg
}

fn csv_rows(text: &str) -> (String, Vec<Vec<f64>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().to_string();
    let rows = lines
        .map(|l| {
            l.split(',')
                .map(|c| match c {
                    "true" => 1.0,
                    "false" => 0.0,
                    _ => c.parse().unwrap(),
                })
                .collect()
        })
        .collect();
    (header, rows)
}

#[test]
fn rates_csv_schema_and_reports() {
    let study = run_rate_study(&small_rate_config()).unwrap();
    for v in [Variant::Corrected, Variant::Plain] {
        let mut buf = Vec::new();
        study.write_rates_csv(v, &mut buf).unwrap();
        let (header, rows) = csv_rows(&String::from_utf8(buf).unwrap());
        assert_eq!(header, "epsilon,norm_linf_l2,norm_l2_h1,masked");
        assert_eq!(rows.len(), 4);
        for r in &rows {
            assert_eq!(r.len(), 4);
            assert!(r[1] > 0.0 && r[2] > 0.0);
        }
        // Masking can only remove rows from the maximum.
        let masked = rows.iter().find(|r| r[0] == 0.02 && r[3] == 1.0).unwrap();
        let unmasked = rows.iter().find(|r| r[0] == 0.02 && r[3] == 0.0).unwrap();
        assert!(masked[1] <= unmasked[1]);
    }
    for name in [
        "linf_l2_corrected",
        "l2_h1_corrected",
        "linf_l2_plain",
        "linf_l2_plain_unmasked",
    ] {
        let r = study
            .report(name)
            .unwrap_or_else(|| panic!("missing {name}"));
        let text = r.render();
        for key in [
            "scenario",
            "epsilon",
            "values",
            "criterion",
            "target_slope",
            "tolerance",
            "fitted_slope",
            "slope_stderr",
            "fit_residual",
            "grid_gate",
            "verdict",
        ] {
            assert!(text.contains(&format!("{key} = ")), "{name} lacks {key}");
        }
    }
    assert!(!study.h1_hypothesis);
    // The plain variant is worse than the corrected one.
    let c = study.report("linf_l2_corrected").unwrap();
    let p = study.report("linf_l2_plain").unwrap();
    assert!(c.values.iter().zip(&p.values).all(|(a, b)| a < b));
}

#[test]
fn rate_study_is_deterministic() {
    let mut cfg = small_rate_config();
    cfg.variant = VariantSelection::Corrected;
    let a = run_rate_study(&cfg).unwrap();
    let b = run_rate_study(&cfg).unwrap();
    assert_eq!(a.reports, b.reports);
    let csv = |s: &layered_advect::study::RateStudy| {
        let mut buf = Vec::new();
        s.write_rates_csv(Variant::Corrected, &mut buf).unwrap();
        buf
    };
    assert_eq!(csv(&a), csv(&b));
}

#[test]
fn unmasked_run_has_zero_cutoff() {
    let mut cfg = small_rate_config();
    cfg.variant = VariantSelection::Corrected;
    cfg.mask = MaskRule {
        enabled: false,
        ..MaskRule::default()
    };
    let study = run_rate_study(&cfg).unwrap();
    assert!(study.points.iter().all(|p| p.t_min == 0.0));
}

#[test]
fn mask_cutoff_snaps_to_grid() {
    let rule = MaskRule::default();
    let dt = 1e-3;
    let t = rule.t_min(0.01, 1.0, dt);
    let raw = 4.0 * 0.01 * 0.01f64.ln().abs();
    assert!(t >= raw && t < raw + dt);
    assert!(((t / dt).round() - t / dt).abs() < 1e-9);
}

#[test]
fn config_validation() {
    let base = small_rate_config();
    let mut c = base.clone();
    c.eps = vec![0.01, 0.02];
    assert!(c.validate().is_err());
    c.eps = vec![0.01];
    assert!(c.validate().is_err());
    c.eps = vec![1.5, 0.1];
    assert!(c.validate().is_err());
    c = base.clone();
    c.grid.multiplier = 0.5;
    assert!(c.validate().is_err());
    assert!(base.validate().is_ok());
    assert!("sideways".parse::<VariantSelection>().is_err());
}

#[test]
fn traces_csv_schema() {
    let mut cfg = SweepConfig::new("mixed", mixed_scenario());
    cfg.eps = vec![0.04, 0.02, 0.01];
    let study = run_trace_study(&cfg).unwrap();
    let mut buf = Vec::new();
    study.write_csv(&mut buf).unwrap();
    let (header, rows) = csv_rows(&String::from_utf8(buf).unwrap());
    assert_eq!(header, "epsilon,z0_l1,z0_dt_l1,residual_l1_l2,z00");
    assert_eq!(rows.len(), 3);
    assert!(
        study.reports.iter().all(|r| r.passed()),
        "{:?}",
        study.reports
    );
}

#[test]
fn decay_csv_schema_and_criteria() {
    let (name, p) = decay_families(1.0).remove(0);
    assert_eq!(
        decay_criterion(&p),
        Criterion::Within {
            target: 0.25,
            tol: 0.05
        }
    );
    let mut cfg = SweepConfig::new(name, p);
    cfg.eps = vec![0.04, 0.02];
    cfg.grid.multiplier = 4.0;
    let d = run_decay_study(&cfg).unwrap();
    let mut buf = Vec::new();
    d.write_csv(&mut buf).unwrap();
    let (header, rows) = csv_rows(&String::from_utf8(buf).unwrap());
    assert_eq!(header, "epsilon,norm_l2_at_characteristic_time");
    assert_eq!(rows.len(), 2);
    // A shock dissolved at t = 1/M leaves a thin layer whose norm shrinks with eps.
    assert!(rows[1][1] < rows[0][1]);

    let (_, quad) = decay_families(1.0).remove(2);
    assert_eq!(
        decay_criterion(&quad),
        Criterion::Within {
            target: 1.25,
            tol: 0.1
        }
    );
    let bad = ProblemData::compatible(1.0, 1.2);
    assert!(run_decay_study(&SweepConfig::new("compatible", bad)).is_err());
}

#[test]
fn fields_files_and_schema() {
    let dir = tempfile::tempdir().unwrap();
    let p = ProblemData::shock(1.0, 1.2);
    let fc = FieldsConfig {
        slice_nx: 200,
        surface_nx: 20,
        surface_nt: 24,
        include_solver: true,
        ..FieldsConfig::default()
    };
    let written = emit_fields(&p, 0.02, &[0.5, 1.0], dir.path(), &fc).unwrap();
    let names: Vec<String> = written
        .iter()
        .map(|p| p.file_name().unwrap().to_string_lossy().into_owned())
        .collect();
    assert_eq!(
        names,
        [
            "slice_eps0.02_t0.5.csv",
            "slice_eps0.02_t1.csv",
            "surface_eps0.02.csv",
            "solver_slice_eps0.02_t0.5.csv",
            "solver_slice_eps0.02_t1.csv",
        ]
    );
    let (header, rows) = csv_rows(&fs::read_to_string(&written[0]).unwrap());
    assert_eq!(header, "x,t,value");
    assert_eq!(rows.len(), 201);
    assert!(rows.iter().all(|r| r[1] == 0.5));
    let (_, surf) = csv_rows(&fs::read_to_string(&written[2]).unwrap());
    assert_eq!(surf.len(), 21 * 25);
    // Approximation and solver agree to within the layer error.
    let (_, sol) = csv_rows(&fs::read_to_string(&written[3]).unwrap());
    let comp = layered_advect::Composite::new(&p);
    for r in sol.iter().step_by(17) {
        let a = comp.approx(r[0], r[1], 0.02, Variant::Corrected).unwrap();
        assert!((a - r[2]).abs() < 0.05, "x = {}", r[0]);
    }
    assert!(emit_fields(&p, 0.02, &[-1.0], dir.path(), &fc).is_err());
}

#[test]
fn shock_slices_show_expected_fronts() {
    let f = figure_features().unwrap();
    let eps: f64 = 0.01;
    assert!((f.half.0 - 0.5).abs() <= eps.sqrt(), "{f:?}");
    assert!(f.half.1 >= 0.98, "{f:?}");
    assert!(f.full.0 >= 1.0 - 2.0 * eps.sqrt(), "{f:?}");
    assert!(f.full.1 >= 0.98, "{f:?}");
    assert!((f.width_ratio - 10f64.sqrt()).abs() <= 0.5, "{f:?}");
}

#[test]
fn slice_segments_rise_then_fall() {
    let p = ProblemData::shock(1.0, 1.2);
    let (xs, ys) = sample_slice(&p, 0.01, 0.5, 1000, Variant::Corrected).unwrap();
    let segs = monotone_segments(&ys, 1e-9);
    let big: Vec<_> = segs
        .iter()
        .filter(|s| (ys[s.end] - ys[s.start]).abs() > 0.3)
        .collect();
    assert_eq!(big.len(), 2);
    assert!(big[0].rising && !big[1].rising);
    let tr = transitions(&xs, &ys, 1e-9, 0.3);
    assert!(tr[0].width > 0.0 && tr[0].width < 0.5);
}

#[test]
fn fits_and_verdicts() {
    let eps = [0.04, 0.02, 0.01, 0.005];
    let vals: Vec<f64> = eps.iter().map(|e: &f64| 0.7 * e.powf(0.5)).collect();
    let f = fit_loglog(&eps, &vals).unwrap();
    assert!((f.slope - 0.5).abs() < 1e-12 && f.residual < 1e-12);
    assert!(fit_loglog(&eps, &[1.0, 0.0, 1.0, 1.0]).is_err());
    let r = RateReport::new(
        "x",
        "s",
        eps.to_vec(),
        vals.clone(),
        Criterion::AtLeast {
            target: 1.5,
            tol: 0.15,
        },
        None,
    )
    .unwrap();
    assert_eq!(r.verdict, Verdict::Fail);
    let r = RateReport::new(
        "x",
        "s",
        eps.to_vec(),
        vals,
        Criterion::Within {
            target: 0.5,
            tol: 0.15,
        },
        None,
    )
    .unwrap();
    assert_eq!(r.verdict, Verdict::Pass);
    assert!(is_monotone_decreasing(&[1.0, 1.04, 0.5]));
    assert!(!is_monotone_decreasing(&[1.0, 0.5, 0.6]));
}
