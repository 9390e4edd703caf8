//! Randomized invariants of the layer terms and the composite approximation.

use layered_advect::boundary::BoundaryLayer;
use layered_advect::internal::{InternalLayer, Term};
use layered_advect::outer::Side;
use layered_advect::scenario::{compatibility_defect, jump_constants, JumpConstants};
use layered_advect::special::erfc;
use layered_advect::{Composite, ProblemData, SmoothFunction, Variant};
use proptest::prelude::*;

fn coeffs(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-2.0..2.0f64, 1..=max_len)
}

prop_compose! {
    fn problem()(m in 0.5..3.0f64, y0 in coeffs(4), v in coeffs(4)) -> ProblemData {
        ProblemData::new(m, 1.2 / m, SmoothFunction::poly(&y0), SmoothFunction::poly(&v)).unwrap()
    }
}

prop_compose! {
    fn jumps()(j in prop::array::uniform9(-2.0..2.0f64)) -> JumpConstants {
        JumpConstants {
            c_plus: j[0],
            c_minus: j[1],
            d_plus: j[2],
            d_minus: j[3],
            e_plus: j[4],
            e_minus: j[5],
            f_minus: j[6],
            h_plus: j[7],
            h_minus: j[8],
        }
    }
}

fn eps_strategy() -> impl Strategy<Value = f64> {
    (-6.0..-1.0f64).prop_map(|e| 10f64.powf(e))
}

const PLAIN_TERMS: [Term; 4] = [Term::W0, Term::W12, Term::W1, Term::W32];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn layer_terms_solve_heat_equation(
        jc in jumps(), m in 0.5..3.0f64, w in -6.0..6.0f64, t in 0.05..1.5f64, eps in eps_strategy()
    ) {
        let il = InternalLayer::new(jc, m);
        let mut terms = PLAIN_TERMS.to_vec();
        terms.push(Term::W0Eps { eps });
        terms.push(Term::W12Eps { eps });
        for term in terms {
            let h = 1e-4 * t;
            let ut = (il.eval(term, w, t + h) - il.eval(term, w, t - h)) / (2.0 * h);
            let uww = il.dw(term, 2, w, t);
            let scale = 1.0 + uww.abs() + il.eval(term, w, t).abs();
            prop_assert!((ut - uww).abs() <= 1e-6 * scale, "{:?}: {} vs {}", term, ut, uww);
        }
    }

    #[test]
    fn layer_terms_approach_matching_polynomials(jc in jumps(), m in 0.5..3.0f64, t in 0.05..1.5f64) {
        let il = InternalLayer::new(jc, m);
        for (k, term) in PLAIN_TERMS.iter().enumerate() {
            for (w, side) in [(-40.0, Side::Below), (40.0, Side::Above)] {
                let (tail, _) = il.matching_tail(k, side, w, t);
                let dev = (il.eval(*term, w, t) - tail).abs();
                prop_assert!(dev <= 1e-12 * (1.0 + tail.abs()), "order {}/2 at w = {}: {}", k, w, dev);
            }
        }
    }

    #[test]
    fn corrected_leading_terms_hit_inflow_data(
        jc in jumps(), m in 0.5..3.0f64, t in 1e-3..1.5f64, eps in eps_strategy()
    ) {
        let il = InternalLayer::new(jc, m);
        let w = -m * t / eps.sqrt();
        prop_assert!((il.w0eps(w, t, eps) - jc.c_minus).abs() <= 1e-12);
        let slope = il.w12eps(w, t, eps) + jc.d_minus * m * t / eps.sqrt();
        prop_assert!(slope.abs() <= 1e-12 * (1.0 + (jc.d_minus * m * t / eps.sqrt()).abs()));
    }

    #[test]
    fn layer_terms_are_linear_in_jump_data(a in jumps(), b in jumps(), w in -6.0..6.0f64, t in 0.05..1.5f64) {
        let sum = JumpConstants {
            c_plus: a.c_plus + b.c_plus,
            c_minus: a.c_minus + b.c_minus,
            d_plus: a.d_plus + b.d_plus,
            d_minus: a.d_minus + b.d_minus,
            e_plus: a.e_plus + b.e_plus,
            e_minus: a.e_minus + b.e_minus,
            f_minus: a.f_minus + b.f_minus,
            h_plus: a.h_plus + b.h_plus,
            h_minus: a.h_minus + b.h_minus,
        };
        let (la, lb, ls) = (InternalLayer::new(a, 1.0), InternalLayer::new(b, 1.0), InternalLayer::new(sum, 1.0));
        for term in PLAIN_TERMS.into_iter().chain([Term::W0Eps { eps: 0.01 }, Term::W12Eps { eps: 0.01 }]) {
            let (x, y, s) = (la.eval(term, w, t), lb.eval(term, w, t), ls.eval(term, w, t));
            prop_assert!((s - x - y).abs() <= 1e-12 * (1.0 + x.abs() + y.abs()), "{:?}", term);
        }
    }

    #[test]
    fn boundary_profiles_solve_their_odes(
        p in problem(), z in 0.0..20.0f64, s in 0.05..1.0f64, eps in 1e-3..0.05f64, corrected in any::<bool>()
    ) {
        let bl = BoundaryLayer::new(&p);
        let t = s * p.t_final;
        let tau = (1.0 / p.m - t) / eps.sqrt();
        for k in 0..4 {
            let r = bl.ode_residual(k, z, tau, t, eps, corrected).unwrap();
            let y = bl.y_profile(k, z, tau, t, eps, corrected).unwrap();
            prop_assert!(r.abs() <= 1e-6 * y.abs().max(1.0), "order {}/2: {}", k, r);
            // Dirichlet condition at the wall.
            prop_assert!(bl.y_profile(k, 0.0, tau, t, eps, corrected).unwrap().abs() <= 1e-13);
        }
    }

    #[test]
    fn composite_vanishes_at_outflow(p in problem(), s in 0.0..1.0f64, eps in eps_strategy()) {
        let comp = Composite::new(&p);
        let t = s * p.t_final;
        for variant in [Variant::Corrected, Variant::Plain] {
            prop_assert!(comp.approx(1.0, t, eps, variant).unwrap().abs() <= 1e-12);
        }
    }

    #[test]
    fn composite_is_c1_across_characteristic(p in problem(), s in 0.05..0.9f64, eps in 1e-3..0.05f64) {
        let comp = Composite::new(&p);
        let t = s / p.m;
        let xc = p.m * t;
        let d = 1e-12;
        let (l, r) = (xc - d, xc + d);
        let v = (comp.approx(l, t, eps, Variant::Corrected).unwrap(), comp.approx(r, t, eps, Variant::Corrected).unwrap());
        let g = (comp.approx_dx(l, t, eps, Variant::Corrected).unwrap(), comp.approx_dx(r, t, eps, Variant::Corrected).unwrap());
        prop_assert!((v.0 - v.1).abs() <= 1e-9 * (1.0 + v.0.abs()), "value {:?}", v);
        prop_assert!((g.0 - g.1).abs() <= 1e-8 * (1.0 + g.0.abs()), "slope {:?}", g);
    }

    #[test]
    fn variants_coincide_for_continuous_corner(
        m in 0.5..3.0f64, y0 in coeffs(4), mut v in coeffs(4), x in 0.0..1.0f64, s in 0.0..1.0f64, eps in eps_strategy()
    ) {
        v[0] = y0[0];
        let p = ProblemData::new(m, 1.2 / m, SmoothFunction::poly(&y0), SmoothFunction::poly(&v)).unwrap();
        let comp = Composite::new(&p);
        let t = s * p.t_final;
        let a = comp.approx(x, t, eps, Variant::Corrected).unwrap();
        let b = comp.approx(x, t, eps, Variant::Plain).unwrap();
        prop_assert!((a - b).abs() <= 1e-13 * (1.0 + a.abs()), "{} vs {}", a, b);
    }

    #[test]
    fn compatible_data_has_no_defect(m in 0.5..3.0f64, g in coeffs(5)) {
        // y0(x) = g(x), v(t) = g(-Mt) solve the reduced transport equation.
        let v: Vec<f64> = g.iter().enumerate().map(|(k, c)| c * (-m).powi(k as i32)).collect();
        let p = ProblemData::new(m, 1.2 / m, SmoothFunction::poly(&g), SmoothFunction::poly(&v)).unwrap();
        for d in compatibility_defect(&p, 4).unwrap() {
            prop_assert!(d.abs() <= 1e-12 * (1.0 + m.powi(4)) * 8.0);
        }
        let jc = jump_constants(&p);
        prop_assert!((jc.c_plus - jc.c_minus).abs() <= 1e-14);
        prop_assert!((jc.d_plus - jc.d_minus).abs() <= 1e-12);
    }

    #[test]
    fn zeroth_derivative_is_evaluation(c in coeffs(6), a in -3.0..3.0f64, f in -4.0..4.0f64, s in -2.0..2.0f64) {
        let funcs = [
            SmoothFunction::poly(&c),
            SmoothFunction::Constant(a),
            SmoothFunction::ScaledSine { amplitude: a, frequency: f },
            SmoothFunction::Sum(vec![SmoothFunction::poly(&c), SmoothFunction::ScaledSine { amplitude: a, frequency: f }]),
        ];
        for func in &funcs {
            prop_assert_eq!(func.derivative(0, s), func.eval(s));
        }
    }

    #[test]
    fn scenario_text_round_trips(p in problem()) {
        let back = ProblemData::parse(&p.to_scenario_text()).unwrap();
        prop_assert_eq!(back, p);
    }
}

#[test]
fn erfc_obeys_two_sided_exponential_bounds() {
    for i in 0..=60_000 {
        let y = 6.0 * i as f64 / 60_000.0;
        let e = erfc(y);
        assert!(
            e >= 0.5 * (-4.0 * y * y / std::f64::consts::PI).exp(),
            "lower at {y}"
        );
        assert!(e <= (-y * y).exp(), "upper at {y}");
    }
}
