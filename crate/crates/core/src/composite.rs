//! Composite approximations `P_eps` (plain) and `P~_eps` (corrected).
//!
//! Each half-order contributes `p^{k/2} + Y^{k/2} - C_{k/2}`. Since the profile
//! is its matching polynomial plus a mirrored exponential tail, the term is
//! `p^{k/2}` plus that tail, which is how it is evaluated here.
//!
//! Everything that depends on `t` alone (layer forms, profile coefficients)
//! is gathered once in a [`TimeSlice`]; sampling along `x` is then cheap.

use std::cell::RefCell;
use std::collections::HashMap;

use crate::boundary::{BoundaryLayer, Mirror, ProfileCoeffs};
use crate::error::{Error, Result};
use crate::internal::{Basis, HeatForm, InternalLayer, Term};
use crate::outer::{Outer, Side};
use crate::quadrature::simpson_adaptive;
use crate::scenario::ProblemData;

pub use crate::identities::{operator_identities_check, IdentityReport};

/// Which approximation to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// `P_eps`, leading internal layer `W^0`.
    Plain,
    /// `P~_eps`, leading internal layer `W^0_eps`.
    Corrected,
}

impl Variant {
    pub fn is_corrected(self) -> bool {
        self == Variant::Corrected
    }

    pub fn name(self) -> &'static str {
        match self {
            Variant::Plain => "plain",
            Variant::Corrected => "corrected",
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(Variant::Plain),
            "corrected" => Ok(Variant::Corrected),
            other => Err(Error::Config(format!("unknown variant '{other}'"))),
        }
    }
}

fn check_eps(eps: f64) -> Result<()> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::Domain(format!("eps must lie in (0, 1), got {eps}")));
    }
    Ok(())
}

/// Builder of composite approximations for one problem.
#[derive(Debug, Clone, Copy)]
pub struct Composite<'a> {
    p: &'a ProblemData,
    outer: Outer<'a>,
    bl: BoundaryLayer<'a>,
}

impl<'a> Composite<'a> {
    pub fn new(p: &'a ProblemData) -> Self {
        Composite {
            p,
            outer: Outer::new(p),
            bl: BoundaryLayer::new(p),
        }
    }

    pub fn problem(&self) -> &ProblemData {
        self.p
    }

    pub fn internal(&self) -> &InternalLayer {
        self.bl.internal()
    }

    /// Everything needed to evaluate the approximation at time `t`.
    pub fn slice(&self, t: f64, eps: f64, variant: Variant) -> Result<TimeSlice<'a>> {
        check_eps(eps)?;
        let m = self.p.m;
        let se = eps.sqrt();
        let corrected = variant.is_corrected();
        let il = *self.bl.internal();
        let lead = if corrected {
            Term::W0Eps { eps }
        } else {
            Term::W0
        };
        let terms = [lead, Term::W12, Term::W1, Term::W32];
        let tau = (1.0 / m - t) / se;
        let mut forms = [[il.form(Term::W0, t); 3]; 4];
        let mut coeffs = [ProfileCoeffs::default(); 4];
        let mut total_dt = [Mirror::default(); 4];
        for k in 0..4 {
            let f = il.form(terms[k], t);
            let f1 = f.derivative();
            forms[k] = [f, f1, f1.derivative()];
            coeffs[k] = self.bl.coefficients(k, tau, t, eps, corrected)?;
            total_dt[k] = coeffs[k].total_dt(eps);
        }
        Ok(TimeSlice {
            outer: self.outer,
            il,
            m,
            t,
            eps,
            se,
            a: m / se,
            forms,
            coeffs,
            total_dt,
        })
    }

    /// `p^{order2/2}(x, t)`; `corrected` selects `W^0_eps` in the leading term.
    pub fn p_term(&self, order2: usize, x: f64, t: f64, eps: f64, corrected: bool) -> Result<f64> {
        check_order(order2)?;
        let variant = if corrected {
            Variant::Corrected
        } else {
            Variant::Plain
        };
        Ok(self.slice(t, eps, variant)?.p_parts(x)[order2].0)
    }

    /// `P^{order2/2}(x, t) = p + Y - C`.
    #[allow(non_snake_case)]
    pub fn P_term(&self, order2: usize, x: f64, t: f64, eps: f64, corrected: bool) -> Result<f64> {
        check_order(order2)?;
        let variant = if corrected {
            Variant::Corrected
        } else {
            Variant::Plain
        };
        let s = self.slice(t, eps, variant)?;
        let z = (1.0 - x) / eps;
        Ok(s.p_parts(x)[order2].0 + s.coeffs[order2].value.tail(z, self.p.m))
    }

    pub fn approx(&self, x: f64, t: f64, eps: f64, variant: Variant) -> Result<f64> {
        Ok(self.slice(t, eps, variant)?.value(x))
    }

    pub fn approx_dx(&self, x: f64, t: f64, eps: f64, variant: Variant) -> Result<f64> {
        Ok(self.slice(t, eps, variant)?.dx(x))
    }

    pub fn approx_dt(&self, x: f64, t: f64, eps: f64, variant: Variant) -> Result<f64> {
        Ok(self.slice(t, eps, variant)?.dt(x))
    }

    /// Closed-form `L_eps P~_eps` at one point.
    pub fn residual_closed_form(&self, x: f64, t: f64, eps: f64) -> Result<f64> {
        Ok(self.residual_slice(t, eps)?.value(x))
    }

    /// Residual factors that depend on `t` only.
    pub fn residual_slice(&self, t: f64, eps: f64) -> Result<ResidualSlice<'a>> {
        let s = self.slice(t, eps, Variant::Corrected)?;
        let m = self.p.m;
        let o = &self.outer;
        let tau = (1.0 / m - t) / s.se;
        let wt = m * tau;
        let above = Side::of_tau(tau).is_above();
        let xside = Side::of(1.0, t, m);
        let jc = &s.il.jc;
        let basis = Basis::new(wt, t, s.a);
        let w1_t = s.forms[2][2].eval_with(&basis);
        let w12_wt = s.forms[1][2].derivative().eval_with(&basis);
        let lead_wwt = s.forms[0][2].nth_derivative(2).eval_with(&basis);
        let d3 = s.total_dt[3];
        let e0 = -eps * (o.dt_side(1, 0, 1.0, t, xside) + w1_t - jc.e(above));
        let e1 = -eps * (o.dt_side(0, 1, 1.0, t, xside) + w12_wt);
        let e2 = -eps * lead_wwt;
        let k = eps * s.se;
        Ok(ResidualSlice {
            outer: self.outer,
            m,
            t,
            eps,
            // Coefficients of 1, z, z^2, z^3 multiplying exp(-Mz).
            poly: [
                e0 - k * d3.a,
                e1 + k * d3.b,
                0.5 * e2 - 0.5 * k * d3.c,
                k * d3.d / 6.0,
            ],
        })
    }

    /// `|| L_eps P~_eps ||_{L^1(0,T; L^2(0,1))}` by nested Simpson quadrature.
    pub fn residual_l1_l2(&self, eps: f64) -> Result<f64> {
        check_eps(eps)?;
        let m = self.p.m;
        let tf = self.p.t_final;
        let spatial = |t: f64| -> f64 {
            let r = match self.residual_slice(t, eps) {
                Ok(r) => r,
                Err(_) => return f64::NAN,
            };
            let layer = (60.0 * eps / m).min(1.0);
            let mut cuts = vec![0.0, 1.0 - layer, 1.0];
            let xc = m * t;
            if xc > 0.0 && xc < 1.0 {
                cuts.push(xc);
            }
            cuts.sort_by(f64::total_cmp);
            cuts.dedup();
            let mut sum = 0.0;
            for pair in cuts.windows(2) {
                if pair[1] > pair[0] {
                    sum += simpson_adaptive(
                        |x| r.value(x).powi(2),
                        pair[0],
                        pair[1],
                        64,
                        1e-8,
                        1e-300,
                        30,
                    );
                }
            }
            sum.sqrt()
        };
        let total = integrate_split(&spatial, tf, 1.0 / m, 512, false);
        if total.is_finite() {
            Ok(total)
        } else {
            Err(Error::Domain(
                "residual quadrature produced a non-finite value".into(),
            ))
        }
    }

    /// `theta(x, 0) = -(y0(1) + eps y0'(1) z) exp(-Mz)` with `z = (1-x)/eps`:
    /// the order-zero term contributes `-y0(1) e^{-Mz}` and the order-one term
    /// `P^1(x, 0) = -y0'(1) z e^{-Mz}`, which enters with weight `eps`.
    pub fn theta_initial_profile(&self, x: f64, eps: f64) -> f64 {
        let z = (1.0 - x) / eps;
        let y = &self.p.y0;
        -(y.derivative(0, 1.0) + y.derivative(1, 1.0) * eps * z) * (-self.p.m * z).exp()
    }

    /// `z^eps(0, t) = P~_eps(0, t) - v(t)`.
    pub fn boundary_trace_z0(&self, t: f64, eps: f64) -> Result<f64> {
        Ok(self.slice(t, eps, Variant::Corrected)?.value(0.0) - self.p.v.derivative(0, t))
    }

    /// `d/dt z^eps(0, t)`.
    pub fn boundary_trace_z0_dt(&self, t: f64, eps: f64) -> Result<f64> {
        Ok(self.slice(t, eps, Variant::Corrected)?.dt(0.0) - self.p.v.derivative(1, t))
    }

    /// Closed form of `z^eps(0, 0)`, the initial profile at `x = 0`:
    /// `-(y0(1) + y0'(1)) exp(-M/eps)`.
    pub fn z00_closed_form(&self, eps: f64) -> f64 {
        let y = &self.p.y0;
        -(y.derivative(0, 1.0) + y.derivative(1, 1.0)) * (-self.p.m / eps).exp()
    }

    /// `L^1(0,T)` norms of `z^eps(0,.)` and `z^eps_t(0,.)`, and `z^eps(0,0)`.
    pub fn trace_l1_norms(&self, eps: f64) -> Result<TraceNorms> {
        check_eps(eps)?;
        let tf = self.p.t_final;
        let tc = 1.0 / self.p.m;
        // Both integrands sample the same nodes, so one slice serves both.
        let cache = RefCell::new(HashMap::<u64, (f64, f64)>::new());
        let trace = |t: f64| -> (f64, f64) {
            if let Some(&hit) = cache.borrow().get(&t.to_bits()) {
                return hit;
            }
            let pair = match self.slice(t, eps, Variant::Corrected) {
                Ok(s) => (
                    (s.value(0.0) - self.p.v.derivative(0, t)).abs(),
                    (s.dt(0.0) - self.p.v.derivative(1, t)).abs(),
                ),
                Err(_) => (f64::NAN, f64::NAN),
            };
            cache.borrow_mut().insert(t.to_bits(), pair);
            pair
        };
        let z = |t: f64| trace(t).0;
        let zt = |t: f64| trace(t).1;
        let l1 = integrate_split(&z, tf, tc, 4096, true);
        let l1_dt = integrate_split(&zt, tf, tc, 4096, true);
        if !(l1.is_finite() && l1_dt.is_finite()) {
            return Err(Error::Domain(
                "trace quadrature produced a non-finite value".into(),
            ));
        }
        Ok(TraceNorms {
            l1,
            l1_dt,
            z00: self.z00_closed_form(eps),
        })
    }
}

/// Integral over `[0, tf]` split at `tc`. With `sqrt_start` the first piece is
/// integrated in `s = sqrt(t)`, which absorbs `t^{-1/2}` behavior at `t = 0`.
fn integrate_split(f: &dyn Fn(f64) -> f64, tf: f64, tc: f64, n0: usize, sqrt_start: bool) -> f64 {
    const RTOL: f64 = 1e-8;
    // Past t = 1/M the traces are exponentially small.
    const ATOL: f64 = 1e-14;
    let tc = tc.min(tf);
    let first = if sqrt_start {
        // The integrand of the substituted piece is finite at s = 0 but the
        // original is not evaluated there.
        let floor = 1e-10 * tc.sqrt();
        simpson_adaptive(
            |s| 2.0 * s * f(s.max(floor).powi(2)),
            0.0,
            tc.sqrt(),
            n0,
            RTOL,
            ATOL,
            30,
        )
    } else {
        simpson_adaptive(f, 0.0, tc, n0, RTOL, ATOL, 30)
    };
    let second = if tf > tc {
        simpson_adaptive(f, tc, tf, n0, RTOL, ATOL, 30)
    } else {
        0.0
    };
    first + second
}

fn check_order(order2: usize) -> Result<()> {
    if order2 > 3 {
        return Err(Error::Domain(format!(
            "composite order {order2}/2 is not provided"
        )));
    }
    Ok(())
}

/// Trace norms of `z^eps(0, .)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceNorms {
    pub l1: f64,
    pub l1_dt: f64,
    pub z00: f64,
}

/// The approximation frozen at one time.
#[derive(Debug, Clone)]
pub struct TimeSlice<'a> {
    outer: Outer<'a>,
    il: InternalLayer,
    m: f64,
    t: f64,
    eps: f64,
    se: f64,
    a: f64,
    /// Layer form and its first two `w`-derivatives per half-order.
    forms: [[HeatForm; 3]; 4],
    coeffs: [ProfileCoeffs; 4],
    total_dt: [Mirror; 4],
}

impl TimeSlice<'_> {
    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn coefficients(&self, order2: usize) -> &ProfileCoeffs {
        &self.coeffs[order2]
    }

    /// Outer term contributing at half-order `k`, as `(k_outer, present)`.
    fn outer_index(k: usize) -> Option<usize> {
        match k {
            0 => Some(0),
            2 => Some(1),
            _ => None,
        }
    }

    /// Per half-order `(p, p_x, p_t)`.
    fn p_parts(&self, x: f64) -> [(f64, f64, f64); 4] {
        let t = self.t;
        let m = self.m;
        let w = (x - m * t) / self.se;
        let side = Side::of(x, t, m);
        let b = Basis::new(w, t, self.a);
        let mut out = [(0.0, 0.0, 0.0); 4];
        for (k, o) in out.iter_mut().enumerate() {
            let [f, f1, f2] = &self.forms[k];
            let (tail, tail_w) = self.il.matching_tail(k, side, w, t);
            let tail_t = match k {
                2 => self.il.jc.e(side.is_above()),
                3 => 6.0 * self.il.jc.h(side.is_above()) * w,
                _ => 0.0,
            };
            let lw = f1.eval_with(&b) - tail_w;
            let mut v = f.eval_with(&b) - tail;
            let mut vx = lw / self.se;
            let mut vt = f2.eval_with(&b) - tail_t - m * lw / self.se;
            if let Some(ko) = Self::outer_index(k) {
                v += self.outer.value_side(ko, x, t, side);
                vx += self.outer.dx_side(ko, 1, x, t, side);
                vt += self.outer.dt_side(ko, 0, x, t, side);
            }
            *o = (v, vx, vt);
        }
        out
    }

    /// Approximation value at `x`.
    pub fn value(&self, x: f64) -> f64 {
        let z = (1.0 - x) / self.eps;
        let parts = self.p_parts(x);
        let mut scale = 1.0;
        let mut acc = 0.0;
        for (k, part) in parts.iter().enumerate() {
            acc += scale * (part.0 + self.coeffs[k].value.tail(z, self.m));
            scale *= self.se;
        }
        acc
    }

    /// Analytic `x`-derivative.
    pub fn dx(&self, x: f64) -> f64 {
        let z = (1.0 - x) / self.eps;
        let parts = self.p_parts(x);
        let mut scale = 1.0;
        let mut acc = 0.0;
        for (k, part) in parts.iter().enumerate() {
            acc += scale * (part.1 - self.coeffs[k].value.tail_dz(z, self.m) / self.eps);
            scale *= self.se;
        }
        acc
    }

    /// Analytic `t`-derivative at fixed `x`.
    pub fn dt(&self, x: f64) -> f64 {
        let z = (1.0 - x) / self.eps;
        let parts = self.p_parts(x);
        let mut scale = 1.0;
        let mut acc = 0.0;
        for (k, part) in parts.iter().enumerate() {
            acc += scale * (part.2 + self.total_dt[k].tail(z, self.m));
            scale *= self.se;
        }
        acc
    }

    /// Value and `x`-derivative together.
    pub fn value_dx(&self, x: f64) -> (f64, f64) {
        let z = (1.0 - x) / self.eps;
        let parts = self.p_parts(x);
        let mut scale = 1.0;
        let (mut v, mut d) = (0.0, 0.0);
        for (k, part) in parts.iter().enumerate() {
            let mr = &self.coeffs[k].value;
            v += scale * (part.0 + mr.tail(z, self.m));
            d += scale * (part.1 - mr.tail_dz(z, self.m) / self.eps);
            scale *= self.se;
        }
        (v, d)
    }
}

/// Residual `L_eps P~_eps` frozen at one time.
#[derive(Debug, Clone)]
pub struct ResidualSlice<'a> {
    outer: Outer<'a>,
    m: f64,
    t: f64,
    eps: f64,
    poly: [f64; 4],
}

impl ResidualSlice<'_> {
    pub fn value(&self, x: f64) -> f64 {
        let z = (1.0 - x) / self.eps;
        let side = Side::of(x, self.t, self.m);
        let interior = -self.eps * self.eps * self.outer.dx_side(1, 2, x, self.t, side);
        let [c0, c1, c2, c3] = self.poly;
        let e = (-self.m * z).exp();
        if e == 0.0 {
            return interior;
        }
        interior + e * (c0 + z * (c1 + z * (c2 + z * c3)))
    }
}

/// `f_eps(x) = (1 - x) exp(-Mx/eps)`.
pub fn lifting_function(x: f64, eps: f64, m: f64) -> f64 {
    (1.0 - x) * (-m * x / eps).exp()
}
