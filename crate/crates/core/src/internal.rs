//! Internal-layer terms along the characteristic.
//!
//! Every term is a heat solution in `(w, t)` of the shape
//!
//! ```text
//! p(w) + q(w) erf(xi) + r(w) exp(-xi^2) + s(w) Phi(w,t) + u(w) Psi(w,t),   xi = w/(2 sqrt t)
//! ```
//!
//! with polynomial coefficients at fixed `t`, where
//! `Phi = exp(aw + a^2 t) erfc(xi + a sqrt t) / 2` and
//! `Psi = sqrt(t) exp(aw + a^2 t) ierfc(xi + a sqrt t)`, `a = M/sqrt(eps)`.
//! The family is closed under `d/dw` (`Phi_w = a Phi - H`, `Psi_w = a Psi - Phi`),
//! so derivatives of any order are exact closed forms; `t`-derivatives follow
//! from the heat equation.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::outer::Side;
use crate::scenario::JumpConstants;
use crate::special::{erf, erfc, erfcx, ierfcx, FRAC_1_SQRT_PI};

const CAP: usize = 12;

/// Dense polynomial in `w` with at most `CAP` coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Poly {
    c: [f64; CAP],
    len: usize,
}

impl Poly {
    pub const ZERO: Poly = Poly {
        c: [0.0; CAP],
        len: 0,
    };

    pub fn new(coeffs: &[f64]) -> Self {
        let mut c = [0.0; CAP];
        c[..coeffs.len()].copy_from_slice(coeffs);
        let mut p = Poly {
            c,
            len: coeffs.len(),
        };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.len > 0 && self.c[self.len - 1] == 0.0 {
            self.len -= 1;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.len == 0
    }

    pub fn eval(&self, w: f64) -> f64 {
        self.c[..self.len]
            .iter()
            .rev()
            .fold(0.0, |acc, &a| acc * w + a)
    }

    pub fn derivative(&self) -> Poly {
        let mut c = [0.0; CAP];
        for k in 1..self.len {
            c[k - 1] = self.c[k] * k as f64;
        }
        let mut p = Poly {
            c,
            len: self.len.saturating_sub(1),
        };
        p.trim();
        p
    }

    /// `alpha * self + beta * other`.
    pub fn combine(&self, alpha: f64, other: &Poly, beta: f64) -> Poly {
        let len = self.len.max(other.len);
        let mut c = [0.0; CAP];
        for (k, ck) in c.iter_mut().enumerate().take(len) {
            *ck = alpha * self.c[k] + beta * other.c[k];
        }
        let mut p = Poly { c, len };
        p.trim();
        p
    }

    /// `w * self`.
    pub fn times_w(&self) -> Poly {
        assert!(self.len < CAP, "polynomial degree exceeds capacity");
        let mut c = [0.0; CAP];
        c[1..=self.len].copy_from_slice(&self.c[..self.len]);
        let mut p = Poly {
            c,
            len: self.len + 1,
        };
        p.trim();
        p
    }
}

/// One member of the closed family at a fixed time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeatForm {
    pub t: f64,
    /// `M/sqrt(eps)`; irrelevant when `s` and `u` vanish.
    pub a: f64,
    pub p: Poly,
    pub q: Poly,
    pub r: Poly,
    pub s: Poly,
    pub u: Poly,
}

impl HeatForm {
    fn empty(t: f64, a: f64) -> Self {
        HeatForm {
            t,
            a,
            p: Poly::ZERO,
            q: Poly::ZERO,
            r: Poly::ZERO,
            s: Poly::ZERO,
            u: Poly::ZERO,
        }
    }

    pub fn add(&self, other: &HeatForm) -> HeatForm {
        HeatForm {
            t: self.t,
            a: if self.s.is_zero() && self.u.is_zero() {
                other.a
            } else {
                self.a
            },
            p: self.p.combine(1.0, &other.p, 1.0),
            q: self.q.combine(1.0, &other.q, 1.0),
            r: self.r.combine(1.0, &other.r, 1.0),
            s: self.s.combine(1.0, &other.s, 1.0),
            u: self.u.combine(1.0, &other.u, 1.0),
        }
    }

    /// `d/dw` of the form. For `t <= 0` the Gaussian parts are absent and
    /// `erf` is a sign function whose point mass is dropped.
    pub fn derivative(&self) -> HeatForm {
        let t = self.t;
        let a = self.a;
        if t <= 0.0 {
            return HeatForm {
                t,
                a,
                p: self.p.derivative(),
                q: self.q.derivative(),
                r: Poly::ZERO,
                s: self.s.derivative().combine(1.0, &self.s, a),
                u: Poly::ZERO,
            };
        }
        let r = self
            .q
            .combine(1.0 / (PI * t).sqrt(), &self.r.derivative(), 1.0)
            .combine(1.0, &self.r.times_w(), -0.5 / t)
            .combine(1.0, &self.s, -1.0 / (4.0 * PI * t).sqrt());
        HeatForm {
            t,
            a,
            p: self.p.derivative(),
            q: self.q.derivative(),
            r,
            s: self
                .s
                .derivative()
                .combine(1.0, &self.s, a)
                .combine(1.0, &self.u, -1.0),
            u: self.u.derivative().combine(1.0, &self.u, a),
        }
    }

    pub fn nth_derivative(&self, n: usize) -> HeatForm {
        let mut f = *self;
        for _ in 0..n {
            f = f.derivative();
        }
        f
    }

    pub fn eval(&self, w: f64) -> f64 {
        self.eval_with(&Basis::new(w, self.t, self.a))
    }

    /// Evaluate with precomputed transcendental factors; `basis` must be
    /// built at this form's `t` and `a` (or `a` is unused when `s`, `u` vanish).
    pub fn eval_with(&self, b: &Basis) -> f64 {
        let w = b.w;
        let mut value = self.p.eval(w);
        if !self.q.is_zero() {
            value += self.q.eval(w) * b.erf;
        }
        if !self.r.is_zero() {
            value += self.r.eval(w) * b.gauss;
        }
        if !self.s.is_zero() {
            value += self.s.eval(w) * b.phi;
        }
        if !self.u.is_zero() {
            value += self.u.eval(w) * b.psi;
        }
        value
    }
}

/// Transcendental factors `erf(xi), exp(-xi^2), Phi, Psi` at one `(w, t)`.
///
/// For `t <= 0` these are the pointwise limits: `erf` becomes a sign,
/// the Gaussian and `Psi` vanish and `Phi` becomes `exp(aw)` for `w < 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Basis {
    pub w: f64,
    pub erf: f64,
    pub gauss: f64,
    pub phi: f64,
    pub psi: f64,
}

impl Basis {
    pub fn new(w: f64, t: f64, a: f64) -> Self {
        if t <= 0.0 {
            let erf = if w == 0.0 { 0.0 } else { w.signum() };
            let phi = if w < 0.0 { (a * w).exp() } else { 0.0 };
            return Basis {
                w,
                erf,
                gauss: 0.0,
                phi,
                psi: 0.0,
            };
        }
        let xi = w / (2.0 * t.sqrt());
        Basis {
            w,
            erf: erf(xi),
            gauss: (-xi * xi).exp(),
            phi: phi(w, t, a),
            psi: psi(w, t, a),
        }
    }
}

/// `exp(aw + a^2 t) erfc(w/(2 sqrt t) + a sqrt t) / 2`, evaluated without
/// forming the large exponential.
pub fn phi(w: f64, t: f64, a: f64) -> f64 {
    let st = t.sqrt();
    let xi = w / (2.0 * st);
    let eta = xi + a * st;
    if eta >= 0.0 {
        0.5 * (-xi * xi).exp() * erfcx(eta)
    } else {
        0.5 * (a * w + a * a * t).exp() * erfc(eta)
    }
}

/// `sqrt(t) exp(aw + a^2 t) ierfc(w/(2 sqrt t) + a sqrt t)`, stably.
pub fn psi(w: f64, t: f64, a: f64) -> f64 {
    let st = t.sqrt();
    let xi = w / (2.0 * st);
    let eta = xi + a * st;
    let g = (-xi * xi).exp();
    if eta >= 0.0 {
        st * g * ierfcx(eta)
    } else {
        st * (g * FRAC_1_SQRT_PI - eta * (a * w + a * a * t).exp() * erfc(eta))
    }
}

/// Selector for one internal-layer function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Term {
    W0,
    W12,
    W1,
    W32,
    /// Correction of `W0` enforcing the inflow value at `x = 0`.
    U0 {
        eps: f64,
    },
    /// Correction of `W12` enforcing the inflow slope at `x = 0`.
    U12 {
        eps: f64,
    },
    W0Eps {
        eps: f64,
    },
    W12Eps {
        eps: f64,
    },
}

/// Internal-layer terms built from the jump constants of one problem.
#[derive(Debug, Clone, Copy)]
pub struct InternalLayer {
    pub jc: JumpConstants,
    pub m: f64,
}

impl InternalLayer {
    pub fn new(jc: JumpConstants, m: f64) -> Self {
        InternalLayer { jc, m }
    }

    /// Closed form of `term` at time `t` (`t <= 0` gives the initial profile).
    pub fn form(&self, term: Term, t: f64) -> HeatForm {
        let jc = &self.jc;
        let t0 = t.max(0.0);
        let root = (t0 / PI).sqrt();
        match term {
            Term::W0 => {
                let mut f = HeatForm::empty(t, 0.0);
                f.p = Poly::new(&[0.5 * (jc.c_plus + jc.c_minus)]);
                f.q = Poly::new(&[0.5 * (jc.c_plus - jc.c_minus)]);
                f
            }
            Term::W12 => {
                let dd = jc.d_plus - jc.d_minus;
                let mut f = HeatForm::empty(t, 0.0);
                f.p = Poly::new(&[0.0, 0.5 * (jc.d_plus + jc.d_minus)]);
                f.q = Poly::new(&[0.0, 0.5 * dd]);
                f.r = Poly::new(&[dd * root]);
                f
            }
            Term::W1 => {
                let es = 0.5 * (jc.e_plus + jc.e_minus);
                let ed = 0.5 * (jc.e_plus - jc.e_minus);
                let mut f = HeatForm::empty(t, 0.0);
                f.p = Poly::new(&[t0 * es, 0.0, 0.5 * es]);
                f.q = Poly::new(&[t0 * ed, 0.0, 0.5 * ed]);
                f.r = Poly::new(&[0.0, ed * root]);
                f
            }
            Term::W32 => {
                let hs = jc.h_plus + jc.h_minus;
                let hd = jc.h_plus - jc.h_minus;
                let fm = jc.f_minus;
                let mut f = HeatForm::empty(t, 0.0);
                f.p = Poly::new(&[0.0, 3.0 * t0 * hs + 0.5 * fm, 0.0, 0.5 * hs]);
                f.q = Poly::new(&[0.0, 3.0 * t0 * hd - 0.5 * fm, 0.0, 0.5 * hd]);
                f.r = Poly::new(&[root * (4.0 * t0 * hd - fm), 0.0, root * hd]);
                f
            }
            Term::U0 { eps } => {
                let mut f = HeatForm::empty(t, self.m / eps.sqrt());
                f.s = Poly::new(&[jc.c_minus - jc.c_plus]);
                f
            }
            Term::U12 { eps } => {
                let mut f = HeatForm::empty(t, self.m / eps.sqrt());
                f.u = Poly::new(&[jc.d_minus - jc.d_plus]);
                f
            }
            Term::W0Eps { eps } => self.form(Term::W0, t).add(&self.form(Term::U0 { eps }, t)),
            Term::W12Eps { eps } => self
                .form(Term::W12, t)
                .add(&self.form(Term::U12 { eps }, t)),
        }
    }

    pub fn eval(&self, term: Term, w: f64, t: f64) -> f64 {
        self.form(term, t).eval(w)
    }

    /// `d_w^n` of `term`, any order.
    pub fn dw(&self, term: Term, n: usize, w: f64, t: f64) -> f64 {
        self.form(term, t).nth_derivative(n).eval(w)
    }

    /// `d_w^j` for `j <= 4`.
    pub fn w_derivative(&self, term: Term, j: usize, w: f64, t: f64) -> Result<f64> {
        if j > 4 {
            return Err(Error::Domain(format!(
                "w-derivative of order {j} exceeds 4"
            )));
        }
        Ok(self.dw(term, j, w, t))
    }

    /// `d_t` via the heat equation.
    pub fn t_derivative(&self, term: Term, w: f64, t: f64) -> f64 {
        self.dw(term, 2, w, t)
    }

    /// `d_w^j d_t` via the heat equation.
    pub fn mixed_derivative(&self, term: Term, j: usize, w: f64, t: f64) -> f64 {
        self.dw(term, j + 2, w, t)
    }

    pub fn w0(&self, w: f64, t: f64) -> f64 {
        self.eval(Term::W0, w, t)
    }

    pub fn w12(&self, w: f64, t: f64) -> f64 {
        self.eval(Term::W12, w, t)
    }

    pub fn w1(&self, w: f64, t: f64) -> f64 {
        self.eval(Term::W1, w, t)
    }

    pub fn w32(&self, w: f64, t: f64) -> f64 {
        self.eval(Term::W32, w, t)
    }

    pub fn u0eps(&self, w: f64, t: f64, eps: f64) -> f64 {
        self.eval(Term::U0 { eps }, w, t)
    }

    pub fn w0eps(&self, w: f64, t: f64, eps: f64) -> f64 {
        self.eval(Term::W0Eps { eps }, w, t)
    }

    pub fn u12eps(&self, w: f64, t: f64, eps: f64) -> f64 {
        self.eval(Term::U12 { eps }, w, t)
    }

    pub fn w12eps(&self, w: f64, t: f64, eps: f64) -> f64 {
        self.eval(Term::W12Eps { eps }, w, t)
    }

    /// Outer polynomial that the layer of half-order `order2/2` approaches on
    /// `side`, together with its first `w`-derivative.
    pub fn matching_tail(&self, order2: usize, side: Side, w: f64, t: f64) -> (f64, f64) {
        let above = side.is_above();
        let jc = &self.jc;
        match order2 {
            0 => (jc.c(above), 0.0),
            1 => (jc.d(above) * w, jc.d(above)),
            2 => {
                let e = jc.e(above);
                ((0.5 * w * w + t) * e, w * e)
            }
            3 => {
                let h = jc.h(above);
                let f = if above { 0.0 } else { jc.f_minus };
                (
                    h * (w * w * w + 6.0 * t * w) + f * w,
                    h * (3.0 * w * w + 6.0 * t) + f,
                )
            }
            _ => panic!("no layer of half-order {order2}"),
        }
    }
}
