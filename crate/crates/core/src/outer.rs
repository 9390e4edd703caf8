//! Outer terms of the transport hierarchy `y^k_t + M y^k_x = y^{k-1}_xx`.
//!
//! Above the characteristic the terms are driven by `y0`, below it by the
//! inflow datum `v`. Every derivative is a closed form in the data stacks.

use crate::error::{Error, Result};
use crate::scenario::ProblemData;

/// Side of the characteristic `x = Mt`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `x > Mt`, driven by the initial datum.
    Above,
    /// `x < Mt`, driven by the inflow datum.
    Below,
}

impl Side {
    /// Side of `(x, t)`; points on the characteristic count as below.
    pub fn of(x: f64, t: f64, m: f64) -> Side {
        if x - m * t > 0.0 {
            Side::Above
        } else {
            Side::Below
        }
    }

    /// Side of `x = 1` at time `t`, from the sign of `1/M - t`.
    pub fn of_tau(tau: f64) -> Side {
        if tau > 0.0 {
            Side::Above
        } else {
            Side::Below
        }
    }

    pub fn is_above(self) -> bool {
        self == Side::Above
    }
}

/// Outer terms `y^0, y^1, y^2` of one problem.
#[derive(Debug, Clone, Copy)]
pub struct Outer<'a> {
    p: &'a ProblemData,
}

/// `(-1/M)^n`.
#[inline]
fn chain(m: f64, n: usize) -> f64 {
    (-1.0 / m).powi(n as i32)
}

impl<'a> Outer<'a> {
    pub fn new(p: &'a ProblemData) -> Self {
        Outer { p }
    }

    /// `n`-th x-derivative of `y^k` on the given side, `k <= 2`.
    pub fn dx_side(&self, k: usize, n: usize, x: f64, t: f64, side: Side) -> f64 {
        let m = self.p.m;
        match side {
            Side::Above => {
                let s = x - m * t;
                let y0 = &self.p.y0;
                match k {
                    0 => y0.derivative(n, s),
                    1 => t * y0.derivative(n + 2, s),
                    2 => 0.5 * t * t * y0.derivative(n + 4, s),
                    _ => unreachable!("outer order {k} not provided"),
                }
            }
            Side::Below => {
                let s = t - x / m;
                let v = |i: usize| self.p.v.derivative(i, s);
                // d^n/dx^n [x^j f(s)] via Leibniz with f^(i) carrying (-1/M)^i.
                let term = |j: usize, base: usize| -> f64 {
                    let mut acc = 0.0;
                    let mut binom = 1.0;
                    for r in 0..=n.min(j) {
                        // r derivatives land on x^j
                        let falling: f64 = ((j - r + 1)..=j).map(|q| q as f64).product();
                        let xp = x.powi((j - r) as i32);
                        acc += binom * falling * xp * chain(m, n - r) * v(base + n - r);
                        binom = binom * (n - r) as f64 / (r + 1) as f64;
                    }
                    acc
                };
                match k {
                    0 => chain(m, n) * v(n),
                    1 => term(1, 2) / m.powi(3),
                    2 => -2.0 / m.powi(5) * term(1, 3) + term(2, 4) / (2.0 * m.powi(6)),
                    _ => unreachable!("outer order {k} not provided"),
                }
            }
        }
    }

    pub fn value_side(&self, k: usize, x: f64, t: f64, side: Side) -> f64 {
        self.dx_side(k, 0, x, t, side)
    }

    /// `y^0(x, t)`.
    pub fn y0(&self, x: f64, t: f64) -> f64 {
        self.value_side(0, x, t, Side::of(x, t, self.p.m))
    }

    /// `y^1(x, t)`.
    pub fn y1(&self, x: f64, t: f64) -> f64 {
        self.value_side(1, x, t, Side::of(x, t, self.p.m))
    }

    /// `y^2(x, t)`.
    pub fn y2(&self, x: f64, t: f64) -> f64 {
        self.value_side(2, x, t, Side::of(x, t, self.p.m))
    }

    /// Time derivative from the transport hierarchy:
    /// `d_x^n y^k_t = -M d_x^{n+1} y^k + d_x^{n+2} y^{k-1}`.
    pub fn dt_side(&self, k: usize, n: usize, x: f64, t: f64, side: Side) -> f64 {
        let mut r = -self.p.m * self.dx_side(k, n + 1, x, t, side);
        if k > 0 {
            r += self.dx_side(k - 1, n + 2, x, t, side);
        }
        r
    }

    /// One-sided limit of `d_x^d y^k` at `x = Mt`.
    pub fn trace(
        &self,
        derivative_order: usize,
        term_order: usize,
        side: Side,
        t: f64,
    ) -> Result<f64> {
        if term_order > 1 || derivative_order + 2 * term_order > 3 {
            return Err(Error::Domain(format!(
                "trace of order ({derivative_order}, {term_order}) is not part of the matching data"
            )));
        }
        Ok(self.dx_side(term_order, derivative_order, self.p.m * t, t, side))
    }
}
