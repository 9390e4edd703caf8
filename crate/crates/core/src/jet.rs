//! Second-order forward differentiation in `(x, t)`.
//!
//! A [`Jet`] carries `f, f_x, f_t, f_xx`, which is exactly what the operator
//! `L f = f_t - eps f_xx + M f_x` consumes.

use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::special::{erf, erfcx, FRAC_1_SQRT_PI};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub v: f64,
    pub x: f64,
    pub t: f64,
    pub xx: f64,
}

impl Jet {
    pub fn constant(v: f64) -> Self {
        Jet {
            v,
            x: 0.0,
            t: 0.0,
            xx: 0.0,
        }
    }

    /// The coordinate `x`.
    pub fn var_x(x: f64) -> Self {
        Jet {
            v: x,
            x: 1.0,
            t: 0.0,
            xx: 0.0,
        }
    }

    /// The coordinate `t`.
    pub fn var_t(t: f64) -> Self {
        Jet {
            v: t,
            x: 0.0,
            t: 1.0,
            xx: 0.0,
        }
    }

    /// Apply a scalar function given its value and first two derivatives at `self.v`.
    pub fn chain(self, f: f64, f1: f64, f2: f64) -> Jet {
        Jet {
            v: f,
            x: f1 * self.x,
            t: f1 * self.t,
            xx: f2 * self.x * self.x + f1 * self.xx,
        }
    }

    pub fn exp(self) -> Jet {
        let e = self.v.exp();
        self.chain(e, e, e)
    }

    pub fn sqrt(self) -> Jet {
        let s = self.v.sqrt();
        self.chain(s, 0.5 / s, -0.25 / (s * self.v))
    }

    pub fn powi(self, n: i32) -> Jet {
        let nf = n as f64;
        let f = self.v.powi(n);
        let f1 = if n == 0 { 0.0 } else { nf * self.v.powi(n - 1) };
        let f2 = if (0..2).contains(&n) {
            0.0
        } else {
            nf * (nf - 1.0) * self.v.powi(n - 2)
        };
        self.chain(f, f1, f2)
    }

    pub fn erf(self) -> Jet {
        let g = 2.0 * FRAC_1_SQRT_PI * (-self.v * self.v).exp();
        self.chain(erf(self.v), g, -2.0 * self.v * g)
    }

    pub fn erfcx(self) -> Jet {
        let y = self.v;
        let f = erfcx(y);
        let f1 = 2.0 * y * f - 2.0 * FRAC_1_SQRT_PI;
        let f2 = 2.0 * f + 2.0 * y * f1;
        self.chain(f, f1, f2)
    }

    /// `L f = f_t - eps f_xx + M f_x`.
    pub fn operator(&self, eps: f64, m: f64) -> f64 {
        self.t - eps * self.xx + m * self.x
    }

    /// Magnitude of the individual terms of [`Jet::operator`].
    pub fn operator_scale(&self, eps: f64, m: f64) -> f64 {
        self.t.abs() + eps * self.xx.abs() + m * self.x.abs()
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        Jet {
            v: self.v + o.v,
            x: self.x + o.x,
            t: self.t + o.t,
            xx: self.xx + o.xx,
        }
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        self + (-o)
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet {
            v: -self.v,
            x: -self.x,
            t: -self.t,
            xx: -self.xx,
        }
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        Jet {
            v: self.v * o.v,
            x: self.x * o.v + self.v * o.x,
            t: self.t * o.v + self.v * o.t,
            xx: self.xx * o.v + 2.0 * self.x * o.x + self.v * o.xx,
        }
    }
}

impl Div for Jet {
    type Output = Jet;
    fn div(self, o: Jet) -> Jet {
        let inv = o.chain(1.0 / o.v, -1.0 / (o.v * o.v), 2.0 / (o.v * o.v * o.v));
        self * inv
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(self, c: f64) -> Jet {
        Jet {
            v: self.v + c,
            ..self
        }
    }
}

impl Sub<f64> for Jet {
    type Output = Jet;
    fn sub(self, c: f64) -> Jet {
        Jet {
            v: self.v - c,
            ..self
        }
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, c: f64) -> Jet {
        Jet {
            v: self.v * c,
            x: self.x * c,
            t: self.t * c,
            xx: self.xx * c,
        }
    }
}

impl Div<f64> for Jet {
    type Output = Jet;
    fn div(self, c: f64) -> Jet {
        self * (1.0 / c)
    }
}

impl Add<Jet> for f64 {
    type Output = Jet;
    fn add(self, j: Jet) -> Jet {
        j + self
    }
}

impl Sub<Jet> for f64 {
    type Output = Jet;
    fn sub(self, j: Jet) -> Jet {
        -j + self
    }
}

impl Mul<Jet> for f64 {
    type Output = Jet;
    fn mul(self, j: Jet) -> Jet {
        j * self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_rule() {
        let x = Jet::var_x(0.3);
        let t = Jet::var_t(0.7);
        let f = x * x * t;
        assert!((f.x - 2.0 * 0.3 * 0.7).abs() < 1e-15);
        assert!((f.t - 0.09).abs() < 1e-15);
        assert!((f.xx - 1.4).abs() < 1e-15);
    }

    #[test]
    fn erfcx_derivative_matches_difference() {
        let y = 0.8;
        let h = 1e-5;
        let j = Jet::var_x(y).erfcx();
        let fd = (erfcx(y + h) - erfcx(y - h)) / (2.0 * h);
        assert!((j.x - fd).abs() < 1e-8);
    }
}
