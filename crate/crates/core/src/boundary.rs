//! Boundary-layer profiles at the outflow boundary `x = 1`.
//!
//! Each profile solves `Y_zz + M Y_z = rhs` on `z > 0` with `Y(0) = 0` and
//! has the mirrored form
//!
//! ```text
//! Y = (a + b z + c z^2/2 + d z^3/6) + exp(-Mz) (-a + b z - c z^2/2 + d z^3/6)
//! ```
//!
//! whose polynomial part is the matching coefficient `C(z, tau, t)`. The
//! coefficients are evaluated from the internal layer at `w = M tau` and from
//! the outer terms at `x = 1`.

use crate::error::{Error, Result};
use crate::internal::{InternalLayer, Term};
use crate::outer::{Outer, Side};
use crate::scenario::{jump_constants, ProblemData};

/// Coefficients `(a, b, c, d)` of a mirrored profile.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Mirror {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Mirror {
    /// Polynomial part `a + b z + c z^2/2 + d z^3/6`.
    pub fn outer_part(&self, z: f64) -> f64 {
        self.a + z * (self.b + z * (0.5 * self.c + z * self.d / 6.0))
    }

    /// Mirrored part `-a + b z - c z^2/2 + d z^3/6` (multiplies `exp(-Mz)`).
    pub fn mirror_part(&self, z: f64) -> f64 {
        -self.a + z * (self.b + z * (-0.5 * self.c + z * self.d / 6.0))
    }

    fn mirror_dz(&self, z: f64) -> f64 {
        self.b + z * (-self.c + 0.5 * z * self.d)
    }

    fn mirror_dzz(&self, z: f64) -> f64 {
        -self.c + z * self.d
    }

    /// `exp(-Mz) * mirror_part(z)`.
    pub fn tail(&self, z: f64, m: f64) -> f64 {
        (-m * z).exp() * self.mirror_part(z)
    }

    /// `d/dz` of [`Mirror::tail`].
    pub fn tail_dz(&self, z: f64, m: f64) -> f64 {
        (-m * z).exp() * (self.mirror_dz(z) - m * self.mirror_part(z))
    }

    pub fn value(&self, z: f64, m: f64) -> f64 {
        self.outer_part(z) + self.tail(z, m)
    }

    pub fn dz(&self, z: f64, m: f64) -> f64 {
        self.b + z * (self.c + 0.5 * z * self.d) + self.tail_dz(z, m)
    }

    pub fn dzz(&self, z: f64, m: f64) -> f64 {
        let q = self.mirror_part(z);
        let q1 = self.mirror_dz(z);
        let q2 = self.mirror_dzz(z);
        self.c + z * self.d + (-m * z).exp() * (q2 - 2.0 * m * q1 + m * m * q)
    }

    /// `alpha * self + beta * other`.
    pub fn combine(&self, alpha: f64, other: &Mirror, beta: f64) -> Mirror {
        Mirror {
            a: alpha * self.a + beta * other.a,
            b: alpha * self.b + beta * other.b,
            c: alpha * self.c + beta * other.c,
            d: alpha * self.d + beta * other.d,
        }
    }
}

/// Profile coefficients with their partial derivatives in `tau` and `t`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ProfileCoeffs {
    pub value: Mirror,
    pub d_tau: Mirror,
    pub d_t: Mirror,
}

impl ProfileCoeffs {
    /// Derivative along `t` at fixed `x`, where `tau` moves with rate `-1/sqrt(eps)`.
    pub fn total_dt(&self, eps: f64) -> Mirror {
        self.d_t.combine(1.0, &self.d_tau, -1.0 / eps.sqrt())
    }
}

/// Boundary-layer builder for one problem.
#[derive(Debug, Clone, Copy)]
pub struct BoundaryLayer<'a> {
    p: &'a ProblemData,
    outer: Outer<'a>,
    il: InternalLayer,
}

fn check_order(order2: usize) -> Result<()> {
    if order2 > 3 {
        return Err(Error::Domain(format!(
            "boundary-layer order {}/2 is not provided",
            order2
        )));
    }
    Ok(())
}

impl<'a> BoundaryLayer<'a> {
    pub fn new(p: &'a ProblemData) -> Self {
        BoundaryLayer {
            p,
            outer: Outer::new(p),
            il: InternalLayer::new(jump_constants(p), p.m),
        }
    }

    pub fn internal(&self) -> &InternalLayer {
        &self.il
    }

    fn leading(&self, eps: f64, corrected: bool) -> Term {
        if corrected {
            Term::W0Eps { eps }
        } else {
            Term::W0
        }
    }

    /// Coefficients of `Y^{order2/2}` at `(tau, t)`.
    ///
    /// The `+/-` jump data follow the sign of `tau`; outer values at `x = 1`
    /// follow the sign of `1 - Mt`. Both agree when `tau = (1/M - t)/sqrt(eps)`.
    pub fn coefficients(
        &self,
        order2: usize,
        tau: f64,
        t: f64,
        eps: f64,
        corrected: bool,
    ) -> Result<ProfileCoeffs> {
        check_order(order2)?;
        let m = self.p.m;
        let wt = m * tau;
        let side = Side::of_tau(tau);
        let above = side.is_above();
        let xside = Side::of(1.0, t, m);
        let jc = &self.il.jc;
        let il = &self.il;
        let lead = il.form(self.leading(eps, corrected), t);
        let zero = Mirror::default();
        let mut value = zero;
        let mut d_tau = zero;
        let mut d_t = zero;
        match order2 {
            0 => {
                let w0 = lead.nth_derivative(1);
                value.a = self.outer.value_side(0, 1.0, t, xside) + lead.eval(wt) - jc.c(above);
                d_tau.a = m * w0.eval(wt);
                d_t.a = self.outer.dt_side(0, 0, 1.0, t, xside) + w0.derivative().eval(wt);
            }
            1 => {
                let w12 = il.form(Term::W12, t);
                let d1 = w12.derivative();
                let d2 = d1.derivative();
                let l1 = lead.derivative();
                let l2 = l1.derivative();
                let l3 = l2.derivative();
                value.a = w12.eval(wt) - wt * jc.d(above);
                value.b = -l1.eval(wt);
                d_tau.a = m * (d1.eval(wt) - jc.d(above));
                d_tau.b = -m * l2.eval(wt);
                d_t.a = d2.eval(wt);
                d_t.b = -l3.eval(wt);
            }
            2 => {
                let w1 = il.form(Term::W1, t);
                let w1d = w1.derivative();
                let w1dd = w1d.derivative();
                let w12d = il.form(Term::W12, t).derivative();
                let w12dd = w12d.derivative();
                let w12ddd = w12dd.derivative();
                let l2 = lead.nth_derivative(2);
                let l3 = l2.derivative();
                let l4 = l3.derivative();
                let e = jc.e(above);
                let o = &self.outer;
                value.a = o.value_side(1, 1.0, t, xside) + w1.eval(wt) - 0.5 * wt * wt * e - t * e;
                value.b = -o.dx_side(0, 1, 1.0, t, xside) - w12d.eval(wt) + jc.d(above);
                value.c = l2.eval(wt);
                d_tau.a = m * (w1d.eval(wt) - wt * e);
                d_tau.b = -m * w12dd.eval(wt);
                d_tau.c = m * l3.eval(wt);
                d_t.a = o.dt_side(1, 0, 1.0, t, xside) + w1dd.eval(wt) - e;
                d_t.b = -o.dt_side(0, 1, 1.0, t, xside) - w12ddd.eval(wt);
                d_t.c = l4.eval(wt);
            }
            _ => {
                let w32 = il.form(Term::W32, t);
                let w32d = w32.derivative();
                let w32dd = w32d.derivative();
                let w1d = il.form(Term::W1, t).derivative();
                let w1dd = w1d.derivative();
                let w1ddd = w1dd.derivative();
                let w12dd = il.form(Term::W12, t).nth_derivative(2);
                let w12ddd = w12dd.derivative();
                let w12dddd = w12ddd.derivative();
                let l3 = lead.nth_derivative(3);
                let l4 = l3.derivative();
                let l5 = l4.derivative();
                let y0xxx = self.outer.trace(3, 0, side, t)?;
                let y1x = self.outer.trace(1, 1, side, t)?;
                let e = jc.e(above);
                value.a = w32.eval(wt) - (wt * wt * wt / 6.0 * y0xxx + wt * y1x);
                value.b = -w1d.eval(wt) + wt * e;
                value.c = w12dd.eval(wt);
                value.d = -l3.eval(wt);
                d_tau.a = m * (w32d.eval(wt) - 0.5 * wt * wt * y0xxx - y1x);
                d_tau.b = m * (-w1dd.eval(wt) + e);
                d_tau.c = m * w12ddd.eval(wt);
                d_tau.d = -m * l4.eval(wt);
                d_t.a = w32dd.eval(wt) - wt * y0xxx;
                d_t.b = -w1ddd.eval(wt);
                d_t.c = w12dddd.eval(wt);
                d_t.d = -l5.eval(wt);
            }
        }
        Ok(ProfileCoeffs { value, d_tau, d_t })
    }

    /// Matching coefficient `C_{order2/2}(z, tau, t)`.
    pub fn match_coeffs(
        &self,
        order2: usize,
        z: f64,
        tau: f64,
        t: f64,
        eps: f64,
        corrected: bool,
    ) -> Result<f64> {
        Ok(self
            .coefficients(order2, tau, t, eps, corrected)?
            .value
            .outer_part(z))
    }

    /// Profile `Y^{order2/2}(z, tau, t)`.
    pub fn y_profile(
        &self,
        order2: usize,
        z: f64,
        tau: f64,
        t: f64,
        eps: f64,
        corrected: bool,
    ) -> Result<f64> {
        if z < 0.0 {
            return Err(Error::Domain(format!("profile needs z >= 0, got {z}")));
        }
        Ok(self
            .coefficients(order2, tau, t, eps, corrected)?
            .value
            .value(z, self.p.m))
    }

    /// `Y_zz + M Y_z - rhs` for the profile hierarchy, with `tau`- and
    /// `t`-derivatives of the lower profiles taken from coefficient derivatives.
    pub fn ode_residual(
        &self,
        order2: usize,
        z: f64,
        tau: f64,
        t: f64,
        eps: f64,
        corrected: bool,
    ) -> Result<f64> {
        let m = self.p.m;
        let own = self.coefficients(order2, tau, t, eps, corrected)?.value;
        let lhs = own.dzz(z, m) + m * own.dz(z, m);
        let rhs = match order2 {
            0 => 0.0,
            1 => {
                let c0 = self.coefficients(0, tau, t, eps, corrected)?;
                -c0.d_tau.value(z, m)
            }
            _ => {
                let lower_t = self.coefficients(order2 - 2, tau, t, eps, corrected)?;
                let lower_tau = self.coefficients(order2 - 1, tau, t, eps, corrected)?;
                lower_t.d_t.value(z, m) - lower_tau.d_tau.value(z, m)
            }
        };
        Ok(lhs - rhs)
    }

    /// `C_{0,0,t} - C_{1/2,tau}(0)` with the jump data of `side`, the quantity
    /// entering the linear coefficient of the order-one profile.
    pub fn linear_source(&self, side: Side, tau: f64, t: f64) -> f64 {
        let m = self.p.m;
        let wt = m * tau;
        let above = side.is_above();
        let w0 = self.il.form(Term::W0, t);
        let w12 = self.il.form(Term::W12, t);
        let c00_t = self.outer.dt_side(0, 0, 1.0, t, side) + w0.nth_derivative(2).eval(wt);
        let c12_tau = m * (w12.derivative().eval(wt) - self.il.jc.d(above));
        c00_t - c12_tau
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mirror_vanishes_at_wall() {
        let mr = Mirror {
            a: 1.3,
            b: -0.4,
            c: 2.0,
            d: 0.7,
        };
        assert_eq!(mr.value(0.0, 1.7), 0.0);
        let unit = Mirror {
            a: 1.0,
            ..Mirror::default()
        };
        assert!((unit.value(1.0, 1.0) - (1.0 - (-1.0f64).exp())).abs() < 1e-15);
    }

    #[test]
    fn order_out_of_range() {
        let p = ProblemData::shock(1.0, 1.2);
        let bl = BoundaryLayer::new(&p);
        assert!(bl.coefficients(4, 0.1, 0.5, 0.01, true).is_err());
        assert!(bl.y_profile(0, -1.0, 0.1, 0.5, 0.01, true).is_err());
    }
}
