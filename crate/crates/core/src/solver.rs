//! Crank–Nicolson reference solver on a uniform grid.
//!
//! Both `y_xx` and `y_x` use centered differences. The first steps are
//! replaced by backward-Euler half steps (Rannacher start-up) so that the
//! incompatible corner data at `(1, 0)` and `(0, 0)` do not leave undamped
//! high-frequency oscillations behind.

use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::scenario::ProblemData;

/// Node-centered samples on `[0,1] x [0,T]`, stored row by row in time.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldGrid {
    pub nx: usize,
    pub nt: usize,
    pub dx: f64,
    pub dt: f64,
    /// `(nt + 1) * (nx + 1)` values, row `n` holds time `n dt`.
    pub values: Vec<f64>,
    /// Set when the cell Péclet number `M dx / (2 eps)` exceeds one.
    pub peclet_warning: bool,
}

impl FieldGrid {
    pub fn zeros(nx: usize, nt: usize, t_final: f64) -> Self {
        FieldGrid {
            nx,
            nt,
            dx: 1.0 / nx as f64,
            dt: t_final / nt as f64,
            values: vec![0.0; (nx + 1) * (nt + 1)],
            peclet_warning: false,
        }
    }

    /// Sample `f(x, t)` on the grid.
    pub fn from_fn(nx: usize, nt: usize, t_final: f64, f: impl Fn(f64, f64) -> f64) -> Self {
        let mut g = Self::zeros(nx, nt, t_final);
        for n in 0..=nt {
            let t = g.t(n);
            for i in 0..=nx {
                let x = g.x(i);
                g.values[n * (nx + 1) + i] = f(x, t);
            }
        }
        g
    }

    pub fn x(&self, i: usize) -> f64 {
        i as f64 * self.dx
    }

    pub fn t(&self, n: usize) -> f64 {
        n as f64 * self.dt
    }

    pub fn row(&self, n: usize) -> &[f64] {
        let w = self.nx + 1;
        &self.values[n * w..(n + 1) * w]
    }

    pub fn row_mut(&mut self, n: usize) -> &mut [f64] {
        let w = self.nx + 1;
        &mut self.values[n * w..(n + 1) * w]
    }

    pub fn get(&self, i: usize, n: usize) -> f64 {
        self.values[n * (self.nx + 1) + i]
    }

    /// Pointwise `self - other` on identical grids.
    pub fn difference(&self, other: &FieldGrid) -> Result<FieldGrid> {
        if self.nx != other.nx || self.nt != other.nt {
            return Err(Error::InvalidProblem("grids differ in shape".into()));
        }
        let mut d = self.clone();
        for (a, b) in d.values.iter_mut().zip(&other.values) {
            *a -= b;
        }
        d.peclet_warning = self.peclet_warning || other.peclet_warning;
        Ok(d)
    }

    /// CSV dump with header `x,t,value`, time-major, 17 significant digits.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "x,t,value")?;
        for n in 0..=self.nt {
            let t = self.t(n);
            for (i, v) in self.row(n).iter().enumerate() {
                writeln!(out, "{:.16e},{:.16e},{:.16e}", self.x(i), t, v)?;
            }
        }
        Ok(())
    }
}

/// Spatial `L^2(0,1)` norm of node samples by the trapezoid rule.
pub fn l2_norm(row: &[f64], dx: f64) -> f64 {
    let sq: Vec<f64> = row.iter().map(|v| v * v).collect();
    crate::quadrature::trapezoid_uniform(&sq, dx).sqrt()
}

/// `int_0^1 e_x^2 dx` for the piecewise-linear interpolant of node samples.
pub fn h1_seminorm_sq(row: &[f64], dx: f64) -> f64 {
    row.windows(2).map(|w| (w[1] - w[0]).powi(2)).sum::<f64>() / dx
}

/// Error norms of one field.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct NormSet {
    /// `max_t || . ||_{L^2(0,1)}` over the stored steps.
    pub linf_l2: f64,
    /// `|| d_x . ||_{L^2(Q_T)}`, integrated over the rows with `t > 0`.
    pub l2_h1: f64,
    /// `|| . (t*) ||_{L^2(0,1)}` at the stored step nearest to `t*`.
    pub l2_at_time: Option<(f64, f64)>,
}

/// Streaming accumulation of [`NormSet`] over time rows.
#[derive(Debug, Clone)]
pub struct NormAccumulator {
    dx: f64,
    dt: f64,
    t_min: f64,
    t_star: Option<f64>,
    linf: f64,
    h1_int: f64,
    prev_h1: Option<f64>,
    at_time: Option<(f64, f64)>,
}

impl NormAccumulator {
    /// Rows with `t < t_min` are ignored; `t_star` selects the snapshot norm.
    pub fn new(dx: f64, dt: f64, t_min: f64, t_star: Option<f64>) -> Self {
        NormAccumulator {
            dx,
            dt,
            t_min,
            t_star,
            linf: 0.0,
            h1_int: 0.0,
            prev_h1: None,
            at_time: None,
        }
    }

    /// Add one row of errors; `dx_err` optionally carries pointwise
    /// `x`-derivative errors at the nodes (otherwise cell differences are used).
    pub fn push(&mut self, t: f64, err: &[f64], dx_err: Option<&[f64]>) {
        if let Some(ts) = self.t_star {
            if (t - ts).abs() <= 0.5 * self.dt + 1e-12 * ts.abs()
                && self
                    .at_time
                    .is_none_or(|(tp, _)| (t - ts).abs() < (tp - ts).abs())
            {
                self.at_time = Some((t, l2_norm(err, self.dx)));
            }
        }
        if t < self.t_min - 1e-12 * self.dt {
            return;
        }
        self.linf = self.linf.max(l2_norm(err, self.dx));
        // At t = 0 the inflow node carries the corner jump v(0) - y0(0), which
        // is a property of the data and not of any approximation.
        if t <= 0.0 {
            return;
        }
        let h1 = match dx_err {
            Some(d) => l2_norm(d, self.dx).powi(2),
            None => h1_seminorm_sq(err, self.dx),
        };
        if let Some(prev) = self.prev_h1 {
            self.h1_int += 0.5 * self.dt * (prev + h1);
        }
        self.prev_h1 = Some(h1);
    }

    pub fn finish(&self) -> NormSet {
        NormSet {
            linf_l2: self.linf,
            l2_h1: self.h1_int.sqrt(),
            l2_at_time: self.at_time,
        }
    }
}

/// Norms of a stored field (no masking).
pub fn norms(diff: &FieldGrid, t_star: Option<f64>) -> NormSet {
    let mut acc = NormAccumulator::new(diff.dx, diff.dt, 0.0, t_star);
    for n in 0..=diff.nt {
        acc.push(diff.t(n), diff.row(n), None);
    }
    acc.finish()
}

/// Grid selection `dx <= eps/m`, `dt = dx/M`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridRule {
    pub multiplier: f64,
}

impl Default for GridRule {
    fn default() -> Self {
        GridRule { multiplier: 8.0 }
    }
}

impl GridRule {
    /// Smallest multiple of ten with `1/nx <= eps/m`.
    pub fn nx(&self, eps: f64) -> usize {
        let raw = (self.multiplier / eps - 1e-9).ceil() as usize;
        raw.div_ceil(10) * 10
    }

    /// Steps so that `dt <= dx/M`; when `T M nx` is an integer, `t = 1/M`
    /// falls exactly on step `nx`.
    pub fn nt(&self, nx: usize, t_final: f64, m: f64) -> usize {
        ((t_final * m * nx as f64) - 1e-9).ceil().max(1.0) as usize
    }

    /// `(nx, nt)` for a problem.
    pub fn grid(&self, eps: f64, p: &ProblemData) -> (usize, usize) {
        let nx = self.nx(eps);
        (nx, self.nt(nx, p.t_final, p.m))
    }

    pub fn refined(&self) -> GridRule {
        GridRule {
            multiplier: 2.0 * self.multiplier,
        }
    }
}

/// Start-up and stepping options.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Number of leading Crank–Nicolson steps replaced by two backward-Euler
    /// half steps each.
    pub startup_steps: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { startup_steps: 2 }
    }
}

/// Source term `f(x, t)` added to the right-hand side.
pub type Source<'s> = &'s (dyn Fn(f64, f64) -> f64 + Sync);

/// Summary of a march.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarchInfo {
    pub nx: usize,
    pub nt: usize,
    pub dx: f64,
    pub dt: f64,
    pub peclet_warning: bool,
}

/// Constant-coefficient tridiagonal system `lo u_{i-1} + di u_i + up u_{i+1}`
/// with the forward sweep precomputed.
struct Tridiag {
    lo: f64,
    cprime: Vec<f64>,
    inv: Vec<f64>,
}

impl Tridiag {
    fn new(n: usize, lo: f64, di: f64, up: f64) -> Self {
        let mut cprime = vec![0.0; n];
        let mut inv = vec![0.0; n];
        let mut prev = 0.0;
        for i in 0..n {
            let den = di - lo * prev;
            inv[i] = 1.0 / den;
            cprime[i] = up * inv[i];
            prev = cprime[i];
        }
        Tridiag { lo, cprime, inv }
    }

    /// Solve in place.
    fn solve(&self, rhs: &mut [f64]) {
        let n = rhs.len();
        let mut prev = 0.0;
        for i in 0..n {
            rhs[i] = (rhs[i] - self.lo * prev) * self.inv[i];
            prev = rhs[i];
        }
        for i in (0..n.saturating_sub(1)).rev() {
            rhs[i] -= self.cprime[i] * rhs[i + 1];
        }
    }
}

/// One theta-scheme stepper over interior nodes.
struct Stepper {
    /// Operator coefficients of `A u_i = l u_{i-1} + d u_i + r u_{i+1}`.
    l: f64,
    d: f64,
    r: f64,
    theta: f64,
    k: f64,
    system: Tridiag,
}

impl Stepper {
    fn new(nx: usize, eps: f64, m: f64, dx: f64, theta: f64, k: f64) -> Self {
        let l = eps / (dx * dx) + m / (2.0 * dx);
        let d = -2.0 * eps / (dx * dx);
        let r = eps / (dx * dx) - m / (2.0 * dx);
        let system = Tridiag::new(nx - 1, -theta * k * l, 1.0 - theta * k * d, -theta * k * r);
        Stepper {
            l,
            d,
            r,
            theta,
            k,
            system,
        }
    }

    /// Advance `u` (full row including boundaries) from `t` to `t + k`.
    fn step(
        &self,
        u: &mut [f64],
        rhs: &mut [f64],
        t: f64,
        left_new: f64,
        right_new: f64,
        dx: f64,
        source: Option<Source<'_>>,
    ) {
        let nx = u.len() - 1;
        let ex = (1.0 - self.theta) * self.k;
        for i in 1..nx {
            let au = self.l * u[i - 1] + self.d * u[i] + self.r * u[i + 1];
            rhs[i - 1] = u[i] + ex * au;
        }
        if let Some(f) = source {
            let tn = t + self.k;
            for i in 1..nx {
                let x = i as f64 * dx;
                rhs[i - 1] += self.k * (self.theta * f(x, tn) + (1.0 - self.theta) * f(x, t));
            }
        }
        let im = self.theta * self.k;
        rhs[0] += im * self.l * left_new;
        rhs[nx - 2] += im * self.r * right_new;
        self.system.solve(&mut rhs[..nx - 1]);
        u[1..nx].copy_from_slice(&rhs[..nx - 1]);
        u[0] = left_new;
        u[nx] = right_new;
    }
}

fn check_grid(eps: f64, nx: usize, nt: usize) -> Result<()> {
    if nx < 8 || nt < 8 {
        return Err(Error::InvalidProblem(format!(
            "grid needs nx, nt >= 8, got {nx}, {nt}"
        )));
    }
    if !(eps > 0.0) {
        return Err(Error::Domain(format!("eps must be positive, got {eps}")));
    }
    Ok(())
}

/// Time marcher holding the current row; advance one step at a time.
pub struct Marcher<'p, 's> {
    p: &'p ProblemData,
    source: Option<Source<'s>>,
    opts: SolverOptions,
    nx: usize,
    nt: usize,
    dx: f64,
    dt: f64,
    n: usize,
    u: Vec<f64>,
    rhs: Vec<f64>,
    cn: Stepper,
    be: Stepper,
    peclet_warning: bool,
}

impl<'p, 's> Marcher<'p, 's> {
    pub fn new(
        p: &'p ProblemData,
        eps: f64,
        nx: usize,
        nt: usize,
        source: Option<Source<'s>>,
        opts: SolverOptions,
    ) -> Result<Self> {
        check_grid(eps, nx, nt)?;
        let m = p.m;
        let dx = 1.0 / nx as f64;
        let dt = p.t_final / nt as f64;
        let mut u: Vec<f64> = (0..=nx)
            .map(|i| p.y0.derivative(0, i as f64 * dx))
            .collect();
        u[0] = p.v.derivative(0, 0.0);
        u[nx] = 0.0;
        Ok(Marcher {
            p,
            source,
            opts,
            nx,
            nt,
            dx,
            dt,
            n: 0,
            u,
            rhs: vec![0.0; nx - 1],
            cn: Stepper::new(nx, eps, m, dx, 0.5, dt),
            be: Stepper::new(nx, eps, m, dx, 1.0, 0.5 * dt),
            peclet_warning: peclet(m, dx, eps) > 1.0,
        })
    }

    pub fn step_index(&self) -> usize {
        self.n
    }

    pub fn time(&self) -> f64 {
        self.n as f64 * self.dt
    }

    pub fn row(&self) -> &[f64] {
        &self.u
    }

    pub fn is_done(&self) -> bool {
        self.n >= self.nt
    }

    /// Advance by one step; returns `false` once the final time is reached.
    pub fn advance(&mut self) -> bool {
        if self.is_done() {
            return false;
        }
        let v = |t: f64| self.p.v.derivative(0, t);
        let dx = self.dx;
        let t = self.time();
        let t_new = (self.n + 1) as f64 * self.dt;
        if self.n < self.opts.startup_steps {
            let t_half = t + 0.5 * self.dt;
            self.be.step(
                &mut self.u,
                &mut self.rhs,
                t,
                v(t_half),
                0.0,
                dx,
                self.source,
            );
            self.be.step(
                &mut self.u,
                &mut self.rhs,
                t_half,
                v(t_new),
                0.0,
                dx,
                self.source,
            );
        } else {
            self.cn.step(
                &mut self.u,
                &mut self.rhs,
                t,
                v(t_new),
                0.0,
                dx,
                self.source,
            );
        }
        self.n += 1;
        true
    }

    pub fn info(&self) -> MarchInfo {
        MarchInfo {
            nx: self.nx,
            nt: self.nt,
            dx: self.dx,
            dt: self.dt,
            peclet_warning: self.peclet_warning,
        }
    }
}

/// March the solution, handing every time row to `visit(n, t, row)`.
pub fn march<F>(
    p: &ProblemData,
    eps: f64,
    nx: usize,
    nt: usize,
    source: Option<Source<'_>>,
    opts: SolverOptions,
    mut visit: F,
) -> Result<MarchInfo>
where
    F: FnMut(usize, f64, &[f64]),
{
    let mut mr = Marcher::new(p, eps, nx, nt, source, opts)?;
    visit(0, 0.0, mr.row());
    while mr.advance() {
        visit(mr.step_index(), mr.time(), mr.row());
    }
    Ok(mr.info())
}

/// March `levels` grids, each twice as fine in `x` and `t` as the previous,
/// in lockstep. At every coarse step `visit(n, t, rows)` receives each
/// level's row restricted to the coarse nodes.
pub fn march_hierarchy<F>(
    p: &ProblemData,
    eps: f64,
    nx: usize,
    nt: usize,
    levels: usize,
    source: Option<Source<'_>>,
    opts: SolverOptions,
    mut visit: F,
) -> Result<MarchInfo>
where
    F: FnMut(usize, f64, &[Vec<f64>]),
{
    if levels == 0 {
        return Err(Error::InvalidProblem(
            "at least one grid level is needed".into(),
        ));
    }
    let mut grids = Vec::with_capacity(levels);
    for k in 0..levels {
        let r = 1usize << k;
        let o = SolverOptions {
            startup_steps: r * opts.startup_steps,
        };
        grids.push(Marcher::new(p, eps, r * nx, r * nt, source, o)?);
    }
    let mut rows = vec![vec![0.0; nx + 1]; levels];
    let restrict = |rows: &mut [Vec<f64>], grids: &[Marcher]| {
        for (k, (row, g)) in rows.iter_mut().zip(grids).enumerate() {
            let r = 1usize << k;
            for (i, v) in row.iter_mut().enumerate() {
                *v = g.row()[r * i];
            }
        }
    };
    restrict(&mut rows, &grids);
    visit(0, 0.0, &rows);
    for n in 1..=nt {
        for (k, g) in grids.iter_mut().enumerate() {
            for _ in 0..(1usize << k) {
                g.advance();
            }
        }
        restrict(&mut rows, &grids);
        visit(n, grids[0].time(), &rows);
    }
    Ok(grids[0].info())
}

/// Richardson combination `(4 fine - coarse)/3`, cancelling the leading
/// `O(dx^2 + dt^2)` error of the centered scheme.
pub fn richardson(coarse: &[f64], fine: &[f64], out: &mut [f64]) {
    for ((o, c), f) in out.iter_mut().zip(coarse).zip(fine) {
        *o = (4.0 * f - c) / 3.0;
    }
}

/// March a grid and its refined companion and hand the Richardson
/// combination on the coarse nodes to `visit`.
pub fn march_extrapolated<F>(
    p: &ProblemData,
    eps: f64,
    nx: usize,
    nt: usize,
    source: Option<Source<'_>>,
    opts: SolverOptions,
    mut visit: F,
) -> Result<MarchInfo>
where
    F: FnMut(usize, f64, &[f64]),
{
    let mut out = vec![0.0; nx + 1];
    march_hierarchy(p, eps, nx, nt, 2, source, opts, |n, t, rows| {
        richardson(&rows[0], &rows[1], &mut out);
        visit(n, t, &out);
    })
}

/// Cell Péclet number `M dx / (2 eps)`.
pub fn peclet(m: f64, dx: f64, eps: f64) -> f64 {
    m * dx / (2.0 * eps)
}

/// Solve and store every time row.
pub fn solve(
    p: &ProblemData,
    eps: f64,
    nx: usize,
    nt: usize,
    source: Option<Source<'_>>,
) -> Result<FieldGrid> {
    solve_with(p, eps, nx, nt, source, SolverOptions::default())
}

pub fn solve_with(
    p: &ProblemData,
    eps: f64,
    nx: usize,
    nt: usize,
    source: Option<Source<'_>>,
    opts: SolverOptions,
) -> Result<FieldGrid> {
    check_grid(eps, nx, nt)?;
    let mut g = FieldGrid::zeros(nx, nt, p.t_final);
    let info = march(p, eps, nx, nt, source, opts, |n, _, row| {
        g.row_mut(n).copy_from_slice(row);
    })?;
    g.peclet_warning = info.peclet_warning;
    Ok(g)
}

/// `|| y^eps(., 1/M) ||_{L^2(0,1)}` for inflow data `v = 0`.
pub fn decay_at_final(p: &ProblemData, eps: f64, rule: GridRule) -> Result<f64> {
    if !p.v.is_zero() {
        return Err(Error::InvalidProblem("decay needs v = 0".into()));
    }
    let t_star = 1.0 / p.m;
    if p.t_final < t_star {
        return Err(Error::InvalidProblem("decay needs T >= 1/M".into()));
    }
    // March only to t* on a grid where t* is exactly the last step.
    let nx = rule.nx(eps);
    let nt = nx.max(8);
    let mut short = p.clone();
    short.t_final = t_star;
    let mut last = 0.0;
    march(
        &short,
        eps,
        nx,
        nt,
        None,
        SolverOptions::default(),
        |n, _, row| {
            if n == nt {
                last = l2_norm(row, 1.0 / nx as f64);
            }
        },
    )?;
    Ok(last)
}

/// Largest excursion of any row outside `[min, max]` of the initial and boundary data.
pub fn max_principle_violation(p: &ProblemData, g: &FieldGrid) -> f64 {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &v in g.row(0) {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    for n in 0..=g.nt {
        let v = p.v.derivative(0, g.t(n));
        lo = lo.min(v).min(0.0);
        hi = hi.max(v).max(0.0);
    }
    for i in 0..=g.nx {
        let v = p.y0.derivative(0, g.x(i));
        lo = lo.min(v);
        hi = hi.max(v);
    }
    g.values
        .iter()
        .map(|&v| (lo - v).max(v - hi).max(0.0))
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thomas_solves_small_system() {
        let t = Tridiag::new(3, 1.0, 4.0, 2.0);
        let mut b = vec![6.0, 13.0, 11.0];
        t.solve(&mut b);
        // Solution (1, 1, ... ) check by substitution.
        let x = b.clone();
        assert!((4.0 * x[0] + 2.0 * x[1] - 6.0).abs() < 1e-12);
        assert!((x[0] + 4.0 * x[1] + 2.0 * x[2] - 13.0).abs() < 1e-12);
        assert!((x[1] + 4.0 * x[2] - 11.0).abs() < 1e-12);
    }

    #[test]
    fn grid_rule_snaps_characteristic_time() {
        let r = GridRule::default();
        assert_eq!(r.nx(0.01), 800);
        assert_eq!(r.nt(800, 1.2, 1.0), 960);
    }
}
