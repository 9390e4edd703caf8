//! Catalogue of closed-form values of `L_eps = d_t - eps d_xx + M d_x` on the
//! building blocks of the composite approximation.
//!
//! The left sides are computed by forward differentiation of independently
//! written formulas (see [`crate::jet`]), so this doubles as a check of the
//! layer closed forms.

use std::f64::consts::PI;

use crate::jet::Jet;
use crate::special::FRAC_1_SQRT_PI;

/// Largest deviation per identity.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub entries: Vec<(String, f64)>,
}

impl IdentityReport {
    pub fn max_deviation(&self) -> f64 {
        self.entries.iter().map(|e| e.1).fold(0.0, f64::max)
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.max_deviation() <= tol
    }
}

/// Jump data used by the check; every constant is nonzero.
struct Jumps {
    c: (f64, f64),
    d: (f64, f64),
    e: (f64, f64),
    f_minus: f64,
    h: (f64, f64),
}

const JUMPS: Jumps = Jumps {
    c: (1.0, -0.5),
    d: (0.7, -0.3),
    e: (1.2, 0.4),
    f_minus: 0.9,
    h: (0.25, -0.6),
};

struct Vars {
    w: Jet,
    t: Jet,
    xi: Jet,
    gauss: Jet,
    erf: Jet,
    root: Jet,
}

fn vars(w: Jet, t: Jet) -> Vars {
    let st = t.sqrt();
    let xi = w / (st * 2.0);
    Vars {
        w,
        t,
        xi,
        gauss: (-(xi * xi)).exp(),
        erf: xi.erf(),
        root: (t / PI).sqrt(),
    }
}

fn w0(v: &Vars) -> Jet {
    let (cp, cm) = JUMPS.c;
    v.erf * (0.5 * (cp - cm)) + 0.5 * (cp + cm)
}

fn w12(v: &Vars) -> Jet {
    let (dp, dm) = JUMPS.d;
    v.w * (v.erf * (0.5 * (dp - dm)) + 0.5 * (dp + dm)) + (dp - dm) * v.root * v.gauss
}

fn w1(v: &Vars) -> Jet {
    let (ep, em) = JUMPS.e;
    (v.w * v.w * 0.5 + v.t) * (v.erf * (0.5 * (ep - em)) + 0.5 * (ep + em))
        + 0.5 * (ep - em) * v.w * v.root * v.gauss
}

fn w32(v: &Vars) -> Jet {
    let (hp, hm) = JUMPS.h;
    let f = JUMPS.f_minus;
    let w = v.w;
    (w.powi(3) * 0.5 + 3.0 * v.t * w) * (v.erf * (hp - hm) + (hp + hm))
        + (hp - hm) * (4.0 * v.t + w * w) * v.root * v.gauss
        - f * v.root * v.gauss
        + 0.5 * f * w * (1.0 - v.erf)
}

fn u0(v: &Vars, a: f64) -> Jet {
    let (cp, cm) = JUMPS.c;
    let eta = v.xi + a * v.t.sqrt();
    0.5 * (cm - cp) * v.gauss * eta.erfcx()
}

fn u12(v: &Vars, a: f64) -> Jet {
    let (dp, dm) = JUMPS.d;
    let eta = v.xi + a * v.t.sqrt();
    // ierfc(eta) exp(eta^2) = 1/sqrt(pi) - eta erfcx(eta)
    let carrier = FRAC_1_SQRT_PI - eta * eta.erfcx();
    -(dp - dm) * v.t.sqrt() * v.gauss * carrier
}

type Block = (&'static str, fn(&Point) -> (Jet, f64));

struct Point {
    w: Jet,
    z: Jet,
    tau: Jet,
    t: Jet,
    eps: f64,
    m: f64,
}

fn blocks() -> Vec<Block> {
    fn layer(p: &Point, f: fn(&Vars) -> Jet) -> (Jet, f64) {
        (f(&vars(p.w, p.t)), 0.0)
    }
    vec![
        ("W0", |p| layer(p, w0)),
        ("W12", |p| layer(p, w12)),
        ("W1", |p| layer(p, w1)),
        ("W32", |p| layer(p, w32)),
        ("W0_eps", |p| {
            let v = vars(p.w, p.t);
            (w0(&v) + u0(&v, p.m / p.eps.sqrt()), 0.0)
        }),
        ("W12_eps", |p| {
            let v = vars(p.w, p.t);
            (w12(&v) + u12(&v, p.m / p.eps.sqrt()), 0.0)
        }),
        ("exp(-Mz)", |p| ((-p.m * p.z).exp(), 0.0)),
        ("z exp(-Mz)", |p| {
            let e = (-p.m * p.z.v).exp();
            (p.z * (-p.m * p.z).exp(), p.m / p.eps * e)
        }),
        ("z^2 exp(-Mz)", |p| {
            let z = p.z.v;
            let e = (-p.m * z).exp();
            (
                p.z * p.z * (-p.m * p.z).exp(),
                -2.0 / p.eps * (1.0 - p.m * z) * e,
            )
        }),
        ("z^3 exp(-Mz)", |p| {
            let z = p.z.v;
            let e = (-p.m * z).exp();
            (
                p.z.powi(3) * (-p.m * p.z).exp(),
                -3.0 / p.eps * (2.0 - p.m * z) * z * e,
            )
        }),
        ("w", |p| (p.w, 0.0)),
        ("w^2", |p| (p.w.powi(2), -2.0)),
        ("w^3", |p| (p.w.powi(3), -6.0 * p.w.v)),
        ("w^4", |p| (p.w.powi(4), -12.0 * p.w.v * p.w.v)),
        ("tau", |p| (p.tau, -1.0 / p.eps.sqrt())),
        ("tau^2", |p| (p.tau.powi(2), -2.0 * p.tau.v / p.eps.sqrt())),
        ("tau^3", |p| {
            (p.tau.powi(3), -3.0 * p.tau.v * p.tau.v / p.eps.sqrt())
        }),
    ]
}

/// Evaluate every identity on a fixed grid of points for the given `(M, eps)`.
/// The deviation is `|lhs - rhs| / max(1, |f_t| + eps |f_xx| + M |f_x|, |rhs|)`.
pub fn operator_identities_check_with(m: f64, eps: f64) -> IdentityReport {
    let se = eps.sqrt();
    let mut entries = Vec::new();
    for (name, block) in blocks() {
        let mut worst: f64 = 0.0;
        for i in 0..9 {
            let x = 0.05 + 0.1125 * i as f64;
            for j in 0..6 {
                let t = (0.08 + 0.2 * j as f64) / m;
                let xj = Jet::var_x(x);
                let tj = Jet::var_t(t);
                let point = Point {
                    w: (xj - m * tj) / se,
                    z: (1.0 - xj) / eps,
                    tau: (1.0 / m - tj) / se,
                    t: tj,
                    eps,
                    m,
                };
                let (f, rhs) = block(&point);
                let lhs = f.operator(eps, m);
                let scale = f.operator_scale(eps, m).max(rhs.abs()).max(1.0);
                worst = worst.max((lhs - rhs).abs() / scale);
            }
        }
        entries.push((name.to_string(), worst));
    }
    IdentityReport { entries }
}

/// The catalogue at the default parameters `M = 1`, `eps = 0.01` and `M = 2.5`, `eps = 0.002`.
pub fn operator_identities_check() -> IdentityReport {
    let mut a = operator_identities_check_with(1.0, 0.01);
    let b = operator_identities_check_with(2.5, 0.002);
    for (ea, eb) in a.entries.iter_mut().zip(b.entries) {
        ea.1 = ea.1.max(eb.1);
    }
    a
}
