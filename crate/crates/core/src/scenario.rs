//! Problem instances, smooth data with exact derivatives, jump constants and
//! the scenario file format.

use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};

/// Scalar function with closed-form derivatives of every order.
#[derive(Debug, Clone, PartialEq)]
pub enum SmoothFunction {
    /// `a0 + a1 s + a2 s^2 + ...`
    Polynomial(Vec<f64>),
    Constant(f64),
    /// `amplitude * sin(frequency * s)`
    ScaledSine {
        amplitude: f64,
        frequency: f64,
    },
    Sum(Vec<SmoothFunction>),
}

impl SmoothFunction {
    pub fn zero() -> Self {
        SmoothFunction::Constant(0.0)
    }

    pub fn poly(coefficients: &[f64]) -> Self {
        SmoothFunction::Polynomial(coefficients.to_vec())
    }

    pub fn eval(&self, s: f64) -> f64 {
        self.derivative(0, s)
    }

    /// `i`-th derivative at `s`.
    pub fn derivative(&self, i: usize, s: f64) -> f64 {
        match self {
            SmoothFunction::Constant(a) => {
                if i == 0 {
                    *a
                } else {
                    0.0
                }
            }
            SmoothFunction::Polynomial(c) => {
                if i >= c.len() {
                    return 0.0;
                }
                let mut acc = 0.0;
                for (k, &ck) in c.iter().enumerate().skip(i).rev() {
                    let falling: f64 = ((k - i + 1)..=k).map(|j| j as f64).product();
                    acc = acc * s + ck * falling;
                }
                acc
            }
            SmoothFunction::ScaledSine {
                amplitude,
                frequency,
            } => {
                let phase = frequency * s + i as f64 * std::f64::consts::FRAC_PI_2;
                amplitude * frequency.powi(i as i32) * phase.sin()
            }
            SmoothFunction::Sum(parts) => parts.iter().map(|f| f.derivative(i, s)).sum(),
        }
    }

    /// Derivatives `0..=n` at `s`.
    pub fn stack(&self, n: usize, s: f64) -> Vec<f64> {
        (0..=n).map(|i| self.derivative(i, s)).collect()
    }

    /// True when every derivative of order at least one vanishes identically.
    pub fn is_constant(&self) -> bool {
        match self {
            SmoothFunction::Constant(_) => true,
            SmoothFunction::Polynomial(c) => c.iter().skip(1).all(|&a| a == 0.0),
            SmoothFunction::ScaledSine {
                amplitude,
                frequency,
            } => *amplitude == 0.0 || *frequency == 0.0,
            SmoothFunction::Sum(parts) => parts.iter().all(|f| f.is_constant()),
        }
    }

    /// True when the function vanishes identically.
    pub fn is_zero(&self) -> bool {
        self.is_constant() && self.eval(0.0) == 0.0
    }
}

impl fmt::Display for SmoothFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn list(v: &[f64]) -> String {
            v.iter()
                .map(|a| format!("{a}"))
                .collect::<Vec<_>>()
                .join(",")
        }
        match self {
            SmoothFunction::Constant(a) => write!(f, "const:{a}"),
            SmoothFunction::Polynomial(c) => write!(f, "poly:[{}]", list(c)),
            SmoothFunction::ScaledSine {
                amplitude,
                frequency,
            } => write!(f, "sine:[{amplitude},{frequency}]"),
            SmoothFunction::Sum(parts) => {
                let inner: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "sum:[{}]", inner.join(","))
            }
        }
    }
}

/// One instance of the initial-boundary value problem on `(0,1) x (0,T)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemData {
    /// Transport speed.
    pub m: f64,
    /// Time horizon.
    pub t_final: f64,
    /// Initial datum on `[0,1]`.
    pub y0: SmoothFunction,
    /// Inflow datum at `x = 0` on `[0,T]`.
    pub v: SmoothFunction,
}

impl ProblemData {
    pub fn new(m: f64, t_final: f64, y0: SmoothFunction, v: SmoothFunction) -> Result<Self> {
        let p = ProblemData { m, t_final, y0, v };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.m > 0.0) || !self.m.is_finite() {
            return Err(Error::InvalidProblem(format!(
                "M must be positive, got {}",
                self.m
            )));
        }
        if !(self.t_final * self.m >= 1.0) || !self.t_final.is_finite() {
            return Err(Error::InvalidProblem(format!(
                "T must be at least 1/M = {}, got {}",
                1.0 / self.m,
                self.t_final
            )));
        }
        Ok(())
    }

    /// Pure shock: `y0 = 1`, `v = 0`.
    pub fn shock(m: f64, t_final: f64) -> Self {
        ProblemData {
            m,
            t_final,
            y0: SmoothFunction::Constant(1.0),
            v: SmoothFunction::zero(),
        }
    }

    /// Angular layer: `y0 = x`, `v = 0`.
    pub fn angular(m: f64, t_final: f64) -> Self {
        ProblemData {
            m,
            t_final,
            y0: SmoothFunction::poly(&[0.0, 1.0]),
            v: SmoothFunction::zero(),
        }
    }

    /// Shock with `y0(1) = y0'(1) = 0`: `y0 = (1-x)^2`, `v = 0`.
    pub fn flat_outflow(m: f64, t_final: f64) -> Self {
        ProblemData {
            m,
            t_final,
            y0: SmoothFunction::poly(&[1.0, -2.0, 1.0]),
            v: SmoothFunction::zero(),
        }
    }

    /// Data compatible to every order: `y0 = g(x)`, `v = g(-Mt)` with
    /// `g(s) = 1 + s + s^2/2`.
    pub fn compatible(m: f64, t_final: f64) -> Self {
        ProblemData {
            m,
            t_final,
            y0: SmoothFunction::poly(&[1.0, 1.0, 0.5]),
            v: SmoothFunction::poly(&[1.0, -m, 0.5 * m * m]),
        }
    }

    /// Parse the `key = value` scenario format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut m = None;
        let mut t_final = None;
        let mut y0 = None;
        let mut v = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| Error::Parse {
                line: line_no,
                message,
            };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected `key = value`, found `{line}`")))?;
            let key = key.trim();
            let value = value.trim();
            match key {
                "M" => set_once(&mut m, parse_number(value).map_err(err)?, key, line_no)?,
                "T" => set_once(
                    &mut t_final,
                    parse_number(value).map_err(err)?,
                    key,
                    line_no,
                )?,
                "y0" => set_once(&mut y0, parse_function(value).map_err(err)?, key, line_no)?,
                "v" => set_once(&mut v, parse_function(value).map_err(err)?, key, line_no)?,
                other => return Err(err(format!("unknown key `{other}`"))),
            }
        }
        let missing = |name: &str| Error::Parse {
            line: 0,
            message: format!("missing required key `{name}`"),
        };
        let p = ProblemData {
            m: m.ok_or_else(|| missing("M"))?,
            t_final: t_final.ok_or_else(|| missing("T"))?,
            y0: y0.ok_or_else(|| missing("y0"))?,
            v: v.ok_or_else(|| missing("v"))?,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }

    /// Serialize back to the scenario format.
    pub fn to_scenario_text(&self) -> String {
        format!(
            "M = {}\nT = {}\ny0 = {}\nv = {}\n",
            self.m, self.t_final, self.y0, self.v
        )
    }
}

fn set_once<T>(slot: &mut Option<T>, value: T, key: &str, line: usize) -> Result<()> {
    if slot.is_some() {
        return Err(Error::Parse {
            line,
            message: format!("duplicate key `{key}`"),
        });
    }
    *slot = Some(value);
    Ok(())
}

fn parse_number(s: &str) -> std::result::Result<f64, String> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| format!("`{}` is not a number", s.trim()))?;
    if !v.is_finite() {
        return Err(format!("`{}` is not finite", s.trim()));
    }
    Ok(v)
}

/// Split a bracketed list on top-level commas.
fn split_list(s: &str) -> std::result::Result<Vec<&str>, String> {
    let s = s.trim();
    let inner = s
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| format!("expected a bracketed list, found `{s}`"))?;
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in inner.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => {
                depth -= 1;
                if depth < 0 {
                    return Err(format!("unbalanced brackets in `{s}`"));
                }
            }
            ',' if depth == 0 => {
                parts.push(inner[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(format!("unbalanced brackets in `{s}`"));
    }
    let last = inner[start..].trim();
    if !last.is_empty() || !parts.is_empty() {
        parts.push(last);
    }
    if parts.iter().any(|p| p.is_empty()) {
        return Err(format!("empty list entry in `{s}`"));
    }
    Ok(parts)
}

/// Parse `poly:[..]`, `const:a`, `sine:[amp,freq]` or `sum:[..]`.
pub fn parse_function(s: &str) -> std::result::Result<SmoothFunction, String> {
    let s = s.trim();
    let (kind, body) = s
        .split_once(':')
        .ok_or_else(|| format!("expected `kind:args`, found `{s}`"))?;
    match kind.trim() {
        "const" => Ok(SmoothFunction::Constant(parse_number(body)?)),
        "poly" => {
            let coeffs = split_list(body)?
                .into_iter()
                .map(parse_number)
                .collect::<std::result::Result<Vec<_>, _>>()?;
            if coeffs.is_empty() {
                return Err("poly needs at least one coefficient".into());
            }
            Ok(SmoothFunction::Polynomial(coeffs))
        }
        "sine" => {
            let args = split_list(body)?;
            if args.len() != 2 {
                return Err(format!(
                    "sine takes [amp,freq], found {} entries",
                    args.len()
                ));
            }
            Ok(SmoothFunction::ScaledSine {
                amplitude: parse_number(args[0])?,
                frequency: parse_number(args[1])?,
            })
        }
        "sum" => {
            let parts = split_list(body)?
                .into_iter()
                .map(parse_function)
                .collect::<std::result::Result<Vec<_>, _>>()?;
            if parts.is_empty() {
                return Err("sum needs at least one term".into());
            }
            Ok(SmoothFunction::Sum(parts))
        }
        other => Err(format!("unknown function kind `{other}`")),
    }
}

/// One-sided derivative data of `y0` and `v` at the corner.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JumpConstants {
    pub c_plus: f64,
    pub c_minus: f64,
    pub d_plus: f64,
    pub d_minus: f64,
    pub e_plus: f64,
    pub e_minus: f64,
    pub f_minus: f64,
    pub h_plus: f64,
    pub h_minus: f64,
}

impl JumpConstants {
    /// Value for the side selected by `above`.
    pub fn c(&self, above: bool) -> f64 {
        if above {
            self.c_plus
        } else {
            self.c_minus
        }
    }

    pub fn d(&self, above: bool) -> f64 {
        if above {
            self.d_plus
        } else {
            self.d_minus
        }
    }

    pub fn e(&self, above: bool) -> f64 {
        if above {
            self.e_plus
        } else {
            self.e_minus
        }
    }

    pub fn h(&self, above: bool) -> f64 {
        if above {
            self.h_plus
        } else {
            self.h_minus
        }
    }
}

pub fn jump_constants(p: &ProblemData) -> JumpConstants {
    let m = p.m;
    let y = p.y0.stack(3, 0.0);
    let v = p.v.stack(3, 0.0);
    JumpConstants {
        c_plus: y[0],
        c_minus: v[0],
        d_plus: y[1],
        d_minus: -v[1] / m,
        e_plus: y[2],
        e_minus: v[2] / (m * m),
        f_minus: v[2] / (m * m * m),
        h_plus: y[3] / 6.0,
        h_minus: -v[3] / (6.0 * m * m * m),
    }
}

/// `M^p y0^(p)(0) + (-1)^(p+1) v^(p)(0)` for `p = 0..=order_max`.
pub fn compatibility_defect(p: &ProblemData, order_max: usize) -> Result<Vec<f64>> {
    if order_max > 4 {
        return Err(Error::Domain(format!(
            "compatibility is checked up to order 4, requested {order_max}"
        )));
    }
    Ok((0..=order_max)
        .map(|k| {
            let sign = if k % 2 == 0 { -1.0 } else { 1.0 };
            p.m.powi(k as i32) * p.y0.derivative(k, 0.0) + sign * p.v.derivative(k, 0.0)
        })
        .collect())
}

/// Position relative to the characteristic `x = Mt`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    AboveCharacteristic,
    BelowCharacteristic,
    OnCharacteristic,
}

pub fn classify_region(x: f64, t: f64, m: f64) -> Region {
    let s = x - m * t;
    if s > 0.0 {
        Region::AboveCharacteristic
    } else if s < 0.0 {
        Region::BelowCharacteristic
    } else {
        Region::OnCharacteristic
    }
}

/// Stretched variables at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledCoords {
    pub w: f64,
    pub z: f64,
    pub tau: f64,
    pub region: Region,
}

impl ScaledCoords {
    pub fn new(x: f64, t: f64, eps: f64, m: f64) -> Self {
        let se = eps.sqrt();
        ScaledCoords {
            w: (x - m * t) / se,
            z: (1.0 - x) / eps,
            tau: (1.0 / m - t) / se,
            region: classify_region(x, t, m),
        }
    }

    /// Recover `x` from the boundary-layer variable.
    pub fn x_from_z(z: f64, eps: f64) -> f64 {
        1.0 - eps * z
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_derivatives() {
        let f = SmoothFunction::poly(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(f.derivative(0, 2.0), 1.0 + 4.0 + 12.0 + 32.0);
        assert_eq!(f.derivative(1, 2.0), 2.0 + 12.0 + 48.0);
        assert_eq!(f.derivative(2, 2.0), 6.0 + 48.0);
        assert_eq!(f.derivative(3, 2.0), 24.0);
        assert_eq!(f.derivative(4, 2.0), 0.0);
    }

    #[test]
    fn parse_round_trip() {
        let text = "# shock\nM = 2\nT = 1.5\ny0 = sum:[poly:[1,0,2], sine:[0.5,3]]\nv = const:0\n";
        let p = ProblemData::parse(text).unwrap();
        assert_eq!(p.m, 2.0);
        let again = ProblemData::parse(&p.to_scenario_text()).unwrap();
        assert_eq!(p, again);
    }

    #[test]
    fn parse_reports_line_of_unknown_key() {
        let err = ProblemData::parse("M = 1\nT = 2\nspeed = 3\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn parse_rejects_bad_function() {
        assert!(ProblemData::parse("M = 1\nT = 2\ny0 = cosine:[1]\nv = const:0").is_err());
        assert!(ProblemData::parse("M = 1\nT = 2\ny0 = poly:[1,,2]\nv = const:0").is_err());
        assert!(
            ProblemData::parse("M = 1\nT = 2\ny0 = const:1\nv = const:0\nv = const:1").is_err()
        );
        assert!(ProblemData::parse("M = 1\nT = 0.5\ny0 = const:1\nv = const:0").is_err());
    }
}
