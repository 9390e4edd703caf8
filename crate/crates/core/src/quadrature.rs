//! Composite Simpson rules with panel doubling, and adaptive Simpson.

/// Composite Simpson on `[a, b]` with `n` panels (`n` rounded up to even).
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let n = (n.max(2) + 1) & !1;
    let h = (b - a) / n as f64;
    let mut odd = 0.0;
    let mut even = 0.0;
    for i in 1..n {
        let v = f(a + i as f64 * h);
        if i % 2 == 1 {
            odd += v;
        } else {
            even += v;
        }
    }
    h / 3.0 * (f(a) + f(b) + 4.0 * odd + 2.0 * even)
}

/// Simpson with panel doubling from `n0` panels until the relative change
/// drops below `rtol` (absolute floor `atol`). Previous nodes are reused.
pub fn simpson_converged<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    n0: usize,
    rtol: f64,
    atol: f64,
    max_doublings: usize,
) -> f64 {
    let mut n = n0.max(2);
    let mut h = (b - a) / n as f64;
    // Trapezoid sum T_n = h * (ends/2 + interior).
    let ends = 0.5 * (f(a) + f(b));
    let mut interior: f64 = (1..n).map(|i| f(a + i as f64 * h)).sum();
    let mut trap = h * (ends + interior);
    let mut prev_simpson: Option<f64> = None;
    for _ in 0..=max_doublings {
        let mids: f64 = (0..n).map(|i| f(a + (i as f64 + 0.5) * h)).sum();
        interior += mids;
        n *= 2;
        h *= 0.5;
        let trap2 = h * (ends + interior);
        let s = (4.0 * trap2 - trap) / 3.0;
        if let Some(prev) = prev_simpson {
            if (s - prev).abs() <= rtol * s.abs() + atol {
                return s;
            }
        }
        prev_simpson = Some(s);
        trap = trap2;
    }
    prev_simpson.unwrap_or(trap)
}

/// Composite trapezoid over uniformly spaced samples with spacing `h`.
pub fn trapezoid_uniform(values: &[f64], h: f64) -> f64 {
    match values.len() {
        0 | 1 => 0.0,
        n => h * (0.5 * (values[0] + values[n - 1]) + values[1..n - 1].iter().sum::<f64>()),
    }
}

/// Adaptive Simpson on `[a, b]`, started from `n0` equal panels. Panels are
/// bisected until the local Richardson estimate is below their share of
/// `max(rtol |I|, atol)`, where `|I|` is taken from the starting rule.
pub fn simpson_adaptive<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    n0: usize,
    rtol: f64,
    atol: f64,
    max_depth: u32,
) -> f64 {
    let n = n0.max(1);
    let h = (b - a) / n as f64;
    let panels: Vec<[f64; 5]> = (0..n)
        .map(|i| {
            let l = a + i as f64 * h;
            let r = l + h;
            let m = 0.5 * (l + r);
            [l, r, f(l), f(m), f(r)]
        })
        .collect();
    let rough: f64 = panels
        .iter()
        .map(|p| (p[1] - p[0]) / 6.0 * (p[2] + 4.0 * p[3] + p[4]))
        .sum();
    let tol = (rtol * rough.abs()).max(atol);
    panels
        .iter()
        .map(|&[l, r, fl, fm, fr]| {
            let whole = (r - l) / 6.0 * (fl + 4.0 * fm + fr);
            refine(&f, l, r, fl, fm, fr, whole, tol / n as f64, max_depth)
        })
        .sum()
}

#[allow(clippy::too_many_arguments)]
fn refine<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    refine(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + refine(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simpson_is_exact_for_cubics() {
        let v = simpson(|x| x * x * x - 2.0 * x, 0.0, 2.0, 4);
        assert!((v - 0.0).abs() < 1e-14);
    }

    #[test]
    fn adaptive_handles_sqrt_singularity() {
        let v = simpson_adaptive(|x: f64| x.sqrt(), 0.0, 1.0, 4, 1e-12, 0.0, 40);
        assert!((v - 2.0 / 3.0).abs() < 1e-10);
    }

    #[test]
    fn doubling_reaches_tolerance() {
        let v = simpson_converged(|x: f64| (-x * x).exp(), -8.0, 8.0, 8, 1e-12, 0.0, 20);
        assert!((v - std::f64::consts::PI.sqrt()).abs() < 1e-11);
    }
}
