//! Adaptive tanh-sinh quadrature with analytic treatment of algebraic endpoint behavior.
//!
//! Integrands receive both t and 1 - t so that values near t = 1 keep full
//! relative accuracy in the complement.

use crate::error::{Error, Result};
use num_complex::Complex64 as C64;
use std::f64::consts::PI;

/// Declared endpoint behavior: integrand ~ t^{at_zero} near 0 and
/// ~ (1-t)^{at_one} log^{log_power}(1-t) near 1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EndpointBehavior {
    pub at_zero: f64,
    pub at_one: f64,
    pub log_power: u32,
}

impl EndpointBehavior {
    pub fn new(at_zero: f64, at_one: f64) -> Self {
        Self { at_zero, at_one, log_power: 0 }
    }

    pub fn regular() -> Self {
        Self::new(0.0, 0.0)
    }

    fn validate(&self) -> Result<()> {
        if !(self.at_zero > -1.0 && self.at_one > -1.0) {
            return Err(Error::DomainError(format!(
                "endpoint exponents ({}, {}) are not integrable",
                self.at_zero, self.at_one
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadOptions {
    pub tol_abs: f64,
    pub tol_rel: f64,
    /// Maximum number of panels.
    pub budget: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self { tol_abs: 1e-10, tol_rel: 1e-10, budget: 1 << 14 }
    }
}

impl QuadOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self { tol_abs: tol, tol_rel: tol, ..Self::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadResult {
    pub value: C64,
    pub err: f64,
    pub panels: usize,
    pub evaluations: usize,
}

const U_MAX: f64 = 4.0;
const MAX_LEVEL: u32 = 6;

struct Panel {
    a: f64,
    b: f64,
    value: C64,
    err: f64,
}

/// Tanh-sinh on [a,b]; `g(da, db)` receives the distances to both ends.
fn ts_panel(g: &dyn Fn(f64, f64) -> C64, a: f64, b: f64, evals: &mut usize) -> Result<(C64, f64)> {
    let len = b - a;
    let node = |u: f64| -> (f64, f64, f64) {
        let s = PI * u.sinh();
        // sigma(u) = 1/(1+e^{-s}); stable in both tails
        let (da, db) = if s >= 0.0 {
            let e = (-s).exp();
            (len / (1.0 + e), len * e / (1.0 + e))
        } else {
            let e = s.exp();
            (len * e / (1.0 + e), len / (1.0 + e))
        };
        let w = PI * u.cosh() * (da / len) * (db / len) * len;
        (da, db, w)
    };
    let mut eval_at = |u: f64| -> Result<(C64, f64)> {
        let (da, db, w) = node(u);
        if da <= 0.0 || db <= 0.0 || w == 0.0 {
            return Ok((C64::new(0.0, 0.0), 0.0));
        }
        *evals += 1;
        let f = g(da, db);
        if !(f.re.is_finite() && f.im.is_finite()) {
            if da.min(db) < 1e-12 * len {
                return Ok((C64::new(0.0, 0.0), 0.0));
            }
            return Err(Error::DomainError(format!("non-finite integrand at {}", a + da)));
        }
        Ok((f * w, (f * w).norm()))
    };
    // level 0: h = 1/2, integer multiples of h
    let mut h = 0.5;
    let mut sum = C64::new(0.0, 0.0);
    let mut abs = 0.0;
    let mut k = -((U_MAX / h) as i64);
    while k as f64 * h <= U_MAX {
        let (v, m) = eval_at(k as f64 * h)?;
        sum += v;
        abs += m;
        k += 1;
    }
    let mut est = sum * h;
    let mut diff = f64::INFINITY;
    for level in 1..=MAX_LEVEL {
        h /= 2.0;
        let mut u = -U_MAX + h;
        // new nodes are the odd multiples of h
        let mut add = C64::new(0.0, 0.0);
        while u < U_MAX {
            let (v, m) = eval_at(u)?;
            add += v;
            abs += m;
            u += 2.0 * h;
        }
        sum += add;
        let next = sum * h;
        diff = (next - est).norm();
        est = next;
        let round = 1e-15 * abs * h;
        if level >= 3 && diff <= round.max(1e-14 * est.norm()) {
            return Ok((est, diff + round));
        }
    }
    Ok((est, diff + 1e-15 * abs * h))
}

/// Adaptive bisection driver over panels on [lo, hi] with an optional initial split.
fn adaptive(
    g: &dyn Fn(f64, f64, f64, f64) -> C64,
    breaks: &[f64],
    opts: &QuadOptions,
) -> Result<QuadResult> {
    let mut evals = 0usize;
    let mut panels: Vec<Panel> = Vec::new();
    for w in breaks.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b <= a {
            continue;
        }
        let (value, err) = ts_panel(&|da, db| g(a, b, da, db), a, b, &mut evals)?;
        panels.push(Panel { a, b, value, err });
    }
    loop {
        let total: C64 = panels.iter().map(|p| p.value).sum();
        let err: f64 = panels.iter().map(|p| p.err).sum();
        let target = opts.tol_abs.max(opts.tol_rel * total.norm());
        if err <= target {
            return Ok(QuadResult { value: total, err, panels: panels.len(), evaluations: evals });
        }
        if panels.len() >= opts.budget {
            return Err(Error::BudgetExceeded { value_re: total.re, value_im: total.im, err });
        }
        let (idx, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.err.total_cmp(&y.1.err))
            .expect("at least one panel");
        let p = panels.swap_remove(idx);
        let mid = 0.5 * (p.a + p.b);
        if mid <= p.a || mid >= p.b {
            return Err(Error::BudgetExceeded { value_re: total.re, value_im: total.im, err });
        }
        for (a, b) in [(p.a, mid), (mid, p.b)] {
            let (value, err) = ts_panel(&|da, db| g(a, b, da, db), a, b, &mut evals)?;
            panels.push(Panel { a, b, value, err });
        }
    }
}

// Position in a panel of [0,1], keeping full precision on the panel touching 0.
fn unit(a: f64, da: f64) -> f64 {
    if a == 0.0 {
        da
    } else {
        a + da
    }
}

/// Integral over [lo, hi] of a regular integrand `f(x)`.
pub fn integrate_interval(f: &dyn Fn(f64) -> C64, lo: f64, hi: f64, opts: &QuadOptions) -> Result<QuadResult> {
    adaptive(&|a, _b, da, _db| f(a + da), &[lo, hi], opts)
}

/// Integral over (0,1) of `f(t, 1-t)` whose declared endpoint behavior is
/// removed by power substitutions on each half.
pub fn integrate_01(f: &dyn Fn(f64, f64) -> C64, beh: EndpointBehavior, opts: &QuadOptions) -> Result<QuadResult> {
    beh.validate()?;
    let al0 = if beh.at_zero < 0.0 { 1.0 / (1.0 + beh.at_zero) } else { 1.0 };
    let al1 = if beh.at_one < 0.0 { 1.0 / (1.0 + beh.at_one) } else { 1.0 };
    // w in (0,1) covers the left half, w in (1,2) the right half
    let g = |a: f64, b: f64, da: f64, db: f64| -> C64 {
        if b <= 1.0 {
            let wl = if a == 0.0 { da } else { a + da };
            let t = 0.5 * wl.powf(al0);
            let jac = 0.5 * al0 * wl.powf(al0 - 1.0);
            f(t, 1.0 - t) * jac
        } else {
            let wr = if b == 2.0 { db } else { 2.0 - (a + da) };
            let s = 0.5 * wr.powf(al1);
            let jac = 0.5 * al1 * wr.powf(al1 - 1.0);
            f(1.0 - s, s) * jac
        }
    };
    adaptive(&g, &[0.0, 1.0, 2.0], opts)
}

/// Integral over (0,1) of t^{g0} (1-t)^{g1} h(t, 1-t), with the power factor
/// and the substitution Jacobian combined analytically.
///
/// `breaks` are optional interior points in (0,1) (for oscillatory kernels).
/// The first and last panels carry the endpoint maps.
pub fn integrate_01_factored(
    h: &dyn Fn(f64, f64) -> C64,
    beh: EndpointBehavior,
    breaks: &[f64],
    opts: &QuadOptions,
) -> Result<QuadResult> {
    beh.validate()?;
    let (g0, g1) = (beh.at_zero, beh.at_one);
    let mut inner: Vec<f64> = breaks.iter().copied().filter(|&x| x > 0.0 && x < 1.0).collect();
    inner.sort_by(f64::total_cmp);
    inner.dedup();
    let left = inner.first().copied().unwrap_or(0.5).min(0.5);
    let right = inner.last().copied().unwrap_or(0.5).max(0.5);
    let al0 = 1.0 / (1.0 + g0);
    let al1 = 1.0 / (1.0 + g1);
    // left end: t = left * w^{al0}; t^{g0} dt = left^{g0+1} al0 dw
    let c0 = left.powf(g0 + 1.0) * al0;
    let c1 = (1.0 - right).powf(g1 + 1.0) * al1;
    let mut total = C64::new(0.0, 0.0);
    let mut err = 0.0;
    let mut evals = 0usize;
    let mut panels = 0usize;
    let mut sub = QuadOptions { budget: (opts.budget / (inner.len() + 2)).max(8), ..*opts };
    sub.tol_abs /= (inner.len() + 2) as f64;

    let lf = |a: f64, _b: f64, da: f64, _db: f64| -> C64 {
        // steep maps (exponent near -1) underflow; the factored integrand is continuous there
        let t = (left * unit(a, da).powf(al0)).max(f64::MIN_POSITIVE);
        let s = 1.0 - t;
        h(t, s) * s.powf(g1) * c0
    };
    let r = adaptive(&lf, &[0.0, 1.0], &sub)?;
    total += r.value;
    err += r.err;
    evals += r.evaluations;
    panels += r.panels;

    let mut pts = vec![left];
    pts.extend(inner.iter().copied().filter(|&x| x > left && x < right));
    pts.push(right);
    if right > left {
        let mf = |a: f64, _b: f64, da: f64, _db: f64| -> C64 {
            let t = a + da;
            let s = 1.0 - t;
            h(t, s) * t.powf(g0) * s.powf(g1)
        };
        let r = adaptive(&mf, &pts, &sub)?;
        total += r.value;
        err += r.err;
        evals += r.evaluations;
        panels += r.panels;
    }

    let rf = |a: f64, _b: f64, da: f64, _db: f64| -> C64 {
        let s = ((1.0 - right) * unit(a, da).powf(al1)).max(f64::MIN_POSITIVE);
        let t = 1.0 - s;
        h(t, s) * t.powf(g0) * c1
    };
    let r = adaptive(&rf, &[0.0, 1.0], &sub)?;
    total += r.value;
    err += r.err;
    evals += r.evaluations;
    panels += r.panels;
    Ok(QuadResult { value: total, err, panels, evaluations: evals })
}

/// Integral over (0, inf) of `f(t)` decaying like e^{-decay t}; `at_zero`
/// declares f ~ t^{at_zero} near the origin.
pub fn integrate_semiaxis(f: &dyn Fn(f64) -> C64, decay: f64, at_zero: f64, opts: &QuadOptions) -> Result<QuadResult> {
    if decay <= 0.0 {
        return Err(Error::DomainError("decay rate must be positive".into()));
    }
    // t = -ln(v)/c maps v in (0,1) onto (inf, 0); dt = dv/(c v)
    let g = |v: f64, s: f64| -> C64 {
        let t = if s < 0.5 { -(-s).ln_1p() / decay } else { -v.ln() / decay };
        f(t) / (decay * v)
    };
    integrate_01(&g, EndpointBehavior::new(0.0, at_zero), opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{gamma_r, rgamma_r};

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn inverse_sqrt() {
        let r = integrate_01(&|t, _| c(t.powf(-0.5)), EndpointBehavior::new(-0.5, 0.0), &QuadOptions::default()).unwrap();
        assert!((r.value.re - 2.0).abs() < 1e-12, "{:?}", r);
        assert!((r.value.re - 2.0).abs() <= 10.0 * r.err.max(1e-15));
    }

    #[test]
    fn beta_integral() {
        let (a, b) = (0.5, 1.2);
        let f = |t: f64, s: f64| c(t.powf(a - 1.0) * s.powf(b - a - 1.0));
        let r = integrate_01(&f, EndpointBehavior::new(a - 1.0, b - a - 1.0), &QuadOptions::default()).unwrap();
        let exact = gamma_r(a) * gamma_r(b - a) * rgamma_r(b);
        assert!((r.value.re - exact).abs() < 1e-11 * exact, "{} {}", r.value.re, exact);
    }

    #[test]
    fn log_endpoint() {
        let r = integrate_01(&|_, s| c(s.ln()), EndpointBehavior { at_zero: 0.0, at_one: 0.0, log_power: 1 }, &QuadOptions::default())
            .unwrap();
        assert!((r.value.re + 1.0).abs() < 1e-12);
    }

    #[test]
    fn extreme_exponent_factored() {
        // t^{-0.999} over (0,1) = 1000
        let r = integrate_01_factored(&|_, _| c(1.0), EndpointBehavior::new(-0.999, 0.0), &[], &QuadOptions::default())
            .unwrap();
        assert!((r.value.re - 1000.0).abs() < 1e-9);
        let r = integrate_01_factored(&|t, _| c(t.cos()), EndpointBehavior::new(-0.4, -0.7), &[0.2, 0.9], &QuadOptions::default())
            .unwrap();
        let r2 = integrate_01(&|t, s| c(t.cos() * t.powf(-0.4) * s.powf(-0.7)), EndpointBehavior::new(-0.4, -0.7), &QuadOptions::default())
            .unwrap();
        assert!((r.value - r2.value).norm() < 1e-10);
    }

    #[test]
    fn factored_with_bisection() {
        // a kink forces the end panels to split
        let h = |t: f64, _s: f64| c((t - 0.1).abs() + (t - 0.93).abs());
        let beh = EndpointBehavior::new(-0.5, -0.5);
        let r = integrate_01_factored(&h, beh, &[], &QuadOptions::default()).unwrap();
        let r2 = integrate_01(&|t, s| h(t, s) * t.powf(-0.5) * s.powf(-0.5), beh, &QuadOptions::default()).unwrap();
        assert!(r.panels > 3);
        assert!((r.value - r2.value).norm() < 1e-9, "{} {}", r.value, r2.value);
    }

    #[test]
    fn semiaxis_examples() {
        let o = QuadOptions::default();
        let r = integrate_semiaxis(&|t| c((-t).exp()), 1.0, 0.0, &o).unwrap();
        assert!((r.value.re - 1.0).abs() < 1e-12);
        let r = integrate_semiaxis(&|t| c(t * (-2.0 * t).exp()), 2.0, 1.0, &o).unwrap();
        assert!((r.value.re - 0.25).abs() < 1e-12);
        let r = integrate_semiaxis(&|t| c(t.sqrt() * (-t).exp()), 1.0, 0.5, &o).unwrap();
        assert!((r.value.re - gamma_r(1.5)).abs() < 1e-12);
    }

    #[test]
    fn oscillatory_with_breaks() {
        let w = 200.0;
        let f = |t: f64| c((w * t).cos());
        let breaks: Vec<f64> = (1..64).map(|k| k as f64 / 64.0).collect();
        let r = integrate_01_factored(&|t, _| f(t), EndpointBehavior::regular(), &breaks, &QuadOptions::default()).unwrap();
        assert!((r.value.re - (w.sin() / w)).abs() < 1e-11);
    }

    #[test]
    fn budget_exhaustion_reports_best_value() {
        let o = QuadOptions { tol_abs: 1e-15, tol_rel: 1e-15, budget: 2 };
        let r = integrate_interval(&|x| c((50.0 * x).sin().abs()), 0.0, 1.0, &o);
        assert!(matches!(r, Err(Error::BudgetExceeded { .. })));
    }
}
