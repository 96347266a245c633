//! Evaluation for arbitrary parameters by splitting off a Taylor head.
//!
//! The tail is p+1Fp-type with parameters (a+n, 1; b+n, n+1), which satisfy
//! the representation hypotheses once n is large enough. The same weight
//! defines a distribution acting on smooth test functions.

use crate::conditions::check_v_nonneg;
use crate::error::{Error, Result};
use crate::gweight::{GWeight, GWeightSpec};
use crate::quadrature::QuadOptions;
use crate::representations::{breakpoints, sqrt_breakpoints, Kind};
use crate::series::{hyp0f1, pochhammer, EvalResult, Method, ParamVec};
use crate::special::{gamma_ratio, is_nonpositive_integer};
use num_complex::Complex64 as C64;
use serde::Serialize;
use std::f64::consts::PI;

/// Search limit for the nonnegativity-driven choice of n.
pub const MAX_N: usize = 200;

const SAMPLING_DEPTH: u32 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PlanReason {
    Minimal,
    Nonnegativity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RegularizationPlan {
    pub n: usize,
    pub reason: PlanReason,
    pub kind: Kind,
}

fn is_cosine(kind: Kind) -> Result<bool> {
    match kind {
        Kind::Stieltjes | Kind::Laplace => Ok(false),
        Kind::Cosine => Ok(true),
        _ => Err(Error::DomainError(format!("no decomposition for {kind}"))),
    }
}

fn check_lengths(a: &ParamVec, b: &ParamVec, cosine: bool) -> Result<()> {
    let ok = if cosine { a.len() + 1 == b.len() } else { a.len() == b.len() };
    if !ok || b.is_empty() {
        return Err(Error::DomainError(format!("lengths a:{} b:{} do not fit the kind", a.len(), b.len())));
    }
    if let Some(index) = b.iter().position(|&x| is_nonpositive_integer(x)) {
        return Err(Error::InvalidDenominator { index });
    }
    Ok(())
}

fn admissible(a: &ParamVec, b: &ParamVec, n: usize, cosine: bool) -> bool {
    let nf = n as f64;
    let psi = (b.sum() - a.sum()).re;
    let a_ok = a.is_empty() || a.min_re() + nf > 0.0;
    if cosine {
        a_ok && psi + 2.0 * nf - 0.5 > 0.0
    } else {
        a_ok && psi + nf > 0.0
    }
}

/// Augmented vectors whose v-function controls the sign of the order-n weight.
fn augmented(a: &ParamVec, b: &ParamVec, n: usize, cosine: bool) -> (ParamVec, ParamVec) {
    let nf = n as f64;
    let mut lower = a.shifted(nf);
    if cosine {
        lower = lower.with_real(0.5);
    }
    (lower.with_real(1.0), b.shifted(nf).with_real(nf + 1.0))
}

/// Smallest admissible order; with `want_nonneg` and real parameters, the
/// smallest one whose weight carries a nonnegativity certificate.
pub fn choose_n(a: &ParamVec, b: &ParamVec, kind: Kind, want_nonneg: bool) -> Result<RegularizationPlan> {
    let cosine = is_cosine(kind)?;
    check_lengths(a, b, cosine)?;
    let mut n = 0;
    while !admissible(a, b, n, cosine) {
        n += 1;
        if n > 100_000 {
            return Err(Error::NoncomputableN(n));
        }
    }
    if !want_nonneg || !a.is_real() || !b.is_real() {
        return Ok(RegularizationPlan { n, reason: PlanReason::Minimal, kind });
    }
    let start = n;
    while n <= MAX_N {
        let (lo, up) = augmented(a, b, n, cosine);
        if check_v_nonneg(&lo, &up, SAMPLING_DEPTH).holds() {
            let reason = if n == start { PlanReason::Minimal } else { PlanReason::Nonnegativity };
            return Ok(RegularizationPlan { n, reason, kind });
        }
        n += 1;
    }
    Err(Error::NoncomputableN(MAX_N))
}

fn order_n_weight(a: &ParamVec, b: &ParamVec, n: usize, extra_lower: Option<f64>) -> Result<GWeight> {
    let nf = n as f64;
    let mut lower = a.shifted(nf - 1.0);
    if let Some(x) = extra_lower {
        lower = lower.with_real(x);
    }
    let spec = GWeightSpec::new(lower.with_real(0.0), b.shifted(nf - 1.0).with_real(nf))?;
    GWeight::new(&spec)
}

/// Weight G(t | b-1+n, n; a-1+n, 0) of order p+1; equals G(t | b-1; a-1) at n = 0.
pub fn tilde_weight(a: &ParamVec, b: &ParamVec, n: usize) -> Result<GWeight> {
    order_n_weight(a, b, n, None)
}

/// Weight G(t | b-1+n, n; a-1+n, -1/2, 0) used with the cosine kernel; `a` has p-1 entries.
pub fn hat_weight(a: &ParamVec, b: &ParamVec, n: usize) -> Result<GWeight> {
    order_n_weight(a, b, n, Some(-0.5))
}

pub fn tilde_g_n(a: &ParamVec, b: &ParamVec, n: usize, t: f64) -> Result<C64> {
    Ok(tilde_weight(a, b, n)?.eval(t)?.value)
}

pub fn hat_g_n(a: &ParamVec, b: &ParamVec, n: usize, t: f64) -> Result<C64> {
    Ok(hat_weight(a, b, n)?.eval(t)?.value)
}

/// Analytic continuation of p+1Fp(sigma, a; b; -z), pFp(a; b; -z) or
/// p-1Fp(a; b; -z) for any parameters with b off the nonpositive integers.
pub fn decomposed_eval(
    kind: Kind,
    sigma: Option<C64>,
    a: &ParamVec,
    b: &ParamVec,
    z: C64,
    n: Option<usize>,
    opts: &QuadOptions,
) -> Result<EvalResult> {
    let cosine = is_cosine(kind)?;
    check_lengths(a, b, cosine)?;
    let n = match n {
        Some(n) => {
            if !admissible(a, b, n, cosine) {
                return Err(Error::HypothesisFailed(format!("order {n} too small for these parameters")));
            }
            n
        }
        None => choose_n(a, b, kind, false)?.n,
    };
    let sigma = sigma.unwrap_or(C64::new(1.0, 0.0));
    if kind == Kind::Stieltjes && z.im == 0.0 && z.re <= -1.0 {
        return Err(Error::BranchCut);
    }
    let mut head = C64::new(0.0, 0.0);
    let mut term = C64::new(1.0, 0.0);
    for k in 0..n {
        head += term;
        let kf = k as f64;
        let mut r = -z / (kf + 1.0);
        for &x in a.iter() {
            r *= x + kf;
        }
        for &x in b.iter() {
            r /= x + kf;
        }
        if kind == Kind::Stieltjes {
            r *= sigma + kf;
        }
        term *= r;
    }
    let mut pre = gamma_ratio(b.as_slice(), a.as_slice()) * (-z).powi(n as i32);
    let r = match kind {
        Kind::Stieltjes => {
            pre *= pochhammer(sigma, n);
            let w = tilde_weight(a, b, n)?;
            let mut br = breakpoints(z.norm(), None);
            if z.re < -1.0 {
                br.push(-1.0 / z.re);
            }
            let s = sigma + n as f64;
            w.integrate(&|t, _| (1.0 + z * t).powc(-s), 0.0, &br, opts)?
        }
        Kind::Laplace => {
            let w = tilde_weight(a, b, n)?;
            let period = if z.im.abs() > 1.0 { Some(PI / z.im.abs()) } else { None };
            w.integrate(&|t, _| (-z * t).exp(), 0.0, &breakpoints(z.re.max(0.0), period), opts)?
        }
        _ => {
            pre /= PI.sqrt();
            let w = hat_weight(a, b, n)?;
            w.integrate(&|t, _| (2.0 * (z * t).sqrt()).cos(), 0.0, &sqrt_breakpoints(2.0 * z.sqrt().re.abs()), opts)?
        }
    };
    let value = head + pre * r.value;
    let err = pre.norm() * r.err + 4.0 * f64::EPSILON * (head.norm() + value.norm());
    Ok(EvalResult::new(value, err, if n == 0 { kind.method() } else { Method::Decomposition }))
}

/// Smooth function on [0,1] with derivatives available up to some order.
pub trait TestFunction {
    /// The k-th derivative at t, or `None` if that order is not supplied.
    fn derivative(&self, k: usize, t: f64) -> Option<C64>;
}

impl<F: Fn(usize, f64) -> Option<C64>> TestFunction for F {
    fn derivative(&self, k: usize, t: f64) -> Option<C64> {
        self(k, t)
    }
}

/// (1 + z t)^(-sigma).
#[derive(Clone, Copy, Debug)]
pub struct StieltjesKernel {
    pub sigma: C64,
    pub z: C64,
}

impl TestFunction for StieltjesKernel {
    fn derivative(&self, k: usize, t: f64) -> Option<C64> {
        Some(pochhammer(self.sigma, k) * (-self.z).powi(k as i32) * (1.0 + self.z * t).powc(-self.sigma - k as f64))
    }
}

/// exp(-z t).
#[derive(Clone, Copy, Debug)]
pub struct LaplaceKernel {
    pub z: C64,
}

impl TestFunction for LaplaceKernel {
    fn derivative(&self, k: usize, t: f64) -> Option<C64> {
        Some((-self.z).powi(k as i32) * (-self.z * t).exp())
    }
}

/// cos(2 sqrt(z t)) = 0F1(; 1/2; -z t).
#[derive(Clone, Copy, Debug)]
pub struct CosineKernel {
    pub z: C64,
}

impl TestFunction for CosineKernel {
    fn derivative(&self, k: usize, t: f64) -> Option<C64> {
        let zt = self.z * t;
        let f = if k == 0 { (2.0 * zt.sqrt()).cos() } else { hyp0f1(C64::new(k as f64 + 0.5, 0.0), -zt) };
        Some((-self.z).powi(k as i32) / pochhammer(C64::new(0.5, 0.0), k) * f)
    }
}

/// Action of the regularized weight distribution on `phi`:
/// the Taylor head at 0 plus Gamma(b)/Gamma(a) times the integral of the
/// order-n weight against the n-th derivative.
pub fn distribution_action(a: &ParamVec, b: &ParamVec, phi: &dyn TestFunction, n: Option<usize>, opts: &QuadOptions) -> Result<C64> {
    check_lengths(a, b, false)?;
    let n = match n {
        Some(n) if admissible(a, b, n, false) => n,
        Some(n) => return Err(Error::HypothesisFailed(format!("order {n} too small for these parameters"))),
        None => choose_n(a, b, Kind::Laplace, false)?.n,
    };
    let mut head = C64::new(0.0, 0.0);
    let mut coef = C64::new(1.0, 0.0);
    for k in 0..n {
        head += coef * phi.derivative(k, 0.0).ok_or(Error::DerivativeUnavailable(k))?;
        let kf = k as f64;
        let mut r = C64::new(1.0 / (kf + 1.0), 0.0);
        for (&x, &y) in a.iter().zip(b.iter()) {
            r *= (x + kf) / (y + kf);
        }
        coef *= r;
    }
    phi.derivative(n, 0.5).ok_or(Error::DerivativeUnavailable(n))?;
    let w = tilde_weight(a, b, n)?;
    let r = w.integrate(&|t, _| phi.derivative(n, t).unwrap_or(C64::new(f64::NAN, 0.0)), 0.0, &[], opts)?;
    Ok(head + gamma_ratio(b.as_slice(), a.as_slice()) * r.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::integrate_interval;
    use crate::representations::{cosine_eval, laplace_eval, stieltjes_eval};
    use crate::series::hyp;

    fn pv(x: &[f64]) -> ParamVec {
        ParamVec::real(x)
    }

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    fn cv(x: &[f64]) -> Vec<C64> {
        x.iter().map(|&v| c(v)).collect()
    }

    #[test]
    fn plan_examples() {
        let p = choose_n(&pv(&[0.5, 1.0]), &pv(&[1.0, 2.0]), Kind::Laplace, false).unwrap();
        assert_eq!(p.n, 0);
        let p = choose_n(&pv(&[-1.5]), &pv(&[0.2]), Kind::Laplace, false).unwrap();
        assert_eq!((p.n, p.reason), (2, PlanReason::Minimal));
        let p = choose_n(&pv(&[-0.5, 2.0]), &pv(&[0.5, 0.5]), Kind::Laplace, true).unwrap();
        let (lo, up) = augmented(&pv(&[-0.5, 2.0]), &pv(&[0.5, 0.5]), p.n, false);
        assert!(check_v_nonneg(&lo, &up, 12).holds());
        assert!(matches!(choose_n(&pv(&[1.0]), &pv(&[-2.0]), Kind::Laplace, false), Err(Error::InvalidDenominator { .. })));
        let p = choose_n(&pv(&[0.3]), &pv(&[0.1, 0.2]), Kind::Cosine, false).unwrap();
        assert_eq!(p.n, 1);
    }

    #[test]
    fn order_n_weights() {
        let (a, b) = (pv(&[0.7, 1.4]), pv(&[1.2, 2.1]));
        let g0 = GWeight::new(&GWeightSpec::new(a.shifted(-1.0), b.shifted(-1.0)).unwrap()).unwrap();
        for &t in &[0.1, 0.5, 0.8] {
            assert!((tilde_g_n(&a, &b, 0, t).unwrap() - g0.eval(t).unwrap().value).norm() < 1e-12);
        }
        // first primitive vanishing at 1
        let (a1, b1) = (pv(&[0.6]), pv(&[1.9]));
        let g = GWeight::new(&GWeightSpec::new(a1.shifted(-1.0), b1.shifted(-1.0)).unwrap()).unwrap();
        for &t in &[0.2, 0.6] {
            let prim = integrate_interval(&|x| g.eval(x).unwrap().value, t, 1.0, &QuadOptions::default()).unwrap().value;
            assert!((tilde_g_n(&a1, &b1, 1, t).unwrap() - prim).norm() < 1e-9);
        }
        // value at 0 of the order m+1 weight
        let m = 1;
        let w = tilde_weight(&a, &b, m + 1).unwrap();
        let expect = gamma_ratio(&cv(&[1.7, 2.4]), &cv(&[2.2, 3.1])) / 1.0;
        assert!((w.eval(1e-12).unwrap().value - expect).norm() < 1e-8);
    }

    #[test]
    fn gauss_type_inside_disk() {
        let (a, b) = (pv(&[-0.4, 1.1]), pv(&[0.3, 0.5]));
        let r = decomposed_eval(Kind::Stieltjes, Some(c(1.2)), &a, &b, c(0.6), None, &QuadOptions::default()).unwrap();
        let s = hyp(&cv(&[1.2, -0.4, 1.1]), &cv(&[0.3, 0.5]), c(-0.6)).unwrap();
        assert!((r.value - s).norm() < 1e-9 * s.norm(), "{} {}", r.value, s);
        assert_eq!(r.method, Method::Decomposition);
    }

    #[test]
    fn order_independence() {
        let (a, b) = (pv(&[-0.4, 1.1]), pv(&[0.3, 0.5]));
        let o = QuadOptions::default();
        let n0 = choose_n(&a, &b, Kind::Laplace, false).unwrap().n;
        let x = decomposed_eval(Kind::Laplace, None, &a, &b, c(5.0), Some(n0), &o).unwrap();
        let y = decomposed_eval(Kind::Laplace, None, &a, &b, c(5.0), Some(n0 + 2), &o).unwrap();
        let s = hyp(&cv(&[-0.4, 1.1]), &cv(&[0.3, 0.5]), c(-5.0)).unwrap();
        assert!((x.value - y.value).norm() < 1e-10 * x.value.norm().max(1.0));
        assert!((x.value - s).norm() < 1e-9 * s.norm().max(1.0));
        // outside the disk: continuation
        let x = decomposed_eval(Kind::Stieltjes, Some(c(0.8)), &a, &b, c(3.0), Some(n0), &o).unwrap();
        let y = decomposed_eval(Kind::Stieltjes, Some(c(0.8)), &a, &b, c(3.0), Some(n0 + 1), &o).unwrap();
        assert!((x.value - y.value).norm() < 1e-9 * x.value.norm().max(1.0));
    }

    #[test]
    fn order_zero_matches_representations() {
        let o = QuadOptions::default();
        let (a, b) = (pv(&[0.6, 1.2]), pv(&[0.9, 1.8]));
        let x = decomposed_eval(Kind::Laplace, None, &a, &b, c(3.0), Some(0), &o).unwrap();
        let y = laplace_eval(&a, &b, c(3.0), &o).unwrap();
        assert!((x.value - y.value).norm() < 1e-12);
        let x = decomposed_eval(Kind::Stieltjes, Some(c(0.7)), &a, &b, c(0.4), Some(0), &o).unwrap();
        let y = stieltjes_eval(c(0.7), &a, &b, c(0.4), &o).unwrap();
        assert!((x.value - y.value).norm() < 1e-12);
        let x = decomposed_eval(Kind::Cosine, None, &pv(&[0.8]), &pv(&[1.1, 1.4]), c(2.0), Some(0), &o).unwrap();
        let y = cosine_eval(&pv(&[0.8]), &pv(&[1.1, 1.4]), c(2.0), &o).unwrap();
        assert!((x.value - y.value).norm() < 1e-12);
    }

    #[test]
    fn cosine_decomposition_and_action_agree() {
        let o = QuadOptions::default();
        let (a, b) = (pv(&[-0.3]), pv(&[0.4, 0.7]));
        let z = c(2.5);
        let s = hyp(&cv(&[-0.3]), &cv(&[0.4, 0.7]), -z).unwrap();
        let x = decomposed_eval(Kind::Cosine, None, &a, &b, z, None, &o).unwrap();
        assert!((x.value - s).norm() < 1e-9 * s.norm().max(1.0), "{} {}", x.value, s);
        let y = distribution_action(&a.with_real(0.5), &b, &CosineKernel { z }, None, &o).unwrap();
        assert!((y - s).norm() < 1e-9 * s.norm().max(1.0), "{y} {s}");
    }

    #[test]
    fn distribution_action_kernels() {
        let o = QuadOptions::default();
        let (a, b) = (pv(&[-0.4, 1.1]), pv(&[0.3, 0.5]));
        let z = c(1.3);
        let s = hyp(&cv(&[-0.4, 1.1]), &cv(&[0.3, 0.5]), -z).unwrap();
        let v = distribution_action(&a, &b, &LaplaceKernel { z }, None, &o).unwrap();
        assert!((v - s).norm() < 1e-9 * s.norm().max(1.0));
        let z = c(0.5);
        let s = hyp(&cv(&[0.9, -0.4, 1.1]), &cv(&[0.3, 0.5]), -z).unwrap();
        let v = distribution_action(&a, &b, &StieltjesKernel { sigma: c(0.9), z }, Some(3), &o).unwrap();
        assert!((v - s).norm() < 1e-9 * s.norm().max(1.0));
        // plain integral for admissible parameters
        let (a, b) = (pv(&[0.7, 1.4]), pv(&[1.2, 2.1]));
        let one = |k: usize, _t: f64| Some(if k == 0 { c(1.0) } else { c(0.0) });
        assert!((distribution_action(&a, &b, &one, None, &o).unwrap() - 1.0).norm() < 1e-9);
        let only_value = |k: usize, t: f64| if k == 0 { Some(c(t)) } else { None };
        assert!(matches!(distribution_action(&pv(&[-0.5]), &pv(&[1.0]), &only_value, None, &o), Err(Error::DerivativeUnavailable(1))));
    }

    #[test]
    fn nonneg_plan_gives_nonneg_weight() {
        let (a, b) = (pv(&[-0.5, 2.0]), pv(&[0.5, 0.5]));
        let p = choose_n(&a, &b, Kind::Laplace, true).unwrap();
        let w = tilde_weight(&a, &b, p.n).unwrap();
        for i in 1..100 {
            let v = w.eval(i as f64 / 100.0).unwrap().value;
            assert!(v.re >= -1e-12, "{} {}", i, v);
        }
    }
}
