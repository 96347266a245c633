//! Integral representations of p+1Fp, pFp and p-1Fp against the G weight.
//!
//! The generic forms need Re(a) > 0 and a positive parametric excess. The
//! zero-balanced and negative-integer-excess variants add an explicit
//! boundary or finite-sum part; the regularization module covers the rest.

use crate::error::{Error, Result};
use crate::gweight::{GWeight, GWeightSpec};
use crate::norlund::g_explicit;
use crate::quadrature::{integrate_01_factored, QuadOptions, QuadResult};
use crate::series::{hyp0f1, hyp2f1, pochhammer, series_eval_regularized, EvalResult, HypSpec, Method, ParamVec};
use crate::special::{gamma, gamma_ratio, near_integer};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

const MAX_BREAKS: usize = 4096;

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Kernel family of a representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Stieltjes,
    Laplace,
    Cosine,
    Sine,
    BesselKernel,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Stieltjes => "stieltjes",
            Kind::Laplace => "laplace",
            Kind::Cosine => "cosine",
            Kind::Sine => "sine",
            Kind::BesselKernel => "bessel-kernel",
        })
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "stieltjes" => Ok(Kind::Stieltjes),
            "laplace" => Ok(Kind::Laplace),
            "cosine" => Ok(Kind::Cosine),
            "sine" => Ok(Kind::Sine),
            "bessel-kernel" | "bessel" => Ok(Kind::BesselKernel),
            other => Err(Error::DomainError(format!("unknown kind '{other}'"))),
        }
    }
}

impl Kind {
    pub fn method(self) -> Method {
        match self {
            Kind::Stieltjes => Method::Stieltjes,
            Kind::Laplace => Method::Laplace,
            Kind::Cosine => Method::Cosine,
            Kind::Sine => Method::Sine,
            Kind::BesselKernel => Method::BesselKernel,
        }
    }
}

/// One evaluation request, as read from the command line.
#[derive(Clone, Debug, PartialEq)]
pub struct ReprRequest {
    pub kind: Kind,
    pub sigma: Option<C64>,
    pub a: ParamVec,
    pub b: ParamVec,
    pub z: C64,
}

impl ReprRequest {
    /// Checks the length relation between `a` and `b` for the kind.
    pub fn validate(&self) -> Result<()> {
        let (pa, pb) = (self.a.len(), self.b.len());
        let ok = match self.kind {
            Kind::Stieltjes | Kind::Laplace => pa == pb && pa >= 1,
            Kind::Cosine | Kind::Sine | Kind::BesselKernel => pb >= 1 && pa + 1 == pb,
        };
        if !ok {
            return Err(Error::DomainError(format!("{} needs matching lengths, got a:{pa} b:{pb}", self.kind)));
        }
        if self.kind == Kind::Stieltjes && self.sigma.is_none() {
            return Err(Error::DomainError("stieltjes needs sigma".into()));
        }
        Ok(())
    }

    pub fn eval(&self, opts: &QuadOptions) -> Result<EvalResult> {
        self.validate()?;
        match self.kind {
            Kind::Stieltjes => stieltjes_eval(self.sigma.unwrap_or(c(1.0)), &self.a, &self.b, self.z, opts),
            Kind::Laplace => laplace_eval(&self.a, &self.b, self.z, opts),
            Kind::Cosine => cosine_eval(&self.a, &self.b, self.z, opts),
            Kind::Sine => sine_repr_eval(&self.a, &self.b, self.z, opts),
            Kind::BesselKernel => bessel_kernel_eval(&self.a, &self.b, self.b.len() - 1, self.z, opts),
        }
    }
}

fn require(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::HypothesisFailed(what.to_string()))
    }
}

/// Interior points: geometric near 0 on the scale 1/|z| for sharp kernels,
/// plus uniform spacing `period` for oscillation.
pub(crate) fn breakpoints(scale: f64, period: Option<f64>) -> Vec<f64> {
    let mut out = Vec::new();
    if scale > 1.0 {
        let mut x = 1.0 / scale;
        while x < 1.0 && out.len() < 64 {
            out.push(x);
            x *= 4.0;
        }
    }
    if let Some(h) = period {
        if h < 0.5 {
            let n = ((1.0 / h) as usize).min(MAX_BREAKS);
            out.extend((1..n).map(|k| k as f64 / n as f64));
        }
    }
    out
}

/// Breakpoints in t for a kernel oscillating in sqrt(t) with angular frequency w.
pub(crate) fn sqrt_breakpoints(w: f64) -> Vec<f64> {
    if w < 2.0 {
        return Vec::new();
    }
    let n = ((w / PI).ceil() as usize).min(MAX_BREAKS);
    (1..n).map(|k| (k as f64 / n as f64).powi(2)).collect()
}

fn shifted_weight(a: &ParamVec, b: &ParamVec) -> Result<GWeight> {
    GWeight::new(&GWeightSpec::new(a.shifted(-1.0), b.shifted(-1.0))?)
}

fn finish(prefactor: C64, r: QuadResult, extra: C64, method: Method) -> EvalResult {
    let value = prefactor * (extra + r.value);
    EvalResult::new(value, prefactor.norm() * r.err + 4.0 * f64::EPSILON * value.norm(), method)
}

/// p+1Fp(sigma, a; b; -z) as a generalized Stieltjes transform.
pub fn stieltjes_eval(sigma: C64, a: &ParamVec, b: &ParamVec, z: C64, opts: &QuadOptions) -> Result<EvalResult> {
    require(a.len() == b.len() && !a.is_empty(), "a and b must have equal positive length")?;
    require(a.min_re() > 0.0, "Re(a) > 0")?;
    require((b.sum() - a.sum()).re > 0.0, "Re(psi) > 0")?;
    if z.im == 0.0 && z.re <= -1.0 {
        return Err(Error::BranchCut);
    }
    let w = shifted_weight(a, b)?;
    let mut breaks = breakpoints(z.norm(), None);
    if z.re < -1.0 {
        breaks.push(-1.0 / z.re);
    }
    let r = w.integrate(&|s, _| (1.0 + z * s).powc(-sigma), 0.0, &breaks, opts)?;
    Ok(finish(gamma_ratio(b.as_slice(), a.as_slice()), r, c(0.0), Method::Stieltjes))
}

/// pFp(a; b; -z) as a Laplace transform.
pub fn laplace_eval(a: &ParamVec, b: &ParamVec, z: C64, opts: &QuadOptions) -> Result<EvalResult> {
    require(a.len() == b.len() && !a.is_empty(), "a and b must have equal positive length")?;
    require(a.min_re() > 0.0, "Re(a) > 0")?;
    require((b.sum() - a.sum()).re > 0.0, "Re(psi) > 0")?;
    let w = shifted_weight(a, b)?;
    let period = if z.im.abs() > 1.0 { Some(PI / z.im.abs()) } else { None };
    let r = w.integrate(&|s, _| (-z * s).exp(), 0.0, &breakpoints(z.re.max(0.0), period), opts)?;
    Ok(finish(gamma_ratio(b.as_slice(), a.as_slice()), r, c(0.0), Method::Laplace))
}

fn sinc(x: C64) -> C64 {
    if x.norm() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

fn cos_kernel(z: C64) -> impl Fn(f64, f64) -> C64 {
    move |s, _| (2.0 * (z * s).sqrt()).cos()
}

/// p-1Fp(a; b; -z) through the cos(2 sqrt(z t)) kernel; `a` has one entry fewer than `b`.
pub fn cosine_eval(a: &ParamVec, b: &ParamVec, z: C64, opts: &QuadOptions) -> Result<EvalResult> {
    require(a.len() + 1 == b.len(), "cosine needs len(a) = len(b) - 1")?;
    require(a.is_empty() || a.min_re() > 0.0, "Re(a) > 0")?;
    require((b.sum() - a.sum()).re > 0.5, "Re(sum b - sum a) > 1/2")?;
    let full = a.with_real(0.5);
    let w = shifted_weight(&full, b)?;
    let r = w.integrate(&cos_kernel(z), 0.0, &sqrt_breakpoints(2.0 * z.sqrt().re.abs()), opts)?;
    let pre = gamma_ratio(b.as_slice(), a.as_slice()) / PI.sqrt();
    Ok(finish(pre, r, c(0.0), Method::Cosine))
}

/// z p-1Fp(a'; b; -z^2/4) through the sin(z u) kernel, returned divided by z
/// so that the value is p-1Fp(a'; b; -z^2/4) itself.
pub fn sine_repr_eval(a: &ParamVec, b: &ParamVec, z: C64, opts: &QuadOptions) -> Result<EvalResult> {
    require(a.len() + 1 == b.len(), "sine needs len(a) = len(b) - 1")?;
    require(a.is_empty() || a.min_re() > 0.0, "Re(a) > 0")?;
    require((b.sum() - a.sum()).re > 1.5, "Re(sum b - sum a) > 3/2")?;
    if z == c(0.0) {
        return Ok(EvalResult::new(c(1.0), 0.0, Method::Sine));
    }
    // weight G(t | b-1; a-1, 1/2) in t = u^2, du = dt / (2 sqrt t); the
    // kernel sin(z sqrt t) / (2 z sqrt t) stays bounded at t = 0
    let lower = a.shifted(-1.0).with_real(0.5);
    let w = GWeight::new(&GWeightSpec::new(lower, b.shifted(-1.0))?)?;
    let kernel = |t: f64, _s: f64| sinc(z * t.sqrt()) / 2.0;
    let r = w.integrate(&kernel, 0.0, &sqrt_breakpoints(z.re.abs()), opts)?;
    let pre = 4.0 * gamma_ratio(b.as_slice(), a.as_slice()) / PI.sqrt();
    Ok(finish(pre, r, c(0.0), Method::Sine))
}

/// Hypotheses under which the sine weight is positive and decreasing:
/// some (k, s) with a_k <= min(1, b_s - 1) over the lower vector (a', 3/2),
/// and v nonnegative on the reduced vectors. Returns the first such pair.
pub fn sine_hypotheses(a: &[f64], b: &[f64]) -> Option<(usize, usize)> {
    let mut full = a.to_vec();
    full.push(1.5);
    for k in 0..full.len() {
        for s in 0..b.len() {
            if full[k] <= 1.0_f64.min(b[s] - 1.0) {
                let ar = ParamVec::real(&full).excluding(k);
                let br = ParamVec::real(b).excluding(s);
                if crate::conditions::check_v_nonneg(&ar, &br, 12).holds() {
                    return Some((k, s));
                }
            }
        }
    }
    None
}

/// p-1Fp(a; b; -z) against G^{p-1,0}_{p-1,p-1}(t | b_[j]; a) dt/t with the
/// kernel 0F1(; b_j; -z t). For p = 1 the weight is a unit mass at t = 1.
pub fn bessel_kernel_eval(a: &ParamVec, b: &ParamVec, j: usize, z: C64, opts: &QuadOptions) -> Result<EvalResult> {
    require(a.len() + 1 == b.len(), "bessel kernel needs len(a) = len(b) - 1")?;
    require(j < b.len(), "kernel index in range")?;
    let bj = b.get(j);
    let rest = b.excluding(j);
    if a.is_empty() {
        return Ok(EvalResult::new(hyp0f1(bj, -z), 1e-15, Method::BesselKernel));
    }
    require(a.min_re() > 0.0, "Re(a) > 0")?;
    require((rest.sum() - a.sum()).re > 0.0, "Re(sum b_[j] - sum a) > 0")?;
    let w = shifted_weight(a, &rest)?;
    let period = 2.0 * z.sqrt().re.abs();
    let r = w.integrate(&|t, _| hyp0f1(bj, -z * t), 0.0, &sqrt_breakpoints(period), opts)?;
    Ok(finish(gamma_ratio(rest.as_slice(), a.as_slice()), r, c(0.0), Method::BesselKernel))
}

/// Boundary value of the kernel at s = 1 (the atom's contribution).
fn kernel_at_one(kind: Kind, sigma: C64, z: C64) -> Result<C64> {
    match kind {
        Kind::Stieltjes => Ok((1.0 + z).powc(-sigma)),
        Kind::Laplace => Ok((-z).exp()),
        Kind::Cosine => Ok((2.0 * z.sqrt()).cos()),
        _ => Err(Error::DomainError(format!("{kind} has no zero-balanced form"))),
    }
}

/// Zero-balanced forms: psi = 0 (stieltjes, laplace) or sum b - sum a = 1/2
/// (cosine); the representing measure carries a unit atom at s = 1.
pub fn zero_balanced_eval(kind: Kind, sigma: Option<C64>, a: &ParamVec, b: &ParamVec, z: C64, opts: &QuadOptions) -> Result<EvalResult> {
    let sigma = sigma.unwrap_or(c(1.0));
    let (lower, target, pre) = match kind {
        Kind::Stieltjes | Kind::Laplace => {
            require(a.len() == b.len(), "equal lengths")?;
            (a.clone(), 0.0, gamma_ratio(b.as_slice(), a.as_slice()))
        }
        Kind::Cosine => {
            require(a.len() + 1 == b.len(), "len(a) = len(b) - 1")?;
            (a.with_real(0.5), 0.5, gamma_ratio(b.as_slice(), a.as_slice()) / PI.sqrt())
        }
        _ => return Err(Error::DomainError(format!("{kind} has no zero-balanced form"))),
    };
    if ((b.sum() - a.sum()) - target).norm() > 1e-10 {
        return Err(Error::NotZeroBalanced);
    }
    require(a.is_empty() || a.min_re() > 0.0, "Re(a) > 0")?;
    if kind == Kind::Stieltjes && z.im == 0.0 && z.re <= -1.0 {
        return Err(Error::BranchCut);
    }
    let boundary = kernel_at_one(kind, sigma, z)?;
    let spec = GWeightSpec::new(lower, b.clone())?;
    let integral = match GWeight::new(&spec) {
        Ok(w) => {
            let phi: Box<dyn Fn(f64, f64) -> C64> = match kind {
                Kind::Stieltjes => Box::new(move |s, _| (1.0 + z * s).powc(-sigma)),
                Kind::Laplace => Box::new(move |s, _| (-z * s).exp()),
                _ => Box::new(cos_kernel(z)),
            };
            let breaks = match kind {
                Kind::Cosine => sqrt_breakpoints(2.0 * z.sqrt().re.abs()),
                _ => breakpoints(z.norm(), None),
            };
            w.integrate(&*phi, -1.0, &breaks, opts)?
        }
        // fully cancelled weight: the measure is the atom alone
        Err(Error::AtomOnly) => QuadResult { value: c(0.0), err: 0.0, panels: 0, evaluations: 0 },
        Err(e) => return Err(e),
    };
    let mut r = finish(pre, integral, boundary, kind.method());
    r.atom_included = true;
    Ok(r)
}

/// Regularized 2F1 or 1F1 with a nonpositive-integer numerator, i.e. a polynomial.
fn terminating_regularized(num: Vec<C64>, den: C64, x: C64) -> Result<C64> {
    let spec = HypSpec::regularized(ParamVec::new(num), ParamVec::new(vec![den]));
    Ok(series_eval_regularized(&spec, x, 1e-16)?.value)
}

/// Closed-form p = 2 weight G(t | b; a) for psi = -m, keeping lower entry `keep`.
fn p2_integer_weight(a: [C64; 2], b: [C64; 2], m: usize, keep: usize) -> impl Fn(f64, f64) -> Result<C64> {
    let (ak, other) = (a[keep], a[1 - keep]);
    let (x, y) = (b[0] - other, b[1] - other);
    let mf = m as f64;
    let pre = pochhammer(x, m + 1) * pochhammer(y, m + 1) / gamma(c(mf + 2.0));
    move |t: f64, s: f64| Ok(C64::new(t, 0.0).powc(ak) * pre * hyp2f1(x + mf + 1.0, y + mf + 1.0, c(mf + 2.0), s)?)
}

/// Integral of kernel * W over (0,1) where W is the shifted weight, optionally
/// through the p = 2 closed form.
fn negint_integral(
    lower: &ParamVec,
    upper: &ParamVec,
    m: usize,
    kernel: &dyn Fn(f64, f64) -> C64,
    breaks: &[f64],
    opts: &QuadOptions,
) -> Result<QuadResult> {
    let w = GWeight::new(&GWeightSpec::new(lower.clone(), upper.clone())?)?;
    if lower.len() == 2 && w.spec().p() == 2 {
        // closed form where its 2F1 argument 1 - t stays inside the disk
        let keep = if lower.get(0).re <= lower.get(1).re { 0 } else { 1 };
        let wf = p2_integer_weight([lower.get(0), lower.get(1)], [upper.get(0), upper.get(1)], m, keep);
        let g0 = w.behavior().at_zero;
        let failure = std::cell::RefCell::new(None);
        let h = |t: f64, s: f64| -> C64 {
            let v = if t >= 0.1 { wf(t, s).map(|v| v * t.powf(-g0)) } else { w.eval_factored(t, s) };
            match v {
                Ok(v) => v * kernel(t, s),
                Err(e) => {
                    failure.borrow_mut().get_or_insert(e);
                    C64::new(f64::NAN, 0.0)
                }
            }
        };
        let r = integrate_01_factored(&h, w.behavior(), breaks, opts);
        if let Some(e) = failure.into_inner() {
            return Err(e);
        }
        return r;
    }
    let w = GWeight::new(&GWeightSpec::new(lower.clone(), upper.clone())?)?;
    w.integrate(kernel, 0.0, breaks, opts)
}

/// Representations for psi = -m (stieltjes, laplace) or sum b - sum a = 1/2 - m
/// (cosine): a finite sum of terminating hypergeometric terms plus an integral
/// against the weight, whose Mellin transform is corrected by the q-polynomial.
pub fn negint_psi_eval(kind: Kind, sigma: Option<C64>, a: &ParamVec, b: &ParamVec, z: C64, opts: &QuadOptions) -> Result<EvalResult> {
    let psi = b.sum() - a.sum();
    let sigma = sigma.unwrap_or(c(1.0));
    match kind {
        Kind::Stieltjes | Kind::Laplace => {
            require(a.len() == b.len() && !a.is_empty(), "equal positive lengths")?;
            let m = match near_integer(psi, 1e-10) {
                Some(n) if n <= 0 => (-n) as usize,
                _ => return Err(Error::NotIntegerExcess { psi: psi.re }),
            };
            require(a.min_re() > 0.0, "Re(a) > 0")?;
            if kind == Kind::Stieltjes && z.im == 0.0 && z.re <= -1.0 {
                return Err(Error::BranchCut);
            }
            let k = (0..a.len()).min_by(|&i, &j| a.get(i).re.total_cmp(&a.get(j).re)).unwrap_or(0);
            let ak = a.get(k);
            let g = g_explicit(a, b, k, m)?.g;
            let mut finite = c(0.0);
            for (j, &gj) in g.iter().enumerate() {
                let jm = c(j as f64 - m as f64);
                let term = if kind == Kind::Stieltjes {
                    terminating_regularized(vec![sigma, jm], ak + jm, z / (1.0 + z))?
                } else {
                    terminating_regularized(vec![jm], ak + jm, z)?
                };
                finite += gj * term;
            }
            let outer = if kind == Kind::Stieltjes { (1.0 + z).powc(-sigma) } else { (-z).exp() };
            finite *= gamma(ak) * outer;
            let (lower, upper) = (a.shifted(-1.0), b.shifted(-1.0));
            let r = if kind == Kind::Stieltjes {
                negint_integral(&lower, &upper, m, &|s, _| (1.0 + z * s).powc(-sigma), &breakpoints(z.norm(), None), opts)?
            } else {
                negint_integral(&lower, &upper, m, &|s, _| (-z * s).exp(), &breakpoints(z.re.max(0.0), None), opts)?
            };
            Ok(finish(gamma_ratio(b.as_slice(), a.as_slice()), r, finite, kind.method()))
        }
        Kind::Cosine => {
            require(a.len() + 1 == b.len(), "len(a) = len(b) - 1")?;
            let m = match near_integer(psi - 0.5, 1e-10) {
                Some(n) if n <= 0 => (-n) as usize,
                _ => return Err(Error::NotIntegerExcess { psi: psi.re }),
            };
            require(a.is_empty() || a.min_re() > 0.0, "Re(a) > 0")?;
            let full = a.with_real(0.5);
            let g = g_explicit(&full, b, full.len() - 1, m)?.g;
            let mut finite = c(0.0);
            let mut half = c(1.0);
            for j in 0..=m {
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                finite += sign * half * g[m - j] * hyp0f1(c(0.5 - j as f64), -z);
                half *= 0.5 + j as f64;
            }
            let r = negint_integral(
                &full.shifted(-1.0),
                &b.shifted(-1.0),
                m,
                &cos_kernel(z),
                &sqrt_breakpoints(2.0 * z.sqrt().re.abs()),
                opts,
            )?;
            let pre = gamma_ratio(b.as_slice(), a.as_slice()) / PI.sqrt();
            Ok(finish(pre, r, finite, Method::Cosine))
        }
        _ => Err(Error::DomainError(format!("{kind} has no integer-excess form"))),
    }
}

/// Integral of phi against the probability measure
/// Gamma(b)/Gamma(a) G(s | b; a) ds/s (psi > 0), or, when psi = 0, against the
/// measure with the unit atom at 1 added.
pub fn measure_integral(a: &ParamVec, b: &ParamVec, phi: &dyn Fn(f64, f64) -> C64, opts: &QuadOptions) -> Result<C64> {
    require(a.len() == b.len() && !a.is_empty(), "equal positive lengths")?;
    require(a.min_re() > 0.0, "Re(a) > 0")?;
    let psi = b.sum() - a.sum();
    let pre = gamma_ratio(b.as_slice(), a.as_slice());
    let spec = GWeightSpec::new(a.clone(), b.clone())?;
    let w = match GWeight::new(&spec) {
        Ok(w) => w,
        Err(Error::AtomOnly) => return Ok(phi(1.0, 0.0)),
        Err(e) => return Err(e),
    };
    let atom = if psi.norm() <= 1e-10 { phi(1.0, 0.0) } else { c(0.0) };
    require(psi.re > 0.0 || atom != c(0.0) || psi.norm() <= 1e-10, "Re(psi) >= 0")?;
    let r = w.integrate(phi, -1.0, &[], opts)?;
    Ok(pre * (atom + r.value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{hyp, series_eval};

    fn pv(x: &[f64]) -> ParamVec {
        ParamVec::real(x)
    }

    fn series(a: &[C64], b: &[C64], z: C64) -> C64 {
        hyp(a, b, z).unwrap()
    }

    fn close(x: C64, y: C64, tol: f64) -> bool {
        (x - y).norm() <= tol * y.norm().max(1e-300)
    }

    #[test]
    fn stieltjes_examples() {
        let o = QuadOptions::default();
        let (a, b) = (pv(&[0.8, 1.3]), pv(&[1.1, 1.9]));
        let r = stieltjes_eval(c(0.7), &a, &b, c(0.4), &o).unwrap();
        let s = series(&[c(0.7), c(0.8), c(1.3)], &[c(1.1), c(1.9)], c(-0.4));
        assert!(close(r.value, s, 1e-9), "{} {}", r.value, s);
        let r0 = stieltjes_eval(c(0.7), &a, &b, c(0.0), &o).unwrap();
        assert!((r0.value - 1.0).norm() < 1e-10);
        // Euler integral for 2F1, p = 1
        let r = stieltjes_eval(c(1.5), &pv(&[0.6]), &pv(&[2.1]), c(0.5), &o).unwrap();
        let s = hyp2f1(c(1.5), c(0.6), c(2.1), -0.5).unwrap();
        assert!(close(r.value, s, 1e-10));
        assert!(matches!(stieltjes_eval(c(1.0), &a, &b, c(-2.0), &o), Err(Error::BranchCut)));
        assert!(matches!(stieltjes_eval(c(1.0), &pv(&[1.0]), &pv(&[0.5]), c(1.0), &o), Err(Error::HypothesisFailed(_))));
    }

    #[test]
    fn stieltjes_outside_disk_is_stable() {
        let (a, b) = (pv(&[0.8, 1.3]), pv(&[1.1, 1.9]));
        let o = QuadOptions::default();
        let big = QuadOptions { budget: 2 * o.budget, ..o };
        let r1 = stieltjes_eval(c(0.7), &a, &b, c(2.0), &o).unwrap();
        let r2 = stieltjes_eval(c(0.7), &a, &b, c(2.0), &big).unwrap();
        assert!((r1.value - r2.value).norm() < 1e-9);
    }

    #[test]
    fn laplace_and_cosine_examples() {
        let o = QuadOptions::default();
        let r = laplace_eval(&pv(&[0.6, 1.2]), &pv(&[0.9, 1.8]), c(3.0), &o).unwrap();
        let s = series(&[c(0.6), c(1.2)], &[c(0.9), c(1.8)], c(-3.0));
        assert!(close(r.value, s, 1e-9), "{} {}", r.value, s);
        let r = laplace_eval(&pv(&[0.6]), &pv(&[1.7]), c(2.5), &o).unwrap();
        assert!(close(r.value, series(&[c(0.6)], &[c(1.7)], c(-2.5)), 1e-9));
        let r = cosine_eval(&pv(&[0.8]), &pv(&[1.1, 1.4]), c(2.0), &o).unwrap();
        let s = series(&[c(0.8)], &[c(1.1), c(1.4)], c(-2.0));
        assert!(close(r.value, s, 1e-9), "{} {}", r.value, s);
        let r = cosine_eval(&ParamVec::empty(), &pv(&[1.3]), c(5.0), &o).unwrap();
        assert!(close(r.value, hyp0f1(c(1.3), c(-5.0)), 1e-9));
        let r = cosine_eval(&pv(&[0.8]), &pv(&[1.1, 1.4]), c(0.0), &o).unwrap();
        assert!((r.value - 1.0).norm() < 1e-10);
    }

    #[test]
    fn large_oscillatory_cosine() {
        let o = QuadOptions::default();
        let r = cosine_eval(&pv(&[0.8]), &pv(&[1.6, 1.4]), c(400.0), &o).unwrap();
        let s = series(&[c(0.8)], &[c(1.6), c(1.4)], c(-400.0));
        assert!((r.value - s).norm() < 1e-9, "{} {}", r.value, s);
    }

    #[test]
    fn sine_matches_series() {
        let o = QuadOptions::default();
        let (a, b) = (pv(&[0.5]), pv(&[1.5, 1.6]));
        for &z in &[0.5, 2.0, 7.0] {
            let r = sine_repr_eval(&a, &b, c(z), &o).unwrap();
            let s = series(&[c(0.5)], &[c(1.5), c(1.6)], c(-z * z / 4.0));
            assert!(close(r.value, s, 1e-9), "{z}: {} {}", r.value, s);
        }
        assert!(sine_hypotheses(&[0.5], &[1.5, 1.6]).is_some());
        let w = GWeight::new(&GWeightSpec::real(&[-0.5, 0.5], &[0.5, 0.6]).unwrap()).unwrap();
        let mut prev = f64::INFINITY;
        for i in 1..200 {
            let v = w.eval(i as f64 / 200.0).unwrap().value.re;
            assert!(v >= 0.0 && v <= prev + 1e-12);
            prev = v;
        }
    }

    #[test]
    fn bessel_kernel_matches_cosine() {
        let o = QuadOptions::default();
        let (a, b) = (pv(&[1.8]), pv(&[1.2, 2.4]));
        for &z in &[0.0, 1.0, 6.0] {
            let r = bessel_kernel_eval(&a, &b, 0, c(z), &o).unwrap();
            let q = cosine_eval(&a, &b, c(z), &o).unwrap();
            assert!((r.value - q.value).norm() < 1e-8 * q.value.norm().max(1.0), "{z}");
        }
        let r = bessel_kernel_eval(&ParamVec::empty(), &pv(&[1.5]), 0, c(2.0), &o).unwrap();
        assert!(close(r.value, hyp0f1(c(1.5), c(-2.0)), 1e-14));
    }

    #[test]
    fn zero_balanced_forms() {
        let o = QuadOptions::default();
        let r = zero_balanced_eval(Kind::Laplace, None, &pv(&[1.3]), &pv(&[1.3]), c(0.7), &o).unwrap();
        assert!((r.value - (-0.7f64).exp()).norm() < 1e-15);
        assert!(r.atom_included);
        let (a, b) = (pv(&[0.7, 1.6]), pv(&[1.1, 1.2]));
        let r = zero_balanced_eval(Kind::Stieltjes, Some(c(0.9)), &a, &b, c(0.3), &o).unwrap();
        let s = series(&[c(0.9), c(0.7), c(1.6)], &[c(1.1), c(1.2)], c(-0.3));
        assert!(close(r.value, s, 1e-9), "{} {}", r.value, s);
        let r = zero_balanced_eval(Kind::Laplace, None, &a, &b, c(2.0), &o).unwrap();
        assert!(close(r.value, series(&[c(0.7), c(1.6)], &[c(1.1), c(1.2)], c(-2.0)), 1e-9));
        let (a, b) = (pv(&[0.9]), pv(&[0.6, 0.8]));
        let r = zero_balanced_eval(Kind::Cosine, None, &a, &b, c(1.7), &o).unwrap();
        let s = series(&[c(0.9)], &[c(0.6), c(0.8)], c(-1.7));
        assert!(close(r.value, s, 1e-9), "{} {}", r.value, s);
        assert!(matches!(zero_balanced_eval(Kind::Laplace, None, &pv(&[0.7]), &pv(&[1.2]), c(1.0), &o), Err(Error::NotZeroBalanced)));
    }

    #[test]
    fn negative_integer_excess_forms() {
        let o = QuadOptions::default();
        // m = 0 agrees with the zero-balanced form
        let (a, b) = (pv(&[0.7, 1.6]), pv(&[1.1, 1.2]));
        let x = negint_psi_eval(Kind::Laplace, None, &a, &b, c(1.1), &o).unwrap();
        let y = zero_balanced_eval(Kind::Laplace, None, &a, &b, c(1.1), &o).unwrap();
        assert!((x.value - y.value).norm() < 1e-10);
        // m = 1 Kummer type at z = 1.5
        let (a, b) = (pv(&[1.4, 1.9]), pv(&[1.1, 1.2]));
        let x = negint_psi_eval(Kind::Laplace, None, &a, &b, c(1.5), &o).unwrap();
        let s = series(&[c(1.4), c(1.9)], &[c(1.1), c(1.2)], c(-1.5));
        assert!(close(x.value, s, 1e-9), "{} {}", x.value, s);
        // m = 2 Gauss type
        let (a, b) = (pv(&[1.4, 2.9]), pv(&[1.1, 1.2]));
        let x = negint_psi_eval(Kind::Stieltjes, Some(c(0.8)), &a, &b, c(0.6), &o).unwrap();
        let s = series(&[c(0.8), c(1.4), c(2.9)], &[c(1.1), c(1.2)], c(-0.6));
        assert!(close(x.value, s, 1e-9), "{} {}", x.value, s);
        // p = 3 through the general weight
        let (a, b) = (pv(&[1.4, 2.4, 0.8]), pv(&[1.1, 1.2, 1.3]));
        let x = negint_psi_eval(Kind::Laplace, None, &a, &b, c(0.9), &o).unwrap();
        let s = series(&[c(1.4), c(2.4), c(0.8)], &[c(1.1), c(1.2), c(1.3)], c(-0.9));
        assert!(close(x.value, s, 1e-9), "{} {}", x.value, s);
        // Bessel type with sum b - a = -1/2
        let (a, b) = (pv(&[2.9]), pv(&[1.1, 1.3]));
        let x = negint_psi_eval(Kind::Cosine, None, &a, &b, c(2.2), &o).unwrap();
        let s = series(&[c(2.9)], &[c(1.1), c(1.3)], c(-2.2));
        assert!(close(x.value, s, 1e-9), "{} {}", x.value, s);
        assert!(matches!(negint_psi_eval(Kind::Laplace, None, &pv(&[0.5]), &pv(&[1.2]), c(1.0), &o), Err(Error::NotIntegerExcess { .. })));
    }

    #[test]
    fn complex_parameters() {
        let o = QuadOptions::default();
        let a = ParamVec::new(vec![C64::new(0.8, 0.3), c(1.2)]);
        let b = ParamVec::new(vec![C64::new(1.5, -0.2), c(2.0)]);
        let z = C64::new(0.3, 0.4);
        let r = stieltjes_eval(C64::new(0.5, 0.1), &a, &b, z, &o).unwrap();
        let spec = HypSpec::new(a.clone().concat(&ParamVec::empty()).with(C64::new(0.5, 0.1)), b.clone()).unwrap();
        let s = series_eval(&spec, -z, 1e-15).unwrap().value;
        assert!(close(r.value, s, 1e-9), "{} {}", r.value, s);
    }
}
