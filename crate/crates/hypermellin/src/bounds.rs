//! Two-sided Luke-type bounds, Bessel-type magnitude bounds, weight
//! monotonicity and zero-free scans.
//!
//! Every bound and scan is gated on a sign certificate for the relevant
//! v-function; nothing runs on unverified hypotheses.

use crate::conditions::{check_v_nonneg, CertMethod, Certificate, Status};
use crate::error::{Error, Result};
use crate::gweight::{GWeight, GWeightSpec};
use crate::quadrature::QuadOptions;
use crate::regularization::decomposed_eval;
use crate::representations::Kind;
use crate::series::{series_eval_auto, HypSpec, ParamVec};
use crate::special::{gamma_r, gamma_ratio, is_nonpositive_integer};
use num_complex::Complex64 as C64;
use serde::Serialize;
use std::f64::consts::PI;

/// sup |J_nu| <= LANDAU_ALPHA nu^{-1/3}.
pub const LANDAU_ALPHA: f64 = 0.674885;
/// sup |J_nu(x)| <= LANDAU_BETA |x|^{-1/3}.
pub const LANDAU_BETA: f64 = 0.785747;

const SAMPLING_DEPTH: u32 = 12;

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn certify(a: &[f64], b: &[f64]) -> Certificate {
    check_v_nonneg(&ParamVec::real(a), &ParamVec::real(b), SAMPLING_DEPTH)
}

fn gate(cert: Certificate, what: &str) -> Result<Certificate> {
    if cert.holds() {
        Ok(cert)
    } else {
        Err(Error::HypothesisFailed(format!("{what}: v-condition {:?}", cert.status)))
    }
}

fn without(x: &[f64], i: usize) -> Vec<f64> {
    x.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, &v)| v).collect()
}

/// First pair (k, s) with a_k <= min(cap, b_s - 1) and v >= 0 on the
/// vectors with a_k and b_s removed.
pub fn index_pair(a: &[f64], b: &[f64], cap: f64) -> Option<(usize, usize, Certificate)> {
    for k in 0..a.len() {
        for s in 0..b.len() {
            if a[k] <= cap.min(b[s] - 1.0) {
                let cert = certify(&without(a, k), &without(b, s));
                if cert.holds() {
                    return Some((k, s, cert));
                }
            }
        }
    }
    None
}

/// Two-sided bound at one point, with the function value from an
/// independent evaluation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub x: f64,
    pub lower: f64,
    pub upper: f64,
    pub value: f64,
    /// 1 when the correction term enters with a negative factor.
    pub alpha: u8,
    pub hypothesis: Certificate,
}

impl BoundReport {
    pub fn brackets(&self, slack: f64) -> bool {
        let s = slack * self.value.abs().max(1.0);
        self.lower - s <= self.value && self.value <= self.upper + s
    }
}

fn check_luke(a: &[f64], b: &[f64], n: usize) -> Result<Certificate> {
    if a.len() != b.len() || a.is_empty() {
        return Err(Error::DomainError("a and b must have equal positive length".into()));
    }
    if let Some(index) = b.iter().position(|&x| is_nonpositive_integer(c(x))) {
        return Err(Error::InvalidDenominator { index });
    }
    let nf = n as f64;
    let psi: f64 = b.iter().sum::<f64>() - a.iter().sum::<f64>();
    if a.iter().any(|&x| x < -nf) || psi < -nf {
        return Err(Error::HypothesisFailed(format!("a and psi must be >= -{n}")));
    }
    let mut la: Vec<f64> = a.iter().map(|x| x + nf).collect();
    la.push(1.0);
    let mut lb: Vec<f64> = b.iter().map(|x| x + nf).collect();
    lb.push(nf + 1.0);
    gate(certify(&la, &lb), "augmented vectors")
}

struct LukeParts {
    head: f64,
    coef: f64,
    mean: f64,
}

fn luke_parts(sigma: Option<f64>, a: &[f64], b: &[f64], x: f64, n: usize) -> LukeParts {
    let mut head = 0.0;
    let mut term = 1.0;
    for k in 0..n {
        head += term;
        let kf = k as f64;
        let mut r = x / (kf + 1.0);
        for (&ai, &bi) in a.iter().zip(b) {
            r *= (ai + kf) / (bi + kf);
        }
        if let Some(s) = sigma {
            r *= s + kf;
        }
        term *= r;
    }
    let nf = n as f64;
    let mean = a.iter().zip(b).map(|(&ai, &bi)| (ai + nf) / (bi + nf)).product::<f64>() / (nf + 1.0);
    LukeParts { head, coef: term, mean }
}

/// Correction c * E and c * U placed in order: the normalized integral lies
/// between the Jensen value E and the chord value U, and a negative c flips them.
fn bracket(parts: &LukeParts, e: f64, u: f64) -> (f64, f64) {
    let (x, y) = (parts.coef * e, parts.coef * u);
    (parts.head + x.min(y), parts.head + x.max(y))
}

/// Bounds for pFp(a; b; x), real x, with regularization order n.
pub fn luke_bounds_kummer(a: &[f64], b: &[f64], x: f64, n: usize) -> Result<BoundReport> {
    let hypothesis = check_luke(a, b, n)?;
    let parts = luke_parts(None, a, b, x, n);
    let e = (x * parts.mean).exp();
    let u = x.exp_m1() * parts.mean + 1.0;
    let (lower, upper) = bracket(&parts, e, u);
    let value = oracle(Kind::Laplace, None, a, b, -x)?;
    Ok(BoundReport { x, lower, upper, value, alpha: u8::from(parts.coef < 0.0), hypothesis })
}

/// Bounds for p+1Fp(sigma, a; b; x), x < 1.
pub fn luke_bounds_gauss(sigma: f64, a: &[f64], b: &[f64], x: f64, n: usize) -> Result<BoundReport> {
    if x >= 1.0 {
        return Err(Error::DomainError(format!("x = {x} must be below 1")));
    }
    let hypothesis = check_luke(a, b, n)?;
    let parts = luke_parts(Some(sigma), a, b, x, n);
    let s = sigma + n as f64;
    let e = (1.0 - x * parts.mean).powf(-s);
    let u = ((1.0 - x).powf(-s) - 1.0) * parts.mean + 1.0;
    let (lower, upper) = bracket(&parts, e, u);
    let value = oracle(Kind::Stieltjes, Some(sigma), a, b, -x)?;
    Ok(BoundReport { x, lower, upper, value, alpha: u8::from(parts.coef < 0.0), hypothesis })
}

/// Function value through the decomposition, which covers every real
/// parameter set with b off the poles.
fn oracle(kind: Kind, sigma: Option<f64>, a: &[f64], b: &[f64], z: f64) -> Result<f64> {
    let (pa, pb) = (ParamVec::real(a), ParamVec::real(b));
    if a.iter().any(|&v| is_nonpositive_integer(c(v))) || z.abs() < 0.5 {
        // polynomial, or a short series
        let mut num = pa.clone();
        if let Some(s) = sigma {
            num = ParamVec::real(&[s]).concat(&num);
        }
        if let Ok(r) = series_eval_auto(&HypSpec::new(num, pb.clone())?, c(-z), 1e-15) {
            return Ok(r.value.re);
        }
    }
    let r = decomposed_eval(kind, sigma.map(c), &pa, &pb, c(z), None, &QuadOptions::default())?;
    Ok(r.value.re)
}

/// Real value of p-1Fp(a; b; x) by the series (extended precision when needed).
pub fn eval_real(a: &[f64], b: &[f64], x: f64) -> Result<f64> {
    let spec = HypSpec::new(ParamVec::real(a), ParamVec::real(b))?;
    Ok(series_eval_auto(&spec, c(x), 1e-14)?.value.re)
}

/// |p-1Fp(a'; b; -x)| and the margin 1 - |F|, for x > 0 under v >= 0 on ((a', 1/2), b).
pub fn bessel_unit_bound(a: &[f64], b: &[f64], x: f64) -> Result<(f64, f64)> {
    if a.len() + 1 != b.len() {
        return Err(Error::DomainError("need len(a') = len(b) - 1".into()));
    }
    if x <= 0.0 || a.iter().chain(b).any(|&v| v <= 0.0) {
        return Err(Error::HypothesisFailed("positive parameters and x > 0 required".into()));
    }
    let mut full = a.to_vec();
    full.push(0.5);
    gate(certify(&full, b), "(a', 1/2) against b")?;
    let f = eval_real(a, b, -x)?.abs();
    Ok((f, 1.0 - f))
}

/// Which Bessel-function estimate feeds the bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecayVariant {
    /// |J_nu| <= 1
    Unit,
    /// |J_nu| <= alpha nu^{-1/3}
    LandauNu,
    /// |J_nu(y)| <= beta y^{-1/3}
    LandauX,
    /// |J_nu(y)| <= (y/2)^nu / Gamma(nu+1)
    SmallX,
}

/// Upper bound for |p-1Fp(a; b; -x)|, x > 0, from the Bessel kernel with index j.
pub fn bessel_decay_bound(a: &[f64], b: &[f64], j: usize, x: f64, variant: DecayVariant) -> Result<f64> {
    if a.len() + 1 != b.len() || j >= b.len() {
        return Err(Error::DomainError("need len(a) = len(b) - 1 and j < len(b)".into()));
    }
    if x <= 0.0 {
        return Err(Error::DomainError("x must be positive".into()));
    }
    let bj = b[j];
    let nu = bj - 1.0;
    let rest = without(b, j);
    let shift = (bj + 1.0) / 2.0;
    if a.iter().any(|&v| v - shift <= 0.0) {
        return Err(Error::HypothesisFailed("a - (b_j + 1)/2 > 0".into()));
    }
    if variant != DecayVariant::SmallX && bj < 1.0 {
        return Err(Error::HypothesisFailed("b_j >= 1".into()));
    }
    if variant == DecayVariant::LandauNu && nu <= 0.0 {
        return Err(Error::HypothesisFailed("b_j > 1 for the nu^{-1/3} estimate".into()));
    }
    if variant == DecayVariant::SmallX && nu < -0.5 {
        return Err(Error::HypothesisFailed("nu >= -1/2".into()));
    }
    gate(certify(a, &rest), "a against b_[j]")?;
    // Gamma(b)/Gamma(a) times the Mellin moment of order s of the weight
    // G(t | b_[j] - shift; a - shift)
    let moment = |s: f64| -> f64 {
        let num: Vec<C64> = b.iter().map(|&v| c(v)).chain(a.iter().map(|&v| c(v - shift + s))).collect();
        let den: Vec<C64> = a.iter().map(|&v| c(v)).chain(rest.iter().map(|&v| c(v - shift + s))).collect();
        gamma_ratio(&num, &den).re
    };
    let power = x.powf(-nu / 2.0);
    Ok(match variant {
        DecayVariant::Unit => power * moment(1.0),
        DecayVariant::LandauNu => power * moment(1.0) * LANDAU_ALPHA * nu.powf(-1.0 / 3.0),
        DecayVariant::LandauX => power * x.powf(-1.0 / 6.0) * LANDAU_BETA * 2f64.powf(-1.0 / 3.0) * moment(5.0 / 6.0),
        DecayVariant::SmallX => {
            power * x.powf(nu / 2.0) * moment(1.0 + nu / 2.0) / gamma_r(nu + 1.0)
        }
    })
}

/// Samples G(t | b; a) on `grid` interior points and certifies that it is
/// positive and decreasing, under a_k <= min(0, b_s - 1) and v >= 0 on the
/// reduced vectors (indexes 0-based).
pub fn g_monotone_check(a: &[f64], b: &[f64], k: usize, s: usize, grid: usize) -> Result<Certificate> {
    if a.len() != b.len() || k >= a.len() || s >= b.len() {
        return Err(Error::DomainError("index out of range".into()));
    }
    if a[k] > 0f64.min(b[s] - 1.0) {
        return Err(Error::HypothesisFailed(format!("a_k = {} exceeds min(0, b_s - 1)", a[k])));
    }
    gate(certify(&without(a, k), &without(b, s)), "reduced vectors")?;
    let w = match GWeight::new(&GWeightSpec::real(a, b)?) {
        Ok(w) => w,
        Err(Error::AtomOnly) => return Ok(Certificate { status: Status::Holds, witness: None, method: CertMethod::SamplingRefinement, depth: None }),
        Err(e) => return Err(e),
    };
    let mut prev = f64::INFINITY;
    for i in 1..grid {
        // denser near both ends
        let u = i as f64 / grid as f64;
        let t = 0.5 - 0.5 * (PI * u).cos();
        let g = w.eval(t)?.value.re;
        if g <= 0.0 || g > prev + 1e-10 * prev.abs().max(1.0) {
            log::error!("weight not positive and decreasing at t = {t}: {g} after {prev}");
            return Err(Error::CounterexampleFound(t));
        }
        prev = g;
    }
    Ok(Certificate { status: Status::Holds, witness: None, method: CertMethod::SamplingRefinement, depth: None })
}

/// Which zero-free statement a scan exercises.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScanKind {
    /// pFp(a; b; x) has no real zeros.
    KummerHalfplane,
    /// p-1Fp(a'; b; x) has no real zeros, with 0 < F < 1 for x < 0.
    BesselNozero,
    /// p-1Fp(a'; b; x) -/+ 1 vanish only at x = 0.
    BesselPm1,
}

impl std::str::FromStr for ScanKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "kummer-halfplane" => Ok(ScanKind::KummerHalfplane),
            "bessel-nozero" => Ok(ScanKind::BesselNozero),
            "bessel-pm1" => Ok(ScanKind::BesselPm1),
            other => Err(Error::DomainError(format!("unknown scan kind '{other}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanReport {
    pub kind: ScanKind,
    pub points: usize,
    pub sign_changes: usize,
    pub min_abs: f64,
    pub min_value: f64,
    pub max_value: f64,
    pub hypothesis: Certificate,
}

fn scan_hypothesis(kind: ScanKind, a: &[f64], b: &[f64]) -> Result<Certificate> {
    if a.iter().chain(b).any(|&v| v <= 0.0) {
        return Err(Error::HypothesisFailed("parameters must be positive".into()));
    }
    match kind {
        ScanKind::KummerHalfplane => {
            if a.len() != b.len() {
                return Err(Error::DomainError("need len(a) = len(b)".into()));
            }
            index_pair(a, b, 1.0).map(|(_, _, c)| c).ok_or_else(|| Error::HypothesisFailed("no index pair with a_k <= min(1, b_s - 1) and v >= 0".into()))
        }
        ScanKind::BesselNozero => {
            if a.len() + 1 != b.len() {
                return Err(Error::DomainError("need len(a') = len(b) - 1".into()));
            }
            let mut full = a.to_vec();
            full.push(1.5);
            index_pair(&full, b, 1.0)
                .map(|(_, _, c)| c)
                .ok_or_else(|| Error::HypothesisFailed("no index pair for (a', 3/2) with a_k <= min(1, b_s - 1) and v >= 0".into()))
        }
        ScanKind::BesselPm1 => {
            if a.len() + 1 != b.len() {
                return Err(Error::DomainError("need len(a') = len(b) - 1".into()));
            }
            let mut full = a.to_vec();
            full.push(0.5);
            gate(certify(&full, b), "(a', 1/2) against b")
        }
    }
}

/// Evaluates the target on `grid` + 1 equally spaced points of [lo, hi] and
/// counts sign changes (of F, or of F - 1 and F + 1 away from 0 for `BesselPm1`).
pub fn zero_free_scan(kind: ScanKind, a: &[f64], b: &[f64], lo: f64, hi: f64, grid: usize) -> Result<ScanReport> {
    if !(lo < hi) || grid == 0 {
        return Err(Error::DomainError("need lo < hi and a positive grid".into()));
    }
    let hypothesis = scan_hypothesis(kind, a, b)?;
    let mut sign_changes = 0;
    let mut min_abs = f64::INFINITY;
    let (mut min_value, mut max_value) = (f64::INFINITY, f64::NEG_INFINITY);
    let mut prev: Option<(f64, f64)> = None;
    let mut points = 0;
    for i in 0..=grid {
        let x = lo + (hi - lo) * i as f64 / grid as f64;
        if kind == ScanKind::BesselPm1 && x.abs() < 1e-12 {
            prev = None;
            continue;
        }
        let f = eval_real(a, b, x)?;
        points += 1;
        min_value = min_value.min(f);
        max_value = max_value.max(f);
        let probes = if kind == ScanKind::BesselPm1 { (f - 1.0, f + 1.0) } else { (f, f) };
        min_abs = min_abs.min(probes.0.abs()).min(probes.1.abs());
        if let Some((p0, p1)) = prev {
            sign_changes += usize::from(p0 * probes.0 < 0.0) + usize::from(kind == ScanKind::BesselPm1 && p1 * probes.1 < 0.0);
        }
        prev = Some(probes);
    }
    Ok(ScanReport { kind, points, sign_changes, min_abs, min_value, max_value, hypothesis })
}

/// Heuristic count of zeros of pFp(a; b; z) inside [-r, 0] x [-r, r] from the
/// winding of the boundary image; a smoke test, not a proof.
pub fn winding_count(a: &[f64], b: &[f64], r: f64, per_side: usize) -> Result<i64> {
    let spec = HypSpec::new(ParamVec::real(a), ParamVec::real(b))?;
    let corners = [C64::new(0.0, -r), C64::new(0.0, r), C64::new(-r, r), C64::new(-r, -r)];
    let mut total = 0.0;
    let mut prev: Option<C64> = None;
    let mut first: Option<C64> = None;
    for side in 0..4 {
        let (p, q) = (corners[side], corners[(side + 1) % 4]);
        for i in 0..per_side {
            let z = p + (q - p) * (i as f64 / per_side as f64);
            let f = series_eval_auto(&spec, z, 1e-12)?.value;
            if f.norm() == 0.0 {
                return Err(Error::CounterexampleFound(z.re));
            }
            if let Some(g) = prev {
                total += (f / g).arg();
            } else {
                first = Some(f);
            }
            prev = Some(f);
        }
    }
    if let (Some(f), Some(g)) = (first, prev) {
        total += (f / g).arg();
    }
    Ok((total / (2.0 * PI)).round() as i64)
}
