//! Radial positive definite functions: membership of hypergeometric
//! functions in the classes Phi_n and Phi_inf, Schoenberg measures and their
//! moments.
//!
//! Membership is decided from v-function certificates alone.

use crate::bounds::eval_real;
use crate::conditions::{check_v_nonneg, Certificate, Status};
use crate::error::{Error, Result};
use crate::gweight::{GWeight, GWeightSpec};
use crate::quadrature::{integrate_01, integrate_semiaxis, EndpointBehavior, QuadOptions};
use crate::representations::{breakpoints, measure_integral};
use crate::series::{hyp0f1, ParamVec};
use crate::special::{gamma_r, lgamma};
use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use serde::Serialize;

/// Tolerance for deciding psi = n/2.
pub const BOUNDARY_TOL: f64 = 1e-10;

const DEPTH: u32 = 12;

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn gamma_prod(x: &[f64]) -> f64 {
    x.iter().map(|&v| gamma_r(v)).product()
}

/// Omega_n(s) = 0F1(; n/2; -s^2/4), the radial kernel of the unit sphere in R^n.
pub fn omega_n(n: usize, s: f64) -> f64 {
    hyp0f1(c(n as f64 / 2.0), c(-s * s / 4.0)).re
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RpdfKind {
    /// p+1Fp(sigma, a; b; -r^2)
    Gauss,
    /// pFp(a; b; -r^2)
    Kummer,
    /// p-1Fp(a; b; -r^2)
    Bessel,
}

impl std::str::FromStr for RpdfKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gauss" => Ok(RpdfKind::Gauss),
            "kummer" => Ok(RpdfKind::Kummer),
            "bessel" => Ok(RpdfKind::Bessel),
            other => Err(Error::DomainError(format!("unknown rpdf kind '{other}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Membership {
    InPhiInf,
    InPhiN,
    /// In Phi_n but not in Phi_{n+1}.
    BoundaryPhiN,
    NotInPhiN,
    Undecided,
}

impl std::fmt::Display for Membership {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Membership::InPhiInf => "in_phi_inf",
            Membership::InPhiN => "in_phi_n",
            Membership::BoundaryPhiN => "boundary_phi_n",
            Membership::NotInPhiN => "not_in_phi_n",
            Membership::Undecided => "undecided",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MembershipVerdict {
    pub status: Membership,
    pub n: usize,
    pub evidence: String,
    pub certificates: Vec<Certificate>,
}

fn verdict(status: Membership, n: usize, evidence: String, certificates: Vec<Certificate>) -> MembershipVerdict {
    MembershipVerdict { status, n, evidence, certificates }
}

fn excess(a: &[f64], b: &[f64]) -> f64 {
    b.iter().sum::<f64>() - a.iter().sum::<f64>()
}

/// Decides membership of the function of `kind` at argument -r^2 in Phi_n
/// (or Phi_inf).
pub fn membership(kind: RpdfKind, sigma: Option<f64>, a: &[f64], b: &[f64], n: usize) -> Result<MembershipVerdict> {
    if n == 0 {
        return Err(Error::DomainError("dimension must be positive".into()));
    }
    if a.iter().chain(b).chain(sigma.iter()).any(|&v| !(v > 0.0)) {
        return Err(Error::DomainError("parameters must be positive reals".into()));
    }
    match kind {
        RpdfKind::Gauss | RpdfKind::Kummer => {
            if a.len() != b.len() {
                return Err(Error::DomainError("need len(a) = len(b)".into()));
            }
            if kind == RpdfKind::Gauss && sigma.is_none() {
                return Err(Error::DomainError("gauss kind needs sigma".into()));
            }
            let cert = check_v_nonneg(&ParamVec::real(a), &ParamVec::real(b), DEPTH);
            let (status, why) = match cert.status {
                Status::Holds => (Membership::InPhiInf, "v_{a,b} >= 0 on [0,1]; Gaussian mixture with nonnegative weight"),
                Status::Fails => (Membership::Undecided, "v_{a,b} changes sign; the sufficient condition does not apply"),
                Status::Undecided => (Membership::Undecided, "sign of v_{a,b} undecided"),
            };
            Ok(verdict(status, n, why.into(), vec![cert]))
        }
        RpdfKind::Bessel => {
            if a.len() + 1 != b.len() {
                return Err(Error::DomainError("need len(a) = len(b) - 1".into()));
            }
            let half = n as f64 / 2.0;
            let psi = excess(a, b);
            if psi < half - BOUNDARY_TOL {
                let why = format!("psi = {psi} < n/2 = {half}; even moments grow polynomially, not a Stieltjes moment sequence");
                return Ok(verdict(Membership::NotInPhiN, n, why, vec![]));
            }
            let mut full = a.to_vec();
            full.push(half);
            let cert = check_v_nonneg(&ParamVec::real(&full), &ParamVec::real(b), DEPTH);
            let boundary = (psi - half).abs() <= BOUNDARY_TOL;
            let (status, why) = match (cert.status, boundary) {
                (Status::Holds, true) => (Membership::BoundaryPhiN, format!("v_{{(n/2,a),b}} >= 0 and psi = n/2 = {half}; Schoenberg measure has an atom at 2")),
                (Status::Holds, false) => (Membership::InPhiN, format!("v_{{(n/2,a),b}} >= 0, psi = {psi} > n/2; never in Phi_inf")),
                (Status::Fails, _) => (Membership::Undecided, "v_{(n/2,a),b} changes sign; the sufficient condition does not apply".to_string()),
                (Status::Undecided, _) => (Membership::Undecided, "sign of v_{(n/2,a),b} undecided".to_string()),
            };
            Ok(verdict(status, n, why, vec![cert]))
        }
    }
}

/// Schoenberg measure of p-1Fp(a; b; -r^2) in dimension n, supported on [0, 2].
#[derive(Debug)]
pub struct SchoenbergMeasure {
    a_full: Vec<f64>,
    b: Vec<f64>,
    scale: f64,
    weight: Option<GWeight>,
    /// Mass of the atom at t = 2 (zero unless psi = n/2).
    pub atom: f64,
    pub certificate: Certificate,
}

impl SchoenbergMeasure {
    pub fn new(a: &[f64], b: &[f64], n: usize) -> Result<Self> {
        if a.len() + 1 != b.len() || n == 0 {
            return Err(Error::DomainError("need len(a) = len(b) - 1 and n >= 1".into()));
        }
        if a.iter().chain(b).any(|&v| !(v > 0.0)) {
            return Err(Error::HypothesisFailed("parameters must be positive".into()));
        }
        let half = n as f64 / 2.0;
        let psi = excess(a, b);
        if psi < half - BOUNDARY_TOL {
            return Err(Error::HypothesisFailed(format!("psi = {psi} below n/2 = {half}")));
        }
        let mut a_full = a.to_vec();
        a_full.push(half);
        let certificate = check_v_nonneg(&ParamVec::real(&a_full), &ParamVec::real(b), DEPTH);
        if !certificate.holds() {
            return Err(Error::HypothesisFailed(format!("v_{{(n/2,a),b}} not certified: {:?}", certificate.status)));
        }
        let scale = gamma_prod(b) / gamma_prod(&a_full);
        let weight = match GWeight::new(&GWeightSpec::real(&a_full, b)?) {
            Ok(w) => Some(w),
            Err(Error::AtomOnly) => None,
            Err(e) => return Err(e),
        };
        let atom = if (psi - half).abs() <= BOUNDARY_TOL { scale } else { 0.0 };
        Ok(Self { a_full, b: b.to_vec(), scale, weight, atom, certificate })
    }

    /// Density with respect to dt on (0, 2), excluding the atom.
    pub fn density(&self, t: f64) -> Result<f64> {
        if !(t > 0.0 && t < 2.0) {
            return Err(Error::DomainError(format!("t = {t} outside (0, 2)")));
        }
        Ok(match &self.weight {
            Some(w) => 2.0 * self.scale * w.eval(t * t / 4.0)?.value.re / t,
            None => 0.0,
        })
    }

    /// Integral of phi(t) against the measure, including the atom.
    pub fn integrate(&self, phi: &dyn Fn(f64) -> f64, opts: &QuadOptions) -> Result<f64> {
        // u = t^2/4 maps the measure to Gamma(b)/Gamma(a, n/2) G(u) du/u on (0, 1)
        let f = |u: f64, _s: f64| c(phi(2.0 * u.sqrt()));
        Ok(measure_integral(&ParamVec::real(&self.a_full), &ParamVec::real(&self.b), &f, opts)?.re)
    }

    /// Even moment of order 2k by quadrature.
    pub fn moment(&self, k: usize, opts: &QuadOptions) -> Result<f64> {
        let f = |u: f64, _s: f64| c((4.0 * u).powi(k as i32));
        Ok(measure_integral(&ParamVec::real(&self.a_full), &ParamVec::real(&self.b), &f, opts)?.re)
    }
}

/// Density of the Schoenberg measure at t in (0, 2).
pub fn schoenberg_density(a: &[f64], b: &[f64], n: usize, t: f64) -> Result<f64> {
    SchoenbergMeasure::new(a, b, n)?.density(t)
}

/// 4^k (a)_k (n/2)_k / (b)_k, in logarithmic form for large k.
pub fn moment_formula(a: &[f64], b: &[f64], n: usize, k: usize) -> f64 {
    (k as f64 * 4f64.ln() + ln_normalized_moment(a, b, n, k)).exp()
}

fn ln_normalized_moment(a: &[f64], b: &[f64], n: usize, k: usize) -> f64 {
    let kf = k as f64;
    let lp = |x: f64| (lgamma(c(x + kf)) - lgamma(c(x))).re;
    a.iter().map(|&x| lp(x)).sum::<f64>() + lp(n as f64 / 2.0) - b.iter().map(|&x| lp(x)).sum::<f64>()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MomentRow {
    pub k: usize,
    pub quadrature: Option<f64>,
    pub formula: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MomentReport {
    pub rows: Vec<MomentRow>,
    /// Smallest eigenvalue over the Hankel matrices [m_{i+j}] and [m_{i+j+1}]
    /// of the normalized sequence (a)_k (n/2)_k / (b)_k.
    pub hankel_min_eigenvalue: f64,
    /// Fitted exponent r in m_k ~ k^r; close to n/2 - psi.
    pub growth_exponent: f64,
    /// Polynomial growth: neither bounded nor exponential.
    pub not_a_moment_sequence: bool,
}

/// Compares quadrature moments of the Schoenberg measure with the closed
/// form for k <= `kmax` (when the measure exists) and tests the normalized
/// sequence for being a Stieltjes moment sequence.
pub fn moment_check(a: &[f64], b: &[f64], n: usize, kmax: usize) -> Result<MomentReport> {
    let measure = SchoenbergMeasure::new(a, b, n).ok();
    let opts = QuadOptions::with_tol(1e-12);
    let mut rows = Vec::with_capacity(kmax + 1);
    for k in 0..=kmax {
        let quadrature = match &measure {
            Some(m) => Some(m.moment(k, &opts)?),
            None => None,
        };
        rows.push(MomentRow { k, quadrature, formula: moment_formula(a, b, n, k) });
    }
    let size = kmax + 1;
    let m: Vec<f64> = (0..2 * size + 1).map(|k| ln_normalized_moment(a, b, n, k).exp()).collect();
    let h0 = DMatrix::from_fn(size, size, |i, j| m[i + j]);
    let h1 = DMatrix::from_fn(size, size, |i, j| m[i + j + 1]);
    let hankel_min_eigenvalue = h0.symmetric_eigenvalues().min().min(h1.symmetric_eigenvalues().min());
    let (k1, k2) = (1000, 2000);
    let growth_exponent = (ln_normalized_moment(a, b, n, k2) - ln_normalized_moment(a, b, n, k1)) / 2f64.ln();
    let not_a_moment_sequence = growth_exponent > BOUNDARY_TOL;
    Ok(MomentReport { rows, hankel_min_eigenvalue, growth_exponent, not_a_moment_sequence })
}

/// Density w with F(-r^2) = integral over t > 0 of e^{-t r^2} w(t) dt.
///
/// Kummer: Gamma(b)/Gamma(a) G(t | b; a)/t on (0, 1).
/// Gauss: Gamma(b)/(Gamma(a) Gamma(sigma)) G^{p+1,0}_{p,p+1}(t | b; sigma, a)/t on (0, inf),
/// the G function obtained as t^sigma times the integral over y > 1 of
/// e^{-ty} y^{sigma-1} G(1/y | b; a).
pub fn phi_inf_weight(kind: RpdfKind, sigma: Option<f64>, a: &[f64], b: &[f64], t: f64) -> Result<f64> {
    PhiInfWeight::new(kind, sigma, a, b)?.eval(t)
}

pub struct PhiInfWeight {
    kind: RpdfKind,
    sigma: f64,
    scale: f64,
    weight: GWeight,
    min_a: f64,
}

impl PhiInfWeight {
    pub fn new(kind: RpdfKind, sigma: Option<f64>, a: &[f64], b: &[f64]) -> Result<Self> {
        let sigma = match kind {
            RpdfKind::Kummer => 1.0,
            RpdfKind::Gauss => sigma.ok_or_else(|| Error::DomainError("gauss kind needs sigma".into()))?,
            RpdfKind::Bessel => return Err(Error::DomainError("Bessel type functions are never in Phi_inf".into())),
        };
        let v = membership(kind, Some(sigma), a, b, 1)?;
        if v.status != Membership::InPhiInf {
            return Err(Error::HypothesisFailed(v.evidence));
        }
        let mut scale = gamma_prod(b) / gamma_prod(a);
        if kind == RpdfKind::Gauss {
            scale /= gamma_r(sigma);
        }
        let weight = GWeight::new(&GWeightSpec::real(a, b)?)?;
        let min_a = a.iter().copied().fold(f64::INFINITY, f64::min);
        Ok(Self { kind, sigma, scale, weight, min_a })
    }

    /// Exponent r with w(t) ~ t^r at the origin.
    pub fn exponent_at_zero(&self) -> f64 {
        match self.kind {
            RpdfKind::Gauss => self.sigma.min(self.min_a) - 1.0,
            _ => self.min_a - 1.0,
        }
    }

    pub fn eval(&self, t: f64) -> Result<f64> {
        if !(t > 0.0) {
            return Err(Error::DomainError(format!("t = {t} must be positive")));
        }
        match self.kind {
            RpdfKind::Kummer => {
                if t >= 1.0 {
                    return Ok(0.0);
                }
                Ok(self.scale * self.weight.eval(t)?.value.re / t)
            }
            _ => {
                // y = 1/u: t^{sigma-1} times the integral over (0,1) of e^{-t/u} u^{-sigma-1} G(u)
                let s = self.sigma;
                let phi = |u: f64, _v: f64| c((-t / u - (s + 1.0) * u.ln()).exp());
                let breaks = if t < 0.25 { breakpoints(1.0 / t, None) } else { vec![] };
                let opts = QuadOptions::with_tol(1e-13);
                let r = self.weight.integrate(&phi, 0.0, &breaks, &opts)?;
                Ok(self.scale * t.powf(s - 1.0) * r.value.re)
            }
        }
    }

    /// F(-r^2) rebuilt as the Laplace transform of the weight.
    pub fn laplace(&self, r: f64, opts: &QuadOptions) -> Result<f64> {
        let f = |t: f64| match self.eval(t) {
            Ok(w) => c((-t * r * r).exp() * w),
            Err(_) => c(f64::NAN),
        };
        let res = match self.kind {
            RpdfKind::Kummer => integrate_01(&|t, _| f(t), EndpointBehavior::new(self.exponent_at_zero(), 0.0), opts)?,
            _ => integrate_semiaxis(&f, 1.0 + r * r, self.exponent_at_zero(), opts)?,
        };
        if !res.value.re.is_finite() {
            return Err(Error::EvaluationFailed("weight evaluation failed inside the Laplace integral".into()));
        }
        Ok(res.value.re)
    }
}

/// Density of |X| for X ~ N(0, 2t I_n), so that e^{-t r^2} equals the
/// mean of Omega_n(r |X|).
pub fn gaussian_radial_density(n: usize, t: f64, rho: f64) -> f64 {
    let h = n as f64 / 2.0;
    let ln = 2f64.ln() + (n as f64 - 1.0) * rho.ln() - rho * rho / (4.0 * t) - h * (4.0 * t).ln() - lgamma(c(h)).re;
    ln.exp()
}

/// One elementwise step a_i -> a' < a_i or b_j -> b' > b_j.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MixingStep {
    Numerator { index: usize, value: f64 },
    Denominator { index: usize, value: f64 },
}

/// p-1Fp at -r^2 after `step`, rebuilt as a Beta mixture of the original
/// function at -(r t)^2, together with the direct value.
pub fn beta_mixing(a: &[f64], b: &[f64], step: MixingStep, r: f64, opts: &QuadOptions) -> Result<(f64, f64)> {
    let (mut a2, mut b2) = (a.to_vec(), b.to_vec());
    let (alpha, beta) = match step {
        MixingStep::Numerator { index, value } => {
            let old = *a.get(index).ok_or_else(|| Error::DomainError("index out of range".into()))?;
            if !(0.0 < value && value < old) {
                return Err(Error::HypothesisFailed("need 0 < a' < a".into()));
            }
            a2[index] = value;
            (value, old - value)
        }
        MixingStep::Denominator { index, value } => {
            let old = *b.get(index).ok_or_else(|| Error::DomainError("index out of range".into()))?;
            if !(value > old && old > 0.0) {
                return Err(Error::HypothesisFailed("need b' > b > 0".into()));
            }
            b2[index] = value;
            (old, value - old)
        }
    };
    // u = t^2: the mixing density becomes Beta(alpha, beta) in u
    let norm = gamma_r(alpha + beta) / (gamma_r(alpha) * gamma_r(beta));
    let f = |u: f64, s: f64| match eval_real(a, b, -r * r * u) {
        Ok(v) => c(norm * u.powf(alpha - 1.0) * s.powf(beta - 1.0) * v),
        Err(_) => c(f64::NAN),
    };
    let mixed = integrate_01(&f, EndpointBehavior::new(alpha - 1.0, beta - 1.0), opts)?.value.re;
    if !mixed.is_finite() {
        return Err(Error::EvaluationFailed("series failed inside the mixing integral".into()));
    }
    Ok((mixed, eval_real(&a2, &b2, -r * r)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::integrate_interval;
    use std::f64::consts::PI;

    #[test]
    fn omega_closed_forms() {
        for &s in &[0.0, 1.0, PI, 7.5] {
            assert!((omega_n(1, s) - s.cos()).abs() < 1e-13, "{s}");
        }
        for n in 1..6 {
            assert_eq!(omega_n(n, 0.0), 1.0);
        }
        assert!((omega_n(3, 1.0) - 1f64.sin()).abs() < 1e-14);
    }

    #[test]
    fn omega_squared_boundary() {
        for n in 2..=4 {
            let nf = n as f64;
            let (a, b) = ([nf / 2.0, (nf - 1.0) / 2.0], [nf / 2.0, nf / 2.0, nf - 1.0]);
            for &r in &[0.3, 1.7] {
                let f = eval_real(&a, &b, -r * r).unwrap();
                assert!((f - omega_n(n, r).powi(2)).abs() < 1e-12, "n={n} r={r}");
            }
            let v = membership(RpdfKind::Bessel, None, &a, &b, 2 * n - 1).unwrap();
            assert_eq!(v.status, Membership::BoundaryPhiN, "{v:?}");
            let v = membership(RpdfKind::Bessel, None, &a, &b, 2 * n).unwrap();
            assert_eq!(v.status, Membership::NotInPhiN);
        }
    }

    #[test]
    fn membership_examples() {
        let v = membership(RpdfKind::Kummer, None, &[1.0], &[2.0], 3).unwrap();
        assert_eq!(v.status, Membership::InPhiInf);
        let v = membership(RpdfKind::Gauss, Some(0.5), &[1.0], &[2.0], 3).unwrap();
        assert_eq!(v.status, Membership::InPhiInf);
        // psi = n/2 - 0.1
        let v = membership(RpdfKind::Bessel, None, &[1.0], &[1.2, 1.2], 3).unwrap();
        assert_eq!(v.status, Membership::NotInPhiN);
        let v = membership(RpdfKind::Bessel, None, &[1.0], &[1.5, 2.5], 2).unwrap();
        assert_eq!(v.status, Membership::InPhiN);
        let v = membership(RpdfKind::Kummer, None, &[2.0], &[1.0], 1).unwrap();
        assert_eq!(v.status, Membership::Undecided);
    }

    #[test]
    fn schoenberg_measure_mass_and_reconstruction() {
        let (a, b, n) = ([1.0], [1.5, 2.5], 2);
        let m = SchoenbergMeasure::new(&a, &b, n).unwrap();
        let opts = QuadOptions::with_tol(1e-12);
        assert!((m.integrate(&|_| 1.0, &opts).unwrap() - 1.0).abs() < 1e-9);
        // independent check of the density by plain quadrature over (0, 2)
        let mass = integrate_interval(&|t| c(m.density(t).unwrap_or(f64::NAN)), 1e-9, 2.0 - 1e-12, &opts).unwrap();
        assert!((mass.value.re - 1.0).abs() < 1e-6, "{}", mass.value.re);
        for i in 1..100 {
            assert!(m.density(0.02 * i as f64).unwrap() >= 0.0);
        }
        for &r in &[0.5, 2.0] {
            let lhs = m.integrate(&|t| omega_n(n, r * t), &opts).unwrap();
            assert!((lhs - eval_real(&a, &b, -r * r).unwrap()).abs() < 1e-7);
        }
    }

    #[test]
    fn boundary_measure_has_atom() {
        let (a, b) = ([1.0, 0.5], [1.0, 1.0, 1.0]);
        let m = SchoenbergMeasure::new(&a, &b, 3).unwrap();
        assert!(m.atom > 0.0);
        let opts = QuadOptions::with_tol(1e-12);
        assert!((m.integrate(&|_| 1.0, &opts).unwrap() - 1.0).abs() < 1e-9);
        let lhs = m.integrate(&|t| omega_n(3, 1.3 * t), &opts).unwrap();
        assert!((lhs - omega_n(2, 1.3).powi(2)).abs() < 1e-8);
    }

    #[test]
    fn moments() {
        let rep = moment_check(&[1.0], &[1.5, 2.5], 2, 4).unwrap();
        for row in &rep.rows {
            let q = row.quadrature.unwrap();
            assert!((q - row.formula).abs() < 1e-7 * row.formula, "{row:?}");
        }
        assert!(!rep.not_a_moment_sequence);
        let rep = moment_check(&[1.0], &[1.2, 1.2], 3, 4).unwrap();
        assert!(rep.rows[0].quadrature.is_none());
        assert!(rep.not_a_moment_sequence);
        assert!((rep.growth_exponent - 0.1).abs() < 1e-3, "{}", rep.growth_exponent);
    }

    #[test]
    fn kummer_weight() {
        let w = PhiInfWeight::new(RpdfKind::Kummer, None, &[1.3, 0.7], &[1.9, 1.5]).unwrap();
        let f = |t: f64, _| c(w.eval(t).unwrap());
        let mass = integrate_01(&f, EndpointBehavior::new(w.exponent_at_zero(), 0.0), &QuadOptions::with_tol(1e-12)).unwrap();
        assert!((mass.value.re - 1.0).abs() < 1e-9);
        let r = w.laplace(1.2, &QuadOptions::with_tol(1e-11)).unwrap();
        assert!((r - eval_real(&[1.3, 0.7], &[1.9, 1.5], -1.44).unwrap()).abs() < 1e-8);
    }

    #[test]
    fn gauss_weight() {
        let (s, a, b) = (0.8, [1.0], [2.0]);
        let w = PhiInfWeight::new(RpdfKind::Gauss, Some(s), &a, &b).unwrap();
        // G(u | 2; 1) = u on (0,1): w(t) = t^{s-1}/Gamma(s) * integral_1^inf e^{-ty} y^{s-2} dy
        for &t in &[0.01, 0.3, 1.0, 4.0] {
            let exact = integrate_semiaxis(&|y| c(((1.0 + y) as f64).powf(s - 2.0) * (-t * y).exp()), t, 0.0, &QuadOptions::with_tol(1e-13))
                .unwrap()
                .value
                .re
                * (-t).exp()
                * t.powf(s - 1.0)
                / gamma_r(s);
            let v = w.eval(t).unwrap();
            assert!(v >= 0.0 && (v - exact).abs() < 1e-9 * exact, "t={t} {v} {exact}");
        }
        let r = w.laplace(1.0, &QuadOptions::with_tol(1e-10)).unwrap();
        // 2F1(s, 1; 2; -1) = integral_0^1 (1+t)^{-s} dt
        let f = (2f64.powf(1.0 - s) - 1.0) / (1.0 - s);
        assert!((r - f).abs() < 1e-7, "{r} {f}");
    }

    #[test]
    fn nesting_through_gaussian_mixture() {
        // 1F1(1; 2; -r^2) = integral_0^1 e^{-t r^2} dt, each exponential an Omega_n mixture
        let opts = QuadOptions::with_tol(1e-10);
        for n in [1, 3] {
            for &r in &[0.5, 1.0, 2.0] {
                let inner = |t: f64| {
                    integrate_semiaxis(&|rho| c(omega_n(n, r * rho) * gaussian_radial_density(n, t, rho)), 1.0 / t.sqrt(), n as f64 - 1.0, &opts)
                        .unwrap()
                        .value
                };
                let v = integrate_01(&|t, _| inner(t), EndpointBehavior::regular(), &opts).unwrap().value.re;
                let f = (1.0 - (-r * r).exp()) / (r * r);
                assert!((v - f).abs() < 1e-6, "n={n} r={r} {v} {f}");
            }
        }
    }

    #[test]
    fn mixing_identity() {
        let opts = QuadOptions::with_tol(1e-12);
        let (a, b) = ([1.4], [1.5, 2.5]);
        for step in [MixingStep::Numerator { index: 0, value: 0.6 }, MixingStep::Denominator { index: 1, value: 3.2 }] {
            for &r in &[0.7, 2.0] {
                let (mixed, direct) = beta_mixing(&a, &b, step, r, &opts).unwrap();
                assert!((mixed - direct).abs() < 1e-7, "{step:?} {mixed} {direct}");
            }
        }
        assert!(beta_mixing(&a, &b, MixingStep::Numerator { index: 0, value: 2.0 }, 1.0, &opts).is_err());
    }
}
