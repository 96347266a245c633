//! The weight G^{p,0}_{p,p}(x | b; a), supported on [0, 1].
//!
//! Near 0 it is a sum of hypergeometric series in x; near 1 it is a power
//! series in 1 - x with Nørlund coefficients. Both are exposed, and
//! [`GWeight`] dispatches between them.

use crate::error::{Error, Result};
use crate::norlund::{g_scaled, negative_integer_excess, q_polynomial};
use crate::quadrature::{integrate_01_factored, EndpointBehavior, QuadOptions, QuadResult};
use crate::series::{levin_u, series_eval, series_eval_auto, HypSpec, ParamVec};
use crate::special::{gamma, gamma_ratio, rgamma};
use num_complex::Complex64 as C64;
use std::fmt;
use std::sync::RwLock;

const EPS: f64 = f64::EPSILON;
/// Lower-vector differences closer than this to an integer count as colliding.
const SEPARATION: f64 = 1e-3;
const DEFAULT_XC: f64 = 0.5;
const NORLUND_CAP: usize = 4096;

fn czero() -> C64 {
    C64::new(0.0, 0.0)
}

/// Parameters of the weight: lower vector `a`, upper vector `b`.
#[derive(Clone, Debug, PartialEq)]
pub struct GWeightSpec {
    lower: ParamVec,
    upper: ParamVec,
    normalized: bool,
}

impl GWeightSpec {
    pub fn new(a: impl Into<ParamVec>, b: impl Into<ParamVec>) -> Result<Self> {
        let (lower, upper) = (a.into(), b.into());
        if lower.is_empty() || lower.len() != upper.len() {
            return Err(Error::DomainError(format!(
                "weight needs equal nonempty vectors, got {} and {}",
                lower.len(),
                upper.len()
            )));
        }
        Ok(Self { lower, upper, normalized: false })
    }

    pub fn real(a: &[f64], b: &[f64]) -> Result<Self> {
        Self::new(ParamVec::real(a), ParamVec::real(b))
    }

    /// Lower parameters (the Gamma(a + s) side).
    pub fn a(&self) -> &ParamVec {
        &self.lower
    }

    /// Upper parameters (the Gamma(b + s) side).
    pub fn b(&self) -> &ParamVec {
        &self.upper
    }

    pub fn p(&self) -> usize {
        self.lower.len()
    }

    pub fn psi(&self) -> C64 {
        self.upper.sum() - self.lower.sum()
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn is_atom_only(&self) -> bool {
        self.lower.is_empty()
    }

    /// Both vectors shifted by `c`, which multiplies the weight by x^c.
    pub fn shifted(&self, c: f64) -> Self {
        Self { lower: self.lower.shifted(c), upper: self.upper.shifted(c), normalized: self.normalized }
    }
}

/// Leading behavior alpha x^a ln^r(x) as x -> 0+.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZeroAsymptotics {
    pub coefficient: C64,
    pub exponent: C64,
    pub log_power: usize,
}

/// Drops pairs with b_k = a_i, whose Gamma factors cancel identically.
///
/// Pairs with b_k = a_i - q, q a positive integer, leave a polynomial factor
/// in the Mellin transform and are kept. An empty result is flagged by
/// [`GWeightSpec::is_atom_only`].
pub fn normalize_params(spec: &GWeightSpec) -> GWeightSpec {
    let mut a: Vec<C64> = spec.lower.as_slice().to_vec();
    let mut b: Vec<C64> = spec.upper.as_slice().to_vec();
    'outer: loop {
        for i in 0..a.len() {
            for k in 0..b.len() {
                if (a[i] - b[k]).norm() <= 1e-14 * (1.0 + a[i].norm()) {
                    a.remove(i);
                    b.remove(k);
                    continue 'outer;
                }
            }
        }
        break;
    }
    GWeightSpec { lower: ParamVec::new(a), upper: ParamVec::new(b), normalized: true }
}

/// Lower entries whose poles are all cancelled by an upper entry b_k = a_i + q, q <= 0.
fn exceptional_pairs(a: &ParamVec, b: &ParamVec) -> Vec<(usize, usize, usize)> {
    let mut used = vec![false; b.len()];
    let mut out = Vec::new();
    for i in 0..a.len() {
        for k in 0..b.len() {
            if used[k] {
                continue;
            }
            let d = b.get(k) - a.get(i);
            let q = d.re.round();
            if q <= 0.0 && (d - q).norm() < 1e-12 {
                used[k] = true;
                out.push((i, k, (-q) as usize));
                break;
            }
        }
    }
    out
}

fn integer_distance(d: C64) -> f64 {
    (d - d.re.round()).norm()
}

/// Smallest distance from a pairwise lower difference to an integer.
fn lower_separation(a: &ParamVec) -> f64 {
    let mut m = f64::INFINITY;
    for i in 0..a.len() {
        for j in (i + 1)..a.len() {
            m = m.min(integer_distance(a.get(i) - a.get(j)));
        }
    }
    m
}

fn argmin_re(a: &ParamVec) -> usize {
    (0..a.len()).min_by(|&i, &j| a.get(i).re.total_cmp(&a.get(j).re)).unwrap_or(0)
}

/// Leading term at zero of a normalized (or normal) spec.
pub fn asymp_zero(spec: &GWeightSpec) -> Result<ZeroAsymptotics> {
    if spec.is_atom_only() {
        return Err(Error::AtomOnly);
    }
    let (a, b) = (&spec.lower, &spec.upper);
    let pairs = exceptional_pairs(a, b);
    let normal: Vec<usize> = (0..a.len()).filter(|i| !pairs.iter().any(|p| p.0 == *i)).collect();
    if normal.is_empty() {
        return Err(Error::DomainError("no normal lower entry".into()));
    }
    let min_re = normal.iter().map(|&i| a.get(i).re).fold(f64::INFINITY, f64::min);
    // groups of equal entries on the leftmost vertical line
    let mut groups: Vec<(C64, usize)> = Vec::new();
    for &i in &normal {
        let z = a.get(i);
        if (z.re - min_re).abs() > 1e-12 {
            continue;
        }
        match groups.iter_mut().find(|g| (g.0 - z).norm() <= 1e-12) {
            Some(g) => g.1 += 1,
            None => groups.push((z, 1)),
        }
    }
    let r = groups.iter().map(|g| g.1).max().unwrap_or(1);
    let mut coefficient = czero();
    let mut exponent = groups[0].0;
    for (j, &(z, _)) in groups.iter().filter(|g| g.1 == r).enumerate() {
        if j == 0 {
            exponent = z;
        }
        let mut c = C64::new(if (r - 1) % 2 == 0 { 1.0 } else { -1.0 }, 0.0);
        let mut fact = 1.0;
        for i in 1..r {
            fact *= i as f64;
        }
        c /= fact;
        let in_group = |i: usize| (a.get(i) - z).norm() <= 1e-12;
        for i in 0..a.len() {
            if let Some(&(_, k, q)) = pairs.iter().find(|p| p.0 == i) {
                // Gamma(a_i - z) / Gamma(b_k - z) is the polynomial (b_k - z)_q
                c *= crate::series::pochhammer(b.get(k) - z, q);
                continue;
            }
            if !in_group(i) {
                c *= gamma(a.get(i) - z);
            }
        }
        for k in 0..b.len() {
            if !pairs.iter().any(|p| p.1 == k) {
                c *= rgamma(b.get(k) - z);
            }
        }
        coefficient += c;
    }
    Ok(ZeroAsymptotics { coefficient, exponent, log_power: r - 1 })
}

/// Route that produced a weight value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightRoute {
    /// Outside the support.
    Zero,
    HypExpansion,
    Norlund,
    /// Symmetric parameter perturbation with Richardson extrapolation.
    Perturbed,
}

impl fmt::Display for WeightRoute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WeightRoute::Zero => "zero",
            WeightRoute::HypExpansion => "hyp-expansion",
            WeightRoute::Norlund => "norlund",
            WeightRoute::Perturbed => "perturbed",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeightValue {
    pub value: C64,
    pub err: f64,
    pub route: WeightRoute,
}

/// Terms of the expansion at zero: x^{a_k} Gamma(a_[k] - a_k)/Gamma(b - a_k) pF_{p-1}(...; x).
#[derive(Debug, Clone)]
struct HypTerms {
    terms: Vec<(C64, C64, HypSpec)>,
}

impl HypTerms {
    fn new(spec: &GWeightSpec) -> Result<Self> {
        let (a, b) = (&spec.lower, &spec.upper);
        let mut terms = Vec::new();
        for k in 0..a.len() {
            let ak = a.get(k);
            let others: Vec<C64> = a.excluding(k).iter().map(|&x| x - ak).collect();
            let shifted_b: Vec<C64> = b.iter().map(|&x| x - ak).collect();
            let coeff = gamma_ratio(&others, &shifted_b);
            if coeff == czero() {
                continue;
            }
            let num = ParamVec::new(b.iter().map(|&x| 1.0 - x + ak).collect());
            let den = ParamVec::new(others.iter().map(|&x| 1.0 - x).collect());
            terms.push((coeff, ak, HypSpec::new(num, den)?));
        }
        Ok(Self { terms })
    }

    /// The sum with x^{off0} divided out, and its error estimate.
    fn sum(&self, t: f64, off0: f64) -> Result<(C64, f64)> {
        let z = C64::new(t, 0.0);
        let mut sum = czero();
        let mut err = 0.0;
        let mut abs = 0.0;
        for (coeff, ak, spec) in &self.terms {
            let f = match series_eval(spec, z, 1e-15) {
                Ok(r) if r.abs_error_estimate <= 1e-12 * r.value.norm().max(1.0) => r,
                _ => series_eval_auto(spec, z, 1e-15)?,
            };
            let scale = coeff * z.powc(ak - off0);
            let term = scale * f.value;
            sum += term;
            abs += term.norm();
            err += scale.norm() * f.abs_error_estimate;
        }
        Ok((sum, err + 4.0 * EPS * abs))
    }
}

/// Evaluator for one weight; caches the Nørlund table between calls.
#[derive(Debug)]
pub struct GWeight {
    spec: GWeightSpec,
    k: usize,
    excess: Option<usize>,
    gamma0: f64,
    gamma1: f64,
    xc: f64,
    tol: f64,
    hyp: Option<HypTerms>,
    table: RwLock<Vec<C64>>,
}

impl GWeight {
    /// Normalizes the spec; a fully cancelled spec is an error since the
    /// weight degenerates to a point mass at 1.
    pub fn new(spec: &GWeightSpec) -> Result<Self> {
        let spec = if spec.normalized { spec.clone() } else { normalize_params(spec) };
        if spec.is_atom_only() {
            return Err(Error::AtomOnly);
        }
        let k = argmin_re(&spec.lower);
        let excess = negative_integer_excess(&spec.lower, &spec.upper);
        let gamma0 = spec.lower.min_re();
        let gamma1 = if excess.is_some() { 0.0 } else { spec.psi().re - 1.0 };
        let separation = lower_separation(&spec.lower);
        let hyp = if separation >= SEPARATION { Some(HypTerms::new(&spec)?) } else { None };
        Ok(Self { spec, k, excess, gamma0, gamma1, xc: DEFAULT_XC, tol: 1e-15, hyp, table: RwLock::new(Vec::new()) })
    }

    /// Crossover between the two expansions.
    pub fn with_crossover(mut self, xc: f64) -> Self {
        self.xc = xc;
        self
    }

    pub fn with_k(mut self, k: usize) -> Result<Self> {
        if k >= self.spec.p() {
            return Err(Error::DomainError(format!("index {k} out of range")));
        }
        self.k = k;
        self.table = RwLock::new(Vec::new());
        Ok(self)
    }

    pub fn spec(&self) -> &GWeightSpec {
        &self.spec
    }

    /// Exponents (gamma0, gamma1) with G ~ t^gamma0 at 0 and ~ (1-t)^gamma1 at 1,
    /// up to logarithms.
    pub fn behavior(&self) -> EndpointBehavior {
        EndpointBehavior::new(self.gamma0, self.gamma1)
    }

    pub fn is_integer_excess(&self) -> Option<usize> {
        self.excess
    }

    fn ensure_table(&self, n: usize) -> Result<()> {
        if self.table.read().expect("table lock").len() > n {
            return Ok(());
        }
        let size = (n + 1).next_power_of_two().max(64).min(NORLUND_CAP + 1);
        if size <= n {
            return Err(Error::NonConvergent { terms: n, estimate: f64::INFINITY });
        }
        let t = g_scaled(&self.spec.lower, &self.spec.upper, self.k, size - 1)?;
        let mut w = self.table.write().expect("table lock");
        if w.len() < t.len() {
            *w = t;
        }
        Ok(())
    }

    /// x^{a_k - off0} sum_n U_n n!/Gamma(psi+n) y^{n+psi-1-off1}, y = 1 - x.
    fn norlund_sum(&self, t: f64, s: f64, off0: f64, off1: f64, n_cap: usize) -> Result<(C64, f64)> {
        let ak = self.spec.lower.get(self.k);
        let pre_t = C64::new(t, 0.0).powc(ak - off0);
        let (n0, mut r, pre_s, psi) = match self.excess {
            Some(l) => {
                let psi = C64::new(-(l as f64), 0.0);
                let mut r0 = 1.0;
                for j in 1..=(l + 1) {
                    r0 *= j as f64;
                }
                let pre = if off1 == 0.0 { C64::new(1.0, 0.0) } else { C64::new(s.powf(-off1), 0.0) };
                (l + 1, C64::new(r0, 0.0), pre, psi)
            }
            None => {
                let psi = self.spec.psi();
                let pre = if s == 0.0 { czero() } else { C64::new(s, 0.0).powc(psi - 1.0 - off1) };
                (0, rgamma(psi), pre, psi)
            }
        };
        let mut sum = czero();
        let mut abs_sum = 0.0;
        let mut ypow = 1.0;
        let mut prev = f64::INFINITY;
        let mut n = n0;
        let geo = if s < 1.0 { s / (1.0 - s) } else { f64::INFINITY };
        loop {
            self.ensure_table(n).map_err(|e| match e {
                Error::NonConvergent { .. } => Error::NonConvergent { terms: n, estimate: prev },
                other => other,
            })?;
            let u = self.table.read().expect("table lock")[n];
            let term = u * r * ypow;
            sum += term;
            abs_sum += term.norm();
            let tail = (term.norm() + prev.min(term.norm() / s.max(1e-300))) * geo;
            if n >= n0 + 4 && (tail <= self.tol * sum.norm() || tail <= EPS * abs_sum || tail == 0.0) {
                let scale = pre_t.norm() * pre_s.norm();
                return Ok((pre_t * pre_s * sum, scale * (tail + 4.0 * EPS * abs_sum)));
            }
            if n >= n_cap {
                return Err(Error::NonConvergent { terms: n, estimate: tail / sum.norm().max(1e-300) });
            }
            prev = term.norm();
            n += 1;
            // r_n = r_{n-1} n / (psi + n - 1)
            r = r * (n as f64) / (psi + (n - 1) as f64);
            ypow *= s;
        }
    }

    /// Value at x = 1, where only the integer-excess or psi = 1 cases are finite.
    fn value_at_one(&self) -> Result<C64> {
        if let Some(l) = self.excess {
            self.ensure_table(l + 1)?;
            let u = self.table.read().expect("table lock")[l + 1];
            let mut f = 1.0;
            for j in 1..=(l + 1) {
                f *= j as f64;
            }
            return Ok(u * f);
        }
        let psi = self.spec.psi();
        if psi.re > 1.0 {
            Ok(czero())
        } else if (psi - 1.0).norm() < 1e-14 {
            Ok(C64::new(1.0, 0.0))
        } else {
            Err(Error::DomainError("weight is singular at x = 1".into()))
        }
    }

    fn perturbed(&self, t: f64, s: f64, off0: f64, off1: f64) -> Result<(C64, f64)> {
        let a = &self.spec.lower;
        let p = a.len();
        // multiplier per entry: position within its colliding group
        let mut mult = vec![0usize; p];
        let mut group_of: Vec<usize> = (0..p).collect();
        for i in 0..p {
            for j in 0..i {
                if integer_distance(a.get(i) - a.get(j)) < SEPARATION {
                    group_of[i] = group_of[j];
                    break;
                }
            }
        }
        let mut counts = vec![0usize; p];
        let mut cross = f64::INFINITY;
        for i in 0..p {
            mult[i] = counts[group_of[i]];
            counts[group_of[i]] += 1;
            for j in 0..i {
                if group_of[i] != group_of[j] {
                    cross = cross.min(integer_distance(a.get(i) - a.get(j)));
                }
            }
        }
        let gmax = counts.iter().copied().max().unwrap_or(1) as f64;
        let lt = t.ln().abs();
        let mut h = 0.01 / (lt / 2.0).max(1.0);
        if cross.is_finite() {
            h = h.min(cross / (6.0 * gmax));
        }
        let eval_at = |eps: f64| -> Result<C64> {
            let lower = ParamVec::new((0..p).map(|i| a.get(i) + eps * mult[i] as f64).collect());
            let sp = GWeightSpec { lower, upper: self.spec.upper.clone(), normalized: true };
            let (v, _) = HypTerms::new(&sp)?.sum(t, off0)?;
            // the (1-t) offset is not tied to the perturbed parameters
            Ok(v * s.powf(-off1))
        };
        let avg = |k: f64| -> Result<C64> { Ok((eval_at(k * h)? + eval_at(-k * h)?) / 2.0) };
        let (a1, a2, a3) = (avg(1.0)?, avg(2.0)?, avg(3.0)?);
        let value = a1 * 1.5 - a2 * 0.6 + a3 * 0.1;
        let two_level = (a1 * 4.0 - a2) / 3.0;
        let err = (value - two_level).norm() + 1e3 * EPS * a1.norm() / h.powf(gmax - 1.0);
        Ok((value, err))
    }

    fn eval_offset(&self, t: f64, s: f64, off0: f64, off1: f64) -> Result<WeightValue> {
        if t > 1.0 {
            return Ok(WeightValue { value: czero(), err: 0.0, route: WeightRoute::Zero });
        }
        if t <= 0.0 || !t.is_finite() {
            return Err(Error::DomainError(format!("weight argument {t} outside (0, 1]")));
        }
        if s == 0.0 {
            let v = self.value_at_one()?;
            return Ok(WeightValue { value: v, err: 4.0 * EPS * v.norm(), route: WeightRoute::Norlund });
        }
        let separated = self.hyp.is_some();
        let hyp = || match &self.hyp {
            Some(h) => h.sum(t, off0).map(|(v, e)| (v * s.powf(-off1), e * s.powf(-off1))),
            None => Err(Error::IntegerDifference),
        };
        let tag = |r: Result<(C64, f64)>, route| r.map(|(value, err)| WeightValue { value, err, route });
        if t <= self.xc {
            if separated {
                return tag(hyp(), WeightRoute::HypExpansion);
            }
            if t >= 0.05 {
                if let Ok(v) = self.norlund_sum(t, s, off0, off1, NORLUND_CAP) {
                    return Ok(WeightValue { value: v.0, err: v.1, route: WeightRoute::Norlund });
                }
            }
            return tag(self.perturbed(t, s, off0, off1), WeightRoute::Perturbed);
        }
        match self.norlund_sum(t, s, off0, off1, NORLUND_CAP) {
            Ok(v) => Ok(WeightValue { value: v.0, err: v.1, route: WeightRoute::Norlund }),
            Err(first) => {
                let alt = if separated {
                    tag(hyp(), WeightRoute::HypExpansion)
                } else {
                    tag(self.perturbed(t, s, off0, off1), WeightRoute::Perturbed)
                };
                alt.map_err(|second| Error::EvaluationFailed(format!("norlund: {first}; fallback: {second}")))
            }
        }
    }

    /// G(x) for real x; zero for x > 1.
    pub fn eval(&self, x: f64) -> Result<WeightValue> {
        self.eval_pair(x, 1.0 - x)
    }

    /// G at t with the complement s = 1 - t supplied separately.
    pub fn eval_pair(&self, t: f64, s: f64) -> Result<WeightValue> {
        self.eval_offset(t, s, 0.0, 0.0)
    }

    /// G(t) / (t^gamma0 (1-t)^gamma1), bounded up to logarithms on (0, 1).
    pub fn eval_factored(&self, t: f64, s: f64) -> Result<C64> {
        Ok(self.eval_offset(t, s, self.gamma0, self.gamma1)?.value)
    }

    /// Integral over (0,1) of t^shift0 G(t) phi(t, 1-t).
    ///
    /// Evaluation failures inside the integrand surface as the first error seen.
    pub fn integrate(
        &self,
        phi: &dyn Fn(f64, f64) -> C64,
        shift0: f64,
        breaks: &[f64],
        opts: &QuadOptions,
    ) -> Result<QuadResult> {
        let failure: RwLock<Option<Error>> = RwLock::new(None);
        let h = |t: f64, s: f64| -> C64 {
            match self.eval_factored(t, s) {
                Ok(g) => g * phi(t, s),
                Err(e) => {
                    let mut f = failure.write().expect("failure lock");
                    if f.is_none() {
                        *f = Some(e);
                    }
                    C64::new(f64::NAN, 0.0)
                }
            }
        };
        let beh = EndpointBehavior::new(self.gamma0 + shift0, self.gamma1);
        let r = integrate_01_factored(&h, beh, breaks, opts);
        if let Some(e) = failure.into_inner().expect("failure lock") {
            return Err(e);
        }
        r
    }
}

/// Sum of hypergeometric series; requires well-separated lower entries.
pub fn eval_hyp_expansion(spec: &GWeightSpec, x: f64, tol: f64) -> Result<C64> {
    let spec = if spec.normalized { spec.clone() } else { normalize_params(spec) };
    if spec.is_atom_only() {
        return Err(Error::AtomOnly);
    }
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::DomainError(format!("x = {x} outside (0, 1)")));
    }
    if lower_separation(&spec.lower) < 1e-8 {
        return Err(Error::IntegerDifference);
    }
    let (v, err) = HypTerms::new(&spec)?.sum(x, 0.0)?;
    if err > tol.max(EPS) * v.norm().max(1.0) * 1e3 {
        return Err(Error::NonConvergent { terms: 0, estimate: err });
    }
    Ok(v)
}

/// Truncated expansion around x = 1 with at most `n_max` terms, using the
/// removed index `k` (default: the entry of smallest real part).
pub fn eval_norlund_expansion(spec: &GWeightSpec, x: f64, k: Option<usize>, n_max: usize, tol: f64) -> Result<C64> {
    if !(x > 0.0 && x < 2.0) {
        return Err(Error::DomainError(format!("x = {x} outside the disk |1 - x| < 1")));
    }
    if x > 1.0 {
        return Ok(czero());
    }
    let mut w = GWeight::new(spec)?;
    if let Some(k) = k {
        w = w.with_k(k)?;
    }
    w.tol = tol.max(EPS);
    Ok(w.norlund_sum(x, 1.0 - x, 0.0, 0.0, n_max)?.0)
}

/// Dispatching evaluation with the default crossover.
pub fn eval(spec: &GWeightSpec, x: f64) -> Result<WeightValue> {
    if x > 1.0 {
        return Ok(WeightValue { value: czero(), err: 0.0, route: WeightRoute::Zero });
    }
    GWeight::new(spec)?.eval(x)
}

/// Integral of x^{s-1} G over (0, 1), in closed form.
pub fn mellin_moment(spec: &GWeightSpec, s: C64) -> Result<C64> {
    let (a, b) = (&spec.lower, &spec.upper);
    if a.iter().any(|&ai| (ai + s).re <= 0.0) {
        return Err(Error::ConvergenceDomain(format!("Re(s + a) must be positive at s = {s}")));
    }
    let num: Vec<C64> = a.iter().map(|&x| x + s).collect();
    let den: Vec<C64> = b.iter().map(|&x| x + s).collect();
    let ratio = gamma_ratio(&num, &den);
    if negative_integer_excess(a, b).is_some() {
        let q = q_polynomial(a, b, argmin_re(a))?;
        return Ok(ratio - q.eval(s));
    }
    if spec.psi().re > 0.0 {
        return Ok(ratio);
    }
    Err(Error::ExcessOutOfRange)
}

/// Sum of p+1Fp(-lambda, a; b; 1) and an error guess, summing
/// directly when the series terminates and with Levin acceleration otherwise.
fn hyp_at_one(lambda: f64, a: &ParamVec, b: &ParamVec) -> Result<(C64, f64)> {
    let mut term = C64::new(1.0, 0.0);
    let mut terms = vec![term];
    let terminating = lambda >= 0.0 && lambda.fract() == 0.0;
    let count = if terminating { lambda as usize + 1 } else { 60 };
    for n in 0..count - 1 {
        let nf = n as f64;
        let mut f = C64::new(nf - lambda, 0.0) / (nf + 1.0);
        for (&x, &y) in a.iter().zip(b.iter()) {
            f *= (x + nf) / (y + nf);
        }
        term *= f;
        terms.push(term);
    }
    if terminating {
        let s: C64 = terms.iter().sum();
        let abs: f64 = terms.iter().map(|t| t.norm()).sum();
        return Ok((s, 4.0 * EPS * abs));
    }
    Ok(levin_u(&terms))
}

/// Integral of G(x | b-1; a-1) (1-x)^lambda over (0, 1), where `spec`
/// carries (a, b) before the shift.
pub fn weighted_moment(spec: &GWeightSpec, lambda: f64) -> Result<C64> {
    let (a, b) = (&spec.lower, &spec.upper);
    if a.min_re() <= 0.0 {
        return Err(Error::ConvergenceDomain("Re(a) must be positive".into()));
    }
    if lambda <= -spec.psi().re {
        return Err(Error::ConvergenceDomain(format!("lambda = {lambda} does not exceed -Re(psi)")));
    }
    let (f, _) = hyp_at_one(lambda, a, b)?;
    Ok(gamma_ratio(a.as_slice(), b.as_slice()) * f)
}
