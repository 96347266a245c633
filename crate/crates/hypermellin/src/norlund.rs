//! Expansion coefficients g_n(a_[k]; b) of the G weight around x = 1.

use crate::error::{Error, Result};
use crate::series::ParamVec;
use crate::special::near_integer;
use num_complex::Complex64 as C64;
use std::collections::HashMap;
use std::sync::{Arc, RwLock};

/// Route that produced a table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Explicit,
    Recurrence,
    Connection,
}

/// How the recurrence and connection sums weight the term with index s.
///
/// `AsPrinted` multiplies by (psi + s); `PochhammerOrder` uses the rising
/// factorial (psi + s)_{n-s}, which is what the explicit route implies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Variant {
    #[default]
    AsPrinted,
    PochhammerOrder,
}

/// Disagreement between a secondary route and the explicit one.
#[derive(Clone, Debug, PartialEq)]
pub struct RouteDiscrepancy {
    pub route: Route,
    pub variant: Variant,
    pub max_diff: f64,
    /// The secondary route's values, kept for inspection.
    pub secondary: Vec<C64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NorlundTable {
    pub g: Vec<C64>,
    /// Index of the removed numerator entry.
    pub k: usize,
    pub a: ParamVec,
    pub b: ParamVec,
    pub route: Route,
    pub discrepancy: Option<RouteDiscrepancy>,
}

impl NorlundTable {
    pub fn n_max(&self) -> usize {
        self.g.len().saturating_sub(1)
    }

    /// Fails with `RouteMismatch` if validation recorded a discrepancy.
    pub fn require_consistent(&self) -> Result<&Self> {
        match &self.discrepancy {
            Some(d) => Err(Error::RouteMismatch { max_diff: d.max_diff }),
            None => Ok(self),
        }
    }
}

const EXPLICIT_BUDGET: f64 = 5.0e8;
const MISMATCH_TOL: f64 = 1e-10;

fn check_shapes(a: &ParamVec, b: &ParamVec, k: usize) -> Result<usize> {
    let p = a.len();
    if p == 0 || b.len() != p {
        return Err(Error::DomainError("a and b must have equal positive length".into()));
    }
    if k >= p {
        return Err(Error::DomainError(format!("index {k} out of range for p={p}")));
    }
    Ok(p)
}

/// Numerator vector reordered so that entry k comes last.
fn rotate_last(a: &ParamVec, k: usize) -> Vec<C64> {
    let mut v: Vec<C64> = a.excluding(k).as_slice().to_vec();
    v.push(a.get(k));
    v
}

/// Scaled coefficients U_n = g_n / n! for n = 0..=n_max, numerator order as given
/// with the last entry playing the removed role.
fn scaled_dp(a: &[C64], b: &[C64], n_max: usize) -> Vec<C64> {
    scaled_dp_mass(a, b, n_max).0
}

/// The dynamic program together with the absolute mass summed into each
/// entry, which bounds how far rounding can move it.
fn scaled_dp_mass(a: &[C64], b: &[C64], n_max: usize) -> (Vec<C64>, Vec<f64>) {
    let p = a.len();
    let mut u = vec![C64::new(0.0, 0.0); n_max + 1];
    u[0] = C64::new(1.0, 0.0);
    let mut mass = vec![0.0; n_max + 1];
    mass[0] = 1.0;
    let mut psi = C64::new(0.0, 0.0);
    for m in 1..p {
        psi += b[m - 1] - a[m - 1];
        let beta = b[m] - a[m - 1];
        let mut next = vec![C64::new(0.0, 0.0); n_max + 1];
        let mut next_mass = vec![0.0; n_max + 1];
        for i in 0..=n_max {
            if u[i] == C64::new(0.0, 0.0) {
                continue;
            }
            let mut kern = C64::new(1.0, 0.0);
            next[i] += u[i];
            next_mass[i] += mass[i];
            for d in 0..(n_max - i) {
                let fd = d as f64;
                kern *= (psi + i as f64 + fd) / (i as f64 + 1.0 + fd) * (beta + fd) / (fd + 1.0);
                next[i + d + 1] += u[i] * kern;
                next_mass[i + d + 1] += mass[i] * kern.norm();
            }
        }
        u = next;
        mass = next_mass;
    }
    (u, mass)
}

fn unscale(u: &[C64]) -> Vec<C64> {
    let mut f = 1.0;
    u.iter()
        .enumerate()
        .map(|(n, &x)| {
            if n > 0 {
                f *= n as f64;
            }
            x * f
        })
        .collect()
}

/// Scaled table U_n = g_n(a_[k]; b) / n!, the form used by the weight evaluator.
pub fn g_scaled(a: &ParamVec, b: &ParamVec, k: usize, n_max: usize) -> Result<Vec<C64>> {
    let p = check_shapes(a, b, k)?;
    if p as f64 * (n_max as f64 + 1.0).powi(2) > EXPLICIT_BUDGET {
        return Err(Error::ComplexityBudget { p, n: n_max });
    }
    Ok(scaled_dp(&rotate_last(a, k), b.as_slice(), n_max))
}

/// Nested-sum formula evaluated as a dynamic program over the summation chain.
pub fn g_explicit(a: &ParamVec, b: &ParamVec, k: usize, n_max: usize) -> Result<NorlundTable> {
    let u = g_scaled(a, b, k, n_max)?;
    Ok(NorlundTable { g: unscale(&u), k, a: a.clone(), b: b.clone(), route: Route::Explicit, discrepancy: None })
}

fn weight(variant: Variant, psi: C64, s: usize, n: usize) -> C64 {
    match variant {
        Variant::AsPrinted => psi + s as f64,
        Variant::PochhammerOrder => crate::series::pochhammer(psi + s as f64, n - s),
    }
}

/// Largest entrywise difference, relative to the larger value and to the
/// absolute mass summed into the secondary entry. Rounding in the input table
/// is carried through the secondary sum at that scale, so measuring against
/// it keeps cancellation from being mistaken for a formula error.
/// Absolute mass behind each explicit entry, in the unscaled normalization.
fn explicit_mass(a: &ParamVec, b: &ParamVec, k: usize, n_max: usize) -> Vec<f64> {
    let (_, m) = scaled_dp_mass(&rotate_last(a, k), b.as_slice(), n_max);
    let mut f = 1.0;
    m.iter()
        .enumerate()
        .map(|(n, &x)| {
            if n > 0 {
                f *= n as f64;
            }
            x * f
        })
        .collect()
}

fn max_rel_diff(x: &[C64], y: &[C64], mass: &[f64]) -> f64 {
    x.iter()
        .zip(y)
        .zip(mass)
        .map(|((u, v), m)| (u - v).norm() / u.norm().max(v.norm()).max(1.0).max(*m))
        .fold(0.0, f64::max)
}

fn validate(mut explicit: NorlundTable, route: Route, variant: Variant, secondary: Vec<C64>, mass: &[f64]) -> NorlundTable {
    let d = max_rel_diff(&explicit.g, &secondary, mass);
    if d > MISMATCH_TOL || !d.is_finite() {
        log::warn!("{route:?} route ({variant:?}) differs from explicit route by {d:e}; explicit values kept");
        explicit.discrepancy = Some(RouteDiscrepancy { route, variant, max_diff: d, secondary });
    }
    explicit.route = route;
    explicit
}

/// Recurrence in the order p, run with `variant` weighting and validated
/// against the explicit route. On disagreement the explicit values are kept
/// and the discrepancy is recorded.
pub fn g_recurrence_with(a: &ParamVec, b: &ParamVec, n_max: usize, variant: Variant) -> Result<NorlundTable> {
    let p = check_shapes(a, b, 0)?;
    let av = a.as_slice();
    let bv = b.as_slice();
    let mut g = vec![C64::new(0.0, 0.0); n_max + 1];
    g[0] = C64::new(1.0, 0.0);
    let mut mass = vec![0.0; n_max + 1];
    mass[0] = 1.0;
    let mut psi = C64::new(0.0, 0.0);
    for pp in 1..p {
        psi += bv[pp - 1] - av[pp - 1];
        let shift = bv[pp] - av[pp - 1];
        let mut next = vec![C64::new(0.0, 0.0); n_max + 1];
        let mut next_mass = vec![0.0; n_max + 1];
        for n in 0..=n_max {
            for s in 0..=n {
                let d = n - s;
                let c = crate::series::pochhammer(shift, d) / factorial(d) * weight(variant, psi, s, n);
                next[n] += c * g[s];
                next_mass[n] += c.norm() * mass[s];
            }
        }
        g = next;
        mass = next_mass;
    }
    let explicit = g_explicit(a, b, p - 1, n_max)?;
    let floor = explicit_mass(a, b, p - 1, n_max);
    let mass: Vec<f64> = mass.iter().zip(&floor).map(|(x, y)| x.max(*y)).collect();
    Ok(validate(explicit, Route::Recurrence, variant, g, &mass))
}

/// Recurrence route with the formula as printed.
pub fn g_recurrence(a: &ParamVec, b: &ParamVec, n_max: usize) -> Result<NorlundTable> {
    g_recurrence_with(a, b, n_max, Variant::default())
}

fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |f, i| f * i as f64)
}

/// Connection sum from index `from_k` to `to_k`, validated against the explicit route.
pub fn g_connection_with(table: &NorlundTable, from_k: usize, to_k: usize, variant: Variant) -> Result<NorlundTable> {
    check_shapes(&table.a, &table.b, from_k)?;
    check_shapes(&table.a, &table.b, to_k)?;
    if table.k != from_k {
        return Err(Error::DomainError(format!("table is for index {}, not {from_k}", table.k)));
    }
    let psi = table.b.sum() - table.a.sum();
    let shift = table.a.get(to_k) - table.a.get(from_k);
    let n_max = table.n_max();
    let mut g = vec![C64::new(0.0, 0.0); n_max + 1];
    // the input carries its own rounding, so its mass is propagated too
    let input = explicit_mass(&table.a, &table.b, from_k, n_max);
    let mut mass = explicit_mass(&table.a, &table.b, to_k, n_max);
    for n in 0..=n_max {
        let mut through = 0.0;
        for s in 0..=n {
            let d = n - s;
            let c = crate::series::pochhammer(shift, d) / factorial(d) * weight(variant, psi, s, n);
            g[n] += c * table.g[s];
            through += c.norm() * input[s].max(table.g[s].norm());
        }
        mass[n] = mass[n].max(through);
    }
    let explicit = g_explicit(&table.a, &table.b, to_k, n_max)?;
    Ok(validate(explicit, Route::Connection, variant, g, &mass))
}

/// Connection route with the formula as printed.
pub fn g_connection(table: &NorlundTable, from_k: usize, to_k: usize) -> Result<NorlundTable> {
    g_connection_with(table, from_k, to_k, Variant::default())
}

/// Polynomial in the monomial basis, lowest degree first.
#[derive(Clone, Debug, PartialEq)]
pub struct QPolynomial {
    pub coeffs: Vec<C64>,
}

impl QPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, s: C64) -> C64 {
        self.coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, &c| acc * s + c)
    }
}

fn poly_mul_linear(p: &[C64], c: C64) -> Vec<C64> {
    // p(s) * (s + c)
    let mut out = vec![C64::new(0.0, 0.0); p.len() + 1];
    for (i, &x) in p.iter().enumerate() {
        out[i] += x * c;
        out[i + 1] += x;
    }
    out
}

fn q_for_index(a: &ParamVec, b: &ParamVec, k: usize, m: usize) -> Result<Vec<C64>> {
    let g = g_explicit(a, b, k, m)?.g;
    let ak = a.get(k);
    let mut coeffs = vec![C64::new(0.0, 0.0); m + 1];
    for j in 0..=m {
        // (s + a_k - j)_j
        let mut poly = vec![C64::new(1.0, 0.0)];
        for i in 0..j {
            poly = poly_mul_linear(&poly, ak - j as f64 + i as f64);
        }
        for (d, c) in poly.iter().enumerate() {
            coeffs[d] += g[m - j] * c;
        }
    }
    Ok(coeffs)
}

/// Integer value m with psi = -m, if psi is within 1e-10 of a non-positive integer.
pub fn negative_integer_excess(a: &ParamVec, b: &ParamVec) -> Option<usize> {
    let psi = b.sum() - a.sum();
    near_integer(psi, 1e-10).filter(|&n| n <= 0).map(|n| (-n) as usize)
}

/// Correction polynomial for psi = -m, expanded in monomials and
/// cross-checked against a second index.
pub fn q_polynomial(a: &ParamVec, b: &ParamVec, k: usize) -> Result<QPolynomial> {
    let p = check_shapes(a, b, k)?;
    let Some(m) = negative_integer_excess(a, b) else {
        return Err(Error::NotIntegerExcess { psi: (b.sum() - a.sum()).re });
    };
    let coeffs = q_for_index(a, b, k, m)?;
    if p > 1 {
        let other = q_for_index(a, b, (k + 1) % p, m)?;
        let scale = coeffs.iter().map(|c| c.norm()).fold(1.0, f64::max);
        let gap = coeffs.iter().zip(&other).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
        if gap > 1e-9 * scale {
            return Err(Error::RouteMismatch { max_diff: gap / scale });
        }
    }
    Ok(QPolynomial { coeffs })
}

type CacheKey = (Vec<u64>, Vec<u64>, usize, usize);

fn key_of(a: &ParamVec, b: &ParamVec, k: usize, n: usize) -> CacheKey {
    let bits = |v: &ParamVec| v.iter().flat_map(|z| [z.re.to_bits(), z.im.to_bits()]).collect();
    (bits(a), bits(b), k, n)
}

/// Shared cache of explicit-route tables keyed by (a, b, k, N).
///
/// Reads run concurrently; a miss computes outside the lock and inserts once.
#[derive(Default)]
pub struct NorlundCache {
    inner: RwLock<HashMap<CacheKey, Arc<NorlundTable>>>,
}

impl NorlundCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, a: &ParamVec, b: &ParamVec, k: usize, n_max: usize) -> Result<Arc<NorlundTable>> {
        let key = key_of(a, b, k, n_max);
        if let Some(t) = self.inner.read().expect("cache lock poisoned").get(&key) {
            return Ok(Arc::clone(t));
        }
        let table = Arc::new(g_explicit(a, b, k, n_max)?);
        let mut w = self.inner.write().expect("cache lock poisoned");
        Ok(Arc::clone(w.entry(key).or_insert(table)))
    }

    pub fn len(&self) -> usize {
        self.inner.read().expect("cache lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
