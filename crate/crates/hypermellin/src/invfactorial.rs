//! Inverse factorial series for p+1Fp(m, a; b; -w) in the half-plane Re w > 0.

use crate::error::{Error, Result};
use crate::series::{EvalResult, Method, ParamVec};
use crate::special::{gamma, is_nonpositive_integer};
use num_bigint::BigInt;
use num_complex::Complex64 as C64;
use std::sync::{OnceLock, RwLock};

/// Default truncation order.
pub const DEFAULT_N: usize = 500;

/// Signed Stirling numbers of the first kind, filled row by row on demand.
///
/// Rows are kept in `i128` until an entry overflows; from then on every row
/// is stored as `BigInt`.
#[derive(Debug)]
pub struct StirlingCache {
    n_max: usize,
    small: RwLock<Vec<Vec<i128>>>,
    big: RwLock<Vec<Vec<BigInt>>>,
}

impl StirlingCache {
    pub fn new(n_max: usize) -> Self {
        Self { n_max, small: RwLock::new(vec![vec![1]]), big: RwLock::new(Vec::new()) }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    fn check(&self, n: usize, k: usize) -> Result<()> {
        if n > self.n_max || k > n {
            return Err(Error::DomainError(format!("s({n},{k}) outside 0 <= k <= n <= {}", self.n_max)));
        }
        Ok(())
    }

    /// Number of rows held in `i128`.
    fn fill(&self, n: usize) {
        let mut small = self.small.write().expect("stirling lock");
        let mut big = self.big.write().expect("stirling lock");
        while small.len() + big.len() <= n {
            if big.is_empty() {
                let prev = small.last().expect("row 0").clone();
                match next_row_i128(&prev) {
                    Some(row) => small.push(row),
                    None => {
                        let prev: Vec<BigInt> = prev.iter().map(|&x| BigInt::from(x)).collect();
                        big.push(next_row_big(&prev));
                    }
                }
            } else {
                let row = next_row_big(big.last().expect("nonempty"));
                big.push(row);
            }
        }
    }

    /// s(n, k) as a machine integer, or `Overflow` when it does not fit.
    pub fn get(&self, n: usize, k: usize) -> Result<i128> {
        self.check(n, k)?;
        self.fill(n);
        let small = self.small.read().expect("stirling lock");
        if n < small.len() {
            return Ok(small[n][k]);
        }
        let big = self.big.read().expect("stirling lock");
        i128::try_from(&big[n - small.len()][k]).map_err(|_| Error::Overflow)
    }

    /// s(n, k) exactly.
    pub fn get_big(&self, n: usize, k: usize) -> Result<BigInt> {
        self.check(n, k)?;
        self.fill(n);
        let small = self.small.read().expect("stirling lock");
        if n < small.len() {
            return Ok(BigInt::from(small[n][k]));
        }
        Ok(self.big.read().expect("stirling lock")[n - small.len()][k].clone())
    }
}

// row n+1 from row n: s(n+1, k) = s(n, k-1) - n s(n, k)
fn next_row_i128(prev: &[i128]) -> Option<Vec<i128>> {
    let n = (prev.len() - 1) as i128;
    let mut row = vec![0i128; prev.len() + 1];
    for (k, slot) in row.iter_mut().enumerate() {
        let left = if k > 0 { prev[k - 1] } else { 0 };
        let right = prev.get(k).copied().unwrap_or(0);
        *slot = left.checked_sub(n.checked_mul(right)?)?;
    }
    Some(row)
}

fn next_row_big(prev: &[BigInt]) -> Vec<BigInt> {
    let n = BigInt::from(prev.len() - 1);
    (0..=prev.len())
        .map(|k| {
            let left = if k > 0 { prev[k - 1].clone() } else { BigInt::from(0) };
            match prev.get(k) {
                Some(r) => left - &n * r,
                None => left,
            }
        })
        .collect()
}

fn global_cache() -> &'static StirlingCache {
    static CACHE: OnceLock<StirlingCache> = OnceLock::new();
    CACHE.get_or_init(|| StirlingCache::new(400))
}

/// Signed s(n, k) from a shared cache (n <= 400); `Overflow` past `i128`,
/// in which case [`stirling_first_big`] gives the exact value.
pub fn stirling_first(n: usize, k: usize) -> Result<i128> {
    global_cache().get(n, k)
}

pub fn stirling_first_big(n: usize, k: usize) -> Result<BigInt> {
    global_cache().get_big(n, k)
}

/// Coefficients b_n of the expansion, b_n = 0 for n < m - 1.
#[derive(Clone, Debug, PartialEq)]
pub struct IfsCoefficients {
    pub b_n: Vec<C64>,
    pub m: usize,
    pub a: ParamVec,
    pub b: ParamVec,
}

/// b_n = (-1)^n / n! sum_j (a)_j (m-1+j)! / ((b)_j j!) s(n, m-1+j) for n <= n_max.
///
/// The Stirling numbers enter only through s(n, k)/n!, generated in floating
/// point by the same recurrence divided through by n; both terms of the
/// recurrence carry the same sign, so the row is accurate to a few ulps.
pub fn ifs_coefficients(a: &ParamVec, b: &ParamVec, m: usize, n_max: usize) -> Result<IfsCoefficients> {
    if m == 0 {
        return Err(Error::DomainError("m must be a positive integer".into()));
    }
    if a.len() != b.len() {
        return Err(Error::DomainError("a and b must have equal length".into()));
    }
    if let Some(index) = b.iter().position(|&x| is_nonpositive_integer(x)) {
        return Err(Error::InvalidDenominator { index });
    }
    // mu_j = (a)_j (m-1+j)! / ((b)_j j!)
    let mut mu = Vec::with_capacity(n_max + 2);
    let mut cur = C64::new(gamma(C64::new(m as f64, 0.0)).re, 0.0);
    for j in 0..=n_max + 1 {
        mu.push(cur);
        let jf = j as f64;
        let mut r = C64::new((m as f64 + jf) / (jf + 1.0), 0.0);
        for (&x, &y) in a.iter().zip(b.iter()) {
            r *= (x + jf) / (y + jf);
        }
        cur *= r;
    }
    let mut row = vec![1.0f64];
    let mut out = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        if n > 0 {
            let nf = n as f64;
            let prev = std::mem::take(&mut row);
            row = (0..=n)
                .map(|k| {
                    let left = if k > 0 { prev[k - 1] } else { 0.0 };
                    let right = prev.get(k).copied().unwrap_or(0.0);
                    (left - (nf - 1.0) * right) / nf
                })
                .collect();
        }
        if n + 1 < m {
            out.push(C64::new(0.0, 0.0));
            continue;
        }
        let mut s = C64::new(0.0, 0.0);
        for j in 0..=(n + 1 - m) {
            s += mu[j] * row[m - 1 + j];
        }
        out.push(if n % 2 == 0 { s } else { -s });
    }
    Ok(IfsCoefficients { b_n: out, m, a: a.clone(), b: b.clone() })
}

/// Outcome of a truncated inverse factorial sum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IfsResult {
    pub value: C64,
    pub tail_estimate: f64,
    pub terms: usize,
}

impl From<IfsResult> for EvalResult {
    fn from(r: IfsResult) -> Self {
        EvalResult::new(r.value, r.tail_estimate, Method::InverseFactorial)
    }
}

/// Partial sums of the series for p+1Fp(m, a; b; -w) up to `n_max`.
///
/// Terms behave like n^{-1-Re(1/w)} up to logarithms, so the tail after N
/// terms is estimated by N |t_N| / Re(1/w). The sum stops as soon as this
/// falls below `tol`; if that never happens, `SlowConvergence` carries the
/// last partial sum.
pub fn ifs_eval(a: &ParamVec, b: &ParamVec, m: usize, w: C64, n_max: usize, tol: f64) -> Result<IfsResult> {
    if w.re <= 0.0 {
        return Err(Error::ConvergenceDomain(format!("Re(w) = {} must be positive", w.re)));
    }
    let coef = ifs_coefficients(a, b, m, n_max)?;
    let z = 1.0 / w;
    let sign = if (m - 1) % 2 == 0 { 1.0 } else { -1.0 };
    let pre = sign / (gamma(C64::new(m as f64, 0.0)) * w.powi(m as i32));
    let scale = pre.norm() / z.re;
    let mut r = w; // n! / (z)_{n+1}
    let mut sum = C64::new(0.0, 0.0);
    let mut tail = f64::INFINITY;
    let mut last = 0;
    for (n, &bn) in coef.b_n.iter().enumerate() {
        if n > 0 {
            r *= n as f64 / (z + n as f64);
        }
        last = n;
        if n + 1 < m {
            continue;
        }
        let t = bn * r;
        sum += t;
        tail = (n as f64).max(1.0) * t.norm() * scale;
        // the first terms do not yet follow the asymptotic law
        if n >= 20 + m && tail < tol {
            break;
        }
    }
    let value = pre * sum;
    if tail > tol {
        return Err(Error::SlowConvergence { value_re: value.re, value_im: value.im, tail, terms: last + 1 });
    }
    Ok(IfsResult { value, tail_estimate: tail, terms: last + 1 })
}
