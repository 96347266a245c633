//! Sign conditions on v_{a,b}(t) = sum_j (t^{a_j} - t^{b_j}) over [0,1].

use crate::error::{Error, Result};
use crate::series::ParamVec;
use serde::Serialize;

/// Outcome of a sign check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Holds,
    Fails,
    Undecided,
}

/// How a certificate was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertMethod {
    Supermajorization,
    SubsetConstruction,
    SamplingRefinement,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    pub status: Status,
    /// Point in [0,1] where v is negative, for `Fails`.
    pub witness: Option<f64>,
    pub method: CertMethod,
    /// Sampling depth reached (log2 of the grid size) for sampled verdicts.
    pub depth: Option<u32>,
}

impl Certificate {
    fn exact(method: CertMethod) -> Self {
        Self { status: Status::Holds, witness: None, method, depth: None }
    }

    pub fn holds(&self) -> bool {
        self.status == Status::Holds
    }

    /// True only for verdicts that do not rely on sampling.
    pub fn is_exact(&self) -> bool {
        self.holds() && self.method != CertMethod::SamplingRefinement
    }
}

const ZERO_BAND: f64 = 1e-14;

fn real_pair(a: &ParamVec, b: &ParamVec) -> Result<(Vec<f64>, Vec<f64>)> {
    let ar = a.to_real().ok_or_else(|| Error::DomainError("complex entry in a".into()))?;
    let br = b.to_real().ok_or_else(|| Error::DomainError("complex entry in b".into()))?;
    if ar.len() != br.len() {
        return Err(Error::DomainError("a and b differ in length".into()));
    }
    Ok((ar, br))
}

fn pow0(t: f64, c: f64) -> f64 {
    if t == 0.0 {
        if c == 0.0 {
            1.0
        } else {
            0.0
        }
    } else {
        t.powf(c)
    }
}

/// v_{a,b}(t). At t = 0 the powers take their limits.
pub fn v_func(a: &ParamVec, b: &ParamVec, t: f64) -> Result<f64> {
    let (ar, br) = real_pair(a, b)?;
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::DomainError(format!("t = {t} outside [0,1]")));
    }
    if t == 0.0 && ar.iter().chain(br.iter()).any(|&x| x < 0.0) {
        return Err(Error::DomainError("negative exponent at t = 0".into()));
    }
    Ok(v_raw(&ar, &br, t))
}

fn v_raw(a: &[f64], b: &[f64], t: f64) -> f64 {
    a.iter().zip(b).map(|(&x, &y)| pow0(t, x) - pow0(t, y)).sum()
}

/// Weak supermajorization b <^W a: ascending partial sums of a never exceed those of b.
pub fn weak_supermajorization(a: &ParamVec, b: &ParamVec) -> Result<bool> {
    let (mut ar, mut br) = real_pair(a, b)?;
    if ar.iter().chain(br.iter()).any(|&x| x <= 0.0) {
        return Err(Error::DomainError("entries must be positive".into()));
    }
    Ok(partial_sums_dominated(&mut ar, &mut br))
}

fn partial_sums_dominated(a: &mut [f64], b: &mut [f64]) -> bool {
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (mut sa, mut sb) = (0.0, 0.0);
    for (x, y) in a.iter().zip(b.iter()) {
        sa += x;
        sb += y;
        if sa > sb + 1e-15 * sb.abs().max(1.0) {
            return false;
        }
    }
    true
}

/// Subset-sum pair of length 2^{n-1}: a over even subsets J, b over odd ones,
/// each entry sum(alpha over J) + sum(beta over the complement).
pub fn grinshpan_pair(alpha: &[f64], beta: &[f64]) -> Result<(ParamVec, ParamVec)> {
    let n = alpha.len();
    if n == 0 || beta.len() != n {
        return Err(Error::DomainError("alpha and beta must be non-empty and equal length".into()));
    }
    if n > 24 {
        return Err(Error::DomainError("too many subsets".into()));
    }
    for i in 0..n {
        if !(alpha[i] >= beta[i] && beta[i] >= 0.0) {
            return Err(Error::DomainError(format!("alpha_{i} >= beta_{i} >= 0 violated")));
        }
    }
    let mut even: Vec<(usize, Vec<usize>, f64)> = Vec::new();
    let mut odd = Vec::new();
    for mask in 0u32..(1u32 << n) {
        let members: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let rest: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 0).collect();
        let val: f64 = members.iter().map(|&i| alpha[i]).sum::<f64>() + rest.iter().map(|&i| beta[i]).sum::<f64>();
        let key = if rest.len() < members.len() { rest } else { members.clone() };
        let entry = (members.len(), key, val);
        if members.len() % 2 == 0 {
            even.push(entry);
        } else {
            odd.push(entry);
        }
    }
    even.sort_by(|x, y| (x.0, &x.1).cmp(&(y.0, &y.1)));
    odd.sort_by(|x, y| (x.0, &x.1).cmp(&(y.0, &y.1)));
    let a: Vec<f64> = even.into_iter().map(|e| e.2).collect();
    let b: Vec<f64> = odd.into_iter().map(|e| e.2).collect();
    Ok((ParamVec::real(&a), ParamVec::real(&b)))
}

/// The subset pair together with its exact certificate.
pub fn certify_grinshpan(alpha: &[f64], beta: &[f64]) -> Result<(ParamVec, ParamVec, Certificate)> {
    let (a, b) = grinshpan_pair(alpha, beta)?;
    Ok((a, b, Certificate::exact(CertMethod::SubsetConstruction)))
}

/// Sign of v near t = 0 from the smallest exponents: +1, -1, or 0 if v vanishes identically.
fn sign_at_zero(a: &[f64], b: &[f64]) -> i32 {
    let mut exps: Vec<(f64, i32)> = a.iter().map(|&x| (x, 1)).chain(b.iter().map(|&y| (y, -1))).collect();
    exps.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut i = 0;
    while i < exps.len() {
        let e = exps[i].0;
        let mut net = 0;
        while i < exps.len() && (exps[i].0 - e).abs() <= 1e-13 * e.abs().max(1.0) {
            net += exps[i].1;
            i += 1;
        }
        if net != 0 {
            return net.signum();
        }
    }
    0
}

/// Sign of v near t = 1 from the first nonvanishing power-sum difference.
fn sign_at_one(a: &[f64], b: &[f64]) -> i32 {
    let scale = a.iter().chain(b.iter()).fold(1.0f64, |m, x| m.max(x.abs()));
    for k in 1..=(2 * a.len() + 2) {
        let mk: f64 = a.iter().map(|&x| (x / scale).powi(k as i32)).sum::<f64>()
            - b.iter().map(|&y| (y / scale).powi(k as i32)).sum::<f64>();
        if mk.abs() > 1e-12 * a.len() as f64 {
            let s = if k % 2 == 0 { mk } else { -mk };
            return if s > 0.0 { 1 } else { -1 };
        }
    }
    0
}

fn golden_min(f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64, iters: usize) -> (f64, f64) {
    let g = 0.618_033_988_749_894_8;
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..iters {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 < f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Decides v_{a,b} >= 0 on [0,1].
///
/// Supermajorization of the shifted vectors gives an exact answer. Otherwise
/// v is sampled on 2^depth points in u = t^{1/8}, local minima are refined
/// by golden-section search, and the boundary behavior is read off exactly.
pub fn check_v_nonneg(a: &ParamVec, b: &ParamVec, depth: u32) -> Certificate {
    let undecided = Certificate {
        status: Status::Undecided,
        witness: None,
        method: CertMethod::SamplingRefinement,
        depth: Some(depth),
    };
    let Ok((ar, br)) = real_pair(a, b) else {
        return undecided;
    };
    if ar.is_empty() {
        return Certificate::exact(CertMethod::Supermajorization);
    }
    // v_{a+c,b+c} = t^c v_{a,b}: shifting preserves the sign on (0,1]
    let lo = ar.iter().chain(br.iter()).fold(f64::INFINITY, |m, &x| m.min(x));
    let (mut sa, mut sb): (Vec<f64>, Vec<f64>) =
        (ar.iter().map(|x| x - lo + 1.0).collect(), br.iter().map(|x| x - lo + 1.0).collect());
    if partial_sums_dominated(&mut sa, &mut sb) {
        return Certificate::exact(CertMethod::Supermajorization);
    }
    // evaluate with minimum exponent 0 to keep magnitudes tame near t = 0
    let sa: Vec<f64> = ar.iter().map(|x| x - lo).collect();
    let sb: Vec<f64> = br.iter().map(|x| x - lo).collect();
    let v = |u: f64| v_raw(&sa, &sb, u.powi(8));
    let fails = |t: f64| Certificate {
        status: Status::Fails,
        witness: Some(t),
        method: CertMethod::SamplingRefinement,
        depth: Some(depth),
    };
    let s0 = sign_at_zero(&sa, &sb);
    let s1 = sign_at_one(&sa, &sb);
    let depth = depth.clamp(4, 24);
    let m = 1usize << depth;
    let h = 1.0 / m as f64;
    let vals: Vec<f64> = (1..m).map(|i| v(i as f64 * h)).collect();
    let mut best = (f64::INFINITY, 0.5);
    for (idx, &val) in vals.iter().enumerate() {
        let u = (idx + 1) as f64 * h;
        if val < -ZERO_BAND {
            return fails(u.powi(8));
        }
        let left = if idx == 0 { f64::INFINITY } else { vals[idx - 1] };
        let right = if idx + 1 == vals.len() { f64::INFINITY } else { vals[idx + 1] };
        if val <= left && val <= right {
            let (uu, fm) = golden_min(&v, u - h, (u + h).min(1.0), 60);
            if fm < -ZERO_BAND {
                return fails(uu.powi(8));
            }
            if fm < best.0 {
                best = (fm, uu);
            }
        }
        if val < best.0 {
            best = (val, u);
        }
    }
    if s0 < 0 {
        // v is negative just above zero even if the grid missed it
        let t = (1e-3f64).powi(8);
        return if v_raw(&sa, &sb, t) < 0.0 { fails(t) } else { undecided };
    }
    if s1 < 0 {
        let t = 1.0 - 1e-6;
        return if v_raw(&sa, &sb, t) < 0.0 { fails(t) } else { undecided };
    }
    let sampled = Certificate {
        status: Status::Holds,
        witness: None,
        method: CertMethod::SamplingRefinement,
        depth: Some(depth),
    };
    if best.0 > ZERO_BAND {
        return sampled;
    }
    let u = best.1;
    let near_zero = u <= 4.0 * h && s0 > 0;
    let near_one = u >= 1.0 - 4.0 * h && s1 > 0;
    if near_zero || near_one {
        return sampled;
    }
    if s0 == 0 && s1 == 0 && vals.iter().all(|x| x.abs() <= ZERO_BAND) {
        // v vanishes identically
        return sampled;
    }
    undecided
}

/// Concatenation of blocks each with v >= 0: the sum of nonnegative functions.
///
/// Blocks are disjoint pieces of the final vectors. The combined certificate
/// is exact only if every block certificate is exact.
pub fn certify_concatenation(blocks: &[(ParamVec, ParamVec, Certificate)]) -> (ParamVec, ParamVec, Certificate) {
    let mut a = ParamVec::empty();
    let mut b = ParamVec::empty();
    for (x, y, _) in blocks {
        a = a.concat(x);
        b = b.concat(y);
    }
    if blocks.iter().all(|blk| blk.2.holds()) {
        let method = if blocks.iter().any(|blk| blk.2.method == CertMethod::SamplingRefinement) {
            CertMethod::SamplingRefinement
        } else if blocks.iter().any(|blk| blk.2.method == CertMethod::SubsetConstruction) {
            CertMethod::SubsetConstruction
        } else {
            CertMethod::Supermajorization
        };
        let depth = blocks.iter().filter_map(|blk| blk.2.depth).min();
        let cert = Certificate { status: Status::Holds, witness: None, method, depth };
        return (a, b, cert);
    }
    let cert = check_v_nonneg(&a, &b, 14);
    (a, b, cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pv(x: &[f64]) -> ParamVec {
        ParamVec::real(x)
    }

    #[test]
    fn v_examples() {
        assert_eq!(v_func(&pv(&[1.0]), &pv(&[2.0]), 0.5).unwrap(), 0.25);
        for &t in &[0.0, 0.2, 0.9, 1.0] {
            assert_eq!(v_func(&pv(&[0.5, 3.0]), &pv(&[0.5, 3.0]), t).unwrap(), 0.0);
            assert!(v_func(&pv(&[2.0, 3.0]), &pv(&[3.0, 2.0]), t).unwrap().abs() < 1e-16);
        }
        assert!(v_func(&pv(&[1.0]), &pv(&[2.0]), 1.5).is_err());
        assert_eq!(v_func(&pv(&[0.0]), &pv(&[1.0]), 0.0).unwrap(), 1.0);
    }

    #[test]
    fn supermajorization_examples() {
        assert!(weak_supermajorization(&pv(&[1.0, 2.0]), &pv(&[2.0, 3.0])).unwrap());
        assert!(!weak_supermajorization(&pv(&[1.0, 2.0]), &pv(&[0.5, 3.0])).unwrap());
        assert!(weak_supermajorization(&pv(&[1.0, 2.0]), &pv(&[1.0, 2.0])).unwrap());
        assert!(weak_supermajorization(&pv(&[0.0]), &pv(&[1.0])).is_err());
    }

    #[test]
    fn subset_pairs_match_enumeration() {
        let (a, b) = grinshpan_pair(&[2.0], &[0.5]).unwrap();
        assert_eq!((a, b), (pv(&[0.5]), pv(&[2.0])));
        let (al, be) = ([3.0, 5.0], [1.0, 2.0]);
        let (a, b) = grinshpan_pair(&al, &be).unwrap();
        assert_eq!(a, pv(&[be[0] + be[1], al[0] + al[1]]));
        assert_eq!(b, pv(&[al[0] + be[1], be[0] + al[1]]));
        let (al, be) = ([3.0, 5.0, 7.0], [1.0, 2.0, 4.0]);
        let (a, b) = grinshpan_pair(&al, &be).unwrap();
        assert_eq!(
            a,
            pv(&[be[0] + be[1] + be[2], be[0] + al[1] + al[2], al[0] + be[1] + al[2], al[0] + al[1] + be[2]])
        );
        assert_eq!(
            b,
            pv(&[al[0] + be[1] + be[2], be[0] + al[1] + be[2], be[0] + be[1] + al[2], al[0] + al[1] + al[2]])
        );
        assert!(grinshpan_pair(&[1.0], &[2.0]).is_err());
    }

    #[test]
    fn check_examples() {
        assert!(check_v_nonneg(&pv(&[1.0]), &pv(&[2.0]), 12).holds());
        let f = check_v_nonneg(&pv(&[2.0]), &pv(&[1.0]), 12);
        assert_eq!(f.status, Status::Fails);
        let w = f.witness.unwrap();
        assert!(w > 0.0 && w < 1.0 && v_func(&pv(&[2.0]), &pv(&[1.0]), w).unwrap() < 0.0);
    }

    #[test]
    fn zero_balanced_pair_against_dense_sampling() {
        let (a, b) = (pv(&[1.0, 2.0]), pv(&[1.4, 1.6]));
        let cert = check_v_nonneg(&a, &b, 14);
        let n = 1 << 20;
        let dense_min = (1..n)
            .map(|i| v_func(&a, &b, i as f64 / n as f64).unwrap())
            .fold(f64::INFINITY, f64::min);
        assert_eq!(cert.holds(), dense_min >= -1e-14);
    }

    #[test]
    fn sampling_detects_interior_dip() {
        // v = t^0.1 + t^3 - t^0.2 - t^1.5: negative somewhere? compare with dense scan
        let (a, b) = (pv(&[0.1, 3.0]), pv(&[0.2, 1.5]));
        let cert = check_v_nonneg(&a, &b, 14);
        let n = 1 << 18;
        let dense_min = (1..n)
            .map(|i| v_func(&a, &b, (i as f64 / n as f64).powi(8)).unwrap())
            .fold(f64::INFINITY, f64::min);
        if dense_min < -1e-14 {
            assert_eq!(cert.status, Status::Fails);
        } else {
            assert_ne!(cert.status, Status::Fails);
        }
    }

    #[test]
    fn negative_entries_use_shift() {
        let cert = check_v_nonneg(&pv(&[-0.5, 1.0]), &pv(&[0.5, 1.5]), 12);
        assert!(cert.is_exact());
    }

    #[test]
    fn concatenation_of_blocks() {
        let (a1, b1, c1) = certify_grinshpan(&[2.0, 3.0], &[0.5, 1.0]).unwrap();
        let c2 = check_v_nonneg(&pv(&[1.0]), &pv(&[2.0]), 12);
        let (a, b, c) = certify_concatenation(&[(a1, b1, c1), (pv(&[1.0]), pv(&[2.0]), c2)]);
        assert!(c.is_exact());
        assert_eq!(c.method, CertMethod::SubsetConstruction);
        assert_eq!(a.len(), 3);
        for i in 1..100 {
            assert!(v_func(&a, &b, i as f64 / 100.0).unwrap() >= -1e-15);
        }
    }
}
