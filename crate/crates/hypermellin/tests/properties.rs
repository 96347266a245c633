//! Randomized invariants across the modules.

use hypermellin::bounds::luke_bounds_kummer;
use hypermellin::conditions::{certify_grinshpan, check_v_nonneg, v_func, weak_supermajorization, Status};
use hypermellin::gweight::{eval_hyp_expansion, eval_norlund_expansion, mellin_moment, GWeight, GWeightSpec};
use hypermellin::invfactorial::{ifs_eval, stirling_first};
use hypermellin::norlund::{g_connection_with, g_explicit, g_recurrence_with, q_polynomial, Variant};
use hypermellin::quadrature::{integrate_01, EndpointBehavior, QuadOptions};
use hypermellin::regularization::{choose_n, decomposed_eval, distribution_action, LaplaceKernel};
use hypermellin::representations::{laplace_eval, stieltjes_eval, Kind};
use hypermellin::series::{series_eval, series_eval_regularized, HypSpec, ParamVec};
use hypermellin::special::{gamma_r, gamma_ratio};
use hypermellin::{Error, C64};
use proptest::prelude::*;

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn pv(x: &[f64]) -> ParamVec {
    ParamVec::real(x)
}

fn params(len: std::ops::RangeInclusive<usize>, lo: f64, hi: f64) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(lo..hi, len)
}

/// Pairs with b = a + positive shift, so b dominates a entrywise.
fn dominated(len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    params(len, 0.2, 2.5).prop_flat_map(|a| {
        let n = a.len();
        (Just(a), prop::collection::vec(0.1..1.5f64, n))
    })
    .prop_map(|(a, d)| {
        let b = a.iter().zip(&d).map(|(x, y)| x + y).collect();
        (a, b)
    })
}

fn separated(a: &[f64]) -> bool {
    a.iter().enumerate().all(|(i, x)| a[..i].iter().all(|y| {
        let d = (x - y).abs();
        (d - d.round()).abs() > 0.05
    }))
}

/// Two vectors of a common length.
fn pair(len: std::ops::RangeInclusive<usize>, lo: f64, hi: f64) -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    len.prop_flat_map(move |n| (prop::collection::vec(lo..hi, n), prop::collection::vec(lo..hi, n)))
}

fn cfg(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(cfg(48))]

    #[test]
    fn series_is_one_at_origin(a in params(0..=3, -3.0, 3.0), b in params(0..=3, 0.1, 3.0)) {
        let spec = HypSpec::new(pv(&a), pv(&b)).unwrap();
        let r = series_eval(&spec, c(0.0), 1e-14).unwrap();
        prop_assert_eq!(r.value, c(1.0));
    }

    #[test]
    fn rerun_agrees_within_estimate(a in params(1..=3, 0.1, 3.0), b in params(1..=3, 0.1, 3.0), re in -5.0..5.0f64, im in -5.0..5.0f64) {
        prop_assume!(a.len() <= b.len());
        let spec = HypSpec::new(pv(&a), pv(&b)).unwrap();
        let z = C64::new(re, im);
        let coarse = series_eval(&spec, z, 1e-9).unwrap();
        let fine = series_eval(&spec, z, 1e-10).unwrap();
        let gap = (coarse.value - fine.value).norm();
        prop_assert!(gap <= coarse.abs_error_estimate + fine.abs_error_estimate + 1e-15 * fine.value.norm(), "{} vs {}", gap, coarse.abs_error_estimate);
    }

    #[test]
    fn regularized_times_gamma_is_plain(a in params(1..=2, 0.1, 3.0), b in params(1..=3, 0.1, 3.5), x in -3.0..3.0f64) {
        prop_assume!(a.len() <= b.len());
        let plain = series_eval(&HypSpec::new(pv(&a), pv(&b)).unwrap(), c(x), 1e-15).unwrap().value;
        let reg = series_eval_regularized(&HypSpec::regularized(pv(&a), pv(&b)), c(x), 1e-15).unwrap().value;
        let scaled = reg * pv(&b).gamma_prod();
        prop_assert!((scaled - plain).norm() <= 1e-12 * plain.norm().max(1.0), "{} {}", scaled, plain);
    }

    #[test]
    fn binomial_series(ai in 0usize..3, r in 0.0..0.5f64, th in 0.0..std::f64::consts::TAU) {
        let a = [0.5, 1.0, 2.5][ai];
        let z = C64::from_polar(r, th);
        let spec = HypSpec::new(pv(&[a]), ParamVec::empty()).unwrap();
        let v = series_eval(&spec, z, 1e-15).unwrap().value;
        prop_assert!((v * (1.0 - z).powf(a) - 1.0).norm() < 1e-10);
    }

    #[test]
    fn v_vanishes_at_both_ends((a, b) in pair(1..=4, 0.1, 3.0)) {
        prop_assert!(v_func(&pv(&a), &pv(&b), 0.0).unwrap().abs() < 1e-15);
        prop_assert!(v_func(&pv(&a), &pv(&b), 1.0).unwrap().abs() < 1e-14);
    }

    #[test]
    fn majorization_implies_holds((a, b) in dominated(1..=4), perm in 0usize..24) {
        let mut b = b;
        let k = perm % b.len();
        b.rotate_left(k);
        prop_assert!(weak_supermajorization(&pv(&a), &pv(&b)).unwrap());
        prop_assert!(check_v_nonneg(&pv(&a), &pv(&b), 10).holds());
    }

    #[test]
    fn holds_implies_nonnegative_excess((a, b) in pair(1..=3, 0.1, 3.0)) {
        if check_v_nonneg(&pv(&a), &pv(&b), 10).holds() {
            let psi: f64 = b.iter().sum::<f64>() - a.iter().sum::<f64>();
            prop_assert!(psi >= -1e-12, "{}", psi);
        }
    }
}

proptest! {
    #![proptest_config(cfg(200))]

    #[test]
    fn subset_pairs_never_fail(beta in params(1..=4, 0.05, 2.0), extra in params(4..=4, 0.0, 2.0)) {
        let alpha: Vec<f64> = beta.iter().zip(&extra).map(|(x, y)| x + y).collect();
        let (a, b, cert) = certify_grinshpan(&alpha, &beta).unwrap();
        prop_assert!(cert.status != Status::Fails);
        prop_assert!(check_v_nonneg(&a, &b, 10).status != Status::Fails);
    }
}

proptest! {
    #![proptest_config(cfg(40))]

    #[test]
    fn norlund_routes_agree((a, b) in pair(1..=4, 0.01, 3.0), n_max in 0usize..=20, to in 0usize..4) {
        let (a, b) = (pv(&a), pv(&b));
        let p = a.len();
        let explicit = g_explicit(&a, &b, p - 1, n_max).unwrap();
        prop_assert_eq!(explicit.g[0], c(1.0));
        let rec = g_recurrence_with(&a, &b, n_max, Variant::PochhammerOrder).unwrap();
        prop_assert!(rec.discrepancy.is_none(), "{:?}", rec.discrepancy);
        let conn = g_connection_with(&explicit, p - 1, to % p, Variant::PochhammerOrder).unwrap();
        prop_assert!(conn.discrepancy.is_none());
        prop_assert_eq!(conn.g[0], c(1.0));
    }

    #[test]
    fn q_is_index_free((a, mut b) in pair(2..=3, 0.3, 3.0), m in 0usize..3) {
        let last = b.len() - 1;
        let excess = b.iter().sum::<f64>() - a.iter().sum::<f64>();
        b[last] -= excess + m as f64;
        prop_assume!(b[last] > 0.05);
        let (ap, bp) = (pv(&a), pv(&b));
        let q0 = q_polynomial(&ap, &bp, 0).unwrap();
        prop_assert_eq!(q0.degree(), m);
        for k in 1..a.len() {
            let qk = q_polynomial(&ap, &bp, k).unwrap();
            for s in 0..=m {
                prop_assert!((q0.eval(c(s as f64)) - qk.eval(c(s as f64))).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn weight_routes_overlap((a, b) in dominated(2..=3), x in 0.3..0.7f64) {
        prop_assume!(separated(&a));
        let sp = GWeightSpec::real(&a, &b).unwrap();
        let h = eval_hyp_expansion(&sp, x, 1e-14).unwrap();
        let n = eval_norlund_expansion(&sp, x, None, 4000, 1e-15).unwrap();
        prop_assert!((h - n).norm() < 1e-9 * h.norm().max(1.0), "{} {}", h, n);
    }

    #[test]
    fn weight_mellin_nonneg_and_normalized((a, b) in dominated(1..=3)) {
        let sp = GWeightSpec::real(&a, &b).unwrap();
        let w = GWeight::new(&sp).unwrap();
        let o = QuadOptions::with_tol(1e-12);
        for s in [c(1.0), c(1.5), C64::new(2.0, 0.5)] {
            let im = s.im;
            let q = w.integrate(&|t, _| C64::new(0.0, im * t.ln()).exp(), s.re - 1.0, &[], &o).unwrap().value;
            let m = mellin_moment(&sp, s).unwrap();
            prop_assert!((q - m).norm() < 1e-8 * m.norm(), "{}: {} {}", s, q, m);
        }
        let mass = w.integrate(&|_, _| c(1.0), -1.0, &[], &o).unwrap().value;
        let pre = gamma_ratio(sp.b().as_slice(), sp.a().as_slice());
        prop_assert!((pre * mass - 1.0).norm() < 1e-8);
        for i in 1..1000 {
            let v = w.eval(i as f64 / 1000.0).unwrap().value.re;
            prop_assert!(v >= -1e-12, "x={} {}", i, v);
        }
    }

    #[test]
    fn quadrature_error_estimate(g0 in -0.9..2.0f64, g1 in -0.9..2.0f64) {
        // Beta integral with declared endpoint powers
        let f = |t: f64, s: f64| c(t.powf(g0) * s.powf(g1));
        let exact = gamma_r(g0 + 1.0) * gamma_r(g1 + 1.0) / gamma_r(g0 + g1 + 2.0);
        let o = QuadOptions::with_tol(1e-9);
        let r = integrate_01(&f, EndpointBehavior::new(g0, g1), &o).unwrap();
        let err = (r.value.re - exact).abs();
        prop_assert!(err <= 10.0 * r.err + 1e-15 * exact, "{} {}", err, r.err);
        let r2 = integrate_01(&f, EndpointBehavior::new(g0, g1), &QuadOptions { budget: 2 * o.budget, ..o }).unwrap();
        prop_assert!((r2.value.re - exact).abs() <= err + 1e-15 * exact);
    }

    #[test]
    fn continuation_is_budget_stable((a, b) in dominated(1..=3), sigma in 0.3..2.0f64) {
        let o = QuadOptions::default();
        let x = stieltjes_eval(c(sigma), &pv(&a), &pv(&b), c(2.0), &o).unwrap().value;
        let y = stieltjes_eval(c(sigma), &pv(&a), &pv(&b), c(2.0), &QuadOptions { budget: 2 * o.budget, ..o }).unwrap().value;
        prop_assert!((x - y).norm() < 1e-9 * x.norm().max(1.0));
    }

    #[test]
    fn order_independence(neg in 0.1..2.3f64, a2 in 0.3..2.0f64, b in params(2..=2, 0.2, 2.0), z in 0.2..4.0f64) {
        let a = [-neg, a2];
        prop_assume!((neg - neg.round()).abs() > 0.05);
        let (ap, bp) = (pv(&a), pv(&b));
        let n = choose_n(&ap, &bp, Kind::Laplace, false).unwrap().n;
        let o = QuadOptions::default();
        let x = decomposed_eval(Kind::Laplace, None, &ap, &bp, c(z), Some(n), &o).unwrap().value;
        let y = decomposed_eval(Kind::Laplace, None, &ap, &bp, c(z), Some(n + 1), &o).unwrap().value;
        prop_assert!((x - y).norm() < 1e-9 * x.norm().max(1.0), "n={} {} {}", n, x, y);
    }

    #[test]
    fn action_collapses_to_plain_integral((a, b) in dominated(1..=3), z in 0.0..5.0f64) {
        let o = QuadOptions::default();
        let (ap, bp) = (pv(&a), pv(&b));
        let x = distribution_action(&ap, &bp, &LaplaceKernel { z: c(z) }, Some(0), &o).unwrap();
        let y = laplace_eval(&ap, &bp, c(z), &o).unwrap().value;
        prop_assert!((x - y).norm() < 1e-9 * y.norm().max(1.0));
    }

    #[test]
    fn luke_bounds_bracket(a in params(1..=2, 0.1, 2.0), shift in params(2..=2, 0.0, 1.5), x in -3.0..3.0f64, n in 0usize..3) {
        let b: Vec<f64> = a.iter().zip(&shift).map(|(u, v)| u + v).collect();
        match luke_bounds_kummer(&a, &b, x, n) {
            Ok(r) => prop_assert!(r.brackets(1e-12), "{:?}", r),
            Err(e) => prop_assert!(matches!(e, Error::HypothesisFailed(_)), "{}", e),
        }
    }

    #[test]
    fn ifs_reduces_to_stieltjes(a in 0.3..2.0f64, d in 0.2..1.5f64, w in 0.2..0.6f64) {
        let o = QuadOptions::with_tol(1e-12);
        let reference = stieltjes_eval(c(1.0), &pv(&[a]), &pv(&[a + d]), c(w), &o).unwrap().value;
        let direct = ifs_eval(&pv(&[a]), &pv(&[a + d]), 1, c(w), 2000, 1e-7).unwrap().value;
        let padded = ifs_eval(&pv(&[1.0, a]), &pv(&[1.0, a + d]), 1, c(w), 2000, 1e-7).unwrap().value;
        prop_assert!((direct - reference).norm() < 1e-6);
        prop_assert!((padded - reference).norm() < 1e-6);
    }
}

fn falling(x: i128, n: usize) -> i128 {
    (0..n as i128).map(|j| x - j).product()
}

#[test]
fn stirling_rows_are_exact() {
    for n in 0..=25usize {
        for x in [2i128, 3, 10] {
            let mut sum = 0i128;
            for k in 0..=n {
                sum += stirling_first(n, k).unwrap() * x.pow(k as u32);
            }
            assert_eq!(sum, falling(x, n), "n={n} x={x}");
        }
    }
}

#[test]
fn tail_estimates_decrease() {
    let (a, b) = (pv(&[1.0]), pv(&[2.0]));
    for w in [c(0.5), c(1.0), C64::new(2.0, 1.0)] {
        let mut last = f64::INFINITY;
        for n in (20..=400).step_by(20) {
            let tail = match ifs_eval(&a, &b, 1, w, n, 0.0) {
                Err(Error::SlowConvergence { tail, .. }) => tail,
                other => panic!("{other:?}"),
            };
            assert!(tail < last, "w={w} n={n}: {tail} after {last}");
            last = tail;
        }
    }
}
