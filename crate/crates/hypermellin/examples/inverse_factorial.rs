//! Inverse factorial expansion of 2F1(1, 1; 2; -w) = ln(1+w)/w.
//!
//! The series converges in the half plane Re w > 0, slowly near its edge.

use hypermellin::invfactorial::{ifs_coefficients, ifs_eval, stirling_first};
use hypermellin::series::ParamVec;
use hypermellin::{Error, C64};

fn main() -> hypermellin::Result<()> {
    println!("s(6, k) = {:?}", (0..=6).map(|k| stirling_first(6, k)).collect::<Result<Vec<_>, _>>()?);
    let (a, b) = (ParamVec::real(&[1.0]), ParamVec::real(&[2.0]));
    let b_n: Vec<f64> = ifs_coefficients(&a, &b, 1, 6)?.b_n.iter().map(|c| c.re).collect();
    println!("b_n = {b_n:.6?}");
    for w in [C64::new(0.5, 0.0), C64::new(1.0, 0.0), C64::new(2.0, 1.0)] {
        let exact = (1.0 + w).ln() / w;
        for n in [50, 200, 1000] {
            // a slow run still reports its partial sum
            let (value, tail) = match ifs_eval(&a, &b, 1, w, n, 1e-8) {
                Ok(r) => (r.value, r.tail_estimate),
                Err(Error::SlowConvergence { value_re, value_im, tail, .. }) => (C64::new(value_re, value_im), tail),
                Err(e) => return Err(e),
            };
            println!("w={w} N={n:>4}: {value:.10} tail {tail:.1e} |err| {:.1e}", (value - exact).norm());
        }
    }
    Ok(())
}
