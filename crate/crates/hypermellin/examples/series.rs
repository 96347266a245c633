//! Direct summation of pFq, with an extended-precision fallback for
//! arguments where double precision cancels.

use hypermellin::series::{series_eval, series_eval_auto, HypSpec, ParamVec};
use hypermellin::C64;

fn main() -> hypermellin::Result<()> {
    let spec = HypSpec::new(ParamVec::real(&[0.6, 1.2]), ParamVec::real(&[0.9, 1.8]))?;
    for x in [-1.0, -10.0, -40.0] {
        let z = C64::new(x, 0.0);
        // the f64 error estimate exposes the cancellation
        let plain = series_eval(&spec, z, 1e-15)?;
        let auto = series_eval_auto(&spec, z, 1e-15)?;
        println!(
            "z = {x:4}: f64 {:.15e} (err {:.1e}), auto {:.15e} (err {:.1e})",
            plain.value.re, plain.abs_error_estimate, auto.value.re, auto.abs_error_estimate
        );
    }

    // terminating numerator
    let poly = HypSpec::new(ParamVec::real(&[-3.0, 0.5]), ParamVec::real(&[1.5]))?;
    println!("2F1(-3, 1/2; 3/2; 2) = {}", series_eval(&poly, C64::new(2.0, 0.0), 1e-15)?.value);
    Ok(())
}
