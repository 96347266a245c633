//! Nørlund coefficients of the G weight near x = 1, computed three ways.

use hypermellin::norlund::{g_connection, g_explicit, g_recurrence, q_polynomial};
use hypermellin::series::ParamVec;
use hypermellin::C64;

fn main() -> hypermellin::Result<()> {
    let a = ParamVec::real(&[0.4, 1.1, 1.7]);
    let b = ParamVec::real(&[1.0, 2.2, 2.5]);
    // the table depends on which numerator entry is singled out
    let explicit = g_explicit(&a, &b, 0, 8)?;
    let recurrence = g_recurrence(&a, &b, 8)?;
    let k = recurrence.k;
    let direct = g_explicit(&a, &b, k, 8)?;
    let connected = g_connection(&explicit, 0, k)?;
    println!("{:>3} {:>22} {:>22} {:>22} {:>22}", "n", "explicit k=0", format!("explicit k={k}"), "recurrence", format!("connection 0->{k}"));
    for n in 0..=8 {
        println!(
            "{n:>3} {:>22.15e} {:>22.15e} {:>22.15e} {:>22.15e}",
            explicit.g[n].re, direct.g[n].re, recurrence.g[n].re, connected.g[n].re
        );
    }

    // psi = -1: the Mellin transform picks up a linear correction
    let (a, b) = (ParamVec::real(&[1.5, 2.0]), ParamVec::real(&[1.0, 1.5]));
    let q = q_polynomial(&a, &b, 0)?;
    let coeffs: Vec<f64> = q.coeffs.iter().map(|c| c.re).collect();
    println!("q(s) coefficients {coeffs:?}, q(1) = {}", q.eval(C64::new(1.0, 0.0)).re);
    Ok(())
}
