//! Negative numerator parameters: the weight stops being integrable and the
//! decomposition peels off leading Taylor terms.

use hypermellin::quadrature::QuadOptions;
use hypermellin::regularization::{choose_n, decomposed_eval, tilde_g_n};
use hypermellin::representations::Kind;
use hypermellin::series::{hyp, ParamVec};
use hypermellin::C64;

fn main() -> hypermellin::Result<()> {
    let (a, b) = (ParamVec::real(&[-1.3, 0.9]), ParamVec::real(&[0.7, 1.6]));
    let plan = choose_n(&a, &b, Kind::Laplace, false)?;
    let safe = choose_n(&a, &b, Kind::Laplace, true)?;
    println!("minimal n = {}, nonnegative remainder from n = {}", plan.n, safe.n);

    let opts = QuadOptions::default();
    for x in [0.5, 3.0, 12.0] {
        let z = C64::new(x, 0.0);
        let exact = hyp(a.as_slice(), b.as_slice(), -z)?;
        for n in [plan.n, plan.n + 1] {
            let r = decomposed_eval(Kind::Laplace, None, &a, &b, z, Some(n), &opts)?;
            println!("z={x:5} n={n}: {:.15}  (series {:.15})", r.value.re, exact.re);
        }
    }
    let g: Vec<f64> = [0.1, 0.5, 0.9].iter().map(|&t| tilde_g_n(&a, &b, safe.n, t).map(|v| v.re)).collect::<Result<_, _>>()?;
    println!("remainder weight samples {g:?}");
    Ok(())
}
