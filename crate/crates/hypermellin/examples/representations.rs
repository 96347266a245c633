//! Integral representations against the series.

use hypermellin::quadrature::QuadOptions;
use hypermellin::representations::{cosine_eval, laplace_eval, stieltjes_eval};
use hypermellin::series::{hyp, ParamVec};
use hypermellin::C64;

fn main() -> hypermellin::Result<()> {
    let opts = QuadOptions::default();
    let c = |x: f64| C64::new(x, 0.0);
    let (a, b) = (ParamVec::real(&[0.8, 1.3]), ParamVec::real(&[1.1, 1.9]));

    let z = c(0.6);
    let st = stieltjes_eval(c(0.7), &a, &b, z, &opts)?;
    let exact = hyp(&[c(0.7), c(0.8), c(1.3)], b.as_slice(), -z)?;
    println!("3F2 stieltjes {:.15}  series {:.15}", st.value.re, exact.re);

    // outside the unit disk the representation keeps working
    let st = stieltjes_eval(c(0.7), &a, &b, c(25.0), &opts)?;
    println!("3F2 at -25 via stieltjes: {:.15}", st.value.re);

    let z = c(7.5);
    let lp = laplace_eval(&a, &b, z, &opts)?;
    println!("2F2 laplace {:.15}  series {:.15}", lp.value.re, hyp(a.as_slice(), b.as_slice(), -z)?.re);

    let a1 = ParamVec::real(&[0.8]);
    let cs = cosine_eval(&a1, &b, c(60.0), &opts)?;
    println!("1F2 at -60 via cosine: {:.15}  series {:.15}", cs.value.re, hyp(a1.as_slice(), b.as_slice(), c(-60.0))?.re);
    Ok(())
}
