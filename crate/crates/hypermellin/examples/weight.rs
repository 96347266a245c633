//! The weight G(x | b; a) on (0, 1) and its Mellin moments.
use hypermellin::gweight::{mellin_moment, GWeight, GWeightSpec};
use hypermellin::quadrature::QuadOptions;
use hypermellin::C64;

fn main() -> hypermellin::Result<()> {
    let spec = GWeightSpec::real(&[0.5, 1.2], &[1.5, 2.0])?;
    let w = GWeight::new(&spec)?;
    for x in [0.01, 0.2, 0.5, 0.8, 0.99, 0.999999] {
        let v = w.eval(x)?;
        println!("G({x}) = {:.15e}  [{}]", v.value.re, v.route);
    }
    for s in [C64::new(1.0, 0.0), C64::new(2.0, 0.5)] {
        let quad = w.integrate(&|_, _| C64::new(1.0, 0.0), s.re - 1.0, &[], &QuadOptions::default());
        let closed = mellin_moment(&spec, s)?;
        if s.im == 0.0 {
            println!("s = {s}: closed form {closed:.12}, quadrature {:.12}", quad?.value);
        } else {
            println!("s = {s}: closed form {closed:.12}");
        }
    }
    Ok(())
}
