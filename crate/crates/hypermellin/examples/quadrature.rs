use hypermellin::quadrature::{integrate_01, integrate_semiaxis, EndpointBehavior, QuadOptions};
use hypermellin::C64;

// Beta(0.3, 0.2) with both endpoints singular, then Gamma(0.5) on the half line.
fn main() -> hypermellin::Result<()> {
    let opts = QuadOptions::with_tol(1e-13);
    let f = |t: f64, s: f64| C64::new(t.powf(-0.7) * s.powf(-0.8), 0.0);
    let r = integrate_01(&f, EndpointBehavior::new(-0.7, -0.8), &opts)?;
    println!("B(0.3, 0.2) ~ {:.15} (err {:.1e}, {} evaluations)", r.value.re, r.err, r.evaluations);

    let g = |t: f64| C64::new(t.powf(-0.5) * (-t).exp(), 0.0);
    let r = integrate_semiaxis(&g, 1.0, -0.5, &opts)?;
    println!("Gamma(1/2) ~ {:.15}, sqrt(pi) = {:.15}", r.value.re, std::f64::consts::PI.sqrt());
    Ok(())
}
