//! Positive definiteness of radial hypergeometric functions.

use hypermellin::quadrature::QuadOptions;
use hypermellin::rpdf::{membership, moment_check, omega_n, RpdfKind, SchoenbergMeasure};

fn main() -> hypermellin::Result<()> {
    println!("{:?}", membership(RpdfKind::Kummer, None, &[1.0], &[2.0], 3)?.status);

    // Omega_n^2 sits exactly on the boundary of Phi_{2n-1}
    for n in [2usize, 3] {
        let h = n as f64 / 2.0;
        let (a, b) = ([h, h - 0.5], [h, h, n as f64 - 1.0]);
        for dim in [2 * n - 1, 2 * n] {
            let v = membership(RpdfKind::Bessel, None, &a, &b, dim)?;
            println!("Omega_{n}^2 in dimension {dim}: {} ({})", v.status, v.evidence);
        }
    }

    let (a, b, n) = ([1.0], [1.5, 2.5], 2);
    let m = SchoenbergMeasure::new(&a, &b, n)?;
    let opts = QuadOptions::with_tol(1e-12);
    println!("mass {:.12}", m.integrate(&|_| 1.0, &opts)?);
    println!("F(-4) rebuilt: {:.12}", m.integrate(&|t| omega_n(n, 2.0 * t), &opts)?);
    for row in moment_check(&a, &b, n, 3)?.rows {
        println!("moment {}: {:?} vs {:.12}", 2 * row.k, row.quadrature, row.formula);
    }
    Ok(())
}
