//! Two-sided bounds, Bessel-type magnitude bounds and zero-free scans.

use hypermellin::bounds::{bessel_decay_bound, bessel_unit_bound, luke_bounds_gauss, luke_bounds_kummer, zero_free_scan, DecayVariant, ScanKind};

fn main() -> hypermellin::Result<()> {
    // a negative numerator entry needs regularization order 1
    for x in [-3.0, -1.0, 0.5, 2.0] {
        let r = luke_bounds_kummer(&[-0.5, 2.0], &[0.5, 0.5], x, 1)?;
        println!("2F2 at {x:5}: {:.10} <= {:.10} <= {:.10}", r.lower, r.value, r.upper);
    }
    for x in [-5.0, 0.9] {
        let r = luke_bounds_gauss(0.8, &[-0.5, 2.0], &[1.5, 2.5], x, 2)?;
        println!("3F2 at {x:5}: {:.10} <= {:.10} <= {:.10}", r.lower, r.value, r.upper);
    }

    for x in [1.0, 30.0] {
        let (f, margin) = bessel_unit_bound(&[1.2], &[1.4, 1.9], x)?;
        println!("|1F2(-{x})| = {f:.6}, margin {margin:.6}");
    }
    for v in [DecayVariant::Unit, DecayVariant::LandauNu, DecayVariant::LandauX] {
        println!("decay bound {v:?} at x=500: {:.4e}", bessel_decay_bound(&[1.8], &[1.5, 2.5], 0, 500.0, v)?);
    }

    let scan = zero_free_scan(ScanKind::KummerHalfplane, &[0.5], &[2.0], -200.0, 200.0, 400)?;
    println!("1F1(1/2; 2; x) on [-200, 200]: {} sign changes, min |F| = {:.3e}", scan.sign_changes, scan.min_abs);
    Ok(())
}
