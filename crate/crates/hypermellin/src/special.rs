//! Gamma-function machinery over complex arguments.

use num_complex::Complex64 as C64;
use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// Returns `Some(n)` when `z` is within `tol` of the integer `n`.
pub fn near_integer(z: C64, tol: f64) -> Option<i64> {
    let r = z.re.round();
    if (z.re - r).abs() <= tol && z.im.abs() <= tol && r.abs() < 9.0e15 {
        Some(r as i64)
    } else {
        None
    }
}

/// True when `z` is exactly 0, -1, -2, ...
pub fn is_nonpositive_integer(z: C64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

/// sin(pi z) with argument reduction on the real part.
pub fn sinpi(z: C64) -> C64 {
    let n = z.re.round();
    let r = C64::new(z.re - n, z.im);
    let s = (r * PI).sin();
    if (n as i64).rem_euclid(2) == 0 {
        s
    } else {
        -s
    }
}

/// cos(pi z) with argument reduction on the real part.
pub fn cospi(z: C64) -> C64 {
    sinpi(z + 0.5)
}

fn lanczos_sum(z: C64) -> C64 {
    // z here is the shifted argument (Gamma(z+1) form)
    let mut acc = C64::new(LANCZOS[0], 0.0);
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += *c / (z + i as f64);
    }
    acc
}

/// ln Gamma(z) for Re z >= 1/2, via Lanczos.
fn lgamma_right(z: C64) -> C64 {
    let zm = z - 1.0;
    let t = zm + LANCZOS_G + 0.5;
    (zm + 0.5) * t.ln() - t + LN_SQRT_2PI + lanczos_sum(zm).ln()
}

/// Gamma function. Poles return infinity.
pub fn gamma(z: C64) -> C64 {
    if is_nonpositive_integer(z) {
        return C64::new(f64::INFINITY, 0.0);
    }
    if z.re < 0.5 {
        return PI / (sinpi(z) * gamma(1.0 - z));
    }
    if z.norm() > 140.0 {
        return lgamma_right(z).exp();
    }
    let zm = z - 1.0;
    let t = zm + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powc(zm + 0.5) * (-t).exp() * lanczos_sum(zm)
}

/// Reciprocal gamma, entire; exactly zero at the poles of Gamma.
pub fn rgamma(z: C64) -> C64 {
    if is_nonpositive_integer(z) {
        return C64::new(0.0, 0.0);
    }
    if z.re < 0.5 {
        // 1/Gamma(z) = sin(pi z) Gamma(1-z) / pi
        let w = 1.0 - z;
        let g = if w.norm() > 140.0 { lgamma_right(w).exp() } else { gamma(w) };
        return sinpi(z) * g / PI;
    }
    if z.norm() > 140.0 {
        return (-lgamma_right(z)).exp();
    }
    1.0 / gamma(z)
}

/// ln Gamma(z); the imaginary part is only determined modulo 2 pi.
pub fn lgamma(z: C64) -> C64 {
    if z.re < 0.5 {
        C64::new(PI.ln(), 0.0) - sinpi(z).ln() - lgamma_right(1.0 - z)
    } else {
        lgamma_right(z)
    }
}

/// Real gamma for convenience.
pub fn gamma_r(x: f64) -> f64 {
    gamma(C64::new(x, 0.0)).re
}

/// Real reciprocal gamma.
pub fn rgamma_r(x: f64) -> f64 {
    rgamma(C64::new(x, 0.0)).re
}

/// Product of Gamma over `num` divided by product of Gamma over `den`.
///
/// Poles in the denominator give zero. Large arguments go through logarithms.
pub fn gamma_ratio(num: &[C64], den: &[C64]) -> C64 {
    if den.iter().any(|&d| is_nonpositive_integer(d)) {
        return C64::new(0.0, 0.0);
    }
    let big = num.iter().chain(den.iter()).any(|z| z.norm() > 100.0);
    if big && !num.iter().any(|&z| is_nonpositive_integer(z)) {
        let mut l = C64::new(0.0, 0.0);
        for &z in num {
            l += lgamma(z);
        }
        for &z in den {
            l -= lgamma(z);
        }
        return l.exp();
    }
    let mut v = C64::new(1.0, 0.0);
    for &z in num {
        v *= gamma(z);
    }
    for &z in den {
        v *= rgamma(z);
    }
    v
}

/// ln n! for small integers, exact-ish via lgamma.
pub fn ln_factorial(n: usize) -> f64 {
    lgamma(C64::new(n as f64 + 1.0, 0.0)).re
}
