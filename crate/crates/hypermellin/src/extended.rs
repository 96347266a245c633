//! Minimal complex arithmetic on top of `astro_float` for oracle runs.

use astro_float::{BigFloat, RoundingMode, Sign};
use num_complex::Complex64 as C64;

const RM: RoundingMode = RoundingMode::ToEven;

/// Converts a big float to the nearest-ish f64 (truncating the low words).
pub fn big_to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    if x.is_nan() {
        return f64::NAN;
    }
    if x.is_inf_pos() {
        return f64::INFINITY;
    }
    if x.is_inf_neg() {
        return f64::NEG_INFINITY;
    }
    let Some((m, _, s, e, _)) = x.as_raw_parts() else {
        return f64::NAN;
    };
    let top = *m.last().unwrap_or(&0) as f64;
    let next = if m.len() > 1 { m[m.len() - 2] as f64 } else { 0.0 };
    let mant = (top + next / 18_446_744_073_709_551_616.0) / 18_446_744_073_709_551_616.0;
    let e = e as i32;
    // split the scaling to avoid spurious overflow in powi
    let v = mant * 2f64.powi(e / 2) * 2f64.powi(e - e / 2);
    match s {
        Sign::Neg => -v,
        Sign::Pos => v,
    }
}

/// Complex number with `BigFloat` parts at a fixed working precision.
#[derive(Clone, Debug)]
pub struct BigComplex {
    pub re: BigFloat,
    pub im: BigFloat,
    bits: usize,
}

impl BigComplex {
    pub fn from_c64(z: C64, bits: usize) -> Self {
        Self {
            re: BigFloat::from_f64(z.re, bits),
            im: BigFloat::from_f64(z.im, bits),
            bits,
        }
    }

    pub fn zero(bits: usize) -> Self {
        Self::from_c64(C64::new(0.0, 0.0), bits)
    }

    pub fn to_c64(&self) -> C64 {
        C64::new(big_to_f64(&self.re), big_to_f64(&self.im))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            re: self.re.add(&o.re, self.bits, RM),
            im: self.im.add(&o.im, self.bits, RM),
            bits: self.bits,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = self.bits;
        let rr = self.re.mul(&o.re, p, RM);
        let ii = self.im.mul(&o.im, p, RM);
        let ri = self.re.mul(&o.im, p, RM);
        let ir = self.im.mul(&o.re, p, RM);
        Self {
            re: rr.sub(&ii, p, RM),
            im: ri.add(&ir, p, RM),
            bits: p,
        }
    }

    pub fn div(&self, o: &Self) -> Self {
        let p = self.bits;
        let den = o.re.mul(&o.re, p, RM).add(&o.im.mul(&o.im, p, RM), p, RM);
        let nr = self.re.mul(&o.re, p, RM).add(&self.im.mul(&o.im, p, RM), p, RM);
        let ni = self.im.mul(&o.re, p, RM).sub(&self.re.mul(&o.im, p, RM), p, RM);
        Self {
            re: nr.div(&den, p, RM),
            im: ni.div(&den, p, RM),
            bits: p,
        }
    }

    /// Magnitude estimate in f64 (may overflow to infinity for huge values).
    pub fn approx_norm(&self) -> f64 {
        self.to_c64().norm()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_f64() {
        for &x in &[1.0, -3.25e-7, 1.0e300, 2.0f64.powi(-1000), 0.1] {
            let b = BigFloat::from_f64(x, 256);
            assert_eq!(big_to_f64(&b), x);
        }
    }

    #[test]
    fn complex_division() {
        let a = BigComplex::from_c64(C64::new(1.0, 2.0), 200);
        let b = BigComplex::from_c64(C64::new(-0.5, 3.0), 200);
        let q = a.div(&b).to_c64();
        let expect = C64::new(1.0, 2.0) / C64::new(-0.5, 3.0);
        assert!((q - expect).norm() < 1e-15);
        let back = a.div(&b).mul(&b).to_c64();
        assert!((back - C64::new(1.0, 2.0)).norm() < 1e-15);
    }
}
