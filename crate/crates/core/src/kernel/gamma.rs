//! Complex Gamma function: Stirling series after an upward shift, reflection
//! for `Re z < 1/2`.

use rug::float::Constant;
use rug::{Complex, Float};

use super::bernoulli::bernoulli_even_float;
use crate::error::{Error, Result};
use crate::precision::{log2_abs, near_integer_where, sin_pi, CNum, PrecisionContext};

fn check_pole(ctx: &PrecisionContext, z: &CNum) -> Result<()> {
    let half = Float::with_val(53, 0.5);
    if *z.real() <= half && near_integer_where(z, ctx.pole_radius_log2(), |n| *n <= 0) {
        return Err(Error::pole("gamma", crate::precision::fmt_c(z, 20)));
    }
    Ok(())
}

fn working_bits(ctx: &PrecisionContext, z: &CNum) -> u32 {
    ctx.bits() + 32 + log2_abs(z).max(0.0).ceil() as u32
}

/// `log Gamma(w)` for `Re w >= 1/2` (some branch; only `exp` of it is
/// used downstream, or differences whose branch cancels in `exp`).
fn ln_gamma_right(w: &CNum, wp: u32) -> CNum {
    let z = Complex::with_val(wp, w);
    let radius = (0.4 * wp as f64).max(12.0);
    let re = z.real().to_f64();
    let shift = if re < radius {
        (radius - re).ceil() as u32
    } else {
        0
    };

    let mut prod = Complex::with_val(wp, 1);
    for k in 0..shift {
        prod *= Complex::with_val(wp, &z + k);
    }
    let w = Complex::with_val(wp, &z + shift);

    let ln_w = Complex::with_val(wp, w.ln_ref());
    let two_pi = Float::with_val(wp, Constant::Pi) * 2u32;
    let mut sum = Complex::with_val(wp, &w - Float::with_val(wp, 0.5)) * &ln_w - &w;
    sum += two_pi.ln() / 2u32;

    let inv_w2 = Complex::with_val(wp, w.square_ref()).recip();
    let mut pw = Complex::with_val(wp, w.recip_ref());
    let sum_mag = log2_abs(&sum).max(0.0);
    for k in 1..4 * wp as usize {
        let b = bernoulli_even_float(k, wp);
        let denom = (2 * k * (2 * k - 1)) as u32;
        let term = Complex::with_val(wp, &pw * b) / denom;
        let small = log2_abs(&term) < sum_mag - wp as f64 - 4.0;
        sum += term;
        if small {
            break;
        }
        pw *= &inv_w2;
    }
    if shift > 0 {
        sum -= prod.ln();
    }
    sum
}

/// A logarithm of `Gamma(z)`; the imaginary part may differ from the principal
/// log-Gamma by a multiple of `2 pi`, which is invisible after `exp`.
pub fn ln_gamma(ctx: &PrecisionContext, z: &CNum) -> Result<CNum> {
    check_pole(ctx, z)?;
    let wp = working_bits(ctx, z);
    let half = Float::with_val(53, 0.5);
    let v = if *z.real() < half {
        let zz = Complex::with_val(wp, z);
        let one_minus = Complex::with_val(wp, 1 - &zz);
        let pi = Float::with_val(wp, Constant::Pi);
        let s = sin_pi(&zz);
        Complex::with_val(wp, pi.ln()) - s.ln() - ln_gamma_right(&one_minus, wp)
    } else {
        ln_gamma_right(z, wp)
    };
    Ok(ctx.round(&v))
}

/// `Gamma(z)` to the context tolerance.
pub fn gamma(ctx: &PrecisionContext, z: &CNum) -> Result<CNum> {
    check_pole(ctx, z)?;
    let wp = working_bits(ctx, z);
    let half = Float::with_val(53, 0.5);
    let v = if *z.real() < half {
        let zz = Complex::with_val(wp, z);
        let one_minus = Complex::with_val(wp, 1 - &zz);
        let pi = Float::with_val(wp, Constant::Pi);
        let g = ln_gamma_right(&one_minus, wp).exp();
        Complex::with_val(wp, pi) / (sin_pi(&zz) * g)
    } else {
        ln_gamma_right(z, wp).exp()
    };
    Ok(ctx.round(&v))
}

/// `Gamma(a) Gamma(b) / Gamma(c)` through log-Gamma sums.
pub fn gamma_ratio(ctx: &PrecisionContext, a: &CNum, b: &CNum, c: &CNum) -> Result<CNum> {
    let inner = ctx.with_extra_bits(16);
    let l = ln_gamma(&inner, a)? + ln_gamma(&inner, b)? - ln_gamma(&inner, c)?;
    Ok(ctx.round(&l.exp()))
}
