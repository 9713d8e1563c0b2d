//! Working precision, tolerance policy and the small set of complex helpers
//! every evaluator leans on.

use rug::float::{Constant, Round};
use rug::ops::PowAssign;
use rug::{Complex, Float, Integer};

use crate::error::{Error, Result};

/// Arbitrary-precision complex scalar used for every argument and value.
pub type CNum = Complex;

/// Binary precision plus the relative tolerance targeted by quadratures and
/// truncated series.
///
/// Invariants: `bits >= 64`, `0 < target_tol < 1` and
/// `target_tol >= 2^(16 - bits)` so that at least 16 guard bits remain.
#[derive(Debug, Clone, PartialEq)]
pub struct PrecisionContext {
    bits: u32,
    tol_log2: f64,
}

impl PrecisionContext {
    pub const MIN_BITS: u32 = 64;
    pub const GUARD_BITS: u32 = 16;

    pub fn new(bits: u32, target_tol: f64) -> Result<Self> {
        if !(target_tol > 0.0 && target_tol < 1.0) {
            return Err(Error::InvalidContext(format!(
                "target_tol must lie in (0, 1), got {target_tol:e}"
            )));
        }
        Self::with_tol_log2(bits, target_tol.log2())
    }

    /// Builds a context whose tolerance is `2^tol_log2`; useful when the
    /// tolerance underflows `f64`.
    pub fn with_tol_log2(bits: u32, tol_log2: f64) -> Result<Self> {
        if bits < Self::MIN_BITS {
            return Err(Error::InvalidContext(format!(
                "bits must be at least {}, got {bits}",
                Self::MIN_BITS
            )));
        }
        if tol_log2 >= 0.0 || !tol_log2.is_finite() {
            return Err(Error::InvalidContext(format!(
                "target_tol must lie in (0, 1), got 2^{tol_log2}"
            )));
        }
        let floor = -(bits as f64) + Self::GUARD_BITS as f64;
        if tol_log2 < floor {
            return Err(Error::InvalidContext(format!(
                "target_tol 2^{tol_log2:.1} is below 2^{floor} for {bits} bits"
            )));
        }
        Ok(Self { bits, tol_log2 })
    }

    /// Context whose tolerance sits exactly `GUARD_BITS` above the precision floor.
    pub fn from_bits(bits: u32) -> Result<Self> {
        Self::with_tol_log2(bits, -(bits as f64) + Self::GUARD_BITS as f64)
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Relative tolerance as `f64`; flushes to zero below the `f64` range.
    pub fn target_tol(&self) -> f64 {
        self.tol_log2.exp2()
    }

    pub fn tol_log2(&self) -> f64 {
        self.tol_log2
    }

    pub fn tol_float(&self) -> Float {
        let e = self.tol_log2.floor();
        let mut t = Float::with_val(64, (self.tol_log2 - e).exp2());
        t <<= e as i32;
        t
    }

    /// Same tolerance, more bits.
    pub fn with_extra_bits(&self, extra: u32) -> Self {
        Self {
            bits: self.bits + extra,
            tol_log2: self.tol_log2,
        }
    }

    /// Same tolerance, at least `bits` bits.
    pub fn with_min_bits(&self, bits: u32) -> Self {
        Self {
            bits: self.bits.max(bits),
            tol_log2: self.tol_log2,
        }
    }

    /// Tightens the tolerance, raising precision if the guard-bit invariant demands it.
    pub fn with_tol_log2_raised(&self, tol_log2: f64) -> Self {
        let need = (-tol_log2 + Self::GUARD_BITS as f64).ceil().max(0.0) as u32;
        Self {
            bits: self.bits.max(need),
            tol_log2,
        }
    }

    pub fn real(&self, x: f64) -> Float {
        Float::with_val(self.bits, x)
    }

    pub fn complex(&self, re: f64, im: f64) -> CNum {
        Complex::with_val(self.bits, (re, im))
    }

    pub fn zero(&self) -> CNum {
        Complex::new(self.bits)
    }

    pub fn one(&self) -> CNum {
        Complex::with_val(self.bits, 1)
    }

    pub fn pi(&self) -> Float {
        Float::with_val(self.bits, Constant::Pi)
    }

    /// Rounds `z` to this context's precision.
    pub fn round(&self, z: &CNum) -> CNum {
        Complex::with_val(self.bits, z)
    }

    /// Radius used to decide whether an argument is "at" a singular point.
    pub fn pole_radius_log2(&self) -> f64 {
        self.tol_log2 + 10f64.log2()
    }
}

/// `log2 |z|`, robust for magnitudes far outside the `f64` range.
/// Returns `-inf` for zero.
pub fn log2_abs(z: &CNum) -> f64 {
    let a = Float::with_val(64, z.abs_ref());
    log2_float(&a)
}

pub fn log2_float(x: &Float) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    if x.is_infinite() || x.is_nan() {
        return f64::INFINITY;
    }
    let (m, e) = x.to_f64_exp();
    m.abs().log2() + e as f64
}

/// `|z|` as `f64` (saturating).
pub fn abs_f64(z: &CNum) -> f64 {
    Float::with_val(64, z.abs_ref()).to_f64()
}

/// Nearest integer to `Re z` and the distance `|z - n|`, as `log2`.
pub fn nearest_integer(z: &CNum) -> (Integer, f64) {
    let n = z
        .real()
        .to_integer_round(Round::Nearest)
        .map(|(i, _)| i)
        .unwrap_or_default();
    let mut d = Complex::with_val(z.prec().0.max(64), z);
    *d.mut_real() -= &n;
    (n, log2_abs(&d))
}

/// True when `z` lies within `2^radius_log2 * max(1, |z|)` of an integer
/// satisfying `accept`.
pub fn near_integer_where(z: &CNum, radius_log2: f64, accept: impl Fn(&Integer) -> bool) -> bool {
    let (n, dist) = nearest_integer(z);
    let scale = log2_abs(z).max(0.0);
    dist <= radius_log2 + scale && accept(&n)
}

/// `sin(pi z)` with exact reduction by the nearest integer, so integer inputs
/// give an exact zero.
pub fn sin_pi(z: &CNum) -> CNum {
    let prec = z.prec().0;
    let (n, _) = nearest_integer(z);
    let mut d = Complex::with_val(prec, z);
    *d.mut_real() -= &n;
    let pi = Float::with_val(prec, Constant::Pi);
    let mut s = (d * pi).sin();
    if n.is_odd() {
        s = -s;
    }
    s
}

/// `cos(pi z)` with the same reduction as [`sin_pi`].
pub fn cos_pi(z: &CNum) -> CNum {
    let prec = z.prec().0;
    let (n, _) = nearest_integer(z);
    let mut d = Complex::with_val(prec, z);
    *d.mut_real() -= &n;
    let pi = Float::with_val(prec, Constant::Pi);
    let mut c = (d * pi).cos();
    if n.is_odd() {
        c = -c;
    }
    c
}

/// `i^t = exp(pi i t / 2)`.
pub fn i_pow(t: &CNum) -> CNum {
    let prec = t.prec().0;
    let pi = Float::with_val(prec, Constant::Pi);
    let arg = Complex::with_val(prec, t * Complex::with_val(prec, (0, 1))) * pi / 2u32;
    arg.exp()
}

/// Principal-branch power `base^exponent`.
pub fn cpow(base: &CNum, exponent: &CNum) -> CNum {
    let prec = base.prec().0.max(exponent.prec().0);
    let lb = Complex::with_val(prec, base.ln_ref());
    (lb * exponent).exp()
}

/// `n^(-s)` for a positive integer `n`.
pub fn int_pow_neg(n: u64, s: &CNum) -> CNum {
    let prec = s.prec().0;
    let ln = Float::with_val(prec, n).ln();
    (Complex::with_val(prec, -s) * ln).exp()
}

/// Pairwise (tree) sum with a topology fixed by the slice length, so the
/// rounding pattern does not depend on how the terms were produced.
pub fn pairwise_sum(terms: &[CNum], prec: u32) -> CNum {
    match terms.len() {
        0 => Complex::new(prec),
        1 => Complex::with_val(prec, &terms[0]),
        n => {
            let (a, b) = terms.split_at(n / 2);
            pairwise_sum(a, prec) + pairwise_sum(b, prec)
        }
    }
}

/// `x^k` for a non-negative integer power.
pub fn powi(x: &CNum, k: u32) -> CNum {
    let mut r = Complex::with_val(x.prec().0, x);
    r.pow_assign(k);
    r
}

/// Formats a complex value compactly with `digits` significant digits.
pub fn fmt_c(z: &CNum, digits: usize) -> String {
    let re = z.real().to_string_radix(10, Some(digits));
    let im = z.imag().to_string_radix(10, Some(digits));
    format!("({re}, {im})")
}
