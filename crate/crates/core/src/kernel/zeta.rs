//! Hurwitz and Riemann zeta functions via Euler-Maclaurin summation.

use rug::Complex;

use super::bernoulli::bernoulli_over_factorial;
use super::f_factor;
use crate::error::{Error, Result};
use crate::precision::{cpow, log2_abs, near_integer_where, sin_pi, CNum, PrecisionContext};

const LOG2_2PI: f64 = 2.651_496_129_472_319;

/// Complex number as an `(re, im)` pair of `f64`, for planning only.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Approx {
    pub re: f64,
    pub im: f64,
}

impl Approx {
    pub fn of(z: &CNum) -> Self {
        Self {
            re: z.real().to_f64(),
            im: z.imag().to_f64(),
        }
    }

    pub fn new(re: f64, im: f64) -> Self {
        Self { re, im }
    }

    pub fn abs(self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn arg(self) -> f64 {
        self.im.atan2(self.re)
    }

    pub fn add_re(self, x: f64) -> Self {
        Self::new(self.re + x, self.im)
    }

    /// `log2 |w^(-s)|` for this `w`.
    pub fn log2_pow_neg(self, s: Approx) -> f64 {
        -s.re * self.abs().log2() + s.im * self.arg() / std::f64::consts::LN_2
    }
}

/// Predicted `log2` magnitudes of the Euler-Maclaurin tail terms
/// `B_2k/(2k)! (s)_(2k-1) w^(1-s-2k)` for `k = 1, 2, ...`.
///
/// Returns the first `k` whose term falls below `2^target_log2`, or `None`
/// when the terms start growing (or `k_cap` is reached) first.
pub(crate) fn em_tail_terms_needed(
    s: Approx,
    w: Approx,
    target_log2: f64,
    k_cap: usize,
) -> Option<usize> {
    let log_w = w.abs().log2();
    let base = w.log2_pow_neg(s) + log_w; // log2 |w^(1-s)|
    let mut poch = s.abs().max(1e-300).log2(); // (s)_1
    let mut prev = f64::INFINITY;
    for k in 1..=k_cap {
        // |B_2k|/(2k)! ~ 2 / (2 pi)^(2k)
        let coeff = 1.0 - 2.0 * k as f64 * LOG2_2PI;
        let term = coeff + poch + base - 2.0 * k as f64 * log_w;
        if term < target_log2 {
            return Some(k);
        }
        if term > prev && k > 2 {
            return None;
        }
        prev = term;
        let kk = k as f64;
        poch += s.add_re(2.0 * kk - 1.0).abs().max(1e-300).log2();
        poch += s.add_re(2.0 * kk).abs().max(1e-300).log2();
    }
    None
}

/// Shift count `m0 = max(ceil(2|Im s|), ceil(2|s|/pi), 16)`.
pub(crate) fn default_shift(s: Approx) -> u64 {
    let a = (2.0 * s.im.abs()).ceil();
    let b = (2.0 * s.abs() / std::f64::consts::PI).ceil();
    a.max(b).max(16.0) as u64
}

/// Chooses `(m0, K)` for an Euler-Maclaurin tail at `w = m0 + a`, doubling
/// `m0` until the tail reaches `2^target_log2` within `k_cap` terms.
pub(crate) fn plan_shift(
    s: Approx,
    a: Approx,
    target_log2: impl Fn(u64) -> f64,
    k_cap: usize,
) -> Result<(u64, usize)> {
    let mut m0 = default_shift(s);
    for _ in 0..24 {
        let w = a.add_re(m0 as f64);
        if let Some(k) = em_tail_terms_needed(s, w, target_log2(m0), k_cap) {
            return Ok((m0, k));
        }
        m0 *= 2;
    }
    Err(Error::Precision(format!(
        "Euler-Maclaurin tail does not reach the tolerance for s = ({}, {})",
        s.re, s.im
    )))
}

/// Sum of `B_2k/(2k)! (s)_(2k-1) w^(1-s-2k)` for `k = 1..=k_max`, given
/// `w_pow = w^(-s)`. Stops early once a term drops below `2^stop_log2`.
pub(crate) fn em_bernoulli_tail(
    s: &CNum,
    w: &CNum,
    w_pow: &CNum,
    k_max: usize,
    stop_log2: f64,
    wp: u32,
) -> CNum {
    let mut acc = Complex::new(wp);
    let inv_w = Complex::with_val(wp, w.recip_ref());
    let inv_w2 = Complex::with_val(wp, inv_w.square_ref());
    let mut v = Complex::with_val(wp, w_pow * &inv_w);
    let mut poch = Complex::with_val(wp, s);
    for k in 1..=k_max {
        let term = Complex::with_val(wp, &poch * &v) * bernoulli_over_factorial(k, wp);
        let small = log2_abs(&term) < stop_log2;
        acc += term;
        if small {
            break;
        }
        let kk = 2 * k as u32;
        poch *= Complex::with_val(wp, s + (kk - 1));
        poch *= Complex::with_val(wp, s + kk);
        v *= &inv_w2;
    }
    acc
}

fn check_not_one(ctx: &PrecisionContext, s: &CNum, function: &'static str) -> Result<()> {
    if near_integer_where(s, ctx.pole_radius_log2(), |n| *n == 1) {
        return Err(Error::pole(function, crate::precision::fmt_c(s, 20)));
    }
    Ok(())
}

/// `zeta_H(s, a) = sum_{n >= 0} (n + a)^(-s)`, analytically continued in `s`.
pub fn hurwitz_zeta(ctx: &PrecisionContext, s: &CNum, a: &CNum) -> Result<CNum> {
    check_not_one(ctx, s, "hurwitz_zeta")?;
    if *a.real() <= 0 {
        return Err(Error::Domain(format!(
            "hurwitz_zeta needs Re a > 0, got a = {}",
            crate::precision::fmt_c(a, 20)
        )));
    }
    let sa = Approx::of(s);
    let aa = Approx::of(a);
    let k_cap = ctx.bits() as usize;

    // Magnitude guess: leading term a^(-s) or the integral term at the default shift.
    let w0 = aa.add_re(default_shift(sa) as f64);
    let integral0 =
        w0.log2_pow_neg(sa) + w0.abs().log2() - sa.add_re(-1.0).abs().max(1e-300).log2();
    let mut est_log2 = aa.log2_pow_neg(sa).max(integral0);
    let mut extra: u32 = 0;
    for _ in 0..6 {
        let target_log2 = est_log2 + ctx.tol_log2() - 6.0;
        let (m0, k) = plan_shift(sa, aa, |_| target_log2, k_cap)?;
        let wp = ctx.bits() + 24 + extra;
        let s_w = Complex::with_val(wp, s);
        let a_w = Complex::with_val(wp, a);

        let mut max_log2 = f64::NEG_INFINITY;
        let mut terms = Vec::with_capacity(m0 as usize + 3);
        for n in 0..m0 {
            let base = Complex::with_val(wp, &a_w + n);
            let t = cpow(&base, &Complex::with_val(wp, -&s_w));
            max_log2 = max_log2.max(log2_abs(&t));
            terms.push(t);
        }
        let w = Complex::with_val(wp, &a_w + m0);
        let w_pow = cpow(&w, &Complex::with_val(wp, -&s_w));
        let s_minus_1 = Complex::with_val(wp, &s_w - 1u32);
        let integral = Complex::with_val(wp, &w_pow * &w) / &s_minus_1;
        let half = Complex::with_val(wp, &w_pow / 2u32);
        max_log2 = max_log2.max(log2_abs(&integral));
        let stop = target_log2 - 4.0;
        let tail = em_bernoulli_tail(&s_w, &w, &w_pow, k, stop, wp);
        terms.push(integral);
        terms.push(half);
        terms.push(tail);
        let sum = crate::precision::pairwise_sum(&terms, wp);

        let got = log2_abs(&sum);
        let loss = max_log2 - got;
        if loss > (20 + extra) as f64 {
            extra = (loss.ceil() as u32) + 16;
            continue;
        }
        if got.is_finite() && got < est_log2 - 2.0 {
            est_log2 = got;
            continue;
        }
        return Ok(ctx.round(&sum));
    }
    Err(Error::Precision(format!(
        "hurwitz_zeta failed to stabilise at s = {}",
        crate::precision::fmt_c(s, 20)
    )))
}

/// Riemann zeta on the whole plane: Euler-Maclaurin for `Re s >= -1`, the
/// functional equation `zeta(s) = f(s) sin(pi s/2) zeta(1-s)` further left.
pub fn riemann_zeta(ctx: &PrecisionContext, s: &CNum) -> Result<CNum> {
    check_not_one(ctx, s, "riemann_zeta")?;
    if *s.real() >= -1 {
        let one = ctx.one();
        return hurwitz_zeta(ctx, s, &one);
    }
    let inner = ctx.with_extra_bits(16);
    let s_w = inner.round(s);
    let half_s = Complex::with_val(inner.bits(), &s_w / 2u32);
    let reflected = Complex::with_val(inner.bits(), 1 - &s_w);
    let z = f_factor(&inner, &s_w)? * sin_pi(&half_s) * riemann_zeta(&inner, &reflected)?;
    Ok(ctx.round(&z))
}

/// `zeta_H(s, a)` evaluated by the functional-equation-free route only; used
/// to cross-check [`riemann_zeta`] on the left half-plane.
pub fn riemann_zeta_em(ctx: &PrecisionContext, s: &CNum) -> Result<CNum> {
    hurwitz_zeta(ctx, s, &ctx.one())
}
