//! Summation routes: accelerated direct summation in the convergent region and
//! the Euler-Maclaurin continuation to the whole plane.

use rug::Complex;

use crate::error::{Error, Result};
use crate::kernel::{bernoulli_over_factorial, hurwitz_zeta, plan_shift, riemann_zeta, Approx};
use crate::precision::{
    int_pow_neg, log2_abs, near_integer_where, pairwise_sum, CNum, PrecisionContext,
};

/// Most negative real part accepted by [`double_zeta_em`].
pub const EM_DEPTH_LIMIT: f64 = 40.0;

const MAX_ATTEMPTS: usize = 8;

/// Evaluates a cancelling sum, raising the working precision until the
/// measured loss `log2(max piece) - log2|sum|` fits inside the guard bits.
///
/// `pieces` receives a working context whose tolerance sits 24 bits above its
/// precision floor and must keep every truncation below that relative to the
/// largest piece.
pub(crate) fn ziv_sum(
    ctx: &PrecisionContext,
    what: &str,
    pieces: impl Fn(&PrecisionContext) -> Result<Vec<CNum>>,
) -> Result<CNum> {
    let mut extra: u32 = 32;
    for _ in 0..MAX_ATTEMPTS {
        let wp = ctx.bits() + extra;
        let inner = PrecisionContext::with_tol_log2(wp, 24.0 - wp as f64)?;
        let terms = pieces(&inner)?;
        let biggest = terms.iter().map(log2_abs).fold(f64::NEG_INFINITY, f64::max);
        let sum = pairwise_sum(&terms, wp);
        let got = log2_abs(&sum);
        if biggest == f64::NEG_INFINITY {
            return Ok(ctx.zero());
        }
        if got.is_finite() {
            let loss = (biggest - got).max(0.0);
            if loss + 24.0 <= extra as f64 {
                return Ok(ctx.round(&sum));
            }
            extra = extra.max(loss.ceil() as u32 + 40);
        } else {
            extra *= 2;
        }
    }
    Err(Error::Precision(format!(
        "{what}: cancellation exceeded {} extra bits",
        extra
    )))
}

/// `log2 |n^(-s)|` for real `n > 0`.
fn log2_pow(n: f64, s: Approx) -> f64 {
    -s.re * n.log2()
}

/// Sum over `n >= n0` of `n^(-s_outer)` times the Euler-Maclaurin expansion of
/// `zeta_H(s_inner, n + (1 - half_sign)/2)`:
/// `n^(1-s)/(s-1) + half_sign n^(-s)/2 + sum_k B_2k/(2k)! (s)_(2k-1) n^(1-s-2k)`,
/// each power sum collapsing to a Hurwitz zeta value at `n0`.
fn transfer_pieces(
    inner: &PrecisionContext,
    s_inner: &CNum,
    s_outer: &CNum,
    n0: u64,
    half_sign: i32,
    k_max: usize,
    stop_log2: f64,
) -> Result<Vec<CNum>> {
    let wp = inner.bits();
    let s = Complex::with_val(wp, s_inner);
    let total = Complex::with_val(wp, &s + s_outer);
    let a = inner.complex(n0 as f64, 0.0);
    let mut out = Vec::with_capacity(k_max + 2);

    let lead = hurwitz_zeta(inner, &Complex::with_val(wp, &total - 1u32), &a)?;
    out.push(lead / Complex::with_val(wp, &s - 1u32));
    let half = hurwitz_zeta(inner, &total, &a)? / 2u32;
    out.push(if half_sign > 0 { half } else { -half });

    let mut poch = Complex::with_val(wp, &s);
    for k in 1..=k_max {
        let coeff = Complex::with_val(wp, &poch * bernoulli_over_factorial(k, wp));
        let shifted = Complex::with_val(wp, &total + (2 * k as u32 - 1));
        let t = coeff * hurwitz_zeta(inner, &shifted, &a)?;
        let small = log2_abs(&t) < stop_log2;
        out.push(t);
        if small {
            break;
        }
        let kk = 2 * k as u32;
        poch *= Complex::with_val(wp, &s + (kk - 1));
        poch *= Complex::with_val(wp, &s + kk);
    }
    Ok(out)
}

/// `true` when `(s1, s2)` is on the polar set `s2 = 1` or
/// `s1 + s2 in {2, 1, 0, -2, -4, ...}`.
pub fn on_singular_set(ctx: &PrecisionContext, s1: &CNum, s2: &CNum) -> bool {
    let r = ctx.pole_radius_log2();
    let sum = Complex::with_val(s1.prec().0.max(s2.prec().0), s1 + s2);
    near_integer_where(s2, r, |n| *n == 1)
        || near_integer_where(&sum, r, |n| *n == 1 || *n == 2 || (*n <= 0 && n.is_even()))
}

fn check_singular(ctx: &PrecisionContext, s1: &CNum, s2: &CNum) -> Result<()> {
    if on_singular_set(ctx, s1, s2) {
        return Err(Error::Singularity(format!(
            "double zeta is singular at s1 = {}, s2 = {}",
            crate::precision::fmt_c(s1, 20),
            crate::precision::fmt_c(s2, 20)
        )));
    }
    Ok(())
}

/// `true` inside the region of absolute convergence `Re s2 > 1`, `Re(s1+s2) > 2`.
pub fn in_convergent_region(s1: &CNum, s2: &CNum) -> bool {
    let a = Approx::of(s1);
    let b = Approx::of(s2);
    b.re > 1.0 && a.re + b.re > 2.0
}

/// Double zeta in its region of absolute convergence: the partial sums
/// `sum_{n <= N} n^(-s2) H_(n-1)(s1)` plus a closed tail obtained by expanding
/// `H_(n-1)(s1) = zeta(s1) - zeta_H(s1, n)` for large `n`.
pub fn double_zeta_direct(ctx: &PrecisionContext, s1: &CNum, s2: &CNum) -> Result<CNum> {
    if !in_convergent_region(s1, s2) {
        return Err(Error::Domain(format!(
            "direct summation needs Re s2 > 1 and Re(s1+s2) > 2, got s1 = {}, s2 = {}",
            crate::precision::fmt_c(s1, 20),
            crate::precision::fmt_c(s2, 20)
        )));
    }
    if near_integer_where(s1, ctx.pole_radius_log2() + 16.0, |n| *n == 1) {
        // The tail expansion divides by s1 - 1; the Euler-Maclaurin route does not.
        return double_zeta_em(ctx, s1, s2);
    }
    let a1 = Approx::of(s1);
    let a2 = Approx::of(s2);
    let sum_a = Approx::new(a1.re + a2.re, a1.im + a2.im);
    ziv_sum(ctx, "double_zeta_direct", |inner| {
        let wp = inner.bits();
        let floor = 24.0 - wp as f64;
        let pole = -Approx::new(a1.re - 1.0, a1.im).abs().log2();
        let est = move |n: u64| {
            let n = n as f64;
            (log2_pow(n, sum_a) + 2.0 * n.log2()).max(0.0) + pole.max(0.0) + 4.0
        };
        let target =
            move |n: u64| est(n) + floor - 8.0 - (log2_pow(n as f64, a2) + (n as f64).log2());
        let (n_top, k) = plan_shift(a1, Approx::new(1.0, 0.0), target, wp as usize)?;
        let s1w = inner.round(s1);
        let s2w = inner.round(s2);

        let mut pieces = Vec::with_capacity(n_top as usize + k + 4);
        let mut harmonic = inner.one();
        for n in 2..=n_top {
            pieces.push(Complex::with_val(wp, int_pow_neg(n, &s2w) * &harmonic));
            harmonic += int_pow_neg(n, &s1w);
        }
        let a = inner.complex((n_top + 1) as f64, 0.0);
        let zeta1 = riemann_zeta(inner, &s1w)?;
        pieces.push(zeta1 * hurwitz_zeta(inner, &s2w, &a)?);
        let stop = est(n_top) + floor - 12.0;
        for t in transfer_pieces(inner, &s1w, &s2w, n_top + 1, 1, k, stop)? {
            pieces.push(-t);
        }
        Ok(pieces)
    })
}

/// Double zeta by Euler-Maclaurin continuation:
/// `sum_{m >= 1} m^(-s1) zeta_H(s2, m + 1)` split at `m0`, the head summed
/// exactly and the tail expanded in Bernoulli terms that sum to Hurwitz zeta
/// values at `m0`.
pub fn double_zeta_em(ctx: &PrecisionContext, s1: &CNum, s2: &CNum) -> Result<CNum> {
    check_singular(ctx, s1, s2)?;
    let a1 = Approx::of(s1);
    let a2 = Approx::of(s2);
    if a1.re < -EM_DEPTH_LIMIT || a2.re < -EM_DEPTH_LIMIT {
        return Err(Error::Domain(format!(
            "Euler-Maclaurin route limited to Re s_i >= -{EM_DEPTH_LIMIT}; use the functional-equation route"
        )));
    }
    let pole = -Approx::new(a2.re - 1.0, a2.im).abs().log2();
    ziv_sum(ctx, "double_zeta_em", |inner| {
        let wp = inner.bits();
        let floor = 24.0 - wp as f64;
        let est = move |m: u64| {
            let m = m as f64;
            log2_pow(m, a1).max(0.0) + (log2_pow(m, a2) + m.log2()).max(0.0) + pole.max(0.0) + 4.0
        };
        let target =
            move |m: u64| est(m) + floor - 8.0 - (log2_pow(m as f64, a1) + (m as f64).log2());
        let (m0, k) = plan_shift(a2, Approx::new(0.0, 0.0), target, wp as usize)?;
        let s1w = inner.round(s1);
        let s2w = inner.round(s2);

        let mut pieces = Vec::with_capacity(m0 as usize + k + 4);
        let mut harmonic = inner.one();
        for n in 2..m0 {
            pieces.push(Complex::with_val(wp, int_pow_neg(n, &s2w) * &harmonic));
            harmonic += int_pow_neg(n, &s1w);
        }
        let a = inner.complex(m0 as f64, 0.0);
        pieces.push(harmonic * hurwitz_zeta(inner, &s2w, &a)?);
        let stop = est(m0) + floor - 12.0;
        pieces.extend(transfer_pieces(inner, &s2w, &s1w, m0, -1, k, stop)?);
        Ok(pieces)
    })
}
