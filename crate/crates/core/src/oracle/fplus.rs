//! The auxiliary function `F_+(s1, s2)` of the double-zeta functional
//! equation, as a divisor-weighted series of confluent hypergeometric values
//! and as a vertical-line integral.

use std::collections::HashMap;
use std::sync::Mutex;

use rug::{Complex, Float};

use super::contour::{contour_scale, line_integral, pole_kernel, ContourSpec};
use super::sums::double_zeta_direct;
use crate::error::{Error, Result};
use crate::kernel::{gamma, hurwitz_zeta, riemann_zeta};
use crate::precision::{cpow, int_pow_neg, log2_abs, pairwise_sum, CNum, PrecisionContext};
use crate::quadrature::{integrate, Map, QuadOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FPlusRoute {
    Series,
    Contour,
}

#[derive(Debug, Clone)]
pub struct FPlusValue {
    pub value: CNum,
    pub route: FPlusRoute,
    pub error_estimate: f64,
}

/// Divisors of `k` in increasing order, by trial division.
pub fn divisors(k: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= k {
        if k.is_multiple_of(d) {
            small.push(d);
            if d * d != k {
                large.push(k / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Memoized divisor lists.
#[derive(Debug, Default)]
pub struct DivisorTable {
    lists: Mutex<HashMap<u64, std::sync::Arc<Vec<u64>>>>,
}

impl DivisorTable {
    pub fn get(&self, k: u64) -> std::sync::Arc<Vec<u64>> {
        let mut map = self.lists.lock().expect("divisor table poisoned");
        map.entry(k)
            .or_insert_with(|| std::sync::Arc::new(divisors(k)))
            .clone()
    }

    /// `sigma_s(k) = sum_{d | k} d^s`.
    pub fn sigma(&self, s: &CNum, k: u64) -> CNum {
        let prec = s.prec().0;
        let neg = Complex::with_val(prec, -s);
        let terms: Vec<CNum> = self.get(k).iter().map(|&d| int_pow_neg(d, &neg)).collect();
        pairwise_sum(&terms, prec)
    }
}

fn domain_series(s1: &CNum, s2: &CNum) -> Result<()> {
    if *s1.real() < 0 && *s2.real() > 1 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "the series form of F_+ needs Re s1 < 0 and Re s2 > 1, got s1 = {}, s2 = {}",
            crate::precision::fmt_c(s1, 20),
            crate::precision::fmt_c(s2, 20)
        )))
    }
}

/// `Psi(s2, s1+s2; 2 pi i k)` from its integral along the negative imaginary
/// axis, `(1/Gamma(s2)) int_0^inf e^(-2 pi k u) (-iu)^(s2-1) (1-iu)^(s1-1) (-i) du`.
pub fn psi_quadrature(ctx: &PrecisionContext, s1: &CNum, s2: &CNum, k: u64) -> Result<(CNum, f64)> {
    let wp = ctx.bits() + 16;
    let a = Complex::with_val(wp, s2 - 1u32);
    let b = Complex::with_val(wp, s1 - 1u32);
    let two_pi_k = Float::with_val(wp, rug::float::Constant::Pi) * (2 * k);
    let peak = (s2.real().to_f64() - 1.0).abs().max(1.0);
    let scale = peak / (2.0 * std::f64::consts::PI * k as f64);
    let opts = QuadOptions::new(Map::ExpSinh, wp, ctx.tol_log2() - 4.0).scale(scale);
    let q = integrate(&opts, |u: &Float| {
        let prec = u.prec();
        let minus_iu = Complex::with_val(prec, (0, -Float::with_val(prec, u)));
        let one_minus_iu = Complex::with_val(prec, (1, -Float::with_val(prec, u)));
        let damp = Float::with_val(prec, u * &two_pi_k);
        Ok(cpow(&minus_iu, &a) * cpow(&one_minus_iu, &b) * (-damp).exp())
    })?;
    let g = gamma(&ctx.with_extra_bits(16), s2)?;
    let v = q.value * Complex::with_val(wp, (0, -1)) / &g;
    let err = q.error_log2 - log2_abs(&g);
    Ok((ctx.round(&v), err))
}

/// `F_+ = sum_{k >= 1} sigma_{s1+s2-1}(k) Psi(s2, s1+s2; 2 pi i k)` for
/// `Re s1 < 0`, `Re s2 > 1`.
///
/// Terms with `k <= K` use quadrature; the rest use the large-argument
/// expansion `Psi ~ sum_n (s2)_n (1-s1)_n / n! (-1)^n (2 pi i k)^(-s2-n)`,
/// whose `k`-sums are `zeta(s2+n) zeta(1-s1+n)` minus the first `K` terms.
pub fn fplus_series(ctx: &PrecisionContext, s1: &CNum, s2: &CNum) -> Result<FPlusValue> {
    domain_series(s1, s2)?;
    let size = crate::precision::abs_f64(s1) + crate::precision::abs_f64(s2);
    let head = ((-ctx.tol_log2() * std::f64::consts::LN_2) / (2.0 * std::f64::consts::PI)).ceil()
        as u64
        + size.ceil() as u64
        + 4;
    let inner = ctx.with_extra_bits(24);
    let wp = inner.bits();
    let s1w = inner.round(s1);
    let s2w = inner.round(s2);
    let sum = Complex::with_val(wp, &s1w + &s2w);
    let sigma_exp = Complex::with_val(wp, &sum - 1u32);
    let table = DivisorTable::default();

    // head: k = 1..=K by quadrature, in parallel over k
    use rayon::prelude::*;
    let heads: Vec<(CNum, f64)> = (1..=head)
        .into_par_iter()
        .map(|k| {
            let (psi, err) = psi_quadrature(&inner, &s1w, &s2w, k)?;
            let sig = table.sigma(&sigma_exp, k);
            let err = err + log2_abs(&sig);
            Ok((psi * sig, err))
        })
        .collect::<Result<Vec<_>>>()?;
    let head_vals: Vec<CNum> = heads.iter().map(|(v, _)| v.clone()).collect();
    let mut err_log2 = heads
        .iter()
        .map(|(_, e)| *e)
        .fold(f64::NEG_INFINITY, f64::max)
        + (head as f64).log2();
    let head_sum = pairwise_sum(&head_vals, wp);

    // tail: k > K through Dirichlet series of divisor sums
    let stop = log2_abs(&head_sum).max(0.0) + inner.tol_log2() - 8.0;
    let log2_k = ((head + 1) as f64).log2();
    let two_pi_i = Complex::with_val(
        wp,
        (0, Float::with_val(wp, rug::float::Constant::Pi) * 2u32),
    );
    let one_minus_s1 = Complex::with_val(wp, 1 - &s1w);
    let mut coeff = inner.one();
    let mut tail_terms = Vec::new();
    let mut prev = f64::INFINITY;
    let mut last = f64::INFINITY;
    for n in 0..4 * wp as usize {
        let extra = ((s2.real().to_f64() + n as f64).max(0.0) * log2_k).ceil() as u32 + 16;
        let tight = PrecisionContext::with_tol_log2(wp + extra, inner.tol_log2() - extra as f64)?;
        let tp = tight.bits();
        let w = Complex::with_val(tp, &s2w + n as u32);
        let w2 = Complex::with_val(tp, &one_minus_s1 + n as u32);
        let full = riemann_zeta(&tight, &w)? * riemann_zeta(&tight, &w2)?;
        let sig_exp = Complex::with_val(tp, &sigma_exp);
        let partial: Vec<CNum> = (1..=head)
            .map(|k| table.sigma(&sig_exp, k) * int_pow_neg(k, &w))
            .collect();
        let remainder = full - pairwise_sum(&partial, tp);
        let scale = cpow(
            &Complex::with_val(tp, &two_pi_i),
            &Complex::with_val(tp, -&w),
        );
        let t = Complex::with_val(wp, &coeff * &scale) * remainder;
        let m = log2_abs(&t);
        tail_terms.push(t);
        last = m;
        if m < stop {
            break;
        }
        if m > prev && n > 2 {
            break;
        }
        prev = m;
        let nn = n as u32;
        coeff *= Complex::with_val(wp, &s2w + nn) * Complex::with_val(wp, &one_minus_s1 + nn);
        coeff /= -(Float::with_val(wp, nn + 1));
    }
    err_log2 = err_log2.max(last);
    let tail = pairwise_sum(&tail_terms, wp);
    let value = head_sum + tail;
    Ok(FPlusValue {
        value: ctx.round(&value),
        route: FPlusRoute::Series,
        error_estimate: err_log2.exp2(),
    })
}

fn domain_contour(s1: &CNum, s2: &CNum) -> Result<()> {
    if *s1.real() <= -2 && *s2.real() <= -2 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "the contour form of F_+ needs Re s1 <= -2 and Re s2 <= -2, got s1 = {}, s2 = {}",
            crate::precision::fmt_c(s1, 20),
            crate::precision::fmt_c(s2, 20)
        )))
    }
}

/// `F_+ = -Gamma(1-s2) zeta(1-s2, 1-s1) / (2 pi i e^(pi i s2))
///        - Gamma(1-s2)/(2 pi i) int_{p+i inf}^{p-i inf} z^(s2-1) zeta_H(1-s1, 1-z) dz / (e^(-2 pi i z) - 1)`.
pub fn fplus_contour(
    ctx: &PrecisionContext,
    s1: &CNum,
    s2: &CNum,
    spec: &ContourSpec,
) -> Result<FPlusValue> {
    domain_contour(s1, s2)?;
    spec.validate()?;
    let inner = ctx.with_extra_bits(24);
    let wp = inner.bits();
    let s1w = inner.round(s1);
    let s2w = inner.round(s2);
    let p = spec.abscissa(s1, s2);
    let a = Complex::with_val(wp, &s2w - 1u32);
    let hz = Complex::with_val(wp, 1 - &s1w);
    let q = line_integral(&inner, spec, p, contour_scale(s1, s2, p), |z| {
        let shifted = Complex::with_val(z.prec().0, 1 - z);
        Ok(pole_kernel(z) * cpow(z, &a) * hurwitz_zeta(&inner, &hz, &shifted)?)
    })?;
    let one_minus_s2 = Complex::with_val(wp, 1 - &s2w);
    let g = gamma(&inner, &one_minus_s2)?;
    let dz = double_zeta_direct(&inner, &one_minus_s2, &hz)?;
    let pi = Float::with_val(wp, rug::float::Constant::Pi);
    let two_pi_i = Complex::with_val(wp, (0, Float::with_val(wp, &pi * 2u32)));
    let e = Complex::with_val(wp, (0, Float::with_val(wp, &pi))) * &s2w;
    let first = -(Complex::with_val(wp, &g * &dz) / (Complex::with_val(wp, &two_pi_i * e.exp())));
    let second = -(Complex::with_val(wp, &g * &q.value) / &two_pi_i);
    let err = q.error_log2 + log2_abs(&g) - two_pi_i.abs().real().to_f64().log2();
    Ok(FPlusValue {
        value: ctx.round(&(first + second)),
        route: FPlusRoute::Contour,
        error_estimate: err.exp2(),
    })
}
