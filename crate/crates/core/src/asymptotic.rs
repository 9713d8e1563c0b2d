//! Large-`M` expansion of `zeta(s1, s2) / f(s1 + s2)` and its validity region.

use rug::{Complex, Float};

use crate::coefficients::{
    c_coeffs_taylor, cot_derivative_at_pi, pochhammer, ratios, ExpansionPoint,
};
use crate::error::{Error, Result};
use crate::kernel::{f_factor, ln_gamma, riemann_zeta};
use crate::precision::{cos_pi, log2_abs, near_integer_where, sin_pi, CNum, PrecisionContext};

/// Highest supported truncation order.
pub const MAX_ORDER: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionParams {
    pub epsilon: f64,
    pub n: usize,
}

impl RegionParams {
    pub fn new(epsilon: f64, n: usize) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 0.5) {
            return Err(Error::InvalidParams(format!(
                "epsilon must lie in (0, 1/2), got {epsilon}"
            )));
        }
        if n > MAX_ORDER {
            return Err(Error::InvalidParams(format!(
                "N must be at most {MAX_ORDER}, got {n}"
            )));
        }
        Ok(Self { epsilon, n })
    }
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct RegionVerdict {
    pub im1_ok: bool,
    pub im2_ok: bool,
    pub ratio_ok: bool,
    pub even_gap_ok: bool,
    /// `min_k |s1 + s2 - 2k|`
    pub even_gap: f64,
}

impl RegionVerdict {
    pub fn pass(&self) -> bool {
        self.im1_ok && self.im2_ok && self.ratio_ok && self.even_gap_ok
    }
}

/// Literal evaluation of the four hypotheses
/// `|Im s1| < 1/eps`, `|Im s2| < 1/eps`, `eps < Re s1 / Re(s1+s2) < 1 - eps`
/// and `|s1 + s2 - 2k| > |s1 + s2|^(-1/eps)` for every integer `k`.
pub fn region_check(s1: &CNum, s2: &CNum, epsilon: f64) -> Result<RegionVerdict> {
    let prec = s1.prec().0.max(s2.prec().0);
    let sum = Complex::with_val(prec, s1 + s2);
    if sum.is_zero() {
        return Err(Error::Domain("region check needs s1 + s2 != 0".into()));
    }
    let bound = 1.0 / epsilon;
    let im1_ok = s1.imag().to_f64().abs() < bound;
    let im2_ok = s2.imag().to_f64().abs() < bound;

    let re_sum = Float::with_val(prec, sum.real());
    let ratio_ok = if re_sum.is_zero() {
        false
    } else {
        let ratio = (Float::with_val(prec, s1.real()) / &re_sum).to_f64();
        epsilon < ratio && ratio < 1.0 - epsilon
    };

    let mut half = Complex::with_val(prec, &sum / 2u32);
    let (k, _) = crate::precision::nearest_integer(&half);
    *half.mut_real() -= &k;
    half *= 2u32;
    let gap_log2 = log2_abs(&half);
    let even_gap_ok = gap_log2 > -bound * log2_abs(&sum);

    Ok(RegionVerdict {
        im1_ok,
        im2_ok,
        ratio_ok,
        even_gap_ok,
        even_gap: gap_log2.exp2(),
    })
}

#[derive(Debug, Clone)]
pub struct AsymptoticResult {
    /// Approximation of `zeta(s1, s2) / f(s1 + s2)`.
    pub ratio_approx: CNum,
    pub zeta_approx: CNum,
    /// `pi^j cot^(j)(pi r2) c_j / (s1+s2)_j` for `j = 0..=2N`.
    pub terms: Vec<CNum>,
    pub correction: Option<CNum>,
    /// `M^(-N-1)`
    pub claimed_error_order: f64,
    pub n: usize,
    pub region: Option<RegionVerdict>,
}

impl AsymptoticResult {
    /// True when a region verdict was computed and it failed.
    pub fn region_warning(&self) -> bool {
        self.region.as_ref().is_some_and(|v| !v.pass())
    }
}

fn check_pochhammer(ctx: &PrecisionContext, sum: &CNum, order: usize) -> Result<()> {
    // (S)_j vanishes for some j <= order iff S is in {0, -1, ..., -(order - 1)}
    if order == 0 {
        return Ok(());
    }
    let lowest = -(order as i64 - 1);
    if near_integer_where(sum, ctx.pole_radius_log2(), |n| *n <= 0 && *n >= lowest) {
        return Err(Error::pole(
            "pochhammer",
            format!(
                "(s1+s2)_j with s1+s2 = {}",
                crate::precision::fmt_c(sum, 20)
            ),
        ));
    }
    Ok(())
}

/// The `2N + 1` summands `pi^j cot^(j)(pi r2) c_j / (s1+s2)_j`.
pub fn series_terms(ctx: &PrecisionContext, point: &ExpansionPoint, n: usize) -> Result<Vec<CNum>> {
    let order = 2 * n;
    check_pochhammer(ctx, &point.sum, order)?;
    let inner = ctx.with_extra_bits(16);
    let wp = inner.bits();
    let c = c_coeffs_taylor(&inner, order, point);
    let pi = Float::with_val(wp, rug::float::Constant::Pi);
    let sum = Complex::with_val(wp, &point.sum);
    let mut pi_pow = Float::with_val(wp, 1);
    let mut terms = Vec::with_capacity(order + 1);
    for (j, cj) in c.iter().enumerate() {
        let cot = cot_derivative_at_pi(&inner, j, &point.r2)?;
        let t = Complex::with_val(wp, &cot * cj) * &pi_pow / pochhammer(&sum, j);
        terms.push(ctx.round(&t));
        pi_pow *= &pi;
    }
    Ok(terms)
}

fn half_angle(sum: &CNum) -> CNum {
    Complex::with_val(sum.prec().0, sum / 2u32)
}

/// `-sin(pi S/2)/2 + cos(pi S/2)/2 * sum_j term_j` without the correction.
pub fn main_term_series(
    ctx: &PrecisionContext,
    point: &ExpansionPoint,
    n: usize,
) -> Result<AsymptoticResult> {
    let terms = series_terms(ctx, point, n)?;
    let wp = ctx.bits() + 16;
    let sum = Complex::with_val(wp, &point.sum);
    let h = half_angle(&sum);
    let series = crate::precision::pairwise_sum(&terms, wp);
    let ratio = (Complex::with_val(wp, cos_pi(&h) * series) - sin_pi(&h)) / 2u32;
    Ok(AsymptoticResult {
        ratio_approx: ctx.round(&ratio),
        zeta_approx: ctx.zero(),
        terms,
        correction: None,
        claimed_error_order: point.m.powf(-(n as f64) - 1.0),
        n,
        region: None,
    })
}

/// `sin(pi s2) G(1-s1) G(1-s2) zeta(2-s1-s2) / (4 pi G(1-s1-s2) sin(pi (s1+s2)/2))`.
pub fn gamma_correction_term(ctx: &PrecisionContext, s1: &CNum, s2: &CNum) -> Result<CNum> {
    let inner = ctx.with_extra_bits(24);
    let wp = inner.bits();
    let s1 = Complex::with_val(wp, s1);
    let s2 = Complex::with_val(wp, s2);
    let sum = Complex::with_val(wp, &s1 + &s2);
    let h = half_angle(&sum);
    if near_integer_where(&h, ctx.pole_radius_log2(), |_| true) {
        return Err(Error::pole(
            "gamma correction",
            format!("even s1+s2 = {}", crate::precision::fmt_c(&sum, 20)),
        ));
    }
    let sin2 = sin_pi(&s2);
    if sin2.is_zero() {
        return Ok(ctx.zero());
    }
    let lg = ln_gamma(&inner, &Complex::with_val(wp, 1 - &s1))?
        + ln_gamma(&inner, &Complex::with_val(wp, 1 - &s2))?
        - ln_gamma(&inner, &Complex::with_val(wp, 1 - &sum))?;
    let z = riemann_zeta(&inner, &Complex::with_val(wp, 2 - &sum))?;
    let pi = Float::with_val(wp, rug::float::Constant::Pi);
    let v = sin2 * lg.exp() * z / (sin_pi(&h) * pi * 4u32);
    Ok(ctx.round(&v))
}

/// Full approximation of `zeta(s1, s2) / f(s1+s2)` at order `params.n`.
/// The region verdict is attached as an advisory; it never blocks evaluation.
pub fn approx_ratio(
    ctx: &PrecisionContext,
    s1: &CNum,
    s2: &CNum,
    params: &RegionParams,
    include_correction: bool,
) -> Result<AsymptoticResult> {
    let point = ratios(ctx, s1, s2)?;
    let mut res = main_term_series(ctx, &point, params.n)?;
    res.region = Some(region_check(s1, s2, params.epsilon)?);
    if include_correction {
        let corr = gamma_correction_term(ctx, s1, s2)?;
        res.ratio_approx += &corr;
        res.correction = Some(corr);
    }
    let f = f_factor(ctx, &point.sum)?;
    res.zeta_approx = ctx.round(&Complex::with_val(ctx.bits(), &res.ratio_approx * &f));
    Ok(res)
}

/// `cos(pi S/2)/2 * sum_j term_j`, the approximation of
/// `(zeta(s1, s2) + zeta(s1 + s2)/2) / f(s1 + s2)`.
pub fn approx_zeta_half(ctx: &PrecisionContext, s1: &CNum, s2: &CNum, n: usize) -> Result<CNum> {
    let point = ratios(ctx, s1, s2)?;
    let terms = series_terms(ctx, &point, n)?;
    let wp = ctx.bits() + 16;
    let h = half_angle(&Complex::with_val(wp, &point.sum));
    let v = cos_pi(&h) * crate::precision::pairwise_sum(&terms, wp) / 2u32;
    Ok(ctx.round(&v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(256, 1e-60).unwrap()
    }

    fn diff_log2(a: &CNum, b: &CNum) -> f64 {
        log2_abs(&Complex::with_val(a.prec().0, a - b))
    }

    #[test]
    fn params_bounds() {
        assert!(RegionParams::new(0.0, 1).is_err());
        assert!(RegionParams::new(0.5, 1).is_err());
        assert!(RegionParams::new(0.1, 13).is_err());
        assert!(RegionParams::new(0.1, 12).is_ok());
    }

    #[test]
    fn region_examples() {
        let c = ctx();
        let v = region_check(&c.complex(-50.5, 0.0), &c.complex(-50.5, 0.0), 0.1).unwrap();
        assert!(v.pass());
        assert!((v.even_gap - 1.0).abs() < 1e-12);

        let v = region_check(&c.complex(-50.0, 0.0), &c.complex(-50.0, 0.0), 0.1).unwrap();
        assert!(!v.even_gap_ok);
        assert!(v.im1_ok && v.im2_ok && v.ratio_ok);
        assert_eq!(v.even_gap, 0.0);

        let v = region_check(&c.complex(-99.0, 0.0), &c.complex(-1.0, 0.0), 0.1).unwrap();
        assert!(!v.ratio_ok);

        let v = region_check(&c.complex(-20.0, 11.0), &c.complex(-20.5, 0.0), 0.1).unwrap();
        assert!(!v.im1_ok && v.im2_ok);

        assert!(region_check(&c.complex(2.0, 1.0), &c.complex(-2.0, -1.0), 0.1).is_err());
    }

    #[test]
    fn order_zero_is_the_sine_term() {
        let c = ctx();
        let s1 = c.complex(-30.2, 0.3);
        let s2 = c.complex(-20.1, -0.1);
        let p = ratios(&c, &s1, &s2).unwrap();
        let r = main_term_series(&c, &p, 0).unwrap();
        let h = half_angle(&p.sum);
        let pi_r2 = Complex::with_val(256, &p.r2 * c.pi());
        let (s, co) = pi_r2.sin_cos(Complex::new(256));
        let expected = (Complex::with_val(256, cos_pi(&h) * co / s) - sin_pi(&h)) / 2u32;
        assert!(diff_log2(&r.ratio_approx, &expected) < -190.0);
        assert_eq!(r.terms.len(), 1);
        assert!((r.claimed_error_order - 1.0 / 50.3).abs() < 1e-12);
    }

    #[test]
    fn symmetric_point_collapses() {
        let c = ctx();
        let s = c.complex(-25.25, 0.0);
        let p = ratios(&c, &s, &s).unwrap();
        for n in 0..=4 {
            let r = main_term_series(&c, &p, n).unwrap();
            assert_eq!(r.terms.len(), 2 * n + 1);
            for t in &r.terms {
                assert!(log2_abs(t) < -180.0);
            }
            let expected = Complex::with_val(256, -sin_pi(&half_angle(&p.sum)) / 2u32);
            assert!(diff_log2(&r.ratio_approx, &expected) < -180.0);
            let half = approx_zeta_half(&c, &s, &s, n).unwrap();
            assert!(log2_abs(&half) < -180.0);
        }
    }

    #[test]
    fn vanishing_pochhammer_is_a_pole() {
        let c = ctx();
        let s1 = c.complex(-1.0, 0.0);
        let s2 = c.complex(-2.0, 0.0);
        let p = ratios(&c, &s1, &s2).unwrap();
        assert!(main_term_series(&c, &p, 1).is_ok());
        assert!(matches!(
            main_term_series(&c, &p, 2),
            Err(Error::Pole { .. })
        ));
    }

    #[test]
    fn correction_examples() {
        let c = ctx();
        let z = gamma_correction_term(&c, &c.complex(-20.3, 0.0), &c.complex(-7.0, 0.0)).unwrap();
        assert!(z.is_zero());

        let s = c.complex(-24.75, 0.0);
        let v = gamma_correction_term(&c, &s, &s).unwrap();
        assert!(log2_abs(&v) < (1e-6f64).log2());
        assert!(log2_abs(&v) > -200.0);

        assert!(matches!(
            gamma_correction_term(&c, &c.complex(-20.0, 0.0), &c.complex(-30.0, 0.0)),
            Err(Error::Pole { .. })
        ));

        // super-polynomial decay along the symmetric ray
        let mags: Vec<f64> = [20.0, 40.0, 80.0]
            .iter()
            .map(|m: &f64| {
                let s = c.complex(-(m + 0.5) / 2.0, 0.0);
                log2_abs(&gamma_correction_term(&c, &s, &s).unwrap())
            })
            .collect();
        assert!(mags[1] - mags[0] < -10.0);
        assert!(mags[2] - mags[1] < -20.0);
    }

    #[test]
    fn bookkeeping_identities() {
        let c = ctx();
        let s1 = c.complex(-40.3, 0.2);
        let s2 = c.complex(-60.2, 0.0);
        let params = RegionParams::new(0.1, 2).unwrap();
        let with = approx_ratio(&c, &s1, &s2, &params, true).unwrap();
        let without = approx_ratio(&c, &s1, &s2, &params, false).unwrap();
        assert!(!with.region_warning());
        let delta = Complex::with_val(256, &with.ratio_approx - &without.ratio_approx);
        let corr = with.correction.clone().unwrap();
        assert!(diff_log2(&delta, &corr) < -240.0);

        let half = approx_zeta_half(&c, &s1, &s2, 2).unwrap();
        let h = half_angle(&Complex::with_val(256, &s1 + &s2));
        let lhs = Complex::with_val(256, &without.ratio_approx + sin_pi(&h) / 2u32);
        assert!(diff_log2(&lhs, &half) < -190.0);

        let f = f_factor(&c, &Complex::with_val(256, &s1 + &s2)).unwrap();
        let z = Complex::with_val(256, &with.ratio_approx * &f);
        assert!(diff_log2(&z, &with.zeta_approx) < log2_abs(&z) - 240.0);
    }

    #[test]
    fn region_failure_is_only_a_warning() {
        let c = ctx();
        let params = RegionParams::new(0.1, 1).unwrap();
        let r = approx_ratio(
            &c,
            &c.complex(-99.0, 0.0),
            &c.complex(-1.5, 0.0),
            &params,
            false,
        )
        .unwrap();
        assert!(r.region_warning());
    }
}
