//! Exact six-term decomposition of `zeta(s1, s2) / f(s1 + s2)` for arguments
//! with large negative real parts.

use rug::{Complex, Float};

use super::contour::{contour_scale, line_integral, pole_kernel, ContourSpec};
use super::sums::double_zeta_direct;
use crate::asymptotic::gamma_correction_term;
use crate::error::{Error, Result};
use crate::kernel::{f_factor, gamma_ratio, hurwitz_zeta, ln_gamma, riemann_zeta};
use crate::precision::{
    cos_pi, cpow, i_pow, log2_abs, near_integer_where, sin_pi, CNum, PrecisionContext,
};

/// The six additive pieces of the ratio and their sum.
#[derive(Debug, Clone)]
pub struct Eq2Breakdown {
    /// Gamma/zeta term (the asymptotic correction).
    pub t1: CNum,
    pub t2: CNum,
    /// `-i^(1-S) zeta(1-S) / 2`
    pub t3: CNum,
    pub t4: CNum,
    /// Integral with the `l >= 2` Hurwitz sum.
    pub t5: CNum,
    /// Integral with the `l = 1` term alone.
    pub t6: CNum,
    pub total: CNum,
    /// Absolute quadrature error estimate on `total`.
    pub error_estimate: f64,
    pub bits: u32,
    pub p: f64,
    /// Integrand evaluations used by the two line integrals.
    pub nodes: [usize; 2],
}

impl Eq2Breakdown {
    pub fn terms(&self) -> [&CNum; 6] {
        [&self.t1, &self.t2, &self.t3, &self.t4, &self.t5, &self.t6]
    }

    /// `log2 |t_i|` for each term.
    pub fn magnitudes_log2(&self) -> [f64; 6] {
        self.terms().map(log2_abs)
    }
}

/// Precision used by the functional-equation route at depth `m`.
pub fn fe_bits(user_bits: u32, m: f64) -> u32 {
    user_bits.max(64 + 4 * m.max(0.0).ceil() as u32)
}

fn check_fe_domain(ctx: &PrecisionContext, s1: &CNum, s2: &CNum) -> Result<()> {
    if !(*s1.real() <= -2 && *s2.real() <= -2) {
        return Err(Error::Domain(format!(
            "the functional-equation route needs Re s1 <= -2 and Re s2 <= -2, got s1 = {}, s2 = {}",
            crate::precision::fmt_c(s1, 20),
            crate::precision::fmt_c(s2, 20)
        )));
    }
    let half = Complex::with_val(ctx.bits(), s1 + s2) / 2u32;
    if near_integer_where(&half, ctx.pole_radius_log2(), |_| true) {
        return Err(Error::Singularity(format!(
            "s1 + s2 = {} is an even integer",
            crate::precision::fmt_c(&Complex::with_val(ctx.bits(), s1 + s2), 20)
        )));
    }
    Ok(())
}

/// Assembles the six terms. Working precision is raised to
/// `max(bits, 64 + 4 ceil(M))` because individual terms carry factors up to
/// `2^M` that cancel in the total.
pub fn double_zeta_fe(
    ctx: &PrecisionContext,
    s1: &CNum,
    s2: &CNum,
    spec: &ContourSpec,
) -> Result<Eq2Breakdown> {
    check_fe_domain(ctx, s1, s2)?;
    spec.validate()?;
    let m = -(s1.real().to_f64() + s2.real().to_f64());
    let inner = ctx
        .with_min_bits(fe_bits(ctx.bits(), m))
        .with_extra_bits(16);
    let wp = inner.bits();
    let s1w = inner.round(s1);
    let s2w = inner.round(s2);
    let sum = Complex::with_val(wp, &s1w + &s2w);
    let half = Complex::with_val(wp, &sum / 2u32);
    let pi = Float::with_val(wp, rug::float::Constant::Pi);
    let one_minus_s1 = Complex::with_val(wp, 1 - &s1w);
    let one_minus_s2 = Complex::with_val(wp, 1 - &s2w);
    let one_minus_sum = Complex::with_val(wp, 1 - &sum);

    let lg = ln_gamma(&inner, &one_minus_s1)? + ln_gamma(&inner, &one_minus_s2)?
        - ln_gamma(&inner, &one_minus_sum)?;
    let g = lg.exp();
    let i_pow_1ms = i_pow(&one_minus_sum);
    let cos_half = cos_pi(&half);
    let dz = double_zeta_direct(&inner, &one_minus_s2, &one_minus_s1)?;

    let t1 = gamma_correction_term(&inner, &s1w, &s2w)?;
    let t2 = Complex::with_val(wp, &i_pow_1ms * &g) * sin_pi(&s2w)
        / Float::with_val(wp, &pi * 2u32)
        * &dz;
    let t3 = -(Complex::with_val(wp, &i_pow_1ms * riemann_zeta(&inner, &one_minus_sum)?) / 2u32);
    let e_s2 = (Complex::with_val(wp, (0, &pi)) * &s2w).exp();
    let t4 = Complex::with_val(wp, &g * &cos_half) * &dz / (e_s2 * &pi) / 2u32;

    let p = spec.abscissa(s1, s2);
    let scale = contour_scale(s1, s2, p);
    let a = Complex::with_val(wp, &s2w - 1u32);
    let b = Complex::with_val(wp, &s1w - 1u32);
    let i5 = line_integral(&inner, spec, p, scale, |z| {
        let shifted = Complex::with_val(z.prec().0, 2 - z);
        Ok(pole_kernel(z) * cpow(z, &a) * hurwitz_zeta(&inner, &one_minus_s1, &shifted)?)
    })?;
    let i6 = line_integral(&inner, spec, p, scale, |z| {
        let one_minus_z = Complex::with_val(z.prec().0, 1 - z);
        Ok(pole_kernel(z) * cpow(z, &a) * cpow(&one_minus_z, &b))
    })?;
    let prefactor = Complex::with_val(wp, &g * &cos_half) / Float::with_val(wp, &pi * 2u32);
    let t5 = Complex::with_val(wp, &prefactor * &i5.value);
    let t6 = Complex::with_val(wp, &prefactor * &i6.value);
    let err = log2_abs(&prefactor) + i5.error_log2.max(i6.error_log2) + 1.0;

    let terms: Vec<CNum> = [t1, t2, t3, t4, t5, t6]
        .iter()
        .map(|t| ctx.round(t))
        .collect();
    let mut total = terms[0].clone();
    for t in &terms[1..] {
        total += t;
    }
    let [t1, t2, t3, t4, t5, t6]: [CNum; 6] = terms.try_into().expect("six terms");
    Ok(Eq2Breakdown {
        t1,
        t2,
        t3,
        t4,
        t5,
        t6,
        total,
        error_estimate: err.exp2(),
        bits: wp,
        p,
        nodes: [i5.nodes, i6.nodes],
    })
}

/// `zeta(s1, s2)` from the six-term decomposition, `total * f(s1 + s2)`.
pub fn double_zeta_fe_value(
    ctx: &PrecisionContext,
    s1: &CNum,
    s2: &CNum,
    spec: &ContourSpec,
) -> Result<CNum> {
    let b = double_zeta_fe(ctx, s1, s2, spec)?;
    let inner = ctx.with_extra_bits(16);
    let sum = Complex::with_val(inner.bits(), s1 + s2);
    Ok(ctx.round(&(f_factor(&inner, &sum)? * b.total)))
}

/// The first term in its unreduced form
/// `Gamma(1-s1) Gamma(S-1) zeta(S-1) / (f(S) Gamma(s2))`.
pub fn first_term_unreduced(ctx: &PrecisionContext, s1: &CNum, s2: &CNum) -> Result<CNum> {
    let inner = ctx.with_extra_bits(32);
    let wp = inner.bits();
    let sum = Complex::with_val(wp, s1 + s2);
    let sm1 = Complex::with_val(wp, &sum - 1u32);
    let ratio = gamma_ratio(
        &inner,
        &Complex::with_val(wp, 1 - s1),
        &sm1,
        &inner.round(s2),
    )?;
    let v = ratio * riemann_zeta(&inner, &sm1)? / f_factor(&inner, &sum)?;
    Ok(ctx.round(&v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn domain_and_singularity() {
        let c = PrecisionContext::from_bits(64).unwrap();
        let spec = ContourSpec::default();
        assert!(matches!(
            double_zeta_fe(&c, &c.complex(-1.0, 0.0), &c.complex(-20.5, 0.0), &spec),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            double_zeta_fe(&c, &c.complex(-10.0, 0.0), &c.complex(-20.0, 0.0), &spec),
            Err(Error::Singularity(_))
        ));
    }

    #[test]
    fn reduced_first_term_matches_unreduced() {
        let c = PrecisionContext::new(256, 1e-60).unwrap();
        for (a, b) in [(-10.3, -9.4), (-12.6, -18.9), (-25.4, -14.9)] {
            let s1 = c.complex(a, 0.2);
            let s2 = c.complex(b, -0.1);
            let reduced = gamma_correction_term(&c, &s1, &s2).unwrap();
            let raw = first_term_unreduced(&c, &s1, &s2).unwrap();
            let d = Complex::with_val(256, &reduced - &raw);
            assert!(log2_abs(&d) - log2_abs(&raw) < -180.0, "({a}, {b})");
        }
    }

    #[test]
    fn breakdown_total_is_the_sum() {
        let c = PrecisionContext::new(128, 1e-30).unwrap();
        let b = double_zeta_fe(
            &c,
            &c.complex(-10.3, 0.0),
            &c.complex(-9.4, 0.0),
            &ContourSpec::default(),
        )
        .unwrap();
        let mut s = b.t1.clone();
        for t in [&b.t2, &b.t3, &b.t4, &b.t5, &b.t6] {
            s += t;
        }
        assert_eq!(s, b.total);
        // t3 is -i^(1-S) zeta(1-S) / 2 with zeta(1-S) ~ 1
        assert!((log2_abs(&b.t3) + 1.0).abs() < 0.01);
    }
}
