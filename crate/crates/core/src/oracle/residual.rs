//! Residual of the double-zeta functional equation with `F_+` from either of
//! its two representations.

use rug::{Complex, Float};

use super::contour::ContourSpec;
use super::fplus::{fplus_contour, fplus_series, FPlusValue};
use super::sums::{double_zeta_direct, double_zeta_em, in_convergent_region};
use crate::error::{Error, Result};
use crate::kernel::{gamma, gamma_ratio, riemann_zeta};
use crate::precision::{i_pow, log2_abs, sin_pi, CNum, PrecisionContext};

#[derive(Debug, Clone)]
pub struct E1Check {
    pub lhs: CNum,
    pub rhs: CNum,
    /// `|lhs - rhs|`
    pub residual: f64,
    pub fplus: FPlusValue,
    pub bits: u32,
}

fn double_zeta_any(ctx: &PrecisionContext, s1: &CNum, s2: &CNum) -> Result<CNum> {
    if in_convergent_region(s1, s2) {
        double_zeta_direct(ctx, s1, s2)
    } else {
        double_zeta_em(ctx, s1, s2)
    }
}

/// `(zeta(s1,s2) - Gamma(1-s1) Gamma(S-1) zeta(S-1) / Gamma(s2)) / ((2 pi)^(S-1) Gamma(1-s1))`
fn lhs(ctx: &PrecisionContext, s1: &CNum, s2: &CNum) -> Result<CNum> {
    let wp = ctx.bits();
    let sum = Complex::with_val(wp, s1 + s2);
    let sm1 = Complex::with_val(wp, &sum - 1u32);
    let one_minus_s1 = Complex::with_val(wp, 1 - s1);
    let pole = gamma_ratio(ctx, &one_minus_s1, &sm1, s2)? * riemann_zeta(ctx, &sm1)?;
    let num = double_zeta_any(ctx, s1, s2)? - pole;
    let two_pi = Float::with_val(wp, rug::float::Constant::Pi) * 2u32;
    let scale = (Complex::with_val(wp, &sm1 * two_pi.ln())).exp() * gamma(ctx, &one_minus_s1)?;
    Ok(num / scale)
}

/// `(zeta(1-s2,1-s1) - Gamma(s2) Gamma(1-S) zeta(1-S) / Gamma(1-s1)) / (i^(S-1) Gamma(s2))
///  + 2i sin(pi (S-1)/2) F_+`
fn rhs(ctx: &PrecisionContext, s1: &CNum, s2: &CNum, fplus: &CNum) -> Result<CNum> {
    let wp = ctx.bits();
    let sum = Complex::with_val(wp, s1 + s2);
    let one_minus_sum = Complex::with_val(wp, 1 - &sum);
    let one_minus_s1 = Complex::with_val(wp, 1 - s1);
    let one_minus_s2 = Complex::with_val(wp, 1 - s2);
    let pole =
        gamma_ratio(ctx, s2, &one_minus_sum, &one_minus_s1)? * riemann_zeta(ctx, &one_minus_sum)?;
    let num = double_zeta_any(ctx, &one_minus_s2, &one_minus_s1)? - pole;
    let sm1 = Complex::with_val(wp, &sum - 1u32);
    let first = num / (i_pow(&sm1) * gamma(ctx, s2)?);
    let half = Complex::with_val(wp, &sm1 / 2u32);
    let second = sin_pi(&half) * Complex::with_val(wp, (0, 2)) * fplus;
    Ok(first + second)
}

/// Evaluates both sides of the functional equation. `F_+` comes from its
/// series when `Re s1 < 0 < Re s2 - 1`, otherwise from the contour form when
/// both real parts are at most `-2`.
///
/// The working tolerance is tightened by `log2 |lhs|` so that the absolute
/// residual reflects the context tolerance rather than the size of the sides.
pub fn e1_check(
    ctx: &PrecisionContext,
    s1: &CNum,
    s2: &CNum,
    spec: &ContourSpec,
) -> Result<E1Check> {
    let a = s1.real().to_f64();
    let b = s2.real().to_f64();
    let series = a < 0.0 && b > 1.0;
    let contour = a <= -2.0 && b <= -2.0;
    if !series && !contour {
        return Err(Error::Domain(format!(
            "functional-equation residual needs (Re s1 < 0, Re s2 > 1) or (Re s1, Re s2 <= -2), got ({a}, {b})"
        )));
    }
    let depth = (a.abs() + b.abs()).ceil() as u32;
    let probe = ctx.with_min_bits(64 + 4 * depth);
    let magnitude = log2_abs(&lhs(&probe, s1, s2)?).max(0.0);
    let tol_log2 = ctx.tol_log2() - magnitude - 8.0;
    let inner = probe
        .with_tol_log2_raised(tol_log2)
        .with_extra_bits(magnitude.ceil() as u32);

    let fplus = if series {
        fplus_series(&inner, s1, s2)?
    } else {
        fplus_contour(&inner, s1, s2, spec)?
    };
    let l = lhs(&inner, s1, s2)?;
    let r = rhs(&inner, s1, s2, &fplus.value)?;
    let residual = log2_abs(&Complex::with_val(inner.bits(), &l - &r)).exp2();
    Ok(E1Check {
        lhs: l,
        rhs: r,
        residual,
        fplus,
        bits: inner.bits(),
    })
}

/// Absolute residual `|lhs - rhs|` of the functional equation.
pub fn e1_residual(ctx: &PrecisionContext, s1: &CNum, s2: &CNum) -> Result<f64> {
    Ok(e1_check(ctx, s1, s2, &ContourSpec::default())?.residual)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn outside_both_regions() {
        let c = PrecisionContext::from_bits(64).unwrap();
        assert!(matches!(
            e1_residual(&c, &c.complex(0.5, 0.0), &c.complex(0.5, 0.0)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn series_region_point() {
        let c = PrecisionContext::new(128, 1e-30).unwrap();
        let r = e1_residual(&c, &c.complex(-2.3, 0.0), &c.complex(3.7, 0.0)).unwrap();
        assert!(r < 1e-12, "residual {r:e}");
    }
}
