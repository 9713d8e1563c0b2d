//! Classical special functions at arbitrary precision.

mod bernoulli;
mod gamma;
mod zeta;

pub use bernoulli::{bernoulli, bernoulli_over_factorial};
pub use gamma::{gamma, gamma_ratio, ln_gamma};
pub use zeta::{hurwitz_zeta, riemann_zeta, riemann_zeta_em};

pub(crate) use zeta::{plan_shift, Approx};

use rug::{Complex, Float};

use crate::error::{Error, Result};
use crate::precision::{near_integer_where, CNum, PrecisionContext};

/// A value of the normalizer `f(s)` together with its argument.
#[derive(Debug, Clone)]
pub struct FFactor {
    pub s: CNum,
    pub value: CNum,
}

impl FFactor {
    pub fn new(ctx: &PrecisionContext, s: &CNum) -> Result<Self> {
        Ok(Self {
            s: ctx.round(s),
            value: f_factor(ctx, s)?,
        })
    }
}

/// `f(s) = 2^s pi^(s-1) Gamma(1-s)`, principal branch for both powers.
pub fn f_factor(ctx: &PrecisionContext, s: &CNum) -> Result<CNum> {
    if near_integer_where(s, ctx.pole_radius_log2(), |n| *n >= 1) {
        return Err(Error::pole("f", crate::precision::fmt_c(s, 20)));
    }
    let inner = ctx.with_extra_bits(16);
    let wp = inner.bits();
    let s_w = Complex::with_val(wp, s);
    let ln2 = Float::with_val(wp, rug::float::Constant::Log2);
    let ln_pi = inner.pi().ln();
    let log_pow = Complex::with_val(wp, &s_w * ln2) + Complex::with_val(wp, &s_w - 1u32) * ln_pi;
    let one_minus = Complex::with_val(wp, 1 - &s_w);
    let log_g = ln_gamma(&inner, &one_minus)?;
    Ok(ctx.round(&(log_pow + log_g).exp()))
}
