//! Reference evaluations of the double zeta function.

mod contour;
mod fe;
mod fplus;
mod residual;
mod sums;

pub use contour::{beta_contour, BetaCheck, ContourSpec};
pub use fe::{double_zeta_fe, double_zeta_fe_value, fe_bits, first_term_unreduced, Eq2Breakdown};
pub use fplus::{
    divisors, fplus_contour, fplus_series, psi_quadrature, DivisorTable, FPlusRoute, FPlusValue,
};
pub use residual::{e1_check, e1_residual, E1Check};
pub use sums::{
    double_zeta_direct, double_zeta_em, in_convergent_region, on_singular_set, EM_DEPTH_LIMIT,
};

use crate::error::Result;
use crate::precision::{CNum, PrecisionContext};

/// Reference route for [`double_zeta`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Direct,
    Em,
    Fe,
    /// Direct in the convergent region, Euler-Maclaurin up to `M = 60`,
    /// the functional-equation route beyond.
    Auto,
}

/// Depth at which [`Route::Auto`] switches from Euler-Maclaurin to the
/// functional-equation route.
pub const AUTO_FE_THRESHOLD: f64 = 60.0;

/// The route [`Route::Auto`] resolves to at `(s1, s2)`.
pub fn resolve_route(s1: &CNum, s2: &CNum) -> Route {
    let a = s1.real().to_f64();
    let b = s2.real().to_f64();
    if in_convergent_region(s1, s2) {
        Route::Direct
    } else if a <= -2.0 && b <= -2.0 && (-(a + b) > AUTO_FE_THRESHOLD || a.min(b) < -EM_DEPTH_LIMIT)
    {
        Route::Fe
    } else {
        Route::Em
    }
}

/// `zeta(s1, s2)` by the chosen route.
pub fn double_zeta(ctx: &PrecisionContext, s1: &CNum, s2: &CNum, route: Route) -> Result<CNum> {
    match route {
        Route::Direct => double_zeta_direct(ctx, s1, s2),
        Route::Em => double_zeta_em(ctx, s1, s2),
        Route::Fe => double_zeta_fe_value(ctx, s1, s2, &ContourSpec::default()),
        Route::Auto => double_zeta(ctx, s1, s2, resolve_route(s1, s2)),
    }
}
