//! zeta(s1, s2) / f(s1 + s2) from the truncated expansion, with and without
//! the gamma correction, next to the reference value.
//!
//!     cargo run --release --example asymptotic_ratio

use dzeta::asymptotic::{approx_ratio, approx_zeta_half, RegionParams};
use dzeta::kernel::f_factor;
use dzeta::oracle::{double_zeta_fe, ContourSpec};
use dzeta::precision::{fmt_c, log2_abs};
use dzeta::PrecisionContext;
use rug::Complex;

fn main() -> dzeta::Result<()> {
    let ctx = PrecisionContext::new(256, 1e-40)?;
    let s1 = ctx.complex(-40.3, 0.2);
    let s2 = ctx.complex(-60.2, 0.0);

    let exact = double_zeta_fe(&ctx, &s1, &s2, &ContourSpec::default())?.total;
    println!("reference ratio       {}", fmt_c(&exact, 25));

    for n in 0..=4 {
        let params = RegionParams::new(0.1, n)?;
        let with = approx_ratio(&ctx, &s1, &s2, &params, true)?;
        let without = approx_ratio(&ctx, &s1, &s2, &params, false)?;
        let err = |z: &rug::Complex| log2_abs(&Complex::with_val(256, &exact - z)).exp2();
        println!(
            "N = {n}  error {:.3e} (no correction {:.3e})  claimed order {:.2e}  region ok: {}",
            err(&with.ratio_approx),
            err(&without.ratio_approx),
            with.claimed_error_order,
            !with.region_warning()
        );
    }

    // (zeta(s1,s2) + zeta(s1+s2)/2) / f
    let sum = Complex::with_val(256, &s1 + &s2);
    let f = f_factor(&ctx, &sum)?;
    let half_exact = exact + dzeta::kernel::riemann_zeta(&ctx, &sum)? / f / 2u32;
    for n in 0..=2 {
        let approx = approx_zeta_half(&ctx, &s1, &s2, n)?;
        let d = Complex::with_val(256, &half_exact - &approx);
        println!("zeta^(1/2) N = {n}  error {:.3e}", log2_abs(&d).exp2());
    }
    Ok(())
}
