//! The reference routes for zeta(s1, s2): direct summation, Euler-Maclaurin
//! and the six-term functional-equation split.
//!
//!     cargo run --release --example double_zeta_routes

use dzeta::kernel::f_factor;
use dzeta::oracle::{
    double_zeta, double_zeta_direct, double_zeta_em, double_zeta_fe, fe_bits, resolve_route,
    ContourSpec, Route,
};
use dzeta::precision::{fmt_c, log2_abs};
use dzeta::PrecisionContext;
use rug::Complex;

fn main() -> dzeta::Result<()> {
    let ctx = PrecisionContext::new(192, 1e-50)?;

    let (two, three) = (ctx.complex(2.0, 0.0), ctx.complex(3.0, 0.0));
    println!(
        "zeta(2,3)      = {}",
        fmt_c(&double_zeta_direct(&ctx, &two, &three)?, 40)
    );
    let s1 = ctx.complex(-2.5, 1.0);
    let s2 = ctx.complex(0.3, -0.7);
    println!(
        "zeta(-2.5+i, 0.3-0.7i) = {}  via {:?}",
        fmt_c(&double_zeta(&ctx, &s1, &s2, Route::Auto)?, 30),
        resolve_route(&s1, &s2)
    );

    // deep point: both continuations
    let (a, b) = (-26.3, -18.9);
    let ctx = PrecisionContext::new(fe_bits(64, -(a + b)), 1e-40)?;
    let s1 = ctx.complex(a, 0.4);
    let s2 = ctx.complex(b, -0.1);
    let em = double_zeta_em(&ctx, &s1, &s2)?;
    let split = double_zeta_fe(&ctx, &s1, &s2, &ContourSpec::default())?;
    let sum = Complex::with_val(ctx.bits(), &s1 + &s2);
    let fe = Complex::with_val(ctx.bits(), &split.total * f_factor(&ctx, &sum)?);
    println!("em             = {}", fmt_c(&em, 30));
    println!("fe             = {}", fmt_c(&fe, 30));
    println!(
        "relative gap   = 2^{:.1}",
        log2_abs(&Complex::with_val(ctx.bits(), &em - &fe)) - log2_abs(&em)
    );
    println!(
        "six pieces of zeta/f at {} bits, abscissa p = {:.3}:",
        split.bits, split.p
    );
    for (i, (t, m)) in split
        .terms()
        .iter()
        .zip(split.magnitudes_log2())
        .enumerate()
    {
        println!("  t{}  log2|t| = {m:>7.1}   {}", i + 1, fmt_c(t, 16));
    }
    Ok(())
}
