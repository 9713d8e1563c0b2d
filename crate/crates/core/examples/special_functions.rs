//! Gamma, Riemann and Hurwitz zeta, Bernoulli numbers and the normalizer f.
//!
//!     cargo run --release --example special_functions

use dzeta::kernel::{bernoulli, f_factor, gamma, hurwitz_zeta, riemann_zeta};
use dzeta::precision::{abs_f64, cpow, fmt_c, sin_pi};
use dzeta::PrecisionContext;
use rug::Complex;

fn main() -> dzeta::Result<()> {
    let ctx = PrecisionContext::new(256, 1e-60)?;

    for n in [0, 1, 2, 12, 30] {
        println!("B_{n:<2} = {}", bernoulli(n));
    }

    let half = ctx.complex(0.5, 0.0);
    println!("Gamma(1/2)   = {}", fmt_c(&gamma(&ctx, &half)?, 40));
    println!(
        "sqrt(pi)     = {}",
        ctx.pi().sqrt().to_string_radix(10, Some(40))
    );

    let s = ctx.complex(-7.3, 1.2);
    let z = riemann_zeta(&ctx, &s)?;
    println!("zeta(-7.3+1.2i) = {}", fmt_c(&z, 30));

    // functional equation zeta(s) = f(s) sin(pi s/2) zeta(1-s)
    let h = Complex::with_val(256, &s / 2u32);
    let rhs =
        f_factor(&ctx, &s)? * sin_pi(&h) * riemann_zeta(&ctx, &Complex::with_val(256, 1 - &s))?;
    let d = Complex::with_val(256, &z - &rhs);
    println!("  residual   = {:.3e}", abs_f64(&d));

    // zeta(s, 1/2) = (2^s - 1) zeta(s)
    let s = ctx.complex(-4.5, 3.0);
    let a = hurwitz_zeta(&ctx, &s, &half)?;
    let b = (cpow(&ctx.complex(2.0, 0.0), &s) - 1u32) * riemann_zeta(&ctx, &s)?;
    println!("zeta(s,1/2)  = {}", fmt_c(&a, 30));
    println!("(2^s-1)zeta  = {}", fmt_c(&b, 30));
    Ok(())
}
