//! The finite coefficients behind the expansion: c_j by two algorithms plus
//! a binomial cross-check, and a_j from the cotangent route against plain
//! power-series inversion.
//!
//!     cargo run --release --example expansion_coefficients

use dzeta::coefficients::{
    a_coeff, a_coeffs_by_inversion, c_coeff_binomial, c_coeff_partition, c_coeffs_taylor, ratios,
    CotDerivPoly,
};
use dzeta::precision::{fmt_c, log2_abs};
use dzeta::PrecisionContext;
use rug::Complex;

fn main() -> dzeta::Result<()> {
    let ctx = PrecisionContext::new(256, 1e-60)?;
    let point = ratios(&ctx, &ctx.complex(-40.3, 0.2), &ctx.complex(-60.2, 0.0))?;
    println!(
        "r1 = {}  r2 = {}  M = {}",
        fmt_c(&point.r1, 12),
        fmt_c(&point.r2, 12),
        point.m
    );

    let taylor = c_coeffs_taylor(&ctx, 12, &point);
    println!(" j  c_j (power series)                         log2|partition - series|  log2|binomial - series|");
    for (j, c) in taylor.iter().enumerate() {
        let part = c_coeff_partition(&ctx, j, &point);
        let bin = c_coeff_binomial(&ctx, j, &point);
        let d1 = log2_abs(&Complex::with_val(256, &part - c));
        let d2 = log2_abs(&Complex::with_val(256, &bin - c));
        println!("{j:>2}  {:<44} {d1:>8.1} {d2:>24.1}", fmt_c(c, 14));
    }

    // P_j(c) with cot^(j) = P_j(cot)
    for j in 0..4 {
        println!("P_{j} coefficients: {:?}", CotDerivPoly::new(j).coeffs);
    }

    let r2 = ctx.complex(0.35, 0.0);
    let inverted = a_coeffs_by_inversion(&ctx, 6, &r2)?;
    for (j, inv) in inverted.iter().enumerate() {
        let a = a_coeff(&ctx, j, &r2)?;
        println!(
            "a_{j} = {}  (inversion differs by 2^{:.0})",
            fmt_c(&a, 20),
            log2_abs(&Complex::with_val(256, &a - inv))
        );
    }
    Ok(())
}
