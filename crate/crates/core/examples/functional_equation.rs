//! Both sides of the double-zeta functional equation, with F_+ from its
//! divisor series and from its contour form.
//!
//!     cargo run --release --example functional_equation

use dzeta::oracle::{e1_check, ContourSpec};
use dzeta::precision::fmt_c;
use dzeta::PrecisionContext;

fn main() -> dzeta::Result<()> {
    let ctx = PrecisionContext::new(160, 1e-40)?;
    let points = [(-2.3, 3.7), (-0.5, 2.4), (-6.2, -3.1), (-15.3, -22.4)];
    for (a, b) in points {
        let r = e1_check(
            &ctx,
            &ctx.complex(a, 0.0),
            &ctx.complex(b, 0.0),
            &ContourSpec::default(),
        )?;
        println!(
            "({a}, {b})  F_+ by {:?}\n    lhs {}\n    rhs {}\n    residual {:.2e} at {} bits",
            r.fplus.route,
            fmt_c(&r.lhs, 25),
            fmt_c(&r.rhs, 25),
            r.residual,
            r.bits
        );
    }
    Ok(())
}
