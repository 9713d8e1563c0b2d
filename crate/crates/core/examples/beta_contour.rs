//! The vertical-line integral of z^(s2-1) (1-z)^(s1-1) against its gamma
//! closed form, for several abscissae.
//!
//!     cargo run --release --example beta_contour

use dzeta::oracle::{beta_contour, ContourSpec};
use dzeta::precision::fmt_c;
use dzeta::PrecisionContext;

fn main() -> dzeta::Result<()> {
    let ctx = PrecisionContext::new(128, 1e-30)?;
    for (s1, s2) in [
        ((0.3, 0.0), (0.4, 0.0)),
        ((-3.2, 0.5), (1.1, -0.2)),
        ((-12.5, 2.0), (-7.25, -1.0)),
    ] {
        let (s1, s2) = (ctx.complex(s1.0, s1.1), ctx.complex(s2.0, s2.1));
        for p in [0.25, 0.5, 0.75] {
            let r = beta_contour(&ctx, &s1, &s2, &ContourSpec::with_p(p))?;
            println!(
                "s1={} s2={} p={p}: {}  |diff| {:.2e}  (estimate {:.1e})",
                fmt_c(&s1, 4),
                fmt_c(&s2, 4),
                fmt_c(&r.value, 20),
                r.residual(),
                r.error_estimate
            );
        }
    }
    Ok(())
}
