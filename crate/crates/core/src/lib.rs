//! Double zeta values `zeta(s1, s2)` at large negative arguments, the
//! asymptotic expansion of `zeta(s1, s2) / f(s1 + s2)` and the reference
//! evaluators used to check it.
//!
//! - [`kernel`] gamma, Riemann/Hurwitz zeta, Bernoulli numbers, `f`
//! - [`coefficients`] `c_j` and `a_j`
//! - [`asymptotic`] the truncated expansion and its region check
//! - [`oracle`] direct, Euler-Maclaurin and functional-equation routes
//! - [`harness`] point evaluation, decay sweeps, slope fits, self-checks
//!
//! Each capability has a runnable program under `examples/`.

pub mod asymptotic;
pub mod coefficients;
pub mod error;
pub mod harness;
pub mod kernel;
pub mod oracle;
pub mod precision;
pub mod quadrature;

pub use error::{Error, Result};
pub use precision::{CNum, PrecisionContext};
