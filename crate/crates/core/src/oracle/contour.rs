//! Integrals along the vertical line `Re z = p`, traversed downwards from
//! `p + i inf` to `p - i inf`.

use rug::{Complex, Float};

use crate::error::{Error, Result};
use crate::kernel::ln_gamma;
use crate::precision::{cpow, log2_abs, CNum, PrecisionContext};
use crate::quadrature::{integrate, Map, QuadOptions, QuadResult};

/// Vertical-line quadrature settings.
#[derive(Debug, Clone, PartialEq)]
pub struct ContourSpec {
    /// Abscissa in `(0, 1)`; `None` picks `Re r2` clamped to `[0.05, 0.95]`.
    pub p: Option<f64>,
    /// Minimum number of integrand evaluations.
    pub min_nodes: usize,
    /// Maximum number of step halvings.
    pub max_level: u32,
}

impl Default for ContourSpec {
    fn default() -> Self {
        Self {
            p: None,
            min_nodes: 64,
            max_level: 10,
        }
    }
}

impl ContourSpec {
    pub fn with_p(p: f64) -> Self {
        Self {
            p: Some(p),
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(p) = self.p {
            if !(p > 0.0 && p < 1.0) {
                return Err(Error::InvalidParams(format!(
                    "contour abscissa p must lie in (0, 1), got {p}"
                )));
            }
        }
        if self.min_nodes < 64 {
            return Err(Error::InvalidParams(format!(
                "contour needs at least 64 nodes, got {}",
                self.min_nodes
            )));
        }
        Ok(())
    }

    /// The abscissa used for a given pair.
    pub fn abscissa(&self, s1: &CNum, s2: &CNum) -> f64 {
        self.p.unwrap_or_else(|| {
            let a = s1.real().to_f64();
            let b = s2.real().to_f64();
            let r2 = if a + b == 0.0 { 0.5 } else { b / (a + b) };
            if r2.is_finite() {
                r2.clamp(0.05, 0.95)
            } else {
                0.5
            }
        })
    }
}

/// Width of the bump of `z^(s2-1) (1-z)^(s1-1)` across the line `Re z = p`.
fn feature_scale(s1: &CNum, s2: &CNum, p: f64) -> f64 {
    let a = (s1.real().to_f64() - 1.0).abs();
    let b = (s2.real().to_f64() - 1.0).abs();
    let kappa = b / (p * p) + a / ((1.0 - p) * (1.0 - p));
    1.0 / kappa.max(1.0).sqrt()
}

/// `int_{p + i inf}^{p - i inf} g(z) dz`, with `z = p - i t`, `dz = -i dt`.
pub(crate) fn line_integral<G>(
    ctx: &PrecisionContext,
    spec: &ContourSpec,
    p: f64,
    scale: f64,
    g: G,
) -> Result<QuadResult>
where
    G: Fn(&CNum) -> Result<CNum> + Sync,
{
    let wp = ctx.bits();
    let opts = QuadOptions::new(Map::SinhSinh, wp, ctx.tol_log2() - 4.0)
        .scale(scale)
        .min_nodes(spec.min_nodes)
        .max_level(spec.max_level);
    let pw = Float::with_val(wp + 32, p);
    let mut r = integrate(&opts, |t: &Float| {
        let z = Complex::with_val(wp + 32, (&pw, -Float::with_val(wp + 32, t)));
        g(&z)
    })?;
    r.value = Complex::with_val(wp, &r.value * Complex::with_val(wp, (0, -1)));
    Ok(r)
}

/// `1 / (exp(-2 pi i z) - 1)`.
pub(crate) fn pole_kernel(z: &CNum) -> CNum {
    let prec = z.prec().0;
    let pi = Float::with_val(prec, rug::float::Constant::Pi);
    let arg = Complex::with_val(prec, z * Complex::with_val(prec, (0, -2))) * pi;
    // past this the correctly rounded reciprocal of e - 1 is very slow in mpc
    let cutoff = f64::from(prec + 16) * std::f64::consts::LN_2;
    let x = arg.real().to_f64();
    if x < -cutoff {
        return Complex::with_val(prec, -1);
    }
    if x > cutoff {
        return (-arg).exp();
    }
    (arg.exp() - 1u32).recip()
}

pub(crate) fn contour_scale(s1: &CNum, s2: &CNum, p: f64) -> f64 {
    feature_scale(s1, s2, p)
}

/// Value of `int_{p+i inf}^{p-i inf} z^(s2-1) (1-z)^(s1-1) dz` by quadrature,
/// its closed form `-2 pi i Gamma(1-s1-s2) / (Gamma(1-s1) Gamma(1-s2))` and
/// the quadrature error estimate.
#[derive(Debug, Clone)]
pub struct BetaCheck {
    pub value: CNum,
    pub closed_form: CNum,
    pub error_estimate: f64,
    pub p: f64,
}

impl BetaCheck {
    pub fn residual(&self) -> f64 {
        let d = Complex::with_val(self.value.prec().0, &self.value - &self.closed_form);
        log2_abs(&d).exp2()
    }
}

pub fn beta_contour(
    ctx: &PrecisionContext,
    s1: &CNum,
    s2: &CNum,
    spec: &ContourSpec,
) -> Result<BetaCheck> {
    spec.validate()?;
    let sum = Complex::with_val(ctx.bits(), s1 + s2);
    if *sum.real() >= 1 {
        return Err(Error::Domain(
            "the beta contour integral needs Re(s1+s2) < 1".into(),
        ));
    }
    let inner = ctx.with_extra_bits(16);
    let wp = inner.bits();
    let p = spec.abscissa(s1, s2);
    let a = Complex::with_val(wp, s2 - 1u32);
    let b = Complex::with_val(wp, s1 - 1u32);
    let q = line_integral(&inner, spec, p, feature_scale(s1, s2, p), |z| {
        let one_minus = Complex::with_val(z.prec().0, 1 - z);
        Ok(cpow(z, &a) * cpow(&one_minus, &b))
    })?;
    let lg = ln_gamma(&inner, &Complex::with_val(wp, 1 - &sum))?
        - ln_gamma(&inner, &Complex::with_val(wp, 1 - s1))?
        - ln_gamma(&inner, &Complex::with_val(wp, 1 - s2))?;
    let two_pi = Float::with_val(wp, rug::float::Constant::Pi) * 2u32;
    let closed = lg.exp() * Complex::with_val(wp, (0, -two_pi));
    Ok(BetaCheck {
        value: ctx.round(&q.value),
        closed_form: ctx.round(&closed),
        error_estimate: q.error_estimate(),
        p,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_validation() {
        assert!(ContourSpec::with_p(0.0).validate().is_err());
        assert!(ContourSpec::with_p(1.0).validate().is_err());
        let mut s = ContourSpec::with_p(0.5);
        s.min_nodes = 32;
        assert!(s.validate().is_err());
        assert!(ContourSpec::default().validate().is_ok());
    }

    #[test]
    fn default_abscissa_tracks_r2() {
        let c = PrecisionContext::from_bits(64).unwrap();
        let s = ContourSpec::default();
        assert!((s.abscissa(&c.complex(-30.0, 0.0), &c.complex(-10.0, 0.0)) - 0.25).abs() < 1e-15);
        assert_eq!(
            s.abscissa(&c.complex(-1.0, 0.0), &c.complex(-99.0, 0.0)),
            0.95
        );
    }

    #[test]
    fn beta_minus_one_minus_one() {
        // closed form -2 pi i Gamma(3) / (Gamma(2) Gamma(2)) = -4 pi i
        let c = PrecisionContext::new(128, 1e-30).unwrap();
        let r = beta_contour(
            &c,
            &c.complex(-1.0, 0.0),
            &c.complex(-1.0, 0.0),
            &ContourSpec::with_p(0.5),
        )
        .unwrap();
        let expected = Complex::with_val(128, (0, c.pi() * -4i32));
        let d = Complex::with_val(128, &r.closed_form - &expected);
        assert!(log2_abs(&d) < -90.0);
        assert!(r.residual() < 1e-25);
    }

    #[test]
    fn beta_fractional_and_path_independent() {
        let c = PrecisionContext::new(128, 1e-30).unwrap();
        for p in [0.25, 0.5, 0.75] {
            let r = beta_contour(
                &c,
                &c.complex(0.3, 0.0),
                &c.complex(0.4, 0.0),
                &ContourSpec::with_p(p),
            )
            .unwrap();
            assert!(r.residual() < 1e-25, "p = {p}: {}", r.residual());
        }
    }
}
