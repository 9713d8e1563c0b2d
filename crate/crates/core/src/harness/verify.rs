//! Self-check suite over every module. Failures are report entries, never
//! panics or errors.

use rug::{Complex, Float, Rational};
use serde::{Deserialize, Serialize};

use super::fit::{fit_slope, least_squares};
use super::sweep::{effective_depth, ray_point, sweep_context, sweep_error_decay, SweepConfig};
use crate::asymptotic::{approx_zeta_half, main_term_series, region_check};
use crate::coefficients::{
    a_coeff, a_coeffs_by_inversion, c_coeff_binomial, c_coeff_partition, c_coeffs_taylor, ratios,
    CotDerivPoly,
};
use crate::error::Result;
use crate::kernel::{bernoulli, f_factor, gamma, hurwitz_zeta, riemann_zeta};
use crate::oracle::{
    beta_contour, double_zeta_direct, double_zeta_em, double_zeta_fe, double_zeta_fe_value,
    e1_residual, fe_bits, ContourSpec,
};
use crate::precision::{log2_abs, sin_pi, CNum, PrecisionContext};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VerifyLevel {
    Quick,
    Full,
}

impl std::str::FromStr for VerifyLevel {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "quick" => Ok(Self::Quick),
            "full" => Ok(Self::Full),
            other => Err(format!("unknown level {other:?}, expected quick or full")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    AtMost,
    AtLeast,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    /// `None` when the check could not be evaluated.
    pub measured: Option<f64>,
    pub threshold: f64,
    pub bound: Bound,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub level: VerifyLevel,
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Fault injection for mutation testing of the suite itself.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct VerifyOptions {
    /// Relative perturbation applied to the power-series `c_2` before the
    /// dual-algorithm comparison.
    pub c2_perturbation: f64,
}

type Measure = Box<dyn Fn(&VerifyOptions) -> Result<f64>>;

struct Check {
    name: &'static str,
    bound: Bound,
    threshold: f64,
    run: Measure,
}

fn at_most(
    name: &'static str,
    threshold: f64,
    run: impl Fn(&VerifyOptions) -> Result<f64> + 'static,
) -> Check {
    Check {
        name,
        bound: Bound::AtMost,
        threshold,
        run: Box::new(run),
    }
}

fn at_least(
    name: &'static str,
    threshold: f64,
    run: impl Fn(&VerifyOptions) -> Result<f64> + 'static,
) -> Check {
    Check {
        name,
        bound: Bound::AtLeast,
        threshold,
        run: Box::new(run),
    }
}

fn ctx(bits: u32, tol: f64) -> PrecisionContext {
    PrecisionContext::new(bits, tol).expect("static context")
}

/// `|a - b| / |b|`, or `|a - b|` when `b` is zero.
fn rel_diff(a: &CNum, b: &CNum) -> f64 {
    let d = Complex::with_val(a.prec().0.max(b.prec().0), a - b);
    let scale = if b.is_zero() { 0.0 } else { log2_abs(b) };
    (log2_abs(&d) - scale).exp2()
}

/// `|a - b| / max(|b|, 1)`; `c_1` vanishes identically.
fn scaled_diff(a: &CNum, b: &CNum) -> f64 {
    abs_diff(a, b) / log2_abs(b).exp2().max(1.0)
}

fn abs_diff(a: &CNum, b: &CNum) -> f64 {
    log2_abs(&Complex::with_val(a.prec().0.max(b.prec().0), a - b)).exp2()
}

const COEFF_POINTS: [(f64, f64, f64, f64); 6] = [
    (-30.2, 0.3, -20.1, -0.1),
    (-12.7, 0.0, -61.9, 0.0),
    (-95.5, 1.5, -40.25, -2.0),
    (-5.3, 0.0, -9.1, 0.0),
    (-140.0, 0.5, -33.3, 0.0),
    (-17.75, -3.0, -17.75, 3.0),
];

fn quick_checks() -> Vec<Check> {
    vec![
        at_most("bernoulli_b12_exact", 0.0, |_| {
            let d = bernoulli(12) - Rational::from((-691, 2730));
            Ok(if d == 0 { 0.0 } else { 1.0 })
        }),
        at_most("gamma_half_is_sqrt_pi", 1e-60, |_| {
            let c = ctx(256, 1e-70);
            let g = gamma(&c, &c.complex(0.5, 0.0))?;
            let root = Complex::with_val(256, c.pi().sqrt());
            Ok(rel_diff(&g, &root))
        }),
        at_most("zeta_two", 1e-60, |_| {
            let c = ctx(256, 1e-70);
            let z = riemann_zeta(&c, &c.complex(2.0, 0.0))?;
            let expected = Complex::with_val(256, c.pi().square() / 6u32);
            Ok(rel_diff(&z, &expected))
        }),
        at_most("riemann_functional_equation", 1e-50, |_| {
            let c = ctx(256, 1e-70);
            riemann_fe_residual(&c, -7.3, 1.2).map(|(abs, mag)| abs / mag)
        }),
        at_most("hurwitz_at_one_is_riemann", 1e-50, |_| {
            let c = ctx(256, 1e-70);
            let mut worst: f64 = 0.0;
            for (re, im) in [(3.5, 2.0), (-4.5, 1.0), (0.5, 14.0)] {
                let s = c.complex(re, im);
                worst = worst.max(rel_diff(
                    &hurwitz_zeta(&c, &s, &c.one())?,
                    &riemann_zeta(&c, &s)?,
                ));
            }
            Ok(worst)
        }),
        at_most("cot_polynomial_degree_parity", 0.0, |_| {
            let mut bad = 0;
            for j in 0..=26 {
                let p = CotDerivPoly::new(j);
                if p.degree() != j + 1 {
                    bad += 1;
                }
                let wrong_parity = p
                    .coeffs
                    .iter()
                    .enumerate()
                    .any(|(k, a)| *a != 0 && (k + j + 1) % 2 == 1);
                if wrong_parity {
                    bad += 1;
                }
            }
            Ok(bad as f64)
        }),
        at_most("c_dual_algorithms", 1e-30, |opts| {
            let c = ctx(256, 1e-60);
            let mut worst: f64 = 0.0;
            for &(a, ai, b, bi) in &COEFF_POINTS {
                let p = ratios(&c, &c.complex(a, ai), &c.complex(b, bi))?;
                let mut taylor = c_coeffs_taylor(&c, 12, &p);
                if opts.c2_perturbation != 0.0 {
                    taylor[2] *= Float::with_val(256, 1.0 + opts.c2_perturbation);
                }
                for (j, t) in taylor.iter().enumerate() {
                    worst = worst.max(scaled_diff(t, &c_coeff_partition(&c, j, &p)));
                }
            }
            Ok(worst)
        }),
        at_most("c_binomial_convolution", 1e-30, |_| {
            let c = ctx(256, 1e-60);
            let mut worst: f64 = 0.0;
            for &(a, ai, b, bi) in &COEFF_POINTS {
                let p = ratios(&c, &c.complex(a, ai), &c.complex(b, bi))?;
                for (j, t) in c_coeffs_taylor(&c, 12, &p).iter().enumerate() {
                    worst = worst.max(scaled_diff(t, &c_coeff_binomial(&c, j, &p)));
                }
            }
            Ok(worst)
        }),
        at_most("a_series_inversion", 1e-25, |_| {
            let c = ctx(256, 1e-60);
            let mut worst: f64 = 0.0;
            for r in [0.2, 0.35, 0.5, 0.65] {
                let r2 = c.complex(r, 0.0);
                for (j, inv) in a_coeffs_by_inversion(&c, 12, &r2)?.iter().enumerate() {
                    worst = worst.max(scaled_diff(&a_coeff(&c, j, &r2)?, inv));
                }
            }
            Ok(worst)
        }),
        at_most("symmetric_point_collapse", 1e-40, |_| {
            let c = ctx(256, 1e-60);
            let s = c.complex(-25.25, 0.0);
            let p = ratios(&c, &s, &s)?;
            let mut worst: f64 = 0.0;
            for n in 0..=4 {
                let r = main_term_series(&c, &p, n)?;
                let base = main_term_series(&c, &p, 0)?;
                worst = worst.max(abs_diff(&r.ratio_approx, &base.ratio_approx));
                worst = worst.max(log2_abs(&approx_zeta_half(&c, &s, &s, n)?).exp2());
            }
            Ok(worst)
        }),
        at_most("stuffle_two_three", 1e-40, |_| {
            let c = ctx(192, 1e-50);
            let two = c.complex(2.0, 0.0);
            let three = c.complex(3.0, 0.0);
            let lhs = double_zeta_direct(&c, &two, &three)?
                + double_zeta_direct(&c, &three, &two)?
                + riemann_zeta(&c, &c.complex(5.0, 0.0))?;
            let rhs = riemann_zeta(&c, &two)? * riemann_zeta(&c, &three)?;
            Ok(rel_diff(&lhs, &rhs))
        }),
        at_most("direct_em_overlap", 1e-40, |_| {
            let c = ctx(192, 1e-50);
            let s1 = c.complex(2.5, 0.3);
            let s2 = c.complex(3.5, -0.2);
            Ok(rel_diff(
                &double_zeta_em(&c, &s1, &s2)?,
                &double_zeta_direct(&c, &s1, &s2)?,
            ))
        }),
        at_most("region_even_gap_flag", 0.0, |_| {
            let c = ctx(128, 1e-30);
            let v = region_check(&c.complex(-50.0, 0.0), &c.complex(-50.0, 0.0), 0.1)?;
            Ok(if v.even_gap_ok { 1.0 } else { 0.0 })
        }),
        at_most("beta_closed_form", 1e-25, |_| {
            let c = ctx(128, 1e-30);
            let r = beta_contour(
                &c,
                &c.complex(0.3, 0.0),
                &c.complex(0.4, 0.0),
                &ContourSpec::with_p(0.5),
            )?;
            Ok(r.residual() / log2_abs(&r.closed_form).exp2())
        }),
        at_most("e1_series_residual", 1e-12, |_| {
            let c = ctx(128, 1e-30);
            e1_residual(&c, &c.complex(-2.3, 0.0), &c.complex(3.7, 0.0))
        }),
        at_most("em_fe_agreement", 1e-15, |_| {
            let (a, b) = (-10.3, -9.4);
            let c = ctx(fe_bits(64, -(a + b)), 1e-30);
            let s1 = c.complex(a, 0.0);
            let s2 = c.complex(b, 0.0);
            let em = double_zeta_em(&c, &s1, &s2)?;
            let fe = double_zeta_fe_value(&c, &s1, &s2, &ContourSpec::default())?;
            Ok(rel_diff(&fe, &em))
        }),
        at_most("slope_fit_sanity", 1e-6, |_| {
            let pts: Vec<(f64, f64)> = [21.0f64, 41.0, 81.0, 161.0]
                .iter()
                .map(|m| (m.ln(), (m.powi(-2)).ln()))
                .collect();
            Ok((least_squares(&pts)?.0 + 2.0).abs())
        }),
    ]
}

fn full_checks() -> Vec<Check> {
    vec![
        at_most("beta_p_independence", 1e-10, |_| {
            let c = ctx(128, 1e-30);
            let s1 = c.complex(-3.2, 0.5);
            let s2 = c.complex(1.1, -0.2);
            let mut values = Vec::new();
            let mut worst: f64 = 0.0;
            for p in [0.25, 0.5, 0.75] {
                let r = beta_contour(&c, &s1, &s2, &ContourSpec::with_p(p))?;
                worst = worst.max(rel_diff(&r.value, &r.closed_form));
                values.push(r.value);
            }
            worst = worst
                .max(rel_diff(&values[0], &values[1]))
                .max(rel_diff(&values[2], &values[1]));
            Ok(worst)
        }),
        at_most("e1_contour_residual", 1e-12, |_| {
            let c = ctx(200, 1e-40);
            e1_residual(&c, &c.complex(-15.3, 0.0), &c.complex(-22.4, 0.0))
        }),
        at_least("negligible_terms_decay_log2", 10.0, |_| {
            let gap = SweepConfig::DEFAULT_GAP;
            let mags = |m: f64| -> Result<[f64; 6]> {
                let m_eff = effective_depth(m, gap);
                let c = sweep_context(128, m_eff)?;
                let (s1, s2) = ray_point(&c, 0.4, m_eff);
                Ok(double_zeta_fe(&c, &s1, &s2, &ContourSpec::default())?.magnitudes_log2())
            };
            let lo = mags(30.0)?;
            let hi = mags(60.0)?;
            Ok([1, 3, 4]
                .iter()
                .map(|&i| lo[i] - hi[i])
                .fold(f64::INFINITY, f64::min))
        }),
        at_most("riemann_functional_equation_deep", 1e-25, |_| {
            let c = ctx(256, 1e-70);
            let mut worst: f64 = 0.0;
            for (re, im) in [
                (-2.5, 4.0),
                (-17.3, -1.2),
                (-33.9, 0.0),
                (-48.1, 2.5),
                (-59.7, -4.9),
            ] {
                worst = worst.max(riemann_fe_residual(&c, re, im)?.0);
            }
            Ok(worst)
        }),
        at_most("decay_slope_n0", -0.7, |_| {
            let cfg = SweepConfig::new(0.35, vec![21.0, 31.0, 41.0, 51.0], vec![0], 0.1);
            fit_slope(&sweep_error_decay(&cfg)?.records, 0).map(|f| f.slope)
        }),
    ]
}

/// `(|zeta(s) - f(s) sin(pi s/2) zeta(1-s)|, |zeta(s)|)`.
pub(crate) fn riemann_fe_residual(ctx: &PrecisionContext, re: f64, im: f64) -> Result<(f64, f64)> {
    let s = ctx.complex(re, im);
    let lhs = riemann_zeta(ctx, &s)?;
    let half = Complex::with_val(ctx.bits(), &s / 2u32);
    let one_minus = Complex::with_val(ctx.bits(), 1 - &s);
    let rhs = f_factor(ctx, &s)? * sin_pi(&half) * riemann_zeta(ctx, &one_minus)?;
    Ok((abs_diff(&lhs, &rhs), log2_abs(&lhs).exp2()))
}

pub fn verify_suite(level: VerifyLevel) -> VerifyReport {
    verify_suite_with(level, &VerifyOptions::default())
}

pub fn verify_suite_with(level: VerifyLevel, opts: &VerifyOptions) -> VerifyReport {
    let mut checks = quick_checks();
    if level == VerifyLevel::Full {
        checks.extend(full_checks());
    }
    let checks = checks
        .into_iter()
        .map(|c| match (c.run)(opts) {
            Ok(v) => CheckOutcome {
                name: c.name,
                passed: match c.bound {
                    Bound::AtMost => v <= c.threshold,
                    Bound::AtLeast => v >= c.threshold,
                },
                measured: Some(v),
                threshold: c.threshold,
                bound: c.bound,
                error: None,
            },
            Err(e) => CheckOutcome {
                name: c.name,
                passed: false,
                measured: None,
                threshold: c.threshold,
                bound: c.bound,
                error: Some(e.to_string()),
            },
        })
        .collect();
    VerifyReport { level, checks }
}
