//! Error-decay sweeps along rays `s2 / (s1 + s2) = r2` with a pinned
//! distance to the nearest even integer.

use rayon::prelude::*;
use rug::{Complex, Float};
use serde::{Deserialize, Serialize};

use crate::asymptotic::{approx_ratio, approx_zeta_half, region_check, RegionParams, MAX_ORDER};
use crate::error::{Error, Result};
use crate::kernel::{f_factor, riemann_zeta};
use crate::oracle::{
    double_zeta_em, double_zeta_fe, fe_bits, ContourSpec, AUTO_FE_THRESHOLD, EM_DEPTH_LIMIT,
};
use crate::precision::{log2_abs, CNum, PrecisionContext};

/// Quantity compared against its expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepTarget {
    /// `zeta(s1, s2) / f(s1 + s2)` against [`approx_ratio`].
    Ratio,
    /// `(zeta(s1, s2) + zeta(s1 + s2) / 2) / f(s1 + s2)` against [`approx_zeta_half`].
    ZetaHalf,
}

/// Reference used for the exact side of a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleMethod {
    Em,
    Fe,
    /// Euler-Maclaurin for `M <= 60` when both real parts allow it, else `Fe`.
    Auto,
}

impl OracleMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            OracleMethod::Em => "em",
            OracleMethod::Fe => "fe",
            OracleMethod::Auto => "auto",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepConfig {
    /// Direction `Re s2 / Re(s1 + s2)`.
    pub r2: f64,
    /// Nominal depths, strictly increasing.
    pub m_list: Vec<f64>,
    pub n_list: Vec<usize>,
    pub epsilon: f64,
    /// Distance of `s1 + s2` from the even integer below it.
    pub gap_offset: f64,
    pub method: OracleMethod,
    pub include_correction: bool,
    /// Base precision; raised per point to `64 + 4 ceil(M)`.
    pub bits: u32,
    pub target: SweepTarget,
}

impl SweepConfig {
    pub const DEFAULT_GAP: f64 = 0.5;
    pub const DEFAULT_BITS: u32 = 128;

    pub fn new(r2: f64, m_list: Vec<f64>, n_list: Vec<usize>, epsilon: f64) -> Self {
        Self {
            r2,
            m_list,
            n_list,
            epsilon,
            gap_offset: Self::DEFAULT_GAP,
            method: OracleMethod::Auto,
            include_correction: true,
            bits: Self::DEFAULT_BITS,
            target: SweepTarget::Ratio,
        }
    }

    pub fn gap(mut self, gap: f64) -> Self {
        self.gap_offset = gap;
        self
    }

    pub fn method(mut self, method: OracleMethod) -> Self {
        self.method = method;
        self
    }

    pub fn correction(mut self, on: bool) -> Self {
        self.include_correction = on;
        self
    }

    pub fn bits(mut self, bits: u32) -> Self {
        self.bits = bits;
        self
    }

    pub fn target(mut self, target: SweepTarget) -> Self {
        self.target = target;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let max_n = self.n_list.iter().copied().max().unwrap_or(0);
        RegionParams::new(self.epsilon, max_n)?;
        if !(self.r2 > self.epsilon && self.r2 < 1.0 - self.epsilon) {
            return Err(Error::InvalidParams(format!(
                "r2 = {} must lie in (epsilon, 1 - epsilon) = ({}, {})",
                self.r2,
                self.epsilon,
                1.0 - self.epsilon
            )));
        }
        if self.m_list.is_empty() || self.n_list.is_empty() {
            return Err(Error::InvalidParams(
                "sweep needs at least one M and one N".into(),
            ));
        }
        if self.m_list.iter().any(|m| !(m.is_finite() && *m > 0.0)) {
            return Err(Error::InvalidParams(
                "every M must be positive and finite".into(),
            ));
        }
        if self.m_list.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidParams(
                "M values must be strictly increasing".into(),
            ));
        }
        if !(self.gap_offset > 0.0 && self.gap_offset < 2.0) {
            return Err(Error::InvalidParams(format!(
                "gap offset must lie in (0, 2), got {}",
                self.gap_offset
            )));
        }
        if self.n_list.iter().any(|&n| n > MAX_ORDER) {
            return Err(Error::InvalidParams(format!(
                "N must be at most {MAX_ORDER}"
            )));
        }
        PrecisionContext::from_bits(self.bits)?;
        Ok(())
    }

    /// `points` depths spaced geometrically from `start` to `end` inclusive.
    pub fn geometric_depths(start: f64, end: f64, points: usize) -> Result<Vec<f64>> {
        if !(start > 0.0 && end > start && start.is_finite() && end.is_finite()) || points < 2 {
            return Err(Error::InvalidParams(format!(
                "need 0 < M-start < M-end and at least 2 points, got {start}, {end}, {points}"
            )));
        }
        let ratio = (end / start).ln() / (points - 1) as f64;
        Ok((0..points)
            .map(|i| {
                if i + 1 == points {
                    end
                } else {
                    start * (ratio * i as f64).exp()
                }
            })
            .collect())
    }
}

/// Effective depth `2 ceil(M/2) + gap`, so that `s1 + s2` sits exactly `gap`
/// below an even integer.
pub fn effective_depth(m: f64, gap: f64) -> f64 {
    2.0 * (m / 2.0).ceil() + gap
}

/// `(s1, s2)` on the ray with `s1 + s2 = -m_eff` and `s2 = -r2 m_eff`.
pub fn ray_point(ctx: &PrecisionContext, r2: f64, m_eff: f64) -> (CNum, CNum) {
    let wp = ctx.bits();
    let depth = Float::with_val(wp, m_eff);
    let re2 = -Float::with_val(wp, r2) * &depth;
    let re1 = -depth - &re2;
    (
        Complex::with_val(wp, (re1, 0)),
        Complex::with_val(wp, (re2, 0)),
    )
}

/// Context used at effective depth `m_eff`.
pub fn sweep_context(base_bits: u32, m_eff: f64) -> Result<PrecisionContext> {
    let bits = fe_bits(base_bits, m_eff);
    let floor = -(bits as f64) + PrecisionContext::GUARD_BITS as f64;
    PrecisionContext::with_tol_log2(bits, floor.max(-133.0))
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRecord {
    /// Nominal depth.
    pub m: f64,
    /// `-Re(s1 + s2)` actually used.
    pub m_eff: f64,
    pub n: usize,
    /// Resolved oracle (`em` or `fe`).
    pub method: OracleMethod,
    #[serde(skip)]
    pub oracle: CNum,
    #[serde(skip)]
    pub asym: CNum,
    pub abs_err: f64,
    pub rel_err: f64,
    /// `log2 |t_i|` for the six pieces when the functional-equation route ran.
    pub log2_terms: Option<[f64; 6]>,
}

#[derive(Debug, Clone)]
pub struct SkippedPoint {
    pub m: f64,
    /// `None` when the oracle failed and every `N` at this depth was dropped.
    pub n: Option<usize>,
    pub error: Error,
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    pub config: SweepConfig,
    /// Sorted by `(N, M)`.
    pub records: Vec<SweepRecord>,
    pub skipped: Vec<SkippedPoint>,
}

impl SweepReport {
    pub fn records_for(&self, n: usize) -> impl Iterator<Item = &SweepRecord> {
        self.records.iter().filter(move |r| r.n == n)
    }
}

struct OracleValue {
    method: OracleMethod,
    value: CNum,
    log2_terms: Option<[f64; 6]>,
}

fn resolve(method: OracleMethod, m: f64, s1: &CNum, s2: &CNum) -> OracleMethod {
    match method {
        OracleMethod::Auto => {
            let deepest = s1.real().to_f64().min(s2.real().to_f64());
            if m <= AUTO_FE_THRESHOLD && deepest >= -EM_DEPTH_LIMIT {
                OracleMethod::Em
            } else {
                OracleMethod::Fe
            }
        }
        other => other,
    }
}

fn oracle_value(
    cfg: &SweepConfig,
    ctx: &PrecisionContext,
    m: f64,
    s1: &CNum,
    s2: &CNum,
) -> Result<OracleValue> {
    let sum = Complex::with_val(ctx.bits(), s1 + s2);
    let f = f_factor(ctx, &sum)?;
    let method = resolve(cfg.method, m, s1, s2);
    let (mut value, log2_terms) = match method {
        OracleMethod::Fe => {
            let b = double_zeta_fe(ctx, s1, s2, &ContourSpec::default())?;
            let mags = b.magnitudes_log2();
            (b.total, Some(mags))
        }
        _ => (double_zeta_em(ctx, s1, s2)? / &f, None),
    };
    if cfg.target == SweepTarget::ZetaHalf {
        value += riemann_zeta(ctx, &sum)? / f / 2u32;
    }
    Ok(OracleValue {
        method,
        value: ctx.round(&value),
        log2_terms,
    })
}

fn asymptotic_value(
    cfg: &SweepConfig,
    ctx: &PrecisionContext,
    s1: &CNum,
    s2: &CNum,
    n: usize,
) -> Result<CNum> {
    match cfg.target {
        SweepTarget::Ratio => {
            let params = RegionParams::new(cfg.epsilon, n)?;
            Ok(approx_ratio(ctx, s1, s2, &params, cfg.include_correction)?.ratio_approx)
        }
        SweepTarget::ZetaHalf => approx_zeta_half(ctx, s1, s2, n),
    }
}

/// Largest tolerated fraction of skipped `(N, M)` pairs.
pub const MAX_SKIPPED_FRACTION: f64 = 0.2;

/// Evaluates oracle and expansion at every `(N, M)` of the configuration.
///
/// Every point is checked against the region hypotheses before anything is
/// evaluated; a failing point is a configuration error. Depths are evaluated
/// concurrently. A point whose evaluation fails is skipped and recorded; more
/// than 20% skipped aborts with the first failure.
pub fn sweep_error_decay(cfg: &SweepConfig) -> Result<SweepReport> {
    cfg.validate()?;
    let mut points = Vec::with_capacity(cfg.m_list.len());
    for &m in &cfg.m_list {
        let m_eff = effective_depth(m, cfg.gap_offset);
        let ctx = sweep_context(cfg.bits, m_eff)?;
        let (s1, s2) = ray_point(&ctx, cfg.r2, m_eff);
        let verdict = region_check(&s1, &s2, cfg.epsilon)?;
        if !verdict.pass() {
            return Err(Error::InvalidParams(format!(
                "sweep point M = {m_eff} on r2 = {} fails the region check: {verdict:?}",
                cfg.r2
            )));
        }
        points.push((m, m_eff, ctx, s1, s2));
    }

    let per_depth: Vec<(Vec<SweepRecord>, Vec<SkippedPoint>)> = points
        .par_iter()
        .map(|(m, m_eff, ctx, s1, s2)| {
            let mut records = Vec::new();
            let mut skipped = Vec::new();
            let oracle = match oracle_value(cfg, ctx, *m, s1, s2) {
                Ok(o) => o,
                Err(error) => {
                    skipped.extend(cfg.n_list.iter().map(|&n| SkippedPoint {
                        m: *m,
                        n: Some(n),
                        error: error.clone(),
                    }));
                    return (records, skipped);
                }
            };
            for &n in &cfg.n_list {
                match asymptotic_value(cfg, ctx, s1, s2, n) {
                    Ok(asym) => {
                        let d = Complex::with_val(ctx.bits(), &oracle.value - &asym);
                        let abs_log2 = log2_abs(&d);
                        records.push(SweepRecord {
                            m: *m,
                            m_eff: *m_eff,
                            n,
                            method: oracle.method,
                            oracle: oracle.value.clone(),
                            asym,
                            abs_err: abs_log2.exp2(),
                            rel_err: (abs_log2 - log2_abs(&oracle.value)).exp2(),
                            log2_terms: oracle.log2_terms,
                        });
                    }
                    Err(error) => skipped.push(SkippedPoint {
                        m: *m,
                        n: Some(n),
                        error,
                    }),
                }
            }
            (records, skipped)
        })
        .collect();

    let mut records = Vec::new();
    let mut skipped = Vec::new();
    for (r, s) in per_depth {
        records.extend(r);
        skipped.extend(s);
    }
    let total = cfg.m_list.len() * cfg.n_list.len();
    if skipped.len() as f64 > MAX_SKIPPED_FRACTION * total as f64 {
        return Err(skipped[0].error.clone());
    }
    records.sort_by(|a, b| a.n.cmp(&b.n).then(a.m.total_cmp(&b.m)));
    Ok(SweepReport {
        config: cfg.clone(),
        records,
        skipped,
    })
}
