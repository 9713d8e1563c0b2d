//! Double-exponential trapezoidal quadrature on the real line (sinh-sinh) and
//! the half line (exp-sinh), refined by step halving.
//!
//! Node evaluations at one refinement level run on the rayon pool; every
//! level is reduced with a fixed-topology pairwise sum in node order, so the
//! result is independent of scheduling.

use rayon::prelude::*;
use rug::float::Constant;
use rug::{Complex, Float};

use crate::error::{Error, Result};
use crate::precision::{log2_abs, pairwise_sum, CNum};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Map {
    /// `x = c sinh(pi/2 sinh u)` on `(-inf, inf)`
    SinhSinh,
    /// `x = c exp(pi/2 sinh u)` on `(0, inf)`
    ExpSinh,
}

#[derive(Debug, Clone)]
pub struct QuadOptions {
    pub map: Map,
    /// Length scale of the integrand's features near the origin.
    pub scale: f64,
    /// Target error relative to the integral, as `log2`.
    pub tol_log2: f64,
    pub min_nodes: usize,
    pub max_level: u32,
    /// Bits used for abscissae and weights.
    pub bits: u32,
}

impl QuadOptions {
    pub fn new(map: Map, bits: u32, tol_log2: f64) -> Self {
        Self {
            map,
            scale: 1.0,
            tol_log2,
            min_nodes: 64,
            max_level: 10,
            bits,
        }
    }

    pub fn scale(mut self, scale: f64) -> Self {
        self.scale = scale;
        self
    }

    pub fn min_nodes(mut self, n: usize) -> Self {
        self.min_nodes = n;
        self
    }

    pub fn max_level(mut self, level: u32) -> Self {
        self.max_level = level;
        self
    }
}

#[derive(Debug, Clone)]
pub struct QuadResult {
    pub value: CNum,
    /// `log2` of the absolute error estimate: the larger of the last
    /// refinement delta and the truncated tail.
    pub error_log2: f64,
    pub nodes: usize,
    pub levels: u32,
}

impl QuadResult {
    pub fn error_estimate(&self) -> f64 {
        self.error_log2.exp2()
    }

    pub fn relative_error_log2(&self) -> f64 {
        self.error_log2 - log2_abs(&self.value)
    }
}

const H0: f64 = 0.5;
const U_MAX: f64 = 8.0;

/// Abscissa and weight at `u`.
fn node(map: Map, u: &Float, scale: &Float, wp: u32) -> (Float, Float) {
    let half_pi = Float::with_val(wp, Constant::Pi) / 2u32;
    let (sh, ch) = Float::with_val(wp, u).sinh_cosh(Float::new(wp));
    let arg = Float::with_val(wp, &sh * &half_pi);
    let dpsi = Float::with_val(wp, &ch * &half_pi);
    match map {
        Map::SinhSinh => {
            let (s2, c2) = arg.sinh_cosh(Float::new(wp));
            (s2 * scale, dpsi * c2 * scale)
        }
        Map::ExpSinh => {
            let e = arg.exp() * scale;
            let w = Float::with_val(wp, &dpsi * &e);
            (e, w)
        }
    }
}

fn eval_at<F>(map: Map, k: i64, h: &Float, scale: &Float, wp: u32, f: &F) -> Result<CNum>
where
    F: Fn(&Float) -> Result<CNum> + Sync,
{
    let u = Float::with_val(wp, h * k);
    let (x, w) = node(map, &u, scale, wp);
    let v = f(&x)?;
    Ok(v * w)
}

/// Walks outward from `u = 0` at the coarsest step until terms become
/// negligible. Returns `(k_min, k_max, level-0 terms in index order, tail log2)`.
fn coarse_pass<F>(
    opts: &QuadOptions,
    scale: &Float,
    wp: u32,
    f: &F,
) -> Result<(i64, i64, Vec<CNum>, f64)>
where
    F: Fn(&Float) -> Result<CNum> + Sync,
{
    let h = Float::with_val(wp, H0);
    let k_cap = (U_MAX / H0) as i64;
    let centre = eval_at(opts.map, 0, &h, scale, wp, f)?;
    let mut biggest = log2_abs(&centre);
    let mut right = Vec::new();
    let mut left = Vec::new();
    let mut tail = f64::NEG_INFINITY;
    for dir in [1i64, -1] {
        let mut quiet = 0;
        let mut k = dir;
        let mut last = f64::NEG_INFINITY;
        while k.abs() <= k_cap {
            let v = eval_at(opts.map, k, &h, scale, wp, f)?;
            let m = log2_abs(&v);
            biggest = biggest.max(m);
            last = m;
            if dir > 0 {
                right.push(v);
            } else {
                left.push(v);
            }
            if m < biggest + opts.tol_log2 - 8.0 {
                quiet += 1;
                if quiet >= 2 {
                    break;
                }
            } else {
                quiet = 0;
            }
            k += dir;
        }
        if k.abs() > k_cap {
            tail = tail.max(last + H0.log2());
        }
    }
    let k_min = -(left.len() as i64);
    let k_max = right.len() as i64;
    let mut terms: Vec<CNum> = left.into_iter().rev().collect();
    terms.push(centre);
    terms.extend(right);
    Ok((k_min, k_max, terms, tail))
}

/// Integrates `f` over the map's domain.
pub fn integrate<F>(opts: &QuadOptions, f: F) -> Result<QuadResult>
where
    F: Fn(&Float) -> Result<CNum> + Sync,
{
    let wp = opts.bits + 32;
    let scale = Float::with_val(wp, opts.scale);
    let (k_min, k_max, coarse, tail) = coarse_pass(opts, &scale, wp, &f)?;
    let mut level_sums = vec![pairwise_sum(&coarse, wp)];
    let mut nodes = coarse.len();
    let mut value = Complex::with_val(wp, &level_sums[0] * H0);
    let mut delta = f64::INFINITY;

    for level in 1..=opts.max_level {
        // new nodes sit at odd multiples of h = H0 / 2^level
        let mult = 1i64 << level;
        let h = Float::with_val(wp, H0) >> level;
        let lo = k_min * mult + 1;
        let hi = k_max * mult - 1;
        let ks: Vec<i64> = (lo..=hi).step_by(2).collect();
        let fresh: Vec<CNum> = ks
            .par_iter()
            .map(|&k| eval_at(opts.map, k, &h, &scale, wp, &f))
            .collect::<Result<Vec<_>>>()?;
        nodes += fresh.len();
        level_sums.push(pairwise_sum(&fresh, wp));
        let next = Complex::with_val(wp, pairwise_sum(&level_sums, wp) * &h);
        delta = log2_abs(&Complex::with_val(wp, &next - &value));
        value = next;
        let target = opts.tol_log2 + log2_abs(&value);
        if delta <= target && tail <= target && nodes >= opts.min_nodes {
            return Ok(QuadResult {
                value: Complex::with_val(opts.bits, &value),
                error_log2: delta.max(tail),
                nodes,
                levels: level,
            });
        }
    }
    let err = delta.max(tail);
    Err(Error::Quadrature {
        estimate: (err - log2_abs(&value)).exp2(),
        tolerance: opts.tol_log2.exp2(),
        context: format!(
            "double-exponential rule after {} levels and {nodes} nodes",
            opts.max_level
        ),
    })
}
