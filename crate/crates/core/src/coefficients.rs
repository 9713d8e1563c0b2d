//! Finite coefficient machinery of the expansion: the ratios `r_j`, rising
//! factorials, cotangent-derivative polynomials, the `c_j` (two independent
//! algorithms) and the Taylor coefficients `a_j` of `1/(e^{-2 pi i z} - 1)`
//! around `z = r_2`.

use rug::ops::Pow;
use rug::{Complex, Float, Integer};

use crate::error::{Error, Result};
use crate::precision::{log2_abs, near_integer_where, CNum, PrecisionContext};

/// The argument bundle shared by the asymptotic evaluators and the oracles.
#[derive(Debug, Clone)]
pub struct ExpansionPoint {
    pub s1: CNum,
    pub s2: CNum,
    /// `s1 + s2`
    pub sum: CNum,
    pub r1: CNum,
    pub r2: CNum,
    /// `M = Re(-s1 - s2)`
    pub m: f64,
}

impl ExpansionPoint {
    pub fn prec(&self) -> u32 {
        self.sum.prec().0
    }
}

/// `r_j = s_j / (s1 + s2)` together with `M = Re(-s1 - s2)`.
pub fn ratios(ctx: &PrecisionContext, s1: &CNum, s2: &CNum) -> Result<ExpansionPoint> {
    let bits = ctx.bits();
    let sum = Complex::with_val(bits, s1 + s2);
    if log2_abs(&sum) <= ctx.pole_radius_log2() {
        return Err(Error::Domain("ratios need s1 + s2 != 0".into()));
    }
    let r1 = Complex::with_val(bits, s1 / &sum);
    let r2 = Complex::with_val(bits, 1 - &r1);
    let m = -sum.real().to_f64();
    Ok(ExpansionPoint {
        s1: ctx.round(s1),
        s2: ctx.round(s2),
        sum,
        r1,
        r2,
        m,
    })
}

/// Rising factorial `(s)_j = s (s+1) ... (s+j-1)`, with `(s)_0 = 1`.
pub fn pochhammer(s: &CNum, j: usize) -> CNum {
    let prec = s.prec().0;
    let mut acc = Complex::with_val(prec, 1);
    for i in 0..j {
        acc *= Complex::with_val(prec, s + i as u32);
    }
    acc
}

/// `cot^(j)` written as an integer polynomial in `c = cot`:
/// `P_0 = c`, `P_{j+1} = -(1 + c^2) P_j'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CotDerivPoly {
    pub order: usize,
    /// `coeffs[d]` multiplies `c^d`.
    pub coeffs: Vec<Integer>,
}

impl CotDerivPoly {
    pub fn new(order: usize) -> Self {
        let mut coeffs = vec![Integer::new(), Integer::from(1)];
        for _ in 0..order {
            // derivative
            let deriv: Vec<Integer> = coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(d, a)| Integer::from(a * d as u32))
                .collect();
            // -(1 + c^2) * deriv
            let mut next = vec![Integer::new(); deriv.len() + 2];
            for (d, a) in deriv.iter().enumerate() {
                next[d] -= a;
                next[d + 2] -= a;
            }
            while next.len() > 1 && next.last().is_some_and(|x| *x == 0) {
                next.pop();
            }
            coeffs = next;
        }
        Self { order, coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, c: &CNum) -> CNum {
        let prec = c.prec().0;
        let mut acc = Complex::new(prec);
        for a in self.coeffs.iter().rev() {
            acc *= c;
            acc += a;
        }
        acc
    }
}

fn check_cot_pole(ctx: &PrecisionContext, w_over_pi: &CNum) -> Result<()> {
    if near_integer_where(w_over_pi, ctx.pole_radius_log2(), |_| true) {
        return Err(Error::pole(
            "cot",
            crate::precision::fmt_c(w_over_pi, 20) + " * pi",
        ));
    }
    Ok(())
}

fn cot(w: &CNum) -> CNum {
    let (s, c) = Complex::with_val(w.prec().0, w).sin_cos(Complex::new(w.prec().0));
    c / s
}

/// `cot^(j)(w)` via the exact integer polynomial.
pub fn cot_derivative(ctx: &PrecisionContext, j: usize, w: &CNum) -> Result<CNum> {
    let wp = ctx.bits() + 16;
    let w = Complex::with_val(wp, w);
    let over_pi = Complex::with_val(wp, &w / Float::with_val(wp, rug::float::Constant::Pi));
    check_cot_pole(ctx, &over_pi)?;
    Ok(ctx.round(&CotDerivPoly::new(j).eval(&cot(&w))))
}

/// `cot^(j)(pi x)` with the pole test done on `x` directly.
pub(crate) fn cot_derivative_at_pi(ctx: &PrecisionContext, j: usize, x: &CNum) -> Result<CNum> {
    check_cot_pole(ctx, x)?;
    let wp = ctx.bits() + 16;
    let w = Complex::with_val(wp, x) * Float::with_val(wp, rug::float::Constant::Pi);
    Ok(ctx.round(&CotDerivPoly::new(j).eval(&cot(&w))))
}

/// `q_k = (r1 (-r2)^k + r2 r1^k) / k` for `k = 0..=j` (entries 0 and 1 unused).
fn log_series_terms(point: &ExpansionPoint, j: usize, wp: u32) -> Vec<CNum> {
    let r1 = Complex::with_val(wp, &point.r1);
    let r2 = Complex::with_val(wp, &point.r2);
    let neg_r2 = Complex::with_val(wp, -&r2);
    let mut p_neg = Complex::with_val(wp, 1);
    let mut p_r1 = Complex::with_val(wp, 1);
    let mut out = Vec::with_capacity(j + 1);
    for k in 0..=j {
        if k >= 2 {
            let v = Complex::with_val(wp, &r1 * &p_neg) + Complex::with_val(wp, &r2 * &p_r1);
            out.push(v / k as u32);
        } else {
            out.push(Complex::new(wp));
        }
        p_neg *= &neg_r2;
        p_r1 *= &r1;
    }
    out
}

/// `c_j` as the finite sum over `2 l_2 + 3 l_3 + ... + j l_j = j` of
/// `S^(sum l) prod (q_k^l_k / l_k!)`. Multiplicities are enumerated
/// lexicographically in `(l_2, ..., l_j)`.
pub fn c_coeff_partition(ctx: &PrecisionContext, j: usize, point: &ExpansionPoint) -> CNum {
    let wp = ctx.bits() + 16;
    let q = log_series_terms(point, j, wp);
    let sum = Complex::with_val(wp, &point.sum);
    let mut mult = vec![0usize; j + 1];
    let mut acc = Complex::new(wp);
    visit_partitions(2, j, j, &mut mult, &mut |m| {
        let mut term = Complex::with_val(wp, 1);
        let mut parts = 0u32;
        for (k, &l) in m.iter().enumerate().skip(2) {
            if l == 0 {
                continue;
            }
            parts += l as u32;
            let mut qk = crate::precision::powi(&q[k], l as u32);
            qk /= Integer::from(Integer::factorial(l as u32));
            term *= qk;
        }
        term *= crate::precision::powi(&sum, parts);
        acc += term;
    });
    ctx.round(&acc)
}

fn visit_partitions(
    k: usize,
    j: usize,
    remaining: usize,
    mult: &mut [usize],
    f: &mut impl FnMut(&[usize]),
) {
    if remaining == 0 {
        f(mult);
        return;
    }
    if k > j {
        return;
    }
    for l in 0..=remaining / k {
        mult[k] = l;
        visit_partitions(k + 1, j, remaining - l * k, mult, f);
    }
    mult[k] = 0;
}

/// `c_0..=c_j` by exponentiating the log-series
/// `S sum_{k >= 2} q_k x^k` as a truncated power series.
pub fn c_coeffs_taylor(ctx: &PrecisionContext, j: usize, point: &ExpansionPoint) -> Vec<CNum> {
    let wp = ctx.bits() + 16;
    let q = log_series_terms(point, j, wp);
    let sum = Complex::with_val(wp, &point.sum);
    let log_coeffs: Vec<CNum> = q
        .iter()
        .map(|qk| Complex::with_val(wp, qk * &sum))
        .collect();
    // E' = L' E  =>  n E_n = sum_{k=1}^{n} k L_k E_{n-k}
    let mut e: Vec<CNum> = Vec::with_capacity(j + 1);
    e.push(Complex::with_val(wp, 1));
    for n in 1..=j {
        let mut acc = Complex::new(wp);
        for k in 2..=n {
            acc += Complex::with_val(wp, &log_coeffs[k] * &e[n - k]) * k as u32;
        }
        e.push(acc / n as u32);
    }
    e.iter().map(|v| ctx.round(v)).collect()
}

/// Coefficient of `x^j` in `(1 + x r2)^(-s1) (1 - x r1)^(-s2)` (power-series route).
pub fn c_coeff_taylor(ctx: &PrecisionContext, j: usize, point: &ExpansionPoint) -> CNum {
    c_coeffs_taylor(ctx, j, point).pop().expect("non-empty")
}

/// Taylor coefficient `a_j` of `1/(e^{-2 pi i (x + r2)} - 1)` at `x = 0`, from
/// `-i a_j = (i/2) [j = 0] + pi^j cot^(j)(pi r2) / (2 j!)`.
pub fn a_coeff(ctx: &PrecisionContext, j: usize, r2: &CNum) -> Result<CNum> {
    let wp = ctx.bits() + 16;
    let inner = ctx.with_extra_bits(16);
    let d = cot_derivative_at_pi(&inner, j, r2)?;
    let pi = Float::with_val(wp, rug::float::Constant::Pi);
    let fact = Integer::from(Integer::factorial(j as u32));
    let scale = pi.pow(j as u32) / Float::with_val(wp, &fact) / 2u32;
    // a_j = i * (pi^j cot^(j) / (2 j!)) - [j = 0] / 2
    let mut a = Complex::with_val(wp, &d * scale) * Complex::with_val(wp, (0, 1));
    if j == 0 {
        a -= Float::with_val(wp, 0.5);
    }
    Ok(ctx.round(&a))
}

/// `c_j` as the Cauchy product of the two binomial series,
/// `sum_k binom(-s1, k) r2^k binom(-s2, j-k) (-r1)^(j-k)`.
pub fn c_coeff_binomial(ctx: &PrecisionContext, j: usize, point: &ExpansionPoint) -> CNum {
    let wp = ctx.bits() + 16;
    let series = |s: &CNum, x: &CNum| {
        let neg_s = Complex::with_val(wp, -s);
        let mut out = vec![Complex::with_val(wp, 1)];
        for k in 1..=j {
            let next = Complex::with_val(
                wp,
                &out[k - 1] * Complex::with_val(wp, &neg_s - (k - 1) as u32),
            ) * x
                / k as u32;
            out.push(next);
        }
        out
    };
    let neg_r1 = Complex::with_val(wp, -&point.r1);
    let left = series(&point.s1, &Complex::with_val(wp, &point.r2));
    let right = series(&point.s2, &neg_r1);
    let mut acc = Complex::new(wp);
    for k in 0..=j {
        acc += Complex::with_val(wp, &left[k] * &right[j - k]);
    }
    ctx.round(&acc)
}

/// `a_0..=a_J` by inverting the power series of `e^{-2 pi i (x + r2)} - 1`
/// term by term. Independent of the cotangent route.
pub fn a_coeffs_by_inversion(ctx: &PrecisionContext, order: usize, r2: &CNum) -> Result<Vec<CNum>> {
    let wp = ctx.bits() + 32;
    let pi = Float::with_val(wp, rug::float::Constant::Pi);
    let step = Complex::with_val(wp, (0, -2 * pi));
    let mut g = Vec::with_capacity(order + 1);
    g.push((Complex::with_val(wp, &step * r2)).exp());
    for k in 1..=order {
        let next = Complex::with_val(wp, &g[k - 1] * &step) / k as u32;
        g.push(next);
    }
    g[0] -= 1u32;
    if log2_abs(&g[0]) < ctx.pole_radius_log2() {
        return Err(Error::pole(
            "series inversion",
            format!("r2 = {}", crate::precision::fmt_c(r2, 20)),
        ));
    }
    let mut b: Vec<CNum> = Vec::with_capacity(order + 1);
    b.push(Complex::with_val(wp, g[0].recip_ref()));
    for n in 1..=order {
        let mut acc = Complex::new(wp);
        for k in 1..=n {
            acc += Complex::with_val(wp, &g[k] * &b[n - k]);
        }
        let v = -acc * &b[0];
        b.push(v);
    }
    Ok(b.iter().map(|v| ctx.round(v)).collect())
}

/// `c_0..=c_J` and `a_0..=a_J` for one expansion point; built once and shared
/// read-only by the asymptotic evaluator and the oracle comparisons.
#[derive(Debug, Clone)]
pub struct CoeffTable {
    pub point: ExpansionPoint,
    pub c: Vec<CNum>,
    pub a: Vec<CNum>,
}

impl CoeffTable {
    pub fn build(ctx: &PrecisionContext, point: &ExpansionPoint, order: usize) -> Result<Self> {
        let c = c_coeffs_taylor(ctx, order, point);
        let a = (0..=order)
            .map(|j| a_coeff(ctx, j, &point.r2))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            point: point.clone(),
            c,
            a,
        })
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }
}
