//! Single-point evaluation with a serializable report.

use rug::{Complex, Float};
use serde::{Deserialize, Serialize};

use crate::asymptotic::{approx_ratio, region_check, RegionParams, RegionVerdict};
use crate::error::{Error, Result};
use crate::kernel::f_factor;
use crate::oracle::{double_zeta_direct, double_zeta_em, double_zeta_fe, ContourSpec};
use crate::precision::{CNum, PrecisionContext};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EvalMethod {
    Direct,
    Em,
    Fe,
    /// The truncated expansion.
    Asym,
}

impl EvalMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Direct => "direct",
            Self::Em => "em",
            Self::Fe => "fe",
            Self::Asym => "asym",
        }
    }
}

/// A complex argument kept as decimal text so it can be rounded once at
/// the working precision.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexArg {
    pub re: String,
    pub im: String,
}

impl ComplexArg {
    pub fn to_cnum(&self, prec: u32) -> Result<CNum> {
        let part = |t: &str| {
            Float::parse(t)
                .map(|v| Float::with_val(prec, v))
                .map_err(|e| Error::InvalidParams(format!("{t:?} is not a number: {e}")))
        };
        Ok(Complex::with_val(prec, (part(&self.re)?, part(&self.im)?)))
    }
}

/// `RE` or `RE,IM`.
impl std::str::FromStr for ComplexArg {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split(',').map(str::trim);
        let re = parts.next().unwrap_or_default().to_string();
        let im = parts.next().unwrap_or("0").to_string();
        if parts.next().is_some() {
            return Err(Error::InvalidParams(format!("expected RE[,IM], got {s:?}")));
        }
        let arg = Self { re, im };
        arg.to_cnum(64)?;
        Ok(arg)
    }
}

impl From<(f64, f64)> for ComplexArg {
    fn from((re, im): (f64, f64)) -> Self {
        Self {
            re: format!("{re:?}"),
            im: format!("{im:?}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalRequest {
    pub s1: ComplexArg,
    pub s2: ComplexArg,
    pub method: EvalMethod,
    pub n: usize,
    pub include_correction: bool,
    pub bits: u32,
    pub epsilon: f64,
}

impl EvalRequest {
    pub fn new(s1: impl Into<ComplexArg>, s2: impl Into<ComplexArg>, method: EvalMethod) -> Self {
        Self {
            s1: s1.into(),
            s2: s2.into(),
            method,
            n: 0,
            include_correction: false,
            bits: 128,
            epsilon: 0.1,
        }
    }
}

/// A complex value as decimal strings.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Decimal {
    pub re: String,
    pub im: String,
}

impl Decimal {
    pub fn of(z: &CNum, digits: usize) -> Self {
        Self {
            re: z.real().to_string_radix(10, Some(digits)),
            im: z.imag().to_string_radix(10, Some(digits)),
        }
    }
}

impl std::fmt::Display for Decimal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let sign = if self.im.starts_with('-') { "-" } else { "+" };
        write!(f, "{} {sign} {}i", self.re, self.im.trim_start_matches('-'))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ExpansionDetail {
    pub n: usize,
    /// `pi^j cot^(j)(pi r2) c_j / (s1+s2)_j`, `j = 0..=2N`.
    pub terms: Vec<Decimal>,
    pub correction: Option<Decimal>,
    /// `M^(-N-1)`
    pub claimed_error_order: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BreakdownDetail {
    pub terms: [Decimal; 6],
    pub log2_magnitudes: [f64; 6],
    pub p: f64,
    pub error_estimate: f64,
    pub bits: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct EvalReport {
    pub s1: Decimal,
    pub s2: Decimal,
    pub method: EvalMethod,
    pub bits: u32,
    /// `zeta(s1, s2)`
    pub zeta: Decimal,
    /// `zeta(s1, s2) / f(s1 + s2)`; absent where `f` has a pole.
    pub ratio: Option<Decimal>,
    pub region: Option<RegionVerdict>,
    pub expansion: Option<ExpansionDetail>,
    pub breakdown: Option<BreakdownDetail>,
}

fn digits_for(bits: u32) -> usize {
    ((bits as f64 * std::f64::consts::LOG10_2) as usize)
        .saturating_sub(3)
        .max(15)
}

/// Evaluates `zeta(s1, s2)` and `zeta / f` by the requested method.
/// The region verdict is informational for every method.
pub fn eval_point(req: &EvalRequest) -> Result<EvalReport> {
    let ctx = PrecisionContext::from_bits(req.bits)?;
    let digits = digits_for(req.bits);
    let s1 = req.s1.to_cnum(ctx.bits())?;
    let s2 = req.s2.to_cnum(ctx.bits())?;
    let sum = Complex::with_val(ctx.bits(), &s1 + &s2);
    let f = match f_factor(&ctx, &sum) {
        Ok(v) => Some(v),
        Err(Error::Pole { .. }) => None,
        Err(e) => return Err(e),
    };
    let region = if sum.is_zero() {
        None
    } else {
        Some(region_check(&s1, &s2, req.epsilon)?)
    };
    let dec = |z: &CNum| Decimal::of(z, digits);
    let ratio_of = |z: &CNum| {
        f.as_ref()
            .map(|f| dec(&Complex::with_val(ctx.bits(), z / f)))
    };

    let mut expansion = None;
    let mut breakdown = None;
    let (zeta, ratio) = match req.method {
        EvalMethod::Direct => {
            let z = double_zeta_direct(&ctx, &s1, &s2)?;
            (dec(&z), ratio_of(&z))
        }
        EvalMethod::Em => {
            let z = double_zeta_em(&ctx, &s1, &s2)?;
            (dec(&z), ratio_of(&z))
        }
        EvalMethod::Fe => {
            let b = double_zeta_fe(&ctx, &s1, &s2, &ContourSpec::default())?;
            let f = f.as_ref().ok_or_else(|| Error::pole("f", "s1 + s2"))?;
            let z = Complex::with_val(ctx.bits(), &b.total * f);
            let [t1, t2, t3, t4, t5, t6] = b.terms().map(&dec);
            breakdown = Some(BreakdownDetail {
                terms: [t1, t2, t3, t4, t5, t6],
                log2_magnitudes: b.magnitudes_log2(),
                p: b.p,
                error_estimate: b.error_estimate,
                bits: b.bits,
            });
            (dec(&z), Some(dec(&b.total)))
        }
        EvalMethod::Asym => {
            let params = RegionParams::new(req.epsilon, req.n)?;
            let r = approx_ratio(&ctx, &s1, &s2, &params, req.include_correction)?;
            expansion = Some(ExpansionDetail {
                n: r.n,
                terms: r.terms.iter().map(dec).collect(),
                correction: r.correction.as_ref().map(dec),
                claimed_error_order: r.claimed_error_order,
            });
            (dec(&r.zeta_approx), Some(dec(&r.ratio_approx)))
        }
    };
    Ok(EvalReport {
        s1: dec(&s1),
        s2: dec(&s2),
        method: req.method,
        bits: req.bits,
        zeta,
        ratio,
        region,
        expansion,
        breakdown,
    })
}

impl std::fmt::Display for EvalReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "s1           = {}", self.s1)?;
        writeln!(f, "s2           = {}", self.s2)?;
        writeln!(
            f,
            "method       = {} ({} bits)",
            self.method.as_str(),
            self.bits
        )?;
        writeln!(f, "zeta(s1,s2)  = {}", self.zeta)?;
        match &self.ratio {
            Some(r) => writeln!(f, "zeta / f     = {r}")?,
            None => writeln!(f, "zeta / f     = (f has a pole)")?,
        }
        if let Some(v) = &self.region {
            writeln!(
                f,
                "region       : im1_ok={} im2_ok={} ratio_ok={} even_gap_ok={} even_gap={:e}{}",
                v.im1_ok,
                v.im2_ok,
                v.ratio_ok,
                v.even_gap_ok,
                v.even_gap,
                if v.pass() {
                    ""
                } else {
                    "  [outside the validity region]"
                }
            )?;
        }
        if let Some(e) = &self.expansion {
            writeln!(
                f,
                "expansion N={} error order M^(-N-1) = {:e}",
                e.n, e.claimed_error_order
            )?;
            for (j, t) in e.terms.iter().enumerate() {
                writeln!(f, "  term {j:>2}    = {t}")?;
            }
            if let Some(c) = &e.correction {
                writeln!(f, "  correction = {c}")?;
            }
        }
        if let Some(b) = &self.breakdown {
            writeln!(
                f,
                "six-term split (p = {}, {} bits, error {:e})",
                b.p, b.bits, b.error_estimate
            )?;
            for (i, (t, m)) in b.terms.iter().zip(b.log2_magnitudes).enumerate() {
                writeln!(f, "  t{} = {t}   (log2 |t| = {m:.1})", i + 1)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(d: &Decimal) -> (f64, f64) {
        (d.re.parse().unwrap(), d.im.parse().unwrap())
    }

    #[test]
    fn em_and_fe_reports_agree() {
        let mut req = EvalRequest::new((-10.3, 0.0), (-9.4, 0.0), EvalMethod::Em);
        req.bits = 160;
        let em = eval_point(&req).unwrap();
        req.method = EvalMethod::Fe;
        let fe = eval_point(&req).unwrap();
        let (a, b) = (parse(&em.zeta), parse(&fe.zeta));
        assert!(((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt() / a.0.hypot(a.1) < 1e-15);
        assert!(fe.breakdown.is_some() && em.breakdown.is_none());
    }

    #[test]
    fn asym_within_ten_percent_and_region_flag() {
        let em = eval_point(&EvalRequest::new(
            (-30.2, 0.0),
            (-20.1, 0.0),
            EvalMethod::Fe,
        ))
        .unwrap();
        let asym = eval_point(&EvalRequest::new(
            (-30.2, 0.0),
            (-20.1, 0.0),
            EvalMethod::Asym,
        ))
        .unwrap();
        let (a, b) = (
            parse(em.ratio.as_ref().unwrap()),
            parse(asym.ratio.as_ref().unwrap()),
        );
        assert!(((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt() < 0.1 * a.0.hypot(a.1));
        assert_eq!(asym.expansion.as_ref().unwrap().terms.len(), 1);

        let r = eval_point(&EvalRequest::new(
            (-50.0, 0.0),
            (-50.0, 0.0),
            EvalMethod::Asym,
        ))
        .unwrap();
        assert!(!r.region.unwrap().even_gap_ok);
    }

    #[test]
    fn decimal_arguments_are_rounded_once() {
        let a: ComplexArg = "-10.3".parse().unwrap();
        assert_eq!(a.im, "0");
        let z = a.to_cnum(256).unwrap();
        let expected = Float::with_val(256, Float::parse("-10.3").unwrap());
        assert_eq!(*z.real(), expected);
        let b: ComplexArg = " -1.5 , 2 ".parse().unwrap();
        assert_eq!((b.re.as_str(), b.im.as_str()), ("-1.5", "2"));
        assert!("1,2,3".parse::<ComplexArg>().is_err());
        assert!("x".parse::<ComplexArg>().is_err());
        let r = eval_point(&EvalRequest::new(a, (-9.4, 0.0), EvalMethod::Em)).unwrap();
        assert!(r.s1.re.starts_with("-10.30000000000000000000000000000"));
    }

    #[test]
    fn direct_at_pole_of_f_has_no_ratio() {
        let r = eval_point(&EvalRequest::new(
            (2.0, 0.0),
            (3.0, 0.0),
            EvalMethod::Direct,
        ))
        .unwrap();
        assert!(r.ratio.is_none());
        assert!(r.to_string().contains("pole"));
        let bad = eval_point(&EvalRequest::new(
            (0.5, 0.0),
            (0.5, 0.0),
            EvalMethod::Direct,
        ));
        assert_eq!(bad.unwrap_err().exit_code(), 2);
    }
}
