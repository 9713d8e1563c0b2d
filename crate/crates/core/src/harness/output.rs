//! CSV and JSON emission of sweep reports.

use std::io::Write;
use std::path::Path;

use serde::Serialize;

use super::sweep::{OracleMethod, SweepReport, SweepTarget};
use crate::error::{Error, Result};
use crate::precision::CNum;

/// Significant digits written for complex values.
pub const VALUE_DIGITS: usize = 30;

fn io_err(e: impl std::fmt::Display) -> Error {
    Error::Io(e.to_string())
}

/// `git describe --always --dirty` of the working directory, falling back
/// to the crate version when git or the repository is unavailable.
pub fn git_describe() -> String {
    std::process::Command::new("git")
        .args(["describe", "--always", "--dirty", "--tags"])
        .output()
        .ok()
        .filter(|o| o.status.success())
        .and_then(|o| String::from_utf8(o.stdout).ok())
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .unwrap_or_else(|| format!("v{}", env!("CARGO_PKG_VERSION")))
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepMetadata {
    pub bits: u32,
    pub epsilon: f64,
    pub r2: f64,
    pub gap_offset: f64,
    pub method: OracleMethod,
    pub target: SweepTarget,
    pub include_correction: bool,
    pub git_describe: String,
}

impl SweepMetadata {
    pub fn of(report: &SweepReport) -> Self {
        let c = &report.config;
        Self {
            bits: c.bits,
            epsilon: c.epsilon,
            r2: c.r2,
            gap_offset: c.gap_offset,
            method: c.method,
            target: c.target,
            include_correction: c.include_correction,
            git_describe: git_describe(),
        }
    }
}

fn digits(x: &rug::Float) -> String {
    x.to_string_radix(10, Some(VALUE_DIGITS))
}

#[derive(Serialize)]
struct Row<'a> {
    #[serde(rename = "M")]
    m: f64,
    #[serde(rename = "N")]
    n: usize,
    method: &'a str,
    re_oracle: String,
    im_oracle: String,
    re_asym: String,
    im_asym: String,
    abs_err: f64,
    rel_err: f64,
    #[serde(rename = "M_eff")]
    m_eff: f64,
    log2_t1: Option<f64>,
    log2_t2: Option<f64>,
    log2_t3: Option<f64>,
    log2_t4: Option<f64>,
    log2_t5: Option<f64>,
    log2_t6: Option<f64>,
}

fn rows(report: &SweepReport) -> impl Iterator<Item = Row<'_>> {
    report.records.iter().map(|r| {
        let t = |i: usize| r.log2_terms.map(|v| v[i]);
        let split = |z: &CNum| (digits(z.real()), digits(z.imag()));
        let (re_oracle, im_oracle) = split(&r.oracle);
        let (re_asym, im_asym) = split(&r.asym);
        Row {
            m: r.m,
            n: r.n,
            method: r.method.as_str(),
            re_oracle,
            im_oracle,
            re_asym,
            im_asym,
            abs_err: r.abs_err,
            rel_err: r.rel_err,
            m_eff: r.m_eff,
            log2_t1: t(0),
            log2_t2: t(1),
            log2_t3: t(2),
            log2_t4: t(3),
            log2_t5: t(4),
            log2_t6: t(5),
        }
    })
}

/// One row per record; the nine plot columns come first.
pub fn write_csv<W: Write>(report: &SweepReport, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows(report) {
        w.serialize(row).map_err(io_err)?;
    }
    w.flush().map_err(io_err)
}

#[derive(Serialize)]
struct Skipped {
    #[serde(rename = "M")]
    m: f64,
    #[serde(rename = "N")]
    n: Option<usize>,
    kind: &'static str,
    message: String,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    metadata: SweepMetadata,
    records: Vec<Row<'a>>,
    skipped: Vec<Skipped>,
}

pub fn write_json<W: Write>(report: &SweepReport, out: W) -> Result<()> {
    let doc = JsonReport {
        metadata: SweepMetadata::of(report),
        records: rows(report).collect(),
        skipped: report
            .skipped
            .iter()
            .map(|s| Skipped {
                m: s.m,
                n: s.n,
                kind: s.error.kind(),
                message: s.error.to_string(),
            })
            .collect(),
    };
    let mut out = out;
    serde_json::to_writer_pretty(&mut out, &doc).map_err(io_err)?;
    out.write_all(b"\n").map_err(io_err)
}

/// Writes CSV or JSON according to the file extension.
pub fn write_report(report: &SweepReport, path: &Path) -> Result<()> {
    let ext = path
        .extension()
        .and_then(|e| e.to_str())
        .map(str::to_ascii_lowercase);
    let writer = |p: &Path| {
        std::fs::File::create(p)
            .map(std::io::BufWriter::new)
            .map_err(io_err)
    };
    match ext.as_deref() {
        Some("csv") => write_csv(report, writer(path)?),
        Some("json") => write_json(report, writer(path)?),
        _ => Err(Error::InvalidParams(format!(
            "output path must end in .csv or .json, got {}",
            path.display()
        ))),
    }
}
