use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dzeta::harness::{
    eval_point, fit_slope, sweep_error_decay, verify_suite, write_report, ComplexArg, EvalMethod,
    EvalRequest, OracleMethod, SweepConfig, SweepTarget, VerifyLevel,
};
use dzeta::Error;

const VERIFY_FAILED: u8 = 4;

#[derive(Parser)]
#[command(
    name = "dzeta",
    version,
    about = "Double zeta values at large negative arguments"
)]
struct Cli {
    /// Working precision in bits.
    #[arg(long, global = true, env = "DZ_BITS", default_value_t = 128)]
    bits: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Direct,
    Em,
    Fe,
    Asym,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleArg {
    Em,
    Fe,
    Auto,
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    Ratio,
    ZetaHalf,
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate at one point.
    Eval {
        /// RE[,IM]
        #[arg(long, allow_hyphen_values = true)]
        s1: ComplexArg,
        /// RE[,IM]
        #[arg(long, allow_hyphen_values = true)]
        s2: ComplexArg,
        #[arg(long, value_enum)]
        method: MethodArg,
        /// Truncation order of the expansion.
        #[arg(long = "N", default_value_t = 0)]
        n: usize,
        /// Add the gamma correction term to the expansion.
        #[arg(long)]
        correction: bool,
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
        #[arg(long)]
        json: bool,
    },
    /// Error decay along the ray with fixed r2.
    Sweep {
        #[arg(long)]
        r2: f64,
        #[arg(long = "M-start")]
        m_start: f64,
        #[arg(long = "M-end")]
        m_end: f64,
        #[arg(long)]
        points: usize,
        /// Comma separated orders.
        #[arg(long = "N", value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long)]
        epsilon: f64,
        #[arg(long, default_value_t = SweepConfig::DEFAULT_GAP)]
        gap: f64,
        #[arg(long, value_enum, default_value = "auto")]
        method: OracleArg,
        #[arg(long, value_enum, default_value = "ratio")]
        target: TargetArg,
        /// Leave the gamma correction out of the expansion.
        #[arg(long)]
        no_correction: bool,
        /// Output file, .csv or .json.
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the self-check suite.
    Verify {
        #[arg(long, value_enum, default_value = "quick")]
        level: LevelArg,
        #[arg(long)]
        json: bool,
    },
}

fn fail(err: &Error, json: bool) -> ExitCode {
    if json {
        let doc =
            serde_json::json!({ "error": { "kind": err.kind(), "message": err.to_string() } });
        println!("{doc}");
    } else {
        eprintln!("error: {err}");
    }
    ExitCode::from(err.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Eval {
            s1,
            s2,
            method,
            n,
            correction,
            epsilon,
            json,
        } => {
            let method = match method {
                MethodArg::Direct => EvalMethod::Direct,
                MethodArg::Em => EvalMethod::Em,
                MethodArg::Fe => EvalMethod::Fe,
                MethodArg::Asym => EvalMethod::Asym,
            };
            let req = EvalRequest {
                n,
                include_correction: correction,
                bits: cli.bits,
                epsilon,
                ..EvalRequest::new(s1, s2, method)
            };
            match eval_point(&req) {
                Ok(r) if json => println!(
                    "{}",
                    serde_json::to_string_pretty(&r).expect("serializable")
                ),
                Ok(r) => print!("{r}"),
                Err(e) => return fail(&e, json),
            }
            ExitCode::SUCCESS
        }
        Command::Sweep {
            r2,
            m_start,
            m_end,
            points,
            n,
            epsilon,
            gap,
            method,
            target,
            no_correction,
            out,
        } => {
            let run = || -> dzeta::Result<()> {
                let depths = SweepConfig::geometric_depths(m_start, m_end, points)?;
                let cfg = SweepConfig::new(r2, depths, n.clone(), epsilon)
                    .gap(gap)
                    .method(match method {
                        OracleArg::Em => OracleMethod::Em,
                        OracleArg::Fe => OracleMethod::Fe,
                        OracleArg::Auto => OracleMethod::Auto,
                    })
                    .target(match target {
                        TargetArg::Ratio => SweepTarget::Ratio,
                        TargetArg::ZetaHalf => SweepTarget::ZetaHalf,
                    })
                    .correction(!no_correction)
                    .bits(cli.bits);
                let report = sweep_error_decay(&cfg)?;
                for s in &report.skipped {
                    eprintln!("skipped M = {} N = {:?}: {}", s.m, s.n, s.error);
                }
                write_report(&report, &out)?;
                for &order in &n {
                    match fit_slope(&report.records, order) {
                        Ok(f) => println!(
                            "N = {order}: slope {:.3} (claimed {}), r^2 {:.4}, {} points",
                            f.slope,
                            -(order as f64) - 1.0,
                            f.r_squared,
                            f.points
                        ),
                        Err(e) => println!("N = {order}: no fit ({e})"),
                    }
                }
                Ok(())
            };
            match run() {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => fail(&e, false),
            }
        }
        Command::Verify { level, json } => {
            let level = match level {
                LevelArg::Quick => VerifyLevel::Quick,
                LevelArg::Full => VerifyLevel::Full,
            };
            let report = verify_suite(level);
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("serializable")
                );
            } else {
                for c in &report.checks {
                    let measured = c
                        .measured
                        .map_or_else(|| "n/a".to_string(), |v| format!("{v:.3e}"));
                    let op = match c.bound {
                        dzeta::harness::verify::Bound::AtMost => "<=",
                        dzeta::harness::verify::Bound::AtLeast => ">=",
                    };
                    let status = if c.passed { "PASS" } else { "FAIL" };
                    print!(
                        "{status} {:<34} {measured} {op} {:.1e}",
                        c.name, c.threshold
                    );
                    match &c.error {
                        Some(e) => println!("  ({e})"),
                        None => println!(),
                    }
                }
                let failed = report.failures().count();
                println!("{} checks, {} failed", report.checks.len(), failed);
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(VERIFY_FAILED)
            }
        }
    }
}
