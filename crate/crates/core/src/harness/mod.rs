//! Experiment plumbing: decay sweeps along admissible rays, slope fits,
//! CSV/JSON output and the self-check suite.

pub mod eval;
pub mod fit;
pub mod output;
pub mod sweep;
pub mod verify;

pub use eval::{eval_point, ComplexArg, EvalMethod, EvalReport, EvalRequest};
pub use fit::{fit_slope, least_squares, SlopeFit, SLOPE_MIN_M};
pub use output::{git_describe, write_csv, write_json, write_report, SweepMetadata};
pub use sweep::{
    effective_depth, ray_point, sweep_context, sweep_error_decay, OracleMethod, SkippedPoint,
    SweepConfig, SweepRecord, SweepReport, SweepTarget,
};
pub use verify::{
    verify_suite, verify_suite_with, CheckOutcome, VerifyLevel, VerifyOptions, VerifyReport,
};
