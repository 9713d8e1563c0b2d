//! Error decay of the expansion along a ray, slope fits, and CSV output.
//!
//!     cargo run --release --example decay_sweep [-- out.csv]

use dzeta::harness::{fit_slope, sweep_error_decay, write_report, SweepConfig, SweepTarget};

fn main() -> dzeta::Result<()> {
    let depths = vec![21.0, 31.0, 41.0, 51.0, 81.0];
    let cfg = SweepConfig::new(0.35, depths.clone(), vec![0, 1, 2], 0.1);
    let report = sweep_error_decay(&cfg)?;
    for r in &report.records {
        println!(
            "N={} M={:<5} {} abs_err {:.3e}",
            r.n,
            r.m_eff,
            r.method.as_str(),
            r.abs_err
        );
    }
    for n in 0..=2 {
        let fit = fit_slope(&report.records, n)?;
        println!(
            "N={n}: slope {:.3} (expect about {}), r^2 {:.5}",
            fit.slope,
            -(n as f64) - 1.0,
            fit.r_squared
        );
    }

    // same ray, zeta^(1/2) target
    let half = sweep_error_decay(
        &SweepConfig::new(0.35, depths, vec![0, 1], 0.1).target(SweepTarget::ZetaHalf),
    )?;
    for n in 0..=1 {
        println!(
            "zeta^(1/2) N={n}: slope {:.3}",
            fit_slope(&half.records, n)?.slope
        );
    }

    if let Some(path) = std::env::args().nth(1) {
        write_report(&report, path.as_ref())?;
        println!("wrote {path}");
    }
    Ok(())
}
