//! Runs the self-check suite and shows that a perturbed c_2 is caught.
//!
//!     cargo run --release --example verify

use dzeta::harness::{verify_suite, verify_suite_with, VerifyLevel, VerifyOptions};

fn main() {
    let report = verify_suite(VerifyLevel::Quick);
    for c in &report.checks {
        println!(
            "{} {:<32} {:?}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.measured
        );
    }

    let tampered = verify_suite_with(
        VerifyLevel::Quick,
        &VerifyOptions {
            c2_perturbation: 1e-6,
        },
    );
    let caught: Vec<_> = tampered.failures().map(|c| c.name).collect();
    println!("with c_2 perturbed by 1e-6 the failing checks are {caught:?}");
}
