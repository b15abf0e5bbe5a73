//! Evaluate a Riemann-sum sequence, scan it numerically, then decide the
//! same monotonicity question exactly.
//!
//! Run with `cargo run -p riemann-mono --example quickstart`.

use riemann_mono::funcspec::FunctionSpec;
use riemann_mono::polyexact::decide_monotone;
use riemann_mono::sums::{monotonicity_scan, sum_sequence, SumKind};

fn main() -> Result<(), riemann_mono::Error> {
    // x - 7x^3 + 6x^4 on [0,1], sampled by left sums.
    let f: FunctionSpec = "poly:0,1,0,-7,6".parse()?;

    // Floating-point values of L_1..L_50 plus a tolerance-aware scan.
    let seq = sum_sequence(&f, &SumKind::Left, 1, 50)?;
    let scan = monotonicity_scan(&seq, 1e-12);
    println!(
        "numeric scan: {:?} (violations: {})",
        scan.direction,
        scan.violations.len()
    );

    // The same question answered exactly, for every n at once.
    let poly = f.as_polynomial().expect("spec is a polynomial");
    let verdict = decide_monotone(&poly, &SumKind::Left)?;
    println!(
        "exact decision: {:?} (valid for all n: {})",
        verdict.direction, verdict.valid_for_all_n
    );
    Ok(())
}
