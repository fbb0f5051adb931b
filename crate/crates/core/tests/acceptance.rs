//! One line per acceptance criterion. Tolerances: exact (zero) for 1-6;
//! Gram off-diagonal < 1e-8 and norm-ratio relative error < 1e-6 for 7;
//! strictly decreasing last three discrepancies and final < 1e-2 for 8.

use std::time::Instant;

use mvop::limits::FINAL_DISCREPANCY;
use mvop::quadrature::{NORM_RATIO_TOLERANCE, OFFDIAGONAL_TOLERANCE};
use mvop::suite::{criterion, CRITERIA};

#[test]
fn tolerances_are_the_specified_ones() {
    assert_eq!(OFFDIAGONAL_TOLERANCE, 1e-8);
    assert_eq!(NORM_RATIO_TOLERANCE, 1e-6);
    assert_eq!(FINAL_DISCREPANCY, 1e-2);
}

#[test]
fn acceptance() {
    let mut failed = Vec::new();
    for (id, name) in CRITERIA {
        let start = Instant::now();
        let result = criterion(id).expect("listed criterion");
        let checks: usize = result.sub_results.iter().map(|s| s.checks).sum();
        println!(
            "criterion {id} {name}: {} ({checks} checks, {:.1}s)",
            if result.pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
        for sub in &result.sub_results {
            if !sub.pass {
                println!("    {}: {:?}", sub.name, sub.failures);
            }
        }
        if id == 7 {
            assert!(start.elapsed().as_secs() < 300, "numeric orthogonality took too long");
        }
        if !result.pass {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
