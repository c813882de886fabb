//! Abel-summed divisor tails against the 1/ln x scale.
//!
//! The inclusion-exclusion analysis needs the weighted tail
//!     S_c(x) = sum over square-free d > x/e with prime factors above
//!              lambda(x) of exp(-c sqrt(ln(x/d))) * d^{-1}... in its
//! discrete form: Abel summation converts the Dirichlet-type sum into
//! counting-function increments. The normalized product S_c * ln(x)
//! must stay inside fixed brackets as x grows. This example computes
//! the tail sum directly for one point and then scans.
//!
//! Run with: cargo run --example tail_sums

use sqfl::counting::{abel_tail_sum, LambdaSpec, SiftingContext};
use sqfl::primes::PrimeTable;
use sqfl::scans::{abel_scan, ScanBudget};

fn main() -> Result<(), sqfl::Error> {
    let table = PrimeTable::build(1_000_000)?;
    const CAP: u64 = 1 << 26;

    // One point, spelled out.
    let x = 10_000.0;
    let spec = LambdaSpec::new(1.0, 0.5)?;
    let ctx = SiftingContext::new(x, spec, &table)?;
    let s = abel_tail_sum(x, 0.5, 1.0, &ctx, CAP)?;
    println!(
        "x = 10^4, epsilon = 0.5, c = 1:  S = {:.8}   S * ln(x) = {:.6}",
        s,
        s * x.ln()
    );

    // The scan normalizes by ln(x) across a doubling grid.
    let report = abel_scan(
        &[1e3, 1e4, 1e5, 1e6],
        0.5,
        1.0,
        1.0,
        &ScanBudget::default(),
        &table,
    )?;
    println!("\n{:>10} {:>14} {:>14}", "x", "S_c(x)", "S_c * ln(x)");
    for row in &report.rows {
        let x = row[0].as_f64();
        let s = row[1].as_f64();
        let scaled = row[3].as_f64();
        println!("{:>10} {:>14.6e} {:>14.6}", x as u64, s, scaled);
    }
    for (key, value) in &report.summary {
        println!("{key} = {value:.6}");
    }
    Ok(())
}
