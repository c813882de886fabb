//! The sieve-dimension requirement over a boundary grid.
//!
//! Sieve machinery of dimension kappa asks that the prime product
//!     prod over eta <= p <= xi of (p + 1)/p
//! stay below (ln xi / ln eta)^kappa * (1 + kappa'/ln eta) for all
//! boundaries eta <= xi in range. This example evaluates the check at
//! hand-verifiable points and then sweeps a grid for the two parameter
//! pairs the counting argument relies on.
//!
//! Run with: cargo run --example sieve_requirement

use sqfl::euler_products::requirement_check;
use sqfl::primes::PrimeTable;

fn main() -> Result<(), sqfl::Error> {
    let table = PrimeTable::build(1_000_000)?;

    // One hand-checkable point: only p = 2 lies in [2, 2.5], so the
    // left side is exactly 3/2.
    let r = requirement_check(2.0, 2.5, 3.0, 14.0, &table)?;
    println!(
        "eta=2 xi=2.5 kappa=3 kappa'=14:  lhs = {:.6}  rhs = {:.6}  pass = {}",
        r.lhs, r.rhs, r.pass
    );

    // Degenerate interval [5, 5]: the product is (5+1)/5.
    let r = requirement_check(5.0, 5.0, 3.0, 14.0, &table)?;
    println!(
        "eta=5 xi=5   kappa=3 kappa'=14:  lhs = {:.6}  (6/5 = 1.2)",
        r.lhs
    );

    for &(kappa, kappa_prime) in &[(3.0, 14.0), (1.0, 5.0)] {
        println!("\nkappa = {kappa}, kappa' = {kappa_prime}:");
        println!("{:>10} {:>10} {:>12} {:>12} {:>9} {:>6}", "eta", "xi", "lhs", "rhs", "slack", "pass");
        let grid = [2.0f64, 3.0, 10.0, 100.0, 10_000.0, 1_000_000.0];
        for &eta in &grid {
            for &xi in &grid {
                if xi < eta || (kappa == 1.0 && eta > 2.0) {
                    continue;
                }
                let r = requirement_check(eta, xi, kappa, kappa_prime, &table)?;
                println!(
                    "{:>10} {:>10} {:>12.4} {:>12.4} {:>9.4} {:>6}",
                    eta, xi, r.lhs, r.rhs, r.slack, r.pass
                );
            }
        }
    }
    Ok(())
}
