//! Exact square-free counts against the density main term.
//!
//! Computes Q(x), the number of square-free integers up to x, by the
//! Mobius-over-squares identity, and compares it with the main term
//! x / zeta(2). The residual is displayed both raw and scaled by
//! sqrt(x), the classical error-term normalization.
//!
//! Run with: cargo run --example count_squarefree

use sqfl::counting::count_squarefree;
use sqfl::primes::PrimeTable;

fn main() -> Result<(), sqfl::Error> {
    let table = PrimeTable::build(4_000)?;

    println!("{:>12} {:>12} {:>18} {:>14} {:>10}", "x", "Q(x)", "x/zeta(2)", "residual", "R/sqrt(x)");
    for k in 1..=7 {
        let x = 10f64.powi(k);
        let b = count_squarefree(x, &table)?;
        println!(
            "{:>12} {:>12} {:>18.4} {:>14.4} {:>10.4}",
            x as u64,
            b.exact,
            b.main_term,
            b.residual,
            b.residual / x.sqrt()
        );
    }

    // The density of square-free numbers converges to 6/pi^2.
    let b = count_squarefree(1e7, &table)?;
    println!(
        "\ndensity at 10^7: {:.8}   (6/pi^2 = {:.8})",
        b.exact as f64 / 1e7,
        1.0 / sqfl::ZETA2
    );
    Ok(())
}
