//! Euler products over bounded primes, with proved enclosures.
//!
//! Three running products over the primes p <= y drive every density
//! computation in this crate:
//!
//!   * the Mertens product            prod (1 - 1/p),
//!   * the Dedekind-psi ratio product prod (1 - 1/(p+1)),
//!   * the partial zeta(2) product    prod (1 - 1/p^2)^{-1}.
//!
//! Each is computed in compensated (double-double) arithmetic and
//! reported together with lower/upper bounds: explicit asymptotic
//! envelopes for the first, derived envelopes for the second, and the
//! range [4/3, zeta(2)) for the third. The identity
//!     psi-ratio = mertens * zeta2-partial
//! ties all three together at every boundary.
//!
//! Run with: cargo run --example euler_product_bounds

use sqfl::euler_products::{mertens_product, psi_ratio_product, zeta2_partial};
use sqfl::primes::PrimeTable;

fn main() -> Result<(), sqfl::Error> {
    let table = PrimeTable::build(1_000_000)?;

    println!("Mertens product with its asymptotic envelope:");
    println!("{:>10} {:>14} {:>14} {:>14}", "y", "lower", "value", "upper");
    for k in [1, 2, 3, 4, 5, 6] {
        let y = 10f64.powi(k);
        let m = mertens_product(y, &table)?;
        println!(
            "{:>10} {:>14.8} {:>14.8} {:>14.8}",
            y as u64, m.lower, m.value, m.upper
        );
        assert!(m.lower <= m.value && m.value <= m.upper);
    }

    println!("\nDedekind-psi ratio product (drives the sifting density):");
    println!("{:>10} {:>14} {:>14} {:>14}", "y", "lower", "value", "upper");
    for k in [1, 3, 6] {
        let y = 10f64.powi(k);
        let p = psi_ratio_product(y, &table)?;
        println!(
            "{:>10} {:>14.8} {:>14.8} {:>14.8}",
            y as u64, p.lower, p.value, p.upper
        );
    }

    println!("\nPartial zeta(2): exactly 4/3 at y = 2, increasing toward pi^2/6:");
    for k in [1, 2, 4, 6] {
        let y = 10f64.powi(k);
        let z = zeta2_partial(y, &table)?;
        println!("{:>10}  {:.12}   (zeta(2) = {:.12})", y as u64, z.value, sqfl::ZETA2);
    }

    // The three-way identity at one boundary.
    let y = 1e6;
    let m = mertens_product(y, &table)?.value;
    let z = zeta2_partial(y, &table)?.value;
    let p = psi_ratio_product(y, &table)?.value;
    println!("\nidentity at y = 10^6:  mertens * zeta2 = {:.15}", m * z);
    println!("                       psi-ratio       = {:.15}", p);
    Ok(())
}
