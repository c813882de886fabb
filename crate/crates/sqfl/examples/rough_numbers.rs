//! Counting rough numbers: Phi(y, z).
//!
//! Phi(y, z) counts the integers n <= y whose prime factors all
//! exceed z (so n = 1 always counts). This matches the sifting
//! convention: the primes above the boundary lambda form a half-open
//! range (lambda, x]. The implementation picks between closed forms
//! and the classical recursion
//!     Phi(y, z) = Phi(y, z') - sum over primes z <= p < z' of Phi(y/p, p)
//! depending on where (y, z) falls; this example walks the branches.
//!
//! Run with: cargo run --example rough_numbers

use sqfl::primes::PrimeTable;

fn main() -> Result<(), sqfl::Error> {
    let table = PrimeTable::build(1_000_000)?;

    // Listing-scale sanity: the n <= 50 with every prime factor > 7
    // are 1, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47 — twelve.
    println!("Phi(50, 7)   = {:>8}   (listing gives 12)", table.rough_count(50, 7.0)?);

    // z < 2 excludes nothing; factors > 2 means odd; z >= y leaves n = 1.
    println!("Phi(50, 1.5) = {:>8}   (every n)", table.rough_count(50, 1.5)?);
    println!("Phi(50, 2)   = {:>8}   (odd n)", table.rough_count(50, 2.0)?);
    println!("Phi(50, 60)  = {:>8}   (only n = 1)", table.rough_count(50, 60.0)?);

    // In the band z^2 > y the count collapses to primes:
    // Phi(y, z) = 1 + pi(y) - pi(z-).
    let y = 10_000u64;
    let z = 150.0;
    let direct = table.rough_count(y, z)?;
    let via_pi = 1 + table.prime_count(y as f64)? - table.prime_count(z)?;
    println!("\nPhi(10^4, 150) = {direct}  ==  1 + pi(10^4) - pi(150) = {via_pi}");

    // Recursion territory: small z against large y.
    println!("\n{:>12} {:>6} {:>12}", "y", "z", "Phi(y,z)");
    for &(y, z) in &[(1_000_000u64, 10.0f64), (1_000_000, 100.0), (1_000_000, 997.0)] {
        println!("{:>12} {:>6} {:>12}", y, z, table.rough_count(y, z)?);
    }

    // Phi(y, sqrt(y)) counts 1 and the primes in (sqrt(y), y].
    let y = 1_000_000u64;
    let s = (y as f64).sqrt();
    println!(
        "\nPhi(10^6, 10^3) = {}  ==  1 + pi(10^6) - pi(10^3) = {}",
        table.rough_count(y, s)?,
        1 + table.prime_count(y as f64)? - table.prime_count(s)?
    );
    Ok(())
}
