//! Residual scans for the square-free multiple counts |A_d|.
//!
//! |A_d| = x/(zeta(2) psi(d)) + R(x, d). Two scans probe the error
//! term R over a grid:
//!
//!   * power-law: rho = |R| / (sqrt(x/d)... ) — the normalized ratio
//!     against sqrt(x) d^{-1/4} + d^{1/2+delta}, expected to stay below
//!     a fixed constant for d up to a power of x;
//!   * exponential: at small d the normalized residual |R| d / x decays
//!     roughly like exp(-c sqrt(ln(x/d))); a least-squares fit over the
//!     grid estimates c and must find it positive.
//!
//! Run with: cargo run --example residual_scans

use sqfl::primes::PrimeTable;
use sqfl::scans::{residual_exp_scan, residual_power_scan, ScanBudget};

fn main() -> Result<(), sqfl::Error> {
    let table = PrimeTable::build(4_000)?;
    let budget = ScanBudget::default();

    let xs = [1e4, 1e5, 1e6];
    let ds: Vec<u64> = (1..=60).filter(|&d| is_squarefree(d)).collect();

    let power = residual_power_scan(&xs, &ds, 0.01, 0.6, &budget, &table)?;
    println!("power-law scan over {} rows:", power.rows.len());
    for (key, value) in &power.summary {
        println!("  {key} = {value:.6}");
    }

    let exp = residual_exp_scan(&xs, &[2, 6, 30, 210], &budget, &table)?;
    println!("\nexponential-decay scan over {} rows:", exp.rows.len());
    for (key, value) in &exp.summary {
        println!("  {key} = {value:.6}");
    }
    Ok(())
}

fn is_squarefree(mut d: u64) -> bool {
    let mut p = 2;
    while p * p <= d {
        if d % (p * p) == 0 {
            return false;
        }
        while d % p == 0 {
            d /= p;
        }
        p += 1;
    }
    true
}
