//! Local factors of the weighted square-free Dirichlet series.
//!
//! The generating series for square-free multiples of d, weighted by
//! z per prime factor, has Euler local factors
//!     (1 + chi_d(p) * z * p^{-s}) * (1 - p^{-s})^z
//! after peeling off zeta(s)^z. This example prints the Taylor
//! coefficients g(p^nu) of that factor, evaluates the truncated
//! products F_d and G_d with certified tail bounds, and confirms the
//! leading density constant lambda_0(d) = d / (zeta(2) psi(d)) both as
//! an exact rational and as the limit the truncated product approaches.
//!
//! Run with: cargo run --example local_factors

use num::complex::Complex64;
use sqfl::primes::PrimeTable;
use sqfl::selberg_delange::{f_eval, g_coeffs, g_eval, lambda0_closed_form, lambda0_rational};

fn main() -> Result<(), sqfl::Error> {
    let table = PrimeTable::build(1_000_000)?;

    // At z = 1 the local factor collapses: away from p | d every
    // coefficient g(p^nu) with nu >= 1 vanishes identically.
    let series = g_coeffs(Complex64::new(1.0, 0.0), false, 6)?;
    println!("g(p^nu) at z = 1, p not dividing d:");
    for (nu, c) in series.coeffs.iter().enumerate() {
        println!("  nu = {nu}:  {:+.6} {:+.6}i", c.re, c.im);
    }

    // At a generic weight the coefficients are nontrivial.
    let series = g_coeffs(Complex64::new(0.5, 0.25), false, 4)?;
    println!("\ng(p^nu) at z = 0.5 + 0.25i:");
    for (nu, c) in series.coeffs.iter().enumerate() {
        println!("  nu = {nu}:  {:+.6} {:+.6}i", c.re, c.im);
    }

    // F_1(2; 1) is the full square-free zeta quotient
    // zeta(2)/zeta(4) = 15/pi^2; the truncated product plus its tail
    // bound must bracket it.
    let f = f_eval(1, 2.0, Complex64::new(1.0, 0.0), &table)?;
    let target = 15.0 / (std::f64::consts::PI * std::f64::consts::PI);
    println!("\nF_1(2; 1) truncated at prime {}:", f.truncation_prime);
    println!("  value      = {:.15}", f.value.re);
    println!("  tail bound = {:.3e}", f.tail_bound.unwrap());
    println!("  15/pi^2    = {:.15}", target);
    assert!((f.value.re - target).abs() <= f.tail_bound.unwrap());

    // G_d(1; 1) converges to the density constant lambda_0(d) itself:
    // the zeta(2) factor is already part of the local products.
    println!("\nlambda_0(d) = d/(zeta(2) psi(d)):");
    println!("{:>6} {:>10} {:>22} {:>22}", "d", "exact", "closed form", "via G_d(1;1)");
    for &d in &[1u64, 2, 6, 30, 210, 2310] {
        let r = lambda0_rational(d, &table)?;
        let closed = lambda0_closed_form(d, &table)?;
        let g = g_eval(d, 1.0, Complex64::new(1.0, 0.0), &table)?;
        let via_g = g.value.re;
        println!(
            "{:>6} {:>10} {:>22.15} {:>22.15}",
            d,
            format!("{}/{}", r.numer(), r.denom()),
            closed,
            via_g
        );
    }
    Ok(())
}
