//! Multiplicative arithmetic functions over a prime table.
//!
//! Factorization below the table limit walks the least-prime-factor side
//! table; above it, trial division by the tabled primes up to sqrt(n) is
//! used, and running out of tabled primes is an explicit capacity error.
//! All integer paths use checked 64-bit arithmetic: overflow is reported,
//! never wrapped.

use crate::error::{Error, Result};
use crate::primes::PrimeTable;
use num::rational::Ratio;

/// Exact rational with 64-bit numerator and denominator.
pub type Rational = Ratio<i64>;

/// Distinct-prime factorization of n (exponents included).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationView {
    pub n: u64,
    /// (prime, exponent) pairs in increasing prime order.
    pub factors: Vec<(u64, u32)>,
}

impl FactorizationView {
    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, a)| a == 1)
    }

    pub fn distinct_primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }
}

/// Factor n using the table. Errors: n = 0 (domain); table too small to
/// certify the factorization (capacity).
pub fn factorize(table: &PrimeTable, n: u64) -> Result<FactorizationView> {
    if n == 0 {
        return Err(Error::domain("factorize(0) is undefined"));
    }
    let mut factors: Vec<(u64, u32)> = Vec::new();
    if n <= table.limit() && table.has_side_tables() {
        let mut m = n;
        while m > 1 {
            let p = table.lpf(m).expect("side tables cover m");
            let mut a = 0u32;
            while m % p == 0 {
                m /= p;
                a += 1;
            }
            factors.push((p, a));
        }
        return Ok(FactorizationView { n, factors });
    }
    let mut rem = n;
    let mut certified = false;
    for &p in table.primes() {
        if p.saturating_mul(p) > rem {
            certified = true;
            break;
        }
        if rem % p == 0 {
            let mut a = 0u32;
            while rem % p == 0 {
                rem /= p;
                a += 1;
            }
            factors.push((p, a));
        }
    }
    if rem > 1 {
        // A composite rem would have a prime factor <= isqrt(rem), so
        // trial division over all tabled primes certifies primality
        // exactly when isqrt(rem) <= limit.
        if !certified && table.limit() < rem.isqrt() {
            return Err(Error::capacity(format!(
                "factorize({}) needs primes to {}, table stops at {}",
                n,
                rem.isqrt(),
                table.limit()
            )));
        }
        factors.push((rem, 1));
    }
    Ok(FactorizationView { n, factors })
}

/// Mobius function: (-1)^omega(n) on square-free n, 0 otherwise. mu(1) = 1.
pub fn mobius(table: &PrimeTable, n: u64) -> Result<i8> {
    if let Some(mu) = table.mobius_table() {
        if n >= 1 && n <= table.limit() {
            return Ok(mu[n as usize]);
        }
    }
    let f = factorize(table, n)?;
    if !f.is_squarefree() {
        return Ok(0);
    }
    Ok(if f.factors.len() % 2 == 0 { 1 } else { -1 })
}

/// Number of distinct prime factors; omega(1) = 0.
pub fn omega(table: &PrimeTable, n: u64) -> Result<u32> {
    Ok(factorize(table, n)?.factors.len() as u32)
}

/// Dedekind psi of a square-free d: the product of (p + 1) over p | d.
/// psi(1) = 1. Non-square-free input is a domain error; overflow is checked.
pub fn dedekind_psi(table: &PrimeTable, d: u64) -> Result<u64> {
    let f = factorize(table, d)?;
    if !f.is_squarefree() {
        return Err(Error::NotSquarefree(d));
    }
    let mut acc: u64 = 1;
    for (p, _) in &f.factors {
        acc = acc
            .checked_mul(p + 1)
            .ok_or(Error::Overflow("dedekind_psi"))?;
    }
    Ok(acc)
}

/// Euler totient for any n >= 1, via the full factorization.
pub fn euler_phi(table: &PrimeTable, n: u64) -> Result<u64> {
    let f = factorize(table, n)?;
    let mut acc: u64 = 1;
    for &(p, a) in &f.factors {
        let mut part = p - 1;
        for _ in 1..a {
            part = part.checked_mul(p).ok_or(Error::Overflow("euler_phi"))?;
        }
        acc = acc.checked_mul(part).ok_or(Error::Overflow("euler_phi"))?;
    }
    Ok(acc)
}

/// Principal character mod d: 1 when gcd(n, d) = 1, else 0.
pub fn principal_character(d: u64, n: u64) -> u8 {
    if d == 0 {
        // gcd(n, 0) = n; only n = 1 is coprime
        return u8::from(n == 1);
    }
    u8::from(num::integer::gcd(d, n) == 1)
}

/// Sieve weight w(d) = d / psi(d) as an exact reduced rational, square-free d.
pub fn sieve_weight(table: &PrimeTable, d: u64) -> Result<Rational> {
    let psi = dedekind_psi(table, d)?;
    if d > i64::MAX as u64 || psi > i64::MAX as u64 {
        return Err(Error::Overflow("sieve_weight"));
    }
    Ok(Rational::new(d as i64, psi as i64))
}

/// Cap on omega(d) for divisor enumeration; 2^30 subsets is already far past
/// any desk-scale budget.
const MAX_OMEGA_FOR_DIVISORS: usize = 30;

/// All divisors of a square-free d, in increasing order (subset products of
/// the prime factors). Capacity error when omega(d) exceeds the cap.
pub fn squarefree_divisors(table: &PrimeTable, d: u64) -> Result<Vec<u64>> {
    let f = factorize(table, d)?;
    if !f.is_squarefree() {
        return Err(Error::NotSquarefree(d));
    }
    if f.factors.len() > MAX_OMEGA_FOR_DIVISORS {
        return Err(Error::capacity(format!(
            "squarefree_divisors: omega({}) = {} exceeds cap {}",
            d,
            f.factors.len(),
            MAX_OMEGA_FOR_DIVISORS
        )));
    }
    let mut divs: Vec<u64> = vec![1];
    for (p, _) in &f.factors {
        let len = divs.len();
        for i in 0..len {
            let q = divs[i]
                .checked_mul(*p)
                .ok_or(Error::Overflow("squarefree_divisors"))?;
            divs.push(q);
        }
    }
    divs.sort_unstable();
    Ok(divs)
}

/// Divisors of a square-free d paired with their Mobius values, increasing.
pub fn signed_divisors(table: &PrimeTable, d: u64) -> Result<Vec<(u64, i8)>> {
    let f = factorize(table, d)?;
    if !f.is_squarefree() {
        return Err(Error::NotSquarefree(d));
    }
    if f.factors.len() > MAX_OMEGA_FOR_DIVISORS {
        return Err(Error::capacity(format!(
            "signed_divisors: omega({}) = {} exceeds cap {}",
            d,
            f.factors.len(),
            MAX_OMEGA_FOR_DIVISORS
        )));
    }
    let mut divs: Vec<(u64, i8)> = vec![(1, 1)];
    for (p, _) in &f.factors {
        let len = divs.len();
        for i in 0..len {
            let (q, sign) = divs[i];
            let q = q
                .checked_mul(*p)
                .ok_or(Error::Overflow("signed_divisors"))?;
            divs.push((q, -sign));
        }
    }
    divs.sort_unstable_by_key(|&(q, _)| q);
    Ok(divs)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Trial-division oracle, independent of PrimeTable internals.
    fn factor_oracle(mut n: u64) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        let mut p = 2u64;
        while p * p <= n {
            if n % p == 0 {
                let mut a = 0;
                while n % p == 0 {
                    n /= p;
                    a += 1;
                }
                out.push((p, a));
            }
            p += 1;
        }
        if n > 1 {
            out.push((n, 1));
        }
        out
    }

    fn mobius_oracle(n: u64) -> i8 {
        let f = factor_oracle(n);
        if f.iter().any(|&(_, a)| a > 1) {
            0
        } else if f.len() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    #[test]
    fn factorization_matches_oracle_on_both_paths() {
        let t = PrimeTable::build(1_000).unwrap();
        // below the limit: lpf path; above: trial-division path
        for n in (1..=1_000).chain([1_001, 9_991, 999_983, 1_000_003, 123_456]) {
            assert_eq!(
                factorize(&t, n).unwrap().factors,
                factor_oracle(n),
                "n = {}",
                n
            );
        }
    }

    #[test]
    fn factorization_beyond_certification_is_capacity_error() {
        let t = PrimeTable::build(10).unwrap();
        // 10007 is prime and 10007 > 10^2: the table cannot certify it
        let e = factorize(&t, 10_007).unwrap_err();
        assert_eq!(e.exit_code(), 3);
    }

    #[test]
    fn mobius_spot_values_and_oracle_sweep() {
        let t = PrimeTable::build(5_000).unwrap();
        assert_eq!(mobius(&t, 1).unwrap(), 1);
        assert_eq!(mobius(&t, 2).unwrap(), -1);
        assert_eq!(mobius(&t, 6).unwrap(), 1);
        assert_eq!(mobius(&t, 12).unwrap(), 0);
        assert_eq!(mobius(&t, 30).unwrap(), -1);
        for n in 1..=5_000 {
            assert_eq!(mobius(&t, n).unwrap(), mobius_oracle(n), "mu({})", n);
        }
    }

    #[test]
    fn omega_counts_distinct_primes_only() {
        let t = PrimeTable::build(1_000).unwrap();
        assert_eq!(omega(&t, 1).unwrap(), 0);
        assert_eq!(omega(&t, 8).unwrap(), 1);
        assert_eq!(omega(&t, 30).unwrap(), 3);
        assert_eq!(omega(&t, 360).unwrap(), 3);
    }

    #[test]
    fn omega_bounded_by_binary_log() {
        let t = PrimeTable::build(100_000).unwrap();
        for d in 1..=100_000u64 {
            let w = omega(&t, d).unwrap();
            assert!(
                (1u64 << w) <= d.max(1) || d == 1,
                "2^omega(d) <= d failed at {}",
                d
            );
        }
    }

    #[test]
    fn dedekind_psi_values_and_domain() {
        let t = PrimeTable::build(1_000).unwrap();
        assert_eq!(dedekind_psi(&t, 1).unwrap(), 1);
        assert_eq!(dedekind_psi(&t, 2).unwrap(), 3);
        assert_eq!(dedekind_psi(&t, 6).unwrap(), 12);
        assert_eq!(dedekind_psi(&t, 30).unwrap(), 72);
        let e = dedekind_psi(&t, 12).unwrap_err();
        assert_eq!(e, Error::NotSquarefree(12));
    }

    #[test]
    fn dedekind_psi_at_the_densest_u64_squarefree_input() {
        // The square-free d <= u64::MAX with the largest psi(d) is the
        // product of the primes up to 47 (appending 53 overflows d
        // itself), so the checked product below is the worst case the
        // type ever meets. Oracle: direct integer product of (p + 1).
        let t = PrimeTable::build(200).unwrap();
        let small: [u64; 15] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];
        let d: u64 = small.iter().product();
        assert_eq!(d, 614_889_782_588_491_410);
        assert_eq!(
            dedekind_psi(&t, d).unwrap(),
            2_705_475_101_943_398_400u64,
        );
        // A d whose residual factor cannot be certified prime by the
        // table is a capacity error, not a wrong answer.
        let small_table = PrimeTable::build(100).unwrap();
        let e = dedekind_psi(&small_table, 101 * 103);
        assert_eq!(e.unwrap_err().exit_code(), 3);
    }

    #[test]
    fn euler_phi_matches_naive_gcd_count() {
        let t = PrimeTable::build(2_000).unwrap();
        for n in 1..=500u64 {
            let naive = (1..=n)
                .filter(|&m| num::integer::gcd(m, n) == 1)
                .count() as u64;
            assert_eq!(euler_phi(&t, n).unwrap(), naive, "phi({})", n);
        }
    }

    #[test]
    fn totient_divisor_sum_identity_exact_to_10000() {
        // phi(d)/d = sum over q | d of mu(q)/q, in exact rationals
        let t = PrimeTable::build(10_000).unwrap();
        for d in 1..=10_000u64 {
            let lhs = Rational::new(euler_phi(&t, d).unwrap() as i64, d as i64);
            let mut rhs = Rational::new(0, 1);
            for q in 1..=d {
                if d % q == 0 {
                    let mu = mobius(&t, q).unwrap();
                    if mu != 0 {
                        rhs += Rational::new(mu as i64, q as i64);
                    }
                }
            }
            assert_eq!(lhs, rhs, "totient identity failed at d = {}", d);
        }
    }

    #[test]
    fn principal_character_examples() {
        assert_eq!(principal_character(6, 5), 1);
        assert_eq!(principal_character(6, 4), 0);
        assert_eq!(principal_character(6, 1), 1);
        assert_eq!(principal_character(1, 42), 1);
    }

    #[test]
    fn sieve_weight_examples_and_multiplicativity() {
        let t = PrimeTable::build(10_000).unwrap();
        assert_eq!(sieve_weight(&t, 1).unwrap(), Rational::new(1, 1));
        assert_eq!(sieve_weight(&t, 6).unwrap(), Rational::new(1, 2));
        assert_eq!(sieve_weight(&t, 2).unwrap(), Rational::new(2, 3));
        // multiplicative on coprime square-free pairs
        let pairs = [(2u64, 15u64), (3, 10), (7, 22), (33, 35)];
        for (m, n) in pairs {
            let lhs = sieve_weight(&t, m * n).unwrap();
            let rhs = sieve_weight(&t, m).unwrap() * sieve_weight(&t, n).unwrap();
            assert_eq!(lhs, rhs, "w({} * {})", m, n);
        }
    }

    #[test]
    fn squarefree_divisors_of_30() {
        let t = PrimeTable::build(100).unwrap();
        assert_eq!(
            squarefree_divisors(&t, 30).unwrap(),
            vec![1, 2, 3, 5, 6, 10, 15, 30]
        );
        assert_eq!(squarefree_divisors(&t, 1).unwrap(), vec![1]);
        assert!(squarefree_divisors(&t, 4).is_err());
    }

    #[test]
    fn signed_divisors_carry_mobius_signs() {
        let t = PrimeTable::build(100).unwrap();
        let sd = signed_divisors(&t, 6).unwrap();
        assert_eq!(sd, vec![(1, 1), (2, -1), (3, -1), (6, 1)]);
        for (q, sign) in signed_divisors(&t, 210).unwrap() {
            assert_eq!(sign, mobius(&t, q).unwrap(), "sign at divisor {}", q);
        }
    }
}
