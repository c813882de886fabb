//! Prime generation and prime-counting primitives.
//!
//! Everything downstream (counting, Euler products, scans) works against a
//! [`PrimeTable`]: the ordered primes up to a limit, optionally with
//! least-prime-factor and Mobius side tables when the limit is small enough
//! for the configured memory budget. Capabilities:
//!
//! 1. `PrimeTable::build` / `build_with` - sieve up to a limit (linear sieve
//!    with side tables below the side-table budget, segmented Eratosthenes
//!    above it), with an explicit capacity error when the budget is exceeded.
//! 2. `prime_count` - pi(y) by binary search over the table.
//! 3. `primes_in_range` - the primes in a half-open range (a, b], sieved
//!    segment by segment using base primes up to sqrt(b).
//! 4. `rough_count` - Phi(y, z), the count of n <= y free of prime factors
//!    <= z, with the convention that n = 1 is always counted.

use crate::error::{Error, Result};

/// Resource limits for table construction and range sieving.
#[derive(Debug, Clone)]
pub struct Budget {
    /// Upper bound on the estimated allocation for a table build, in bytes.
    pub max_bytes: u64,
    /// Largest limit for which the lpf/Mobius side tables are materialized.
    pub side_table_limit: u64,
    /// Segment length for the segmented sieve.
    pub segment_len: usize,
    /// Widest span accepted by `primes_in_range`.
    pub max_range_width: u64,
}

impl Default for Budget {
    fn default() -> Budget {
        Budget {
            max_bytes: 8 << 30,
            side_table_limit: 1 << 25,
            segment_len: 1 << 20,
            max_range_width: 1 << 26,
        }
    }
}

/// Primes up to `limit`, plus optional factorization side tables.
#[derive(Debug, Clone)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
    lpf: Option<Vec<u32>>,
    mobius: Option<Vec<i8>>,
    budget: Budget,
}

impl PrimeTable {
    /// Build with the default budget.
    pub fn build(limit: u64) -> Result<PrimeTable> {
        PrimeTable::build_with(limit, Budget::default())
    }

    /// Build with an explicit budget. Exceeding `max_bytes` is a capacity
    /// error, never a silent truncation.
    pub fn build_with(limit: u64, budget: Budget) -> Result<PrimeTable> {
        if limit < 1 {
            return Err(Error::domain("prime table limit must be >= 1"));
        }
        let with_side_tables = limit <= budget.side_table_limit;
        let estimated = estimate_bytes(limit, with_side_tables);
        if estimated > budget.max_bytes {
            return Err(Error::capacity(format!(
                "prime table to {} needs about {} bytes, budget is {}",
                limit, estimated, budget.max_bytes
            )));
        }
        if with_side_tables {
            let (primes, lpf, mobius) = linear_sieve(limit);
            Ok(PrimeTable {
                limit,
                primes,
                lpf: Some(lpf),
                mobius: Some(mobius),
                budget,
            })
        } else {
            let primes = segmented_sieve(limit, budget.segment_len);
            Ok(PrimeTable {
                limit,
                primes,
                lpf: None,
                mobius: None,
                budget,
            })
        }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn budget(&self) -> &Budget {
        &self.budget
    }

    pub fn has_side_tables(&self) -> bool {
        self.lpf.is_some()
    }

    /// Least prime factor of n, when the side table covers it. lpf(1) = 1.
    pub fn lpf(&self, n: u64) -> Option<u64> {
        match &self.lpf {
            Some(t) if n <= self.limit && n >= 1 => Some(t[n as usize] as u64),
            _ => None,
        }
    }

    /// Mobius side table covering [0, limit], when materialized.
    pub fn mobius_table(&self) -> Option<&[i8]> {
        self.mobius.as_deref()
    }

    /// pi(y): the number of primes <= y. Asking beyond the table limit is a
    /// domain error (the table simply does not know).
    pub fn prime_count(&self, y: f64) -> Result<u64> {
        if !y.is_finite() {
            return Err(Error::domain("prime_count argument must be finite"));
        }
        if y > self.limit as f64 {
            return Err(Error::domain(format!(
                "prime_count({}) above table limit {}",
                y, self.limit
            )));
        }
        if y < 2.0 {
            return Ok(0);
        }
        let yf = y.floor() as u64;
        Ok(self.primes.partition_point(|&p| p <= yf) as u64)
    }

    /// Borrowed slice of the tabled primes in (a, b]; requires b <= limit.
    pub fn primes_between(&self, a: f64, b: f64) -> Result<&[u64]> {
        if b > self.limit as f64 {
            return Err(Error::domain(format!(
                "primes_between upper end {} above table limit {}",
                b, self.limit
            )));
        }
        let lo = self.primes.partition_point(|&p| p as f64 <= a);
        let hi = self.primes.partition_point(|&p| p as f64 <= b);
        // An inverted range (a >= b) is an empty interval, not an error.
        Ok(&self.primes[lo.min(hi)..hi])
    }

    /// The primes in (a, b], sieved in segments with base primes from this
    /// table. Needs base primes up to sqrt(b) and a range width within the
    /// budget; both violations are capacity errors.
    pub fn primes_in_range(&self, a: f64, b: f64) -> Result<Vec<u64>> {
        if !(a.is_finite() && b.is_finite()) || a < 0.0 || b < a {
            return Err(Error::domain("primes_in_range needs 0 <= a <= b"));
        }
        let lo = a.floor() as u64; // primes p with p > a, i.e. p >= floor(a)+1 when a integral
        let hi = b.floor() as u64;
        if hi <= 1 {
            return Ok(Vec::new());
        }
        if hi.saturating_sub(lo) > self.budget.max_range_width {
            return Err(Error::capacity(format!(
                "primes_in_range span {} exceeds budget {}",
                hi - lo,
                self.budget.max_range_width
            )));
        }
        let sqrt_hi = hi.isqrt();
        if self.limit < sqrt_hi {
            return Err(Error::capacity(format!(
                "primes_in_range to {} needs base primes to {}, table stops at {}",
                hi, sqrt_hi, self.limit
            )));
        }
        if hi <= self.limit {
            return Ok(self.primes_between(a, b)?.to_vec());
        }
        let mut out = Vec::new();
        self.for_each_prime_in_segments(lo + 1, hi, |p| {
            if p as f64 > a {
                out.push(p);
            }
        });
        Ok(out)
    }

    /// Streams primes in [from, to] by segments; caller guarantees base
    /// primes to sqrt(to) are tabled.
    fn for_each_prime_in_segments(&self, from: u64, to: u64, mut f: impl FnMut(u64)) {
        let seg = self.budget.segment_len as u64;
        let mut lo = from.max(2);
        while lo <= to {
            let hi = (lo + seg - 1).min(to);
            let mut mark = vec![true; (hi - lo + 1) as usize];
            for &p in &self.primes {
                if p * p > hi {
                    break;
                }
                let mut m = (lo + p - 1) / p * p;
                if m < p * p {
                    m = p * p;
                }
                while m <= hi {
                    mark[(m - lo) as usize] = false;
                    m += p;
                }
            }
            for (i, &alive) in mark.iter().enumerate() {
                let n = lo + i as u64;
                if alive && n >= 2 {
                    f(n);
                }
            }
            lo = hi + 1;
        }
    }

    /// Phi(y, z): how many n <= y have no prime factor <= z. The empty
    /// product n = 1 has least prime factor +infinity, so it always counts;
    /// in particular Phi(y, y) = 1 and Phi(y, z) = y for z < 2.
    pub fn rough_count(&self, y: u64, z: f64) -> Result<u64> {
        if y < 1 {
            return Err(Error::domain("rough_count needs y >= 1"));
        }
        if z < 2.0 {
            return Ok(y);
        }
        if z >= y as f64 {
            return Ok(1);
        }
        let zi = z.floor() as u64;
        // z >= sqrt(y): survivors are 1 and the primes in (z, y].
        if zi.saturating_mul(zi) >= y {
            if y <= self.limit {
                let total = self.prime_count(y as f64)?;
                let below = self.prime_count(z)?;
                return Ok(1 + total - below);
            }
            if self.limit < y.isqrt() {
                return Err(Error::capacity(format!(
                    "rough_count({}, {}) needs base primes to {}, table stops at {}",
                    y,
                    z,
                    y.isqrt(),
                    self.limit
                )));
            }
            let mut cnt = 0u64;
            self.for_each_prime_in_segments(zi + 1, y, |_| cnt += 1);
            return Ok(1 + cnt);
        }
        if self.limit < zi {
            return Err(Error::capacity(format!(
                "rough_count({}, {}) needs primes to {}, table stops at {}",
                y, z, zi, self.limit
            )));
        }
        let a = self.primes.partition_point(|&p| p as f64 <= z);
        Ok(self.phi_recursive(y, a))
    }

    /// Legendre-style recursion with a wheel base case and a prime-count
    /// shortcut once the remaining modulus squared exceeds the argument.
    fn phi_recursive(&self, x: u64, a: usize) -> u64 {
        if x == 0 {
            return 0;
        }
        if a == 0 {
            return x;
        }
        if a <= wheel_levels().len() {
            return wheel_phi(x, a);
        }
        let p = self.primes[a - 1];
        if p <= x && p * p > x && x <= self.limit {
            // survivors: 1 and primes in (p, x]
            let pi_x = self.primes.partition_point(|&q| q <= x) as u64;
            return 1 + pi_x - a as u64;
        }
        self.phi_recursive(x, a - 1) - self.phi_recursive(x / p, a - 1)
    }
}

fn estimate_bytes(limit: u64, with_side_tables: bool) -> u64 {
    // primes vec (generous pi(x) overestimate) + sieve scratch + side tables
    let pi_guess = if limit < 17 {
        8
    } else {
        (limit as f64 / (limit as f64).ln() * 1.3) as u64
    };
    let primes_bytes = pi_guess * 8;
    if with_side_tables {
        primes_bytes + (limit + 1) * 5
    } else {
        primes_bytes + limit / 8
    }
}

/// Linear sieve: every composite is crossed exactly once by its least prime
/// factor, which also yields the Mobius table for free.
fn linear_sieve(limit: u64) -> (Vec<u64>, Vec<u32>, Vec<i8>) {
    let n = limit as usize;
    let mut lpf = vec![0u32; n + 1];
    let mut mobius = vec![0i8; n + 1];
    let mut primes: Vec<u64> = Vec::new();
    if n >= 1 {
        lpf[1] = 1;
        mobius[1] = 1;
    }
    for i in 2..=n {
        if lpf[i] == 0 {
            lpf[i] = i as u32;
            mobius[i] = -1;
            primes.push(i as u64);
        }
        for &p in &primes {
            let p = p as usize;
            if p > lpf[i] as usize || i * p > n {
                break;
            }
            lpf[i * p] = p as u32;
            mobius[i * p] = if p == lpf[i] as usize { 0 } else { -mobius[i] };
        }
    }
    (primes, lpf, mobius)
}

/// Segmented Eratosthenes for limits too large for side tables.
fn segmented_sieve(limit: u64, segment_len: usize) -> Vec<u64> {
    let root = limit.isqrt();
    let (base, _, _) = linear_sieve(root.max(2));
    let mut primes = Vec::new();
    let seg = segment_len as u64;
    let mut lo = 2u64;
    while lo <= limit {
        let hi = (lo + seg - 1).min(limit);
        let mut mark = vec![true; (hi - lo + 1) as usize];
        for &p in &base {
            if p * p > hi {
                break;
            }
            let mut m = ((lo + p - 1) / p * p).max(p * p);
            while m <= hi {
                mark[(m - lo) as usize] = false;
                m += p;
            }
        }
        for (i, &alive) in mark.iter().enumerate() {
            let n = lo + i as u64;
            if alive && n >= 2 {
                primes.push(n);
            }
        }
        lo = hi + 1;
    }
    primes
}

/// Standalone Mobius sieve for callers whose table lacks side tables; the
/// ranges involved are sqrt-sized, so a fresh linear sieve is cheap.
pub(crate) fn mobius_sieve_upto(limit: u64) -> Vec<i8> {
    let (_, _, mobius) = linear_sieve(limit.max(1));
    mobius
}

struct WheelLevel {
    modulus: u64,
    totient: u64,
    coprime_upto: Vec<u32>,
}

fn wheel_levels() -> &'static [WheelLevel] {
    use std::sync::OnceLock;
    static LEVELS: OnceLock<Vec<WheelLevel>> = OnceLock::new();
    LEVELS.get_or_init(|| {
        let small = [2u64, 3, 5, 7, 11, 13];
        let mut levels = Vec::new();
        let mut modulus = 1u64;
        let mut totient = 1u64;
        for (k, &p) in small.iter().enumerate() {
            modulus *= p;
            totient *= p - 1;
            let active = &small[..=k];
            let mut coprime_upto = vec![0u32; modulus as usize];
            let mut running = 0u32;
            for r in 1..modulus as usize {
                if active.iter().all(|&q| r as u64 % q != 0) {
                    running += 1;
                }
                coprime_upto[r] = running;
            }
            levels.push(WheelLevel {
                modulus,
                totient,
                coprime_upto,
            });
        }
        levels
    })
}

/// Count of m <= x coprime to the first `a` primes, by wheel periodicity.
fn wheel_phi(x: u64, a: usize) -> u64 {
    let level = &wheel_levels()[a - 1];
    (x / level.modulus) * level.totient
        + level.coprime_upto[(x % level.modulus) as usize] as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent primality oracle: plain trial division.
    fn is_prime_oracle(n: u64) -> bool {
        if n < 2 {
            return false;
        }
        let mut d = 2u64;
        while d * d <= n {
            if n % d == 0 {
                return false;
            }
            d += 1;
        }
        true
    }

    /// Independent rough-number oracle: cross off multiples of every prime
    /// <= z, count survivors (1 included).
    fn rough_oracle(y: u64, z: f64) -> u64 {
        let mut alive = vec![true; (y + 1) as usize];
        alive[0] = false;
        let mut p = 2u64;
        while p as f64 <= z && p <= y {
            if is_prime_oracle(p) {
                let mut m = p;
                while m <= y {
                    alive[m as usize] = false;
                    m += p;
                }
            }
            p += 1;
        }
        alive.iter().filter(|&&b| b).count() as u64
    }

    #[test]
    fn primes_match_trial_division_up_to_10000() {
        let t = PrimeTable::build(10_000).unwrap();
        let expected: Vec<u64> = (2..=10_000).filter(|&n| is_prime_oracle(n)).collect();
        assert_eq!(t.primes(), expected.as_slice());
    }

    #[test]
    fn prime_counts_at_classic_checkpoints() {
        let t = PrimeTable::build(1_000_000).unwrap();
        assert_eq!(t.prime_count(10.0).unwrap(), 4);
        assert_eq!(t.prime_count(100.0).unwrap(), 25);
        assert_eq!(t.prime_count(10_000.0).unwrap(), 1_229);
        assert_eq!(t.prime_count(1_000_000.0).unwrap(), 78_498);
        assert_eq!(t.prime_count(1.9).unwrap(), 0);
        assert_eq!(t.prime_count(2.0).unwrap(), 1);
    }

    #[test]
    fn prime_count_above_limit_is_domain_error() {
        let t = PrimeTable::build(100).unwrap();
        let e = t.prime_count(101.0).unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn segmented_path_agrees_with_linear_path() {
        let budget = Budget {
            side_table_limit: 1_000,
            ..Budget::default()
        };
        let seg = PrimeTable::build_with(50_000, budget).unwrap();
        assert!(!seg.has_side_tables());
        let lin = PrimeTable::build(50_000).unwrap();
        assert!(lin.has_side_tables());
        assert_eq!(seg.primes(), lin.primes());
    }

    #[test]
    fn tiny_memory_budget_is_a_capacity_error() {
        let budget = Budget {
            max_bytes: 1_000,
            ..Budget::default()
        };
        let e = PrimeTable::build_with(10_000_000, budget).unwrap_err();
        assert_eq!(e.exit_code(), 3);
    }

    #[test]
    fn side_tables_factor_correctly() {
        let t = PrimeTable::build(1_000).unwrap();
        assert_eq!(t.lpf(1), Some(1));
        assert_eq!(t.lpf(2), Some(2));
        assert_eq!(t.lpf(15), Some(3));
        assert_eq!(t.lpf(49), Some(7));
        let mu = t.mobius_table().unwrap();
        assert_eq!(mu[1], 1);
        assert_eq!(mu[2], -1);
        assert_eq!(mu[6], 1);
        assert_eq!(mu[12], 0);
        assert_eq!(mu[30], -1);
    }

    #[test]
    fn primes_in_range_half_open_semantics() {
        let t = PrimeTable::build(100).unwrap();
        assert_eq!(t.primes_in_range(3.0, 10.0).unwrap(), vec![5, 7]);
        assert_eq!(
            t.primes_in_range(10.0, 30.0).unwrap(),
            vec![11, 13, 17, 19, 23, 29]
        );
        assert_eq!(t.primes_in_range(7.0, 7.0).unwrap(), Vec::<u64>::new());
    }

    #[test]
    fn primes_in_range_beyond_table_uses_segments() {
        let t = PrimeTable::build(1_000).unwrap();
        let got = t.primes_in_range(999_000.0, 1_000_000.0).unwrap();
        let expected: Vec<u64> = (999_001..=1_000_000)
            .filter(|&n| is_prime_oracle(n))
            .collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn primes_in_range_capacity_errors() {
        let t = PrimeTable::build(10).unwrap();
        // sqrt(10^6) = 1000 > 10: base primes insufficient
        let e = t.primes_in_range(0.0, 1_000_000.0).unwrap_err();
        assert_eq!(e.exit_code(), 3);

        let narrow = Budget {
            max_range_width: 100,
            ..Budget::default()
        };
        let t = PrimeTable::build_with(1_000, narrow).unwrap();
        let e = t.primes_in_range(0.0, 500_000.0).unwrap_err();
        assert_eq!(e.exit_code(), 3);
    }

    #[test]
    fn rough_count_small_values_match_listings() {
        let t = PrimeTable::build(100).unwrap();
        // {1,3,5,7,9}
        assert_eq!(t.rough_count(10, 2.0).unwrap(), 5);
        // z below every prime: nothing is sieved out
        assert_eq!(t.rough_count(10, 1.0).unwrap(), 10);
        // {1,5,7,11,13,17,19,23,25,29}
        assert_eq!(t.rough_count(30, 3.0).unwrap(), 10);
        assert_eq!(t.rough_count(30, 30.0).unwrap(), 1);
        assert_eq!(t.rough_count(1, 2.0).unwrap(), 1);
    }

    #[test]
    fn rough_count_matches_oracle_exhaustively() {
        let t = PrimeTable::build(3_000).unwrap();
        for y in [1u64, 2, 9, 10, 100, 720, 2_500] {
            for z in [1.0, 2.0, 3.0, 4.9, 5.0, 7.3, 11.0, 47.0, 720.0] {
                assert_eq!(
                    t.rough_count(y, z).unwrap(),
                    rough_oracle(y, z),
                    "Phi({}, {})",
                    y,
                    z
                );
            }
        }
    }

    #[test]
    fn rough_count_recursion_band_matches_oracle() {
        // forces the Meissel recursion (z well below sqrt(y))
        let t = PrimeTable::build(200_000).unwrap();
        for (y, z) in [(200_000u64, 13.0), (150_000, 31.0), (99_991, 97.0)] {
            assert_eq!(t.rough_count(y, z).unwrap(), rough_oracle(y, z));
        }
    }

    #[test]
    fn rough_count_halving_identity() {
        let t = PrimeTable::build(10_000).unwrap();
        for y in 1..=500u64 {
            assert_eq!(t.rough_count(y, 2.0).unwrap(), y.div_ceil(2));
        }
    }

    #[test]
    fn rough_count_nonincreasing_in_z() {
        let t = PrimeTable::build(10_000).unwrap();
        let y = 9_973;
        let mut prev = t.rough_count(y, 1.0).unwrap();
        for z in 2..1_000u64 {
            let cur = t.rough_count(y, z as f64).unwrap();
            assert!(cur <= prev, "Phi must not grow as z grows (z={})", z);
            prev = cur;
        }
    }

    #[test]
    fn wheel_base_cases_agree_with_recursion_free_count() {
        for a in 1..=6usize {
            let small = [2u64, 3, 5, 7, 11, 13];
            for x in [0u64, 1, 2, 29, 30, 101, 10_007] {
                let brute = (1..=x)
                    .filter(|&m| small[..a].iter().all(|&p| m % p != 0))
                    .count() as u64;
                assert_eq!(wheel_phi(x, a), brute, "wheel_phi({}, {})", x, a);
            }
        }
    }
}
