//! Exact counting functions for square-free numbers under prime-factor
//! constraints, and the inclusion-exclusion sieve that ties them together.
//!
//! The central objects, for a threshold function lambda(x) = C * x^epsilon:
//!
//! - `P`   : the primes up to lambda(x) ("generating" primes),
//! - `P'`  : the primes in (lambda(x), x] ("sifting" primes),
//! - `Q(x)`: all square-free n <= x,
//! - `A_d` : square-free n <= x divisible by d,
//! - `Q_P(x)`: square-free n <= x whose prime factors all lie in P,
//! - `A(y)`: n <= y dividing the product of the sifting primes.
//!
//! Every count is exact 64-bit integer arithmetic; floating point enters
//! only through the analytic main terms placed next to the exact values.

use crate::error::{Error, Result};
use crate::multiplicative::signed_divisors;
use crate::primes::{mobius_sieve_upto, PrimeTable};
use crate::ZETA2;
use serde::Serialize;
use std::borrow::Cow;

/// Threshold family lambda(x) = coefficient * x^exponent, exponent in (0,1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LambdaSpec {
    pub coefficient: f64,
    pub exponent: f64,
}

impl LambdaSpec {
    pub fn new(coefficient: f64, exponent: f64) -> Result<LambdaSpec> {
        if !coefficient.is_finite() || coefficient <= 0.0 {
            return Err(Error::domain("lambda coefficient must be positive"));
        }
        if !exponent.is_finite() || exponent <= 0.0 || exponent >= 1.0 {
            return Err(Error::domain(
                "lambda exponent must lie strictly between 0 and 1",
            ));
        }
        Ok(LambdaSpec {
            coefficient,
            exponent,
        })
    }

    /// lambda(x); monotone increasing in x for any valid spec.
    pub fn eval(&self, x: f64) -> f64 {
        self.coefficient * x.powf(self.exponent)
    }
}

/// An exact count next to its analytic main term.
/// `residual` is exactly `exact - main_term` by construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CountBreakdown {
    pub exact: u64,
    pub main_term: f64,
    pub residual: f64,
}

impl CountBreakdown {
    fn new(exact: u64, main_term: f64) -> CountBreakdown {
        CountBreakdown {
            exact,
            main_term,
            residual: exact as f64 - main_term,
        }
    }
}

/// The prime split at a given x: P = primes <= lambda(x), P' = the rest up
/// to x. Holds borrowed slices into the backing table.
#[derive(Debug, Clone)]
pub struct SiftingContext<'a> {
    x: f64,
    lambda: LambdaSpec,
    lambda_value: f64,
    p: &'a [u64],
    p_prime: &'a [u64],
    table: &'a PrimeTable,
}

impl<'a> SiftingContext<'a> {
    /// Requires the table to cover [2, x]; the split is P = primes <=
    /// min(lambda(x), x) and P' = primes in (lambda(x), x], so the two parts
    /// partition the primes up to x.
    pub fn new(x: f64, lambda: LambdaSpec, table: &'a PrimeTable) -> Result<SiftingContext<'a>> {
        if !x.is_finite() || x < 1.0 {
            return Err(Error::domain("sifting context needs x >= 1"));
        }
        if (table.limit() as f64) < x.floor() {
            return Err(Error::capacity(format!(
                "sifting context at x = {} needs primes to {}, table stops at {}",
                x,
                x.floor(),
                table.limit()
            )));
        }
        let lambda_value = lambda.eval(x);
        let p = table.primes_between(1.0, lambda_value.min(x))?;
        let p_prime = table.primes_between(lambda_value, x)?;
        Ok(SiftingContext {
            x,
            lambda,
            lambda_value,
            p,
            p_prime,
            table,
        })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn lambda(&self) -> &LambdaSpec {
        &self.lambda
    }

    pub fn lambda_value(&self) -> f64 {
        self.lambda_value
    }

    /// Generating primes: all primes <= min(lambda(x), x).
    pub fn p(&self) -> &[u64] {
        self.p
    }

    /// Sifting primes: all primes in (lambda(x), x].
    pub fn p_prime(&self) -> &[u64] {
        self.p_prime
    }

    pub fn table(&self) -> &PrimeTable {
        self.table
    }
}

/// Mobius values on [0, upto], borrowing the table's side table when it
/// covers the range and sieving locally otherwise. The local range is
/// sqrt-sized in every caller, so the fallback stays cheap.
fn mobius_upto<'a>(table: &'a PrimeTable, upto: u64) -> Result<Cow<'a, [i8]>> {
    if let Some(mu) = table.mobius_table() {
        if upto <= table.limit() {
            return Ok(Cow::Borrowed(&mu[..=(upto as usize)]));
        }
    }
    if upto > (1 << 28) {
        return Err(Error::capacity(format!(
            "mobius range {} too large to sieve on the fly",
            upto
        )));
    }
    Ok(Cow::Owned(mobius_sieve_upto(upto)))
}

/// Q(x): square-free integers up to x, counted exactly by the classical
/// identity  Q(x) = sum over l <= sqrt(x) of mu(l) * floor(x / l^2),
/// with main term x / zeta(2).
pub fn count_squarefree(x: f64, table: &PrimeTable) -> Result<CountBreakdown> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::domain("count_squarefree needs x >= 0"));
    }
    let xi = x.floor() as u64;
    let root = xi.isqrt();
    if table.limit() < root {
        return Err(Error::capacity(format!(
            "count_squarefree({}) needs primes to {}, table stops at {}",
            x,
            root,
            table.limit()
        )));
    }
    let mu = mobius_upto(table, root)?;
    let mut acc: i64 = 0;
    for l in 1..=root {
        let m = mu[l as usize];
        if m != 0 {
            acc += m as i64 * (xi / (l * l)) as i64;
        }
    }
    debug_assert!(acc >= 0);
    Ok(CountBreakdown::new(acc as u64, x / ZETA2))
}

/// |A_d|: square-free integers n <= x with d | n, for square-free d.
///
/// Writing n = d * m forces gcd(m, d) = 1 and m square-free, so the exact
/// count is  sum over m <= x/d, gcd(m, d) = 1 of mu(m)^2,  evaluated by
/// expanding mu(m)^2 = sum over l^2 | m of mu(l) and counting coprime
/// residues with the divisors of d. Cost scales with sqrt(x/d) * 2^omega(d),
/// never with x. Main term: x / (zeta(2) * psi(d)).
pub fn count_ad(x: f64, d: u64, table: &PrimeTable) -> Result<CountBreakdown> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::domain("count_ad needs x >= 0"));
    }
    if d == 0 {
        return Err(Error::domain("count_ad needs d >= 1"));
    }
    let divisors = signed_divisors(table, d)?; // also rejects non-square-free d
    let psi: u64 = divisors.iter().map(|&(q, _)| q).sum(); // psi(d) = sum of divisors of square-free d
    let y = (x.floor() as u64) / d;
    let root = y.isqrt();
    let mu = mobius_upto(table, root)?;
    let mut acc: i64 = 0;
    for l in 1..=root {
        let m = mu[l as usize];
        if m == 0 || num::integer::gcd(l, d) != 1 {
            continue;
        }
        let yl = y / (l * l);
        let mut inner: i64 = 0;
        for &(q, sign) in &divisors {
            if q > yl {
                break;
            }
            inner += sign as i64 * (yl / q) as i64;
        }
        acc += m as i64 * inner;
    }
    debug_assert!(acc >= 0);
    let main = x / (ZETA2 * psi as f64);
    Ok(CountBreakdown::new(acc as u64, main))
}

/// Q_P(x): square-free integers up to x all of whose prime factors lie in
/// the given ascending prime set. The empty product 1 always counts, so the
/// result is at least 1 whenever x >= 1.
///
/// Depth-first enumeration in ascending prime order with branch-and-bound
/// pruning: a branch closes as soon as the running product cannot accept
/// the next prime. The visit order is deterministic.
pub fn count_qp(x: f64, p: &[u64]) -> Result<u64> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::domain("count_qp needs x >= 0"));
    }
    if x < 1.0 {
        return Ok(0);
    }
    let bound = x.floor() as u64;
    let mut count: u64 = 0;
    fn dfs(primes: &[u64], bound: u64, start: usize, product: u64, count: &mut u64) {
        *count += 1;
        for i in start..primes.len() {
            let p = primes[i];
            if p > bound / product {
                break;
            }
            dfs(primes, bound, i + 1, product * p, count);
        }
    }
    dfs(p, bound, 0, 1, &mut count);
    Ok(count)
}

/// One divisor of the sifting-prime product, as seen by the enumerator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PDivisor {
    pub d: u64,
    pub mobius: i8,
    pub omega: u32,
}

/// Depth-first walk over the divisors d <= bound of the product of the
/// sifting primes, calling `f(d, mu(d), omega(d))` in tree (pre-)order.
/// Returns how many divisors were visited; exceeding `cap` aborts with a
/// capacity error so runaway enumerations fail loudly instead of thrashing.
fn visit_p_divisors(
    p_prime: &[u64],
    bound: u64,
    cap: u64,
    f: &mut impl FnMut(u64, i8, u32) -> Result<()>,
) -> Result<u64> {
    fn dfs(
        primes: &[u64],
        bound: u64,
        cap: u64,
        start: usize,
        d: u64,
        mu: i8,
        om: u32,
        count: &mut u64,
        f: &mut impl FnMut(u64, i8, u32) -> Result<()>,
    ) -> Result<()> {
        *count += 1;
        if *count > cap {
            return Err(Error::capacity(format!(
                "divisor enumeration exceeded the cap of {} terms (the divisor count A({}) is larger)",
                cap, bound
            )));
        }
        f(d, mu, om)?;
        for i in start..primes.len() {
            let p = primes[i];
            if p > bound / d {
                break;
            }
            dfs(primes, bound, cap, i + 1, d * p, -mu, om + 1, count, f)?;
        }
        Ok(())
    }
    let mut count = 0u64;
    if bound >= 1 {
        dfs(p_prime, bound, cap, 0, 1, 1, 0, &mut count, f)?;
    }
    Ok(count)
}

/// S(A, P', x): the square-free n <= x with no prime factor among the
/// sifting primes, evaluated by exact inclusion-exclusion
/// sum over d | P(x), d <= x of mu(d) * |A_d|.
/// Equals `count_qp(x, ctx.p())` exactly; the acceptance suite pins that.
pub fn sifted_count(ctx: &SiftingContext, cap: u64) -> Result<u64> {
    let bound = ctx.x.floor() as u64;
    let mut acc: i128 = 0;
    visit_p_divisors(ctx.p_prime, bound, cap, &mut |d, mu, _| {
        let ad = count_ad(ctx.x, d, ctx.table)?.exact;
        acc += mu as i128 * ad as i128;
        Ok(())
    })?;
    u64::try_from(acc).map_err(|_| {
        Error::domain("inclusion-exclusion produced a negative count; internal invariant broken")
    })
}

/// A(y): integers n <= y dividing the product of the sifting primes
/// (square-free with all prime factors in P'), n = 1 included. Requires
/// y <= x so membership is decided by the context's own prime split.
pub fn count_a(y: f64, ctx: &SiftingContext, cap: u64) -> Result<u64> {
    if !y.is_finite() || y < 0.0 {
        return Err(Error::domain("count_a needs y >= 0"));
    }
    if y > ctx.x {
        return Err(Error::domain(format!(
            "count_a: y = {} exceeds the context bound x = {}",
            y, ctx.x
        )));
    }
    if y < 1.0 {
        return Ok(0);
    }
    visit_p_divisors(ctx.p_prime, y.floor() as u64, cap, &mut |_, _, _| Ok(()))
}

/// Materialized divisor stream (d, mu, omega) in DFS tree order, capped.
pub fn enumerate_p_divisors(
    ctx: &SiftingContext,
    bound: f64,
    cap: u64,
) -> Result<Vec<PDivisor>> {
    if !bound.is_finite() || bound < 0.0 {
        return Err(Error::domain("enumerate_p_divisors needs bound >= 0"));
    }
    let mut out = Vec::new();
    if bound >= 1.0 {
        visit_p_divisors(ctx.p_prime, bound.floor() as u64, cap, &mut |d, mu, om| {
            out.push(PDivisor {
                d,
                mobius: mu,
                omega: om,
            });
            Ok(())
        })?;
    }
    Ok(out)
}

/// Abel-weighted tail sum over sifting divisors:
/// S_c = sum over d | P(x), x^epsilon < d <= x of exp(-c * sqrt(ln(x/d))) / d.
/// Lives here rather than in the scan layer because it shares the divisor
/// enumerator; the scan layer wraps it into reports.
pub fn abel_tail_sum(x: f64, epsilon: f64, c: f64, ctx: &SiftingContext, cap: u64) -> Result<f64> {
    if !epsilon.is_finite() || epsilon <= 0.0 {
        return Err(Error::domain("abel_tail_sum needs epsilon > 0"));
    }
    if !c.is_finite() || c <= 0.0 {
        return Err(Error::domain("abel_tail_sum needs c > 0"));
    }
    if (x - ctx.x).abs() > f64::EPSILON * x.abs() {
        return Err(Error::domain(
            "abel_tail_sum: x must match the sifting context",
        ));
    }
    if epsilon >= 1.0 {
        return Ok(0.0);
    }
    let cutoff = x.powf(epsilon);
    let mut sum = 0.0f64;
    let mut comp = 0.0f64; // Kahan correction
    visit_p_divisors(ctx.p_prime, x.floor() as u64, cap, &mut |d, _, _| {
        let df = d as f64;
        if df > cutoff {
            let term = (-c * (x / df).ln().max(0.0).sqrt()).exp() / df;
            let t = sum + term;
            comp += if sum.abs() >= term.abs() {
                (sum - t) + term
            } else {
                (term - t) + sum
            };
            sum = t;
        }
        Ok(())
    })?;
    Ok(sum + comp)
}
