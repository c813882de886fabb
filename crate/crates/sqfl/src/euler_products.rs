//! Finite Euler products over primes with rigorous two-sided enclosures.
//!
//! Three product families appear throughout the crate:
//!
//! * `mertens_product`: ∏_{p ≤ y} (1 − 1/p), enclosed by the classical
//!   Rosser–Schoenfeld bounds (e^{−γ}/ln y)(1 ∓ 1/ln²y) for y ≥ 2.
//! * `psi_ratio_product`: ∏_{p ≤ y} (1 − 1/(p+1)), the density lost when
//!   sifting square-free numbers by every prime up to y.  Its enclosure
//!   follows from the Mertens bounds scaled by the ζ(2)-range of
//!   ∏ (1 − 1/p²)^{−1}.
//! * `zeta2_partial`: ∏_{p ≤ y} (1 − 1/p²)^{−1}, a partial product for
//!   ζ(2) that increases from exactly 4/3 at y = 2 towards π²/6.
//!
//! Values are accumulated with a compensated (double-double) product so
//! that tens of thousands of factors lose almost no precision; the
//! single-factor products demanded exactly (for example `zeta2_partial`
//! at y = 2) come out bit-exact.  For callers that need *proof-grade*
//! enclosures rather than an accurate point value, [`product_walk`]
//! carries an outward-rounded [`Interval`] alongside the compensated
//! value and reports both at every prime boundary.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::primes::PrimeTable;
use crate::EULER_GAMMA;
use crate::ZETA2;

/// Which analytic estimate produced the `lower`/`upper` fields of a
/// [`ProductBounds`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundSource {
    /// Rosser–Schoenfeld explicit bounds for ∏ (1 − 1/p).
    RosserSchoenfeld,
    /// The ψ-ratio enclosure obtained by scaling the Mertens bounds with
    /// the ζ(2) partial-product range.
    PsiRatioLemma,
    /// The elementary range [4/3, π²/6) of the ζ(2) partial product.
    Zeta2Range,
}

/// A finite Euler product value together with a rigorous two-sided bound.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ProductBounds {
    /// The boundary of the product (primes p ≤ y participate).
    pub y: f64,
    /// Compensated floating-point value of the product.
    pub value: f64,
    /// Analytic lower bound valid for this y.
    pub lower: f64,
    /// Analytic upper bound valid for this y.
    pub upper: f64,
    /// Which estimate produced `lower`/`upper`.
    pub bound_source: BoundSource,
}

/// Compensated product accumulator: keeps the running product as an
/// unevaluated pair `hi + lo` (a double-double), folding the exact
/// rounding error of every multiplication back into `lo`.
///
/// The relative error after n factors is O(ε) + O(n ε²) instead of the
/// naive O(n ε), so a walk across all primes below 10⁶ stays accurate to
/// the last couple of bits.  A single multiplication of the initial 1.0
/// is exact, which the ζ(2) partial product at y = 2 relies on.
#[derive(Debug, Clone, Copy)]
pub struct CompensatedProduct {
    hi: f64,
    lo: f64,
}

impl CompensatedProduct {
    pub fn new() -> Self {
        CompensatedProduct { hi: 1.0, lo: 0.0 }
    }

    /// Multiply the accumulator by `factor`.
    pub fn mul(&mut self, factor: f64) {
        // two_product via fused multiply-add: p + e == hi * factor exactly.
        let p = self.hi * factor;
        let e = self.hi.mul_add(factor, -p);
        // Fold the old compensation term through the factor as well.
        let lo = self.lo.mul_add(factor, e);
        // Renormalise with a fast two-sum (|p| >= |lo| holds here).
        let s = p + lo;
        self.lo = lo - (s - p);
        self.hi = s;
    }

    /// The correctly renormalised leading component.
    pub fn value(&self) -> f64 {
        self.hi
    }
}

impl Default for CompensatedProduct {
    fn default() -> Self {
        Self::new()
    }
}

fn require_table_covers(y: f64, table: &PrimeTable) -> Result<()> {
    if (table.limit() as f64) < y.floor() {
        return Err(Error::capacity(format!(
            "prime table reaches only {} but the product boundary is {}",
            table.limit(),
            y
        )));
    }
    Ok(())
}

fn require_boundary(y: f64) -> Result<()> {
    if !y.is_finite() || y < 2.0 {
        return Err(Error::domain(format!(
            "product boundary must be a finite number >= 2, got {y}"
        )));
    }
    Ok(())
}

/// Enclosure `(lower, upper)` for the Mertens product at boundary `y`,
/// computed in outward-rounded interval arithmetic so that the returned
/// intervals are guaranteed to contain the exact analytic bounds.
pub fn mertens_bound_intervals(y: f64) -> (Interval, Interval) {
    let ln_y = Interval::around(y.ln(), 2);
    let base = Interval::around(EULER_GAMMA, 1).neg().exp().div(&ln_y);
    let ln_sq = ln_y.mul(&ln_y);
    let one = Interval::exact(1.0);
    let delta = ln_sq.recip();
    let lower = base.mul(&one.sub(&delta));
    let upper = base.mul(&one.add(&delta));
    (lower, upper)
}

/// Enclosure `(lower, upper)` for the ψ-ratio product at boundary `y`:
/// the Mertens enclosure scaled by 4/3 below and by ζ(2) above.
pub fn psi_ratio_bound_intervals(y: f64) -> (Interval, Interval) {
    let (mlow, mup) = mertens_bound_intervals(y);
    let four_thirds = Interval::around(4.0 / 3.0, 1);
    let zeta2 = Interval::around(ZETA2, 1);
    (four_thirds.mul(&mlow), zeta2.mul(&mup))
}

/// ∏_{p ≤ y} (1 − 1/p) with Rosser–Schoenfeld bounds.
///
/// Requires y ≥ 2 and a prime table covering ⌊y⌋.
pub fn mertens_product(y: f64, table: &PrimeTable) -> Result<ProductBounds> {
    require_boundary(y)?;
    require_table_covers(y, table)?;
    let mut acc = CompensatedProduct::new();
    for &p in table.primes_between(1.0, y.min(table.limit() as f64))? {
        acc.mul(1.0 - 1.0 / (p as f64));
    }
    let (lower, upper) = mertens_bound_intervals(y);
    Ok(ProductBounds {
        y,
        value: acc.value(),
        lower: lower.lo,
        upper: upper.hi,
        bound_source: BoundSource::RosserSchoenfeld,
    })
}

/// ∏_{p ≤ y} (1 − 1/(p+1)) with the ψ-ratio enclosure.
///
/// Requires y ≥ 2 and a prime table covering ⌊y⌋.
pub fn psi_ratio_product(y: f64, table: &PrimeTable) -> Result<ProductBounds> {
    require_boundary(y)?;
    require_table_covers(y, table)?;
    let mut acc = CompensatedProduct::new();
    for &p in table.primes_between(1.0, y.min(table.limit() as f64))? {
        acc.mul(1.0 - 1.0 / ((p + 1) as f64));
    }
    let (lower, upper) = psi_ratio_bound_intervals(y);
    Ok(ProductBounds {
        y,
        value: acc.value(),
        lower: lower.lo,
        upper: upper.hi,
        bound_source: BoundSource::PsiRatioLemma,
    })
}

/// ∏_{p ≤ y} (1 − 1/p²)^{−1}, the ζ(2) partial product.
///
/// The value sits in [4/3, π²/6) for every y ≥ 2 and equals 4/3 exactly
/// (in floating point too) at y = 2.  Requires y ≥ 2 and a prime table
/// covering ⌊y⌋.
pub fn zeta2_partial(y: f64, table: &PrimeTable) -> Result<ProductBounds> {
    require_boundary(y)?;
    require_table_covers(y, table)?;
    let mut acc = CompensatedProduct::new();
    for &p in table.primes_between(1.0, y.min(table.limit() as f64))? {
        // p² ≤ 10¹² is exact in f64, so each factor is computed with two
        // correctly rounded operations.
        let p2 = (p * p) as f64;
        acc.mul(1.0 / (1.0 - 1.0 / p2));
    }
    Ok(ProductBounds {
        y,
        value: acc.value(),
        lower: 4.0 / 3.0,
        upper: ZETA2,
        bound_source: BoundSource::Zeta2Range,
    })
}

/// The density ratio ∏_{λ < p ≤ x} (1 − 1/(p+1)) expressed as a quotient
/// of two ψ-ratio products, or as a direct product when fewer than two
/// primes lie below the inner boundary.
///
/// Conventions: a boundary λ ≥ x leaves nothing to sift and yields
/// exactly 1.  Requires a prime table covering ⌊x⌋.
pub fn sieve_density_product(x: f64, lambda: f64, table: &PrimeTable) -> Result<f64> {
    if !x.is_finite() || x < 1.0 {
        return Err(Error::domain(format!(
            "outer boundary must be a finite number >= 1, got {x}"
        )));
    }
    if !lambda.is_finite() || lambda < 0.0 {
        return Err(Error::domain(format!(
            "inner boundary must be a finite nonnegative number, got {lambda}"
        )));
    }
    if lambda >= x {
        return Ok(1.0);
    }
    require_table_covers(x, table)?;
    if lambda >= 3.0 {
        let num = psi_ratio_product(x, table)?;
        let den = psi_ratio_product(lambda, table)?;
        Ok(num.value / den.value)
    } else {
        // With at most one prime below λ the quotient form loses nothing,
        // but the direct product keeps the λ < 2 edge (empty denominator)
        // uniform and factor-exact.
        let mut acc = CompensatedProduct::new();
        for &p in table.primes_between(lambda, x.min(table.limit() as f64))? {
            acc.mul(1.0 - 1.0 / ((p + 1) as f64));
        }
        Ok(acc.value())
    }
}

/// Outcome of checking the sieve-dimension requirement
/// ∏_{η ≤ p ≤ ξ} (1 − 1/(p+1))^{−1} < (ln ξ / ln η)^κ (1 + κ′/ln η)
/// at a single pair of boundaries.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RequirementReport {
    pub eta: f64,
    pub xi: f64,
    pub kappa: f64,
    pub kappa_prime: f64,
    /// Left-hand side: the inverse ψ-ratio product over η ≤ p ≤ ξ.
    pub lhs: f64,
    /// Right-hand side: the dimension bound.
    pub rhs: f64,
    /// rhs − lhs; positive iff the inequality holds.
    pub slack: f64,
    pub pass: bool,
}

/// Evaluate the sieve-dimension requirement at boundaries 2 ≤ η ≤ ξ with
/// dimension parameters (κ, κ′).  Requires a prime table covering ⌊ξ⌋.
pub fn requirement_check(
    eta: f64,
    xi: f64,
    kappa: f64,
    kappa_prime: f64,
    table: &PrimeTable,
) -> Result<RequirementReport> {
    if !eta.is_finite() || !xi.is_finite() || eta < 2.0 || xi < eta {
        return Err(Error::domain(format!(
            "requirement boundaries must satisfy 2 <= eta <= xi, got eta={eta}, xi={xi}"
        )));
    }
    if !kappa.is_finite() || !kappa_prime.is_finite() || kappa <= 0.0 || kappa_prime < 0.0 {
        return Err(Error::domain(format!(
            "dimension parameters must satisfy kappa > 0 and kappa' >= 0, got {kappa}, {kappa_prime}"
        )));
    }
    require_table_covers(xi, table)?;
    let mut acc = CompensatedProduct::new();
    // The product is over the closed range η ≤ p ≤ ξ; primes_between is
    // half-open (a, b], so nudge the left edge just below η.
    for &p in table.primes_between(eta - 0.5, xi.min(table.limit() as f64))? {
        if (p as f64) < eta {
            continue;
        }
        acc.mul(((p + 1) as f64) / (p as f64));
    }
    let lhs = acc.value();
    let ln_eta = eta.ln();
    let ln_xi = xi.ln();
    let rhs = (ln_xi / ln_eta).powf(kappa) * (1.0 + kappa_prime / ln_eta);
    let slack = rhs - lhs;
    Ok(RequirementReport {
        eta,
        xi,
        kappa,
        kappa_prime,
        lhs,
        rhs,
        slack,
        pass: lhs < rhs,
    })
}

/// Walk the primes p ≤ limit in increasing order, multiplying a product
/// factor by factor, and report the state after every prime boundary.
///
/// `factor(p)` must return the point factor and an interval guaranteed to
/// contain the exact factor; the walk maintains a compensated value and
/// an outward-rounded interval enclosure in lockstep and hands both to
/// `visit(p, value, enclosure)`.  This is the building block for
/// verifying analytic bounds at *every* prime up to 10⁶ in one pass.
pub fn product_walk(
    table: &PrimeTable,
    limit: u64,
    mut factor: impl FnMut(u64) -> (f64, Interval),
    mut visit: impl FnMut(u64, f64, Interval),
) -> Result<()> {
    if limit < 2 {
        return Err(Error::domain(format!(
            "product walk needs a limit >= 2, got {limit}"
        )));
    }
    require_table_covers(limit as f64, table)?;
    let mut acc = CompensatedProduct::new();
    let mut enclosure = Interval::exact(1.0);
    for &p in table.primes_between(1.0, limit as f64)? {
        let (f, f_iv) = factor(p);
        acc.mul(f);
        enclosure = enclosure.mul(&f_iv);
        visit(p, acc.value(), enclosure);
    }
    Ok(())
}

/// Point factor and enclosure for the Mertens product at prime p.
pub fn mertens_factor(p: u64) -> (f64, Interval) {
    let pf = p as f64;
    let point = 1.0 - 1.0 / pf;
    let iv = Interval::exact(1.0).sub(&Interval::exact(pf).recip());
    (point, iv)
}

/// Point factor and enclosure for the ψ-ratio product at prime p.
pub fn psi_ratio_factor(p: u64) -> (f64, Interval) {
    let pf = (p + 1) as f64;
    let point = 1.0 - 1.0 / pf;
    let iv = Interval::exact(1.0).sub(&Interval::exact(pf).recip());
    (point, iv)
}

/// Point factor and enclosure for the ζ(2) partial product at prime p.
pub fn zeta2_factor(p: u64) -> (f64, Interval) {
    let p2 = (p * p) as f64;
    let point = 1.0 / (1.0 - 1.0 / p2);
    let iv = Interval::exact(1.0)
        .sub(&Interval::exact(p2).recip())
        .recip();
    (point, iv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primes::PrimeTable;

    fn table(limit: u64) -> PrimeTable {
        PrimeTable::build(limit).expect("table")
    }

    fn assert_close(actual: f64, expected: f64, tol: f64) {
        assert!(
            (actual - expected).abs() <= tol,
            "expected {expected}, got {actual} (tolerance {tol})"
        );
    }

    #[test]
    fn mertens_small_boundaries() {
        let t = table(100);
        // Only the prime 2 participates: the factor 1/2 is exact.
        let m2 = mertens_product(2.0, &t).unwrap();
        assert_eq!(m2.value, 0.5);
        assert_eq!(m2.bound_source, BoundSource::RosserSchoenfeld);
        // Primes 2 and 3: (1/2)(2/3) = 1/3.
        let m3 = mertens_product(3.0, &t).unwrap();
        assert_close(m3.value, 1.0 / 3.0, 1e-15);
        // The classical enclosure at y = 3, evaluated independently:
        // (e^{-gamma}/ln 3)(1 -+ 1/ln^2 3).
        assert_close(m3.lower, 0.0876, 2e-4);
        assert_close(m3.upper, 0.9346, 2e-4);
        assert!(m3.lower < m3.value && m3.value < m3.upper);
    }

    #[test]
    fn mertens_respects_bounds_at_large_boundaries() {
        let t = table(1_000_000);
        for y in [100.0, 10_000.0, 1_000_000.0] {
            let m = mertens_product(y, &t).unwrap();
            assert!(
                m.lower < m.value && m.value < m.upper,
                "bounds violated at y={y}: {} < {} < {}",
                m.lower,
                m.value,
                m.upper
            );
        }
    }

    #[test]
    fn psi_ratio_small_boundaries() {
        let t = table(100);
        let p2 = psi_ratio_product(2.0, &t).unwrap();
        assert_close(p2.value, 2.0 / 3.0, 1e-15);
        assert_eq!(p2.bound_source, BoundSource::PsiRatioLemma);
        let p3 = psi_ratio_product(3.0, &t).unwrap();
        assert_close(p3.value, 0.5, 1e-15);
        assert!(p3.lower < p3.value && p3.value < p3.upper);
    }

    #[test]
    fn zeta2_partial_is_exact_at_two_and_monotone() {
        let t = table(1_000_000);
        let z2 = zeta2_partial(2.0, &t).unwrap();
        // Single factor (1 - 1/4)^{-1} = 4/3 must round-trip bit-exactly.
        assert_eq!(z2.value, 4.0 / 3.0);
        assert_eq!(z2.lower, 4.0 / 3.0);
        assert_eq!(z2.upper, ZETA2);
        assert_eq!(z2.bound_source, BoundSource::Zeta2Range);

        let z3 = zeta2_partial(3.0, &t).unwrap();
        assert_close(z3.value, 1.5, 1e-15);

        // The partial product increases towards zeta(2) and never reaches it.
        let mut prev = 0.0;
        for y in [2.0, 3.0, 10.0, 1_000.0, 1_000_000.0] {
            let z = zeta2_partial(y, &t).unwrap();
            assert!(z.value > prev, "not increasing at y={y}");
            assert!(z.value < ZETA2 + 1e-12, "exceeded zeta(2) at y={y}");
            prev = z.value;
        }
        let z_big = zeta2_partial(1_000_000.0, &t).unwrap();
        assert_close(z_big.value, ZETA2, 1e-5);
    }

    #[test]
    fn product_identity_at_every_prime_boundary() {
        // (1 - 1/(p+1)) == (1 - 1/p) / (1 - 1/p^2)^{-1}^{-1}: the three
        // running products must satisfy psi == mertens * zeta2 at every
        // prime boundary.  Checked in one synchronized walk.
        let t = table(1_000_000);
        let mut mertens = CompensatedProduct::new();
        let mut zeta2 = CompensatedProduct::new();
        let mut psi = CompensatedProduct::new();
        let mut worst = 0.0f64;
        for &p in t.primes_between(1.0, 1_000_000.0).unwrap() {
            mertens.mul(mertens_factor(p).0);
            zeta2.mul(zeta2_factor(p).0);
            psi.mul(psi_ratio_factor(p).0);
            let lhs = mertens.value() * zeta2.value();
            let rel = ((lhs - psi.value()) / psi.value()).abs();
            worst = worst.max(rel);
        }
        // Each prime contributes up to ~3.5 rounded operations across the
        // three factor expressions, so the drift's linear worst case is
        // about 78498 * 3.5 * eps/2 ~ 3e-11; a genuinely wrong factor
        // formula would show up at 1e-6 or worse. Observed ~4e-12.
        assert!(
            worst <= 5e-11,
            "identity drifted to relative error {worst:e}"
        );
    }

    #[test]
    fn density_product_conventions_and_values() {
        let t = table(1_000_000);
        // Inner boundary at or above the outer one: nothing to sift.
        assert_eq!(sieve_density_product(10.0, 10.0, &t).unwrap(), 1.0);
        assert_eq!(sieve_density_product(10.0, 50.0, &t).unwrap(), 1.0);

        // Direct-product oracle over the primes in (lambda, x].
        let oracle = |x: f64, lambda: f64| -> f64 {
            t.primes_between(lambda, x)
                .unwrap()
                .iter()
                .map(|&p| 1.0 - 1.0 / ((p + 1) as f64))
                .product()
        };
        for (x, lambda) in [
            (100.0, 10.0),
            (100.0, 2.0),
            (100.0, 1.5),
            (50_000.0, 130.0),
            (1_000_000.0, 1_000.0),
        ] {
            let got = sieve_density_product(x, lambda, &t).unwrap();
            let want = oracle(x, lambda);
            // The oracle is a naive product, so grant it some drift.
            assert_close(got, want, 5e-11 * want.abs().max(1.0));
        }
    }

    #[test]
    fn density_ratio_tracks_log_ratio() {
        // With lambda(x) = x^{1/2} the density times ln x / ln lambda must
        // stay inside a fixed bracket across the desk-scale range.
        let t = table(1_000_000);
        for exp in 3..=6 {
            let x = 10f64.powi(exp);
            let lambda = x.sqrt();
            let density = sieve_density_product(x, lambda, &t).unwrap();
            let scaled = density * x.ln() / lambda.ln();
            assert!(
                (0.5..=2.5).contains(&scaled),
                "scaled density {scaled} out of bracket at x={x}"
            );
        }
    }

    #[test]
    fn requirement_examples() {
        let t = table(1_000_000);
        // Only p = 2 lies in [2, 2.5]: LHS = (1 - 1/3)^{-1} = 3/2.
        let r = requirement_check(2.0, 2.5, 3.0, 14.0, &t).unwrap();
        assert_close(r.lhs, 1.5, 1e-15);
        assert!(r.pass, "dimension-3 requirement must hold at (2, 2.5)");
        assert!(r.slack > 0.0);

        // A single prime at both ends: eta = xi = 5 gives LHS = 6/5.
        let r5 = requirement_check(5.0, 5.0, 3.0, 14.0, &t).unwrap();
        assert_close(r5.lhs, 1.2, 1e-15);
        assert!(r5.pass);

        // The relaxed parameters hold once xi moves past eta = 2.
        let r12 = requirement_check(2.0, 3.0, 1.0, 5.0, &t).unwrap();
        assert!(r12.pass, "dimension-1 requirement failed at (2, 3)");
    }

    #[test]
    fn requirement_rejects_bad_boundaries() {
        let t = table(100);
        assert!(requirement_check(1.5, 10.0, 3.0, 14.0, &t).is_err());
        assert!(requirement_check(10.0, 5.0, 3.0, 14.0, &t).is_err());
        assert!(requirement_check(2.0, 10.0, 0.0, 14.0, &t).is_err());
    }

    #[test]
    fn boundary_and_capacity_errors() {
        let t = table(100);
        assert!(mertens_product(1.0, &t).is_err());
        assert!(mertens_product(f64::NAN, &t).is_err());
        let err = mertens_product(1_000.0, &t).unwrap_err();
        assert_eq!(err.exit_code(), 3, "undersized table must be a capacity error");
    }

    #[test]
    fn walk_matches_direct_products() {
        let t = table(10_000);
        let mut last = (0u64, 0.0f64);
        product_walk(&t, 10_000, psi_ratio_factor, |p, v, iv| {
            assert!(
                iv.contains(v),
                "enclosure lost the compensated value at p={p}"
            );
            last = (p, v);
        })
        .unwrap();
        let direct = psi_ratio_product(10_000.0, &t).unwrap();
        assert_eq!(last.1, direct.value);
        assert_eq!(last.0, 9_973);
    }

    #[test]
    fn walk_enclosures_stay_tight() {
        let t = table(1_000_000);
        let mut widest = 0.0f64;
        product_walk(&t, 1_000_000, zeta2_factor, |_p, v, iv| {
            widest = widest.max(iv.width() / v);
        })
        .unwrap();
        // 78k outward-rounded multiplications should cost ~1e-11 relative
        // width, far below any bound margin used in the acceptance checks.
        assert!(widest < 1e-9, "enclosure width blew up to {widest:e}");
    }

    #[test]
    fn compensated_product_matches_exact_rational_oracle() {
        // Multiply factors that are awkward in binary and compare against
        // the exact product computed in arbitrary-precision rationals.
        use num::rational::Ratio;
        use num::BigInt;
        use num::ToPrimitive;

        let mut comp = CompensatedProduct::new();
        let mut exact = Ratio::<BigInt>::from_integer(1.into());
        let mut true_ratio = Ratio::<BigInt>::from_integer(1.into());
        for k in 1i64..=800 {
            // (1 - 1/(p_k+1)) stand-in with a dense mix of denominators.
            let factor = 1.0 - 1.0 / ((3 * k + 1) as f64);
            comp.mul(factor);
            // Oracle over the factors actually multiplied: isolates the
            // product's own error from the rounding of each factor.
            exact *= Ratio::<BigInt>::from_float(factor).unwrap();
            true_ratio *= Ratio::new(BigInt::from(3 * k), BigInt::from(3 * k + 1));
        }
        let want = exact.to_f64().expect("rational fits in f64");
        let rel = ((comp.value() - want) / want).abs();
        // The double-double product of given f64 factors carries
        // O(n * eps^2) representation error plus one final rounding.
        assert!(rel <= 3e-16, "compensated error {rel:e}");
        // Against the true rationals the ~1-ulp rounding of each factor
        // dominates; a random walk over 800 factors stays well inside
        // the linear worst case of 800 * eps.
        let want_true = true_ratio.to_f64().expect("rational fits in f64");
        let rel_true = ((comp.value() - want_true) / want_true).abs();
        assert!(rel_true <= 5e-15, "drift vs true rationals {rel_true:e}");
    }
}
