//! Tiny outward-rounded interval arithmetic.
//!
//! Rust offers no control over the FPU rounding mode, so every operation is
//! computed in round-to-nearest and then widened outward by a couple of ulps.
//! For the basic IEEE operations (+, -, *, /) one ulp is enough; `ln`/`exp`
//! from the system libm are not guaranteed correctly rounded, so results that
//! pass through them are widened by two ulps. The invariant maintained
//! throughout: the true real value always lies inside `[lo, hi]`.
//!
//! This is deliberately minimal: positive-leaning helpers for enclosing Euler
//! products and the analytic bound expressions they are compared against.

/// Closed interval `[lo, hi]` with `lo <= hi`, both finite unless stated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

fn step_down(x: f64, steps: u32) -> f64 {
    let mut v = x;
    for _ in 0..steps {
        v = v.next_down();
    }
    v
}

fn step_up(x: f64, steps: u32) -> f64 {
    let mut v = x;
    for _ in 0..steps {
        v = v.next_up();
    }
    v
}

impl Interval {
    /// Exact point interval; use for values known to be exactly representable
    /// (small integers, powers of two).
    pub fn exact(v: f64) -> Interval {
        debug_assert!(v.is_finite());
        Interval { lo: v, hi: v }
    }

    /// Interval for a value computed in round-to-nearest with at most
    /// `ulps` ulps of error.
    pub fn around(v: f64, ulps: u32) -> Interval {
        debug_assert!(v.is_finite());
        Interval {
            lo: step_down(v, ulps),
            hi: step_up(v, ulps),
        }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }

    /// True when every point of `self` is strictly below every point of `rhs`.
    pub fn strictly_below(&self, rhs: &Interval) -> bool {
        self.hi < rhs.lo
    }

    /// Negation is exact in IEEE arithmetic.
    pub fn neg(&self) -> Interval {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }

    pub fn add(&self, rhs: &Interval) -> Interval {
        Interval {
            lo: step_down(self.lo + rhs.lo, 1),
            hi: step_up(self.hi + rhs.hi, 1),
        }
    }

    pub fn sub(&self, rhs: &Interval) -> Interval {
        Interval {
            lo: step_down(self.lo - rhs.hi, 1),
            hi: step_up(self.hi - rhs.lo, 1),
        }
    }

    pub fn mul(&self, rhs: &Interval) -> Interval {
        let cands = [
            self.lo * rhs.lo,
            self.lo * rhs.hi,
            self.hi * rhs.lo,
            self.hi * rhs.hi,
        ];
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for c in cands {
            lo = lo.min(c);
            hi = hi.max(c);
        }
        Interval {
            lo: step_down(lo, 1),
            hi: step_up(hi, 1),
        }
    }

    /// Reciprocal; requires the interval not to straddle zero.
    pub fn recip(&self) -> Interval {
        assert!(
            self.lo > 0.0 || self.hi < 0.0,
            "interval reciprocal across zero"
        );
        Interval {
            lo: step_down(1.0 / self.hi, 1),
            hi: step_up(1.0 / self.lo, 1),
        }
    }

    pub fn div(&self, rhs: &Interval) -> Interval {
        self.mul(&rhs.recip())
    }

    /// Natural log; requires `lo > 0`. Widened two ulps for libm slack.
    pub fn ln(&self) -> Interval {
        assert!(self.lo > 0.0, "interval ln of nonpositive value");
        Interval {
            lo: step_down(self.lo.ln(), 2),
            hi: step_up(self.hi.ln(), 2),
        }
    }

    /// Exponential, widened two ulps for libm slack.
    pub fn exp(&self) -> Interval {
        Interval {
            lo: step_down(self.lo.exp(), 2),
            hi: step_up(self.hi.exp(), 2),
        }
    }

    /// Integer power via repeated interval multiplication.
    pub fn powi(&self, n: u32) -> Interval {
        let mut acc = Interval::exact(1.0);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_arithmetic_encloses_true_values() {
        let a = Interval::exact(2.0);
        let b = Interval::around(1.0 / 3.0, 1);
        assert!(b.contains(1.0 / 3.0));
        let s = a.add(&b);
        assert!(s.lo < 2.0 + 1.0 / 3.0 && 2.0 + 1.0 / 3.0 < s.hi);
        let p = a.mul(&b);
        assert!(p.contains(2.0 / 3.0));
    }

    #[test]
    fn reciprocal_flips_endpoints() {
        let a = Interval { lo: 2.0, hi: 4.0 };
        let r = a.recip();
        assert!(r.lo <= 0.25 && r.hi >= 0.5);
        assert!(r.lo > 0.2 && r.hi < 0.6);
    }

    #[test]
    fn ln_exp_round_trip_widens_but_contains() {
        let a = Interval::around(0.75, 1);
        let round = a.ln().exp();
        assert!(round.contains(0.75));
        assert!(round.width() < 1e-14);
    }

    #[test]
    fn strict_ordering_detects_overlap() {
        let a = Interval { lo: 1.0, hi: 2.0 };
        let b = Interval { lo: 2.5, hi: 3.0 };
        let c = Interval { lo: 1.5, hi: 2.6 };
        assert!(a.strictly_below(&b));
        assert!(!a.strictly_below(&c));
    }

    #[test]
    fn powi_matches_repeated_multiplication() {
        let a = Interval::around(1.1, 1);
        let p = a.powi(3);
        assert!(p.contains(1.1f64 * 1.1 * 1.1));
    }
}
