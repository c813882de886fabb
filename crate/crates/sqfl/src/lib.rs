//! Counting and Euler-product toolkit for square-free numbers generated
//! from bounded prime sets.
//!
//! The library studies the square-free integers up to `x` whose prime
//! factors all lie below a threshold `lambda(x) = C * x^epsilon`, together
//! with the sieve that produces them: exact counts, inclusion-exclusion
//! identities, two-sided Euler-product enclosures, and the local factors of
//! the associated Dirichlet series.
//!
//! The primary interface is the `examples/` directory; each example is a
//! runnable tour of one capability:
//!
//! ```text
//! cargo run --example count_squarefree      # Q(x): exact count, main term, residual
//! cargo run --example sieve_identity        # inclusion-exclusion vs direct enumeration
//! cargo run --example rough_numbers         # Phi(y, z) tables
//! cargo run --example euler_product_bounds  # Mertens / psi-ratio / zeta(2) enclosures
//! cargo run --example sieve_requirement     # (ln xi / ln eta)^kappa sieve requirement
//! cargo run --example local_factors         # Dirichlet series local coefficients, F and G
//! cargo run --example coefficient_bound     # sup constant M and the 2^(nu/2) Cauchy bound
//! cargo run --example generated_count_scan  # Q_P(x) * ln x / (x ln lambda) across grids
//! cargo run --example residual_scans        # residual envelopes for the A_d counts
//! cargo run --example tail_sums             # Abel-summed divisor tails and A(y) sandwich
//! ```
//!
//! A thin binary `sqfl` exposes the same operations as subcommands for
//! scripting; see the README for the full list.
//!
//! Numeric conventions used throughout:
//!
//! - counts are exact `u64` values produced by integer arithmetic;
//! - `n = 1` is square-free, has no prime factors (omega(1) = 0), and its
//!   least prime factor is treated as +infinity, so it is counted by every
//!   rough/smooth/divisor count;
//! - floating-point reference values are `f64`, with rigorous bound checks
//!   done in outward-rounded interval arithmetic.

pub mod cli;
pub mod counting;
pub mod error;
pub mod euler_products;
pub mod interval;
pub mod multiplicative;
pub mod primes;
pub mod report;
pub mod scans;
pub mod selberg_delange;

pub use error::{Error, Result};

/// Euler-Mascheroni constant, 17 significant digits.
pub const EULER_GAMMA: f64 = 0.57721566490153286;

/// zeta(2) = pi^2 / 6, 17 significant digits.
pub const ZETA2: f64 = 1.6449340668482264;
