//! Exact engine for pattern-occurrence betting games on random words.
//!
//! For a fair `m`-letter die rolled `n` times and two equal-length pattern
//! sets `A` (Alice's) and `B` (Bob's), this crate computes the exact
//! probabilities that `A`'s occurrence count exceeds `B`'s, that `B`'s
//! exceeds `A`'s, and that they tie.  The machinery is fully exact:
//!
//! * [`tripoly`] — sparse integer polynomials and rational functions in the
//!   three formal variables `x`, `a`, `b`;
//! * [`linalg`] — fraction-free (Bareiss-style) linear solving over
//!   polynomial matrices;
//! * [`pattern`] — pattern sets, occurrence counting and the brute-force
//!   enumeration oracle;
//! * [`gf`] — the weight-enumerator `F(x; a, b)` via the cluster method and
//!   via the transfer-matrix construction;
//! * [`series`] — the specialization `F(x; t, 1/t)`, its Laurent
//!   coefficients `f_n(t)` and exact game verdicts;
//! * [`recurrence`] — guess-and-verify discovery of linear recurrences with
//!   polynomial coefficients, plus fast exact iteration;
//! * [`asymptotics`] — estimation of the constants in
//!   `Pr(win) = 1/2 - c/sqrt(n)` and counter-bet rankings.
//!
//! Coefficient-carrying types are generic over the scalar ring (see
//! [`coeff::Coeff`]); the concrete instantiations used throughout are the
//! exact [`Int`] and [`Rat`] aliases below.

pub mod asymptotics;
pub mod coeff;
mod error;
pub mod gf;
pub mod laurent;
pub mod linalg;
pub mod pattern;
pub mod rational;
pub mod recurrence;
pub mod series;
pub mod tripoly;

pub use error::Error;

/// Arbitrary-precision integer scalar.
pub type Int = num_bigint::BigInt;
/// Arbitrary-precision rational scalar, always kept in lowest terms.
pub type Rat = num_rational::BigRational;

/// Laurent polynomial in `t` with integer coefficients.
pub type LaurentInt = laurent::LaurentPoly<Int>;
/// Laurent polynomial in `t` with rational coefficients.
pub type LaurentRat = laurent::LaurentPoly<Rat>;
