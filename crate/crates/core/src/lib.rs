//! Prime counting, Chebyshev's ψ, and mechanical verification of explicit
//! inequalities for π(x) and ψ(x).
//!
//! The crate is layered bottom-up:
//!
//! * [`primes`] computes π exactly (segmented sieve tables and Legendre point
//!   queries) and ψ with compensated summation.
//! * [`bounds`] holds the closed family of analytic bound expressions and
//!   evaluates them with a conservative rounding-error estimate.
//! * [`scan`] checks an inequality between a step function and a bound for
//!   every real argument in a range, and locates crossover points.
//! * [`claims`] encodes each numerical statement as a runnable [`claims::Claim`]
//!   and aggregates verdicts into a [`claims::Report`].

pub mod bounds;
pub mod claims;
mod error;
pub mod primes;
pub mod scan;
pub mod sum;

pub use error::{Error, Result};
