//! Verification laboratory for prime-counting identities.
//!
//! The crate builds exhaustive prime and Ω(n) tables, evaluates both sides
//! of a family of exact floor-logarithm identities with integer arithmetic,
//! measures the empirical error of the Θ/ν/R/η estimators for π(x), checks
//! Dusart's explicit bounds, and exports deterministic CSV/JSON reports.
//!
//! Layout:
//! - [`sieve`]: segmented prime sieve and linear Ω sieve, immutable tables.
//! - [`exact_math`]: integer-exact ⌊log₂(x/n)⌋, fractional parts, Stirling
//!   terms, compensated summation.
//! - [`identities`]: the identity and estimator evaluators.
//! - [`report`]: deterministic serialization of verification output.
//! - [`runner`]: verify/scan/table drivers behind the `primelab` binary.

pub mod exact_math;
pub mod identities;
pub mod report;
pub mod runner;
pub mod sieve;

use thiserror::Error;

/// Error type shared by every fallible operation in the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on an operation argument was violated.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A query landed beyond the limit a table was built for.
    #[error("x = {x} exceeds table limit {limit}")]
    OutOfRange { x: u64, limit: u64 },

    /// A run configuration is unusable (bad range, bad label, budget).
    #[error("configuration error: {0}")]
    Config(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
