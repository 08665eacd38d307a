//! Exact counts of congruence classes in shifted floor sequences, with
//! applications to lattice-point counting in circles and ellipses.
//!
//! For a positive integer `n` and shifts `alpha`, `nu` in `[0, 1)`, the
//! sequence of interest has k-th term `⌊(n − ν)/k + α⌋` for `k = 1..=n`.
//! This crate counts how many terms fall in a given congruence class, both
//! by direct enumeration and by closed-form floor sums, evaluates the
//! asymptotic density of each class, and uses the counts to tally lattice
//! points inside `x² + y² ≤ n`, `x² + xy + y² ≤ n`, and `x² + 2y² ≤ n`.
//!
//! All counting is done in exact arbitrary-precision rational arithmetic;
//! floating point appears only in the asymptotics module.

pub mod asymptotics;
pub mod lattice;
pub mod output;
pub mod rational;
pub mod sequences;
pub mod verify;

pub use rational::Rational;
pub use sequences::{CongruenceClass, SequenceSpec};

/// Errors shared by all modules.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A string could not be parsed as an exact rational.
    #[error("invalid rational literal `{0}` (expected `p/q` or a decimal)")]
    ParseRational(String),
    /// A precondition on an operation's arguments was violated.
    #[error("{0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
