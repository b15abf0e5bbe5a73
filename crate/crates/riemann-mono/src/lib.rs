//! Riemann-sum variants on `[0, 1]`: evaluation, monotonicity certification,
//! and exact decision procedures for rational polynomials.
//!
//! The crate is organised around one question: given a function `f` on
//! `[0, 1]` and a Riemann-sum variant `S_n(f)` (left, right, midpoint,
//! trapezium, shifted, generalized-node, ...), is the sequence
//! `n ↦ S_n(f)` monotone?
//!
//! Three kinds of answers are provided, in increasing order of rigour:
//!
//! * **Numeric scans** ([`sums`]): evaluate `S_1, ..., S_N` with compensated
//!   summation and report the observed direction together with every
//!   violation.
//! * **Certificates** ([`certify`]): a rule engine that checks the
//!   hypotheses of classical monotonicity theorems (Fejér; Szegő–Turán;
//!   Qi; Qi–Guo; Bennett–Jameson; Borwein; and refinements based on
//!   symmetrization and Fourier coefficients) and emits auditable
//!   [`certify::Certificate`]s.
//! * **Exact decisions** ([`polyexact`]): for polynomials with rational
//!   coefficients, each classical sum variant is a rational function of
//!   `n`. Closed forms are produced via Faulhaber's formula and the sign
//!   of the forward difference is decided exactly with Sturm-sequence
//!   root isolation — a complete decision procedure, no tolerances.
//!
//! Supporting modules: [`funcspec`] (a small language of function
//! specifications: rational polynomials, the rational family
//! `f_b(x) = 1/(1 - bx + x²)`, cosine series, black boxes, and
//! reflect/negate/affine-sum combinators), [`majorize`] (weak
//! supermajorization and a Hardy–Littlewood–Pólya-style stochastic
//! oracle), [`fourier`] (sum evaluation straight from cosine
//! coefficients), and [`fb`] (a numeric laboratory for the `f_b` family:
//! distinguished constants, closed forms, scans, and the inequality
//! chain behind the monotonicity of `R_n(f_1)`).

pub mod certify;
pub mod fb;
pub mod fourier;
pub mod funcspec;
pub mod majorize;
pub mod polyexact;
pub mod sums;

use thiserror::Error;

/// Crate-wide error type.
///
/// Every fallible operation returns `Result<T, Error>`; the variants keep
/// enough context to render a useful one-line diagnostic.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// An argument left the mathematical domain of an operation
    /// (e.g. evaluation outside `[0, 1]`, a central sum at `n = 1`).
    #[error("domain error: {0}")]
    Domain(String),

    /// A parameter of a function specification is invalid
    /// (e.g. `f_b` with `b ≥ 2`).
    #[error("parameter error: {0}")]
    Parameter(String),

    /// A polynomial exceeded the supported degree for exact sums.
    #[error("degree {degree} exceeds the supported limit {limit}")]
    DegreeLimit { degree: usize, limit: usize },

    /// Two vectors that must have equal lengths do not.
    #[error("length mismatch: {0}")]
    LengthMismatch(String),

    /// A series could not be summed to the requested accuracy with the
    /// available tail bound.
    #[error("tail bound failure: {0}")]
    TailBound(String),

    /// A verification routine found a genuine mismatch (not a usage
    /// error): e.g. a concavity classification that disagrees with a
    /// direct grid probe.
    #[error("verification failure: {0}")]
    Verification(String),

    /// Textual input (spec grammar, sum-kind name, CLI argument) could
    /// not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
