//! Computation and verification engine for the finite data of skeletal
//! unitary (pre-)modular tensor categories: fusion rings, F/R symbols,
//! twists, S/T matrices, Müger centralizers, prime factorization, hexagon
//! solving, and trivial-pairing / comparability checks between fusion
//! subcategories.
//!
//! All data is multiplicity-free (every fusion coefficient is 0 or 1 at the
//! level of F/R tables) and numeric, with a single global tolerance
//! [`DEFAULT_TOL`] for equality of doubles.

pub mod bundle;
pub mod catalog;
pub mod category;
pub mod fusion;
pub mod lattice;
pub mod modular;
pub mod points;
pub mod report;
pub mod solver;
pub mod tensor;

pub use num_complex::Complex64 as C64;

/// Global tolerance for numeric equality. Every shipped category has entries
/// that are exact algebraic numbers representable far above this precision.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Tolerance resolution: the `UMTC_TOL` environment variable overrides the
/// default when set to a positive finite double.
pub fn tolerance() -> f64 {
    std::env::var("UMTC_TOL")
        .ok()
        .and_then(|s| s.parse::<f64>().ok())
        .filter(|t| t.is_finite() && *t > 0.0)
        .unwrap_or(DEFAULT_TOL)
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Malformed input shape (rank mismatch, negative coefficient, bad index).
    #[error("structural error: {0}")]
    Structural(String),
    /// A ring axiom is violated; distinct from structural malformation.
    #[error("invalid fusion ring: {0}")]
    InvalidRing(String),
    #[error("incomplete {kind} table: missing admissible entry at {key:?}")]
    IncompleteTable { kind: &'static str, key: Vec<usize> },
    #[error("invalid gauge: {0}")]
    InvalidGauge(String),
    #[error("missing data: {0}")]
    MissingData(String),
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("solver incomplete: {0}")]
    SolverIncomplete(String),
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
    #[error("ordering error: {0}")]
    Ordering(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
