//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KtError {
    /// Malformed textual input (rationals, quadratic field elements,
    /// sweep grid lines).
    #[error("parse error: {0}")]
    Parse(String),

    /// Structurally valid input that violates a domain constraint
    /// (d <= 0, sqrt(rho) <= 0, zero denominator, bad sector index, ...).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The Hodge star is only defined here on forms of pure degree.
    #[error("hodge star requires a homogeneous form, got mixed degrees")]
    NonHomogeneous,

    /// A derived equation does not have the first-order linear shape the
    /// Fourier-sector reduction understands.
    #[error("sector reduction: {0}")]
    SectorReduction(String),
}
