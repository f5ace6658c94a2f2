//! Exact invariant-form calculus: symbolic scalars, the wedge algebra
//! over the complex coframe, the Hodge star, and the derivation of the
//! two-equation harmonic system.

mod derive;
mod form;
mod scalar;
mod star;

pub use derive::{
    derive_harmonic_system, CancellationExhibit, DerivationStep, HarmonicSystem,
    ANTIHOLOMORPHIC_MASK, TOP_MASK,
};
pub use form::{CoframeStructure, Form};
pub use scalar::{FuncSymbol, FuncTerm, Monomial, ScalarExpr, VDir};
pub use star::star;
