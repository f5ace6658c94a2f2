//! Exact scalars.
//!
//! Three number types, each closed under the arithmetic the rest of the
//! crate performs on it:
//!
//! - [`Rational`]: arbitrary-precision rational, canonical lowest terms.
//! - [`GaussianRational`]: x + y·i with rational components; the
//!   coefficient field of the invariant-form calculus.
//! - [`QuadExt`]: x + y·sqrt(D) in a real quadratic field, D squarefree;
//!   carries the exact sign test and the "is this a negative integer"
//!   test that decide ODE solvability.
//!
//! Counts that feed a theorem must never leave these types; floating
//! point is confined to the spectral confirmation layer.

mod gaussian;
mod quad;
mod rational;

pub use gaussian::GaussianRational;
pub use quad::QuadExt;
pub use rational::Rational;
