//! Exact engine for the almost-Kähler Hodge number h^{0,1} of the
//! Kodaira-Thurston manifold.
//!
//! The manifold is the quotient of R^4 (with the nilpotent group law
//! twisting the z coordinate by x·y) by its integer lattice. It carries a
//! family of almost complex structures J_{a,b} compatible with a symplectic
//! form, and for the associated metrics the space of harmonic (0,1)-forms
//! is finite dimensional with dimension h^{0,1} = h' + h'',
//! where h' counts solutions supported on torus Fourier modes (an exact
//! lattice-point count on a circle of radius d) and h'' counts solutions in
//! the Weil-Brezin sectors (an exact Stokes-type solvability test for a
//! 2x2 linear ODE with linear coefficient growth).
//!
//! Everything in this crate is exact: arbitrary-precision rationals,
//! Gaussian rationals, real quadratic field elements, and a small
//! invariant-form calculus that re-derives the harmonic PDE system from
//! the structure equations. Floating point enters only in the companion
//! spectral crate, which numerically confirms the counts produced here.
//!
//! Module map:
//! - [`numbers`]: `Rational`, `GaussianRational`, `QuadExt` scalars.
//! - [`exterior`]: invariant forms, wedge, exterior derivative, Hodge
//!   star, and the symbolic derivation of the harmonic system.
//! - [`lattice`]: the torus-mode count h' and its brute-force oracle.
//! - [`stokes`]: the Weil-Brezin ODE sectors and the count h''.
//! - [`hodge`]: parameter validation and assembly of h^{0,1} reports.

pub mod error;
pub mod exterior;
pub mod hodge;
pub mod lattice;
pub mod numbers;
pub mod stokes;

pub use error::KtError;
