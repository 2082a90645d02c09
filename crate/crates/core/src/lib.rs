//! Exact exterior calculus on flat pseudo-Riemannian space, descent
//! decompositions along translation generators, and the resulting splitting of
//! Maxwell's equations into decoupled lower-dimensional sectors.
//!
//! The symbolic modules ([`coeff`], [`exterior`], [`descent`], [`maxwell`]) are
//! exact: every identity is checked by equality of rational polynomials. The
//! [`fdtd`] module is a double-precision Yee solver used to watch the sector
//! decoupling happen dynamically.

pub mod coeff;
pub mod descent;
pub mod error;
pub mod exterior;
pub mod fdtd;
pub mod maxwell;
pub mod random;
pub mod verify;

pub use coeff::{Poly, Rational};
pub use error::*;
pub use exterior::{BasisIndex, Covector, Form, FrameVector, Metric};
