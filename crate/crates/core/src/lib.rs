//! Exact computations for the arithmetic of pure number fields `Q(m^(1/n))`.
//!
//! The crate is organised bottom-up:
//!
//! * [`intsupport`]: valuations, Möbius function, Gauss counts, small-integer helpers.
//! * [`polyalg`]: integer polynomials, finite fields `F_{p^d}`, factorization and
//!   discriminants.
//! * [`polygon`]: φ-adic expansions, principal Newton polygons and residual polynomials.
//! * [`idealfactor`]: Dedekind's criterion and Ore's index theorem at a single prime.
//! * [`monogeny`]: common index divisors and the classification of `x^60 - m`.

pub mod error;
pub mod idealfactor;
pub mod intsupport;
pub mod monogeny;
pub mod polyalg;
pub mod polygon;

pub use error::{Error, Result};
pub use intsupport::{ExtNat, Prime};
pub use polyalg::{FqContext, FqElem, FqPoly, IntPoly};
