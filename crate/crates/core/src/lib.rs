//! Exact semistability calculus for representations of oriented-tree quivers.
//!
//! The crate is `no_std` and needs only `alloc`. All arithmetic is exact:
//! rationals are arbitrary-precision and finite fields are prime fields.
//!
//! Module map:
//! - [`exactpoly`]: rationals and rational polynomials with lexicographic order.
//! - [`quiver`]: tree quivers, stars, subquivers and the splittings used by
//!   the stability constructions.
//! - [`linalg`]: a small field abstraction, matrices and subspaces.
//! - [`weights`]: one-parameter subgroups, the Hilbert-Mumford weight and
//!   flag weights.
//! - [`decomp`]: decomposition of weights into basic pieces along an arrow and
//!   the coupling of those decompositions over a tree.
//! - [`kingrep`]: King stability for quiver representations, Jordan-Hölder
//!   factors and the Hilbert-Mumford cross-check.
//! - [`sheafcalc`]: the numerical layer for twisted quiver sheaves.

#![no_std]

extern crate alloc;

pub mod decomp;
pub mod error;
pub mod exactpoly;
pub mod kingrep;
pub mod linalg;
pub mod quiver;
pub mod sheafcalc;
pub mod weights;

pub use error::{Error, Result};
pub use exactpoly::{Rat, RatPoly};
