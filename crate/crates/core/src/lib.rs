//! Orthogonal polynomials of hypergeometric type, their associated special
//! functions and shape-invariant ladder operators, and the exactly solvable
//! Schrödinger potentials (including the γ-shifted family) built on them.
//!
//! Everything that can be exact is exact: parameters are rationals, the
//! polynomials and the ladder algebra on `κ^m P(s)` are computed in rational
//! arithmetic. Norms and orthogonality use tanh-sinh quadrature, and the
//! `x`-space Schrödinger identities are checked pointwise with Taylor jets.

pub mod error;
pub mod family;
pub mod jet;
pub mod ladder;
pub mod polycore;
pub mod quad;
pub mod schrod;
pub mod tilde;
pub mod verify;

pub use error::{Error, Result};
pub use family::{Cutoff, DegreeBudget, Family, Interval, SigmaCase, Validation, WeightSpec};
pub use jet::Jet;
pub use ladder::LayeredFunction;
pub use polycore::{q, qi, Rational, RationalPoly};
