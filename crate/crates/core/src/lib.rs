//! Exact algebra and numerics for the constraint singularities of the
//! Andrews squeezing mechanism.
//!
//! The crate is layered bottom-up:
//!
//! * [`exactalg`]: rationals, monomial orders and sparse polynomials,
//! * [`groebner`]: normal forms, Buchberger, membership and elimination,
//! * [`fitting`]: Jacobians, maximal minors and singular-locus ideals,
//! * [`mechanism`]: the constraint polynomials and every derived ideal,
//! * [`numsolve`]: closed-form solution of the singular branches,
//! * [`verify`]: residual, numeric-rank and exact-rank certificates.

pub mod exactalg;
pub mod fitting;
pub mod groebner;
pub mod mechanism;
pub mod numsolve;
pub mod verify;

#[cfg(test)]
mod testutil;
