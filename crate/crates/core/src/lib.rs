//! Two-point codes C(A, B) on the Hermitian curve y^q + y = x^{q+1} over
//! F_{q²}, evaluated at all rational points except P0 = (0, 0) and P∞.
//!
//! The crate computes Riemann–Roch bases, the multiplicities behind the
//! shift bound, the order bound itself, closed-form minimum distances of the
//! duals C(A, B)^⊥ and of the primal codes, exhaustive distance oracles, and
//! explicit minimum-weight supports.

// Range conditions are written as the inclusive bounds they state.
#![allow(clippy::int_plus_one)]

pub mod agcode;
pub mod curve;
pub mod distance;
pub mod error;
pub mod field;
pub mod linalg;
pub mod multiplicity;
pub mod orderbound;
pub mod rrspace;
pub mod search;
pub mod table;
pub mod verify;
pub mod witness;

pub use error::{Error, Result};
