//! Exact q-Euler numbers and polynomials, q-Bernstein polynomials and
//! fermionic p-adic q-integrals, all computed in the rational function field
//! Q(q), plus a checker for the identities that tie them together.

pub mod error;
pub mod exactfield;
pub mod identities;
pub mod padic;
pub mod qcore;

pub use error::{Error, Result};
pub use exactfield::{BigRational, Polynomial, RationalFunction};
