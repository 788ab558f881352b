//! Exact arithmetic in Q[q] and Q(q).

mod poly;
mod ratfunc;
mod render;
pub(crate) mod zpoly;

pub use num_rational::BigRational;
pub use poly::Polynomial;
pub use ratfunc::RationalFunction;
