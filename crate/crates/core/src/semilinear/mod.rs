//! Frobenius-semilinear algebra.

mod operator;
mod skew;

pub use operator::*;
pub use skew::*;
