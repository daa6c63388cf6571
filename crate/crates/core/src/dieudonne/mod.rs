//! Dieudonné modules at finite p-adic precision.

pub mod moduli;
mod module;

pub use moduli::*;
pub use module::*;
