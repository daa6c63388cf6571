//! Exact arithmetic for unipotent homotopy computations in characteristic p.

pub mod arith;
pub mod cohomology;
pub mod dieudonne;
pub mod error;
pub mod fields;
pub mod hopf;
pub mod linalg;
pub mod poly;
pub mod ring;
pub mod semilinear;
pub mod tensorops;
pub mod verify;
pub mod witt;
pub mod zmodlin;

pub use error::{Error, Result};
