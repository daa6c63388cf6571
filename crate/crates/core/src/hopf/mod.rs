//! Finite Hopf algebras, Cartier duality and truncated formal group laws.

mod algebra;
mod dual_local;
pub mod fgl;

pub use algebra::*;
pub use dual_local::*;
pub use fgl::{fgl_dual_level, lubin_tate, CommFgl, FglJson, FglReport, Height, NcFgl};
