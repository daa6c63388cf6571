//! p-typical Witt vectors: universal polynomials, generic vectors, Galois rings.

pub mod galois;
pub mod nilpotent;
pub mod polys;
pub mod vector;

pub use galois::GaloisRing;
pub use nilpotent::NilpotentPolyRing;
pub use polys::{MPoly, WittPolynomials};
pub use vector::{WittRing, WittVector};

use serde::Serialize;

use crate::error::Result;
use crate::ring::Ring;

/// Result of checking ([x+y] − [x] − [y])·[z] = 0 in W_r(F_p[x,y,z]/(x^p,y^p,z^p)).
#[derive(Clone, Debug, Serialize)]
pub struct WfIdentityReport {
    pub p: u64,
    pub r: usize,
    pub n: Vec<String>,
    pub product: Vec<String>,
    pub n_is_zero: bool,
    pub pass: bool,
}

pub fn verify_wf_ring_identity(p: u64, r: usize) -> Result<WfIdentityReport> {
    if r < 2 {
        return Err(crate::Error::InvalidInput("r must be at least 2".into()));
    }
    let ring = NilpotentPolyRing::uniform(p, &["x", "y", "z"], p as u32)?;
    let w = WittRing::new(ring.clone(), p, r)?;
    let (x, y, z) = (ring.var(0), ring.var(1), ring.var(2));
    let txy = w.teichmuller(&ring.add(&x, &y));
    let n = w.sub(&w.sub(&txy, &w.teichmuller(&x))?, &w.teichmuller(&y))?;
    let prod = w.mul(&n, &w.teichmuller(&z))?;
    Ok(WfIdentityReport {
        p,
        r,
        n: n.components.iter().map(|c| ring.format(c)).collect(),
        product: prod.components.iter().map(|c| ring.format(c)).collect(),
        n_is_zero: w.is_zero(&n),
        pass: w.is_zero(&prod),
    })
}

/// Component list of a Witt vector over a field level, for serialisation.
pub fn components_json<R: Ring>(v: &WittVector<R::Elem>) -> Vec<R::Elem> {
    v.components.clone()
}
