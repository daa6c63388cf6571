use std::sync::Arc;

use serde::Serialize;

use super::algebra::FiniteHopfAlgebra;
use crate::error::{Error, Result};
use crate::fields::GF;
use crate::linalg;
use crate::ring::Ring;

type E = Vec<u64>;

/// A = H^∨ with multiplication Δᵀ, its maximal ideal m and the powers J_n = m^n.
#[derive(Clone, Debug)]
pub struct DualLocalAlgebra {
    pub field: Arc<GF>,
    pub mult: Vec<Vec<Vec<E>>>,
    pub unit: Vec<E>,
    pub m: Vec<Vec<E>>,
    /// filtration[0] = J_1 = m, filtration[k] = J_{k+1}; ends with the zero ideal
    pub filtration: Vec<Vec<Vec<E>>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiltrationSummary {
    pub dim: usize,
    pub ideal_dims: Vec<usize>,
    pub graded_dims: Vec<usize>,
    pub cotangent_dim: usize,
}

impl DualLocalAlgebra {
    pub fn dim(&self) -> usize {
        self.unit.len()
    }

    pub fn mul(&self, a: &[E], b: &[E]) -> Vec<E> {
        let f = &*self.field;
        let n = self.dim();
        let mut out = vec![f.zero(); n];
        for (i, ai) in a.iter().enumerate() {
            if f.is_zero(ai) {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if f.is_zero(bj) {
                    continue;
                }
                let c = f.mul(ai, bj);
                for (o, x) in out.iter_mut().zip(&self.mult[i][j]) {
                    *o = f.add(o, &f.mul(&c, x));
                }
            }
        }
        out
    }

    /// Basis of the span of all products a·b, a ∈ I, b ∈ J.
    pub fn product(&self, i: &[Vec<E>], j: &[Vec<E>]) -> Vec<Vec<E>> {
        let mut prods = Vec::new();
        for a in i {
            for b in j {
                prods.push(self.mul(a, b));
            }
        }
        linalg::span_basis(&*self.field, &prods)
    }

    pub fn summary(&self) -> FiltrationSummary {
        let ideal_dims: Vec<usize> = self.filtration.iter().map(|j| j.len()).collect();
        let graded_dims: Vec<usize> = ideal_dims.windows(2).map(|w| w[0] - w[1]).collect();
        FiltrationSummary { dim: self.dim(), cotangent_dim: graded_dims.first().copied().unwrap_or(0), ideal_dims, graded_dims }
    }
}

pub fn dual_algebra(h: &FiniteHopfAlgebra) -> Result<DualLocalAlgebra> {
    if !h.is_cocommutative() {
        return Err(Error::InvalidInput("dual algebra needs a cocommutative Hopf algebra".into()));
    }
    let f = &*h.field;
    let n = h.dim();
    let mult: Vec<Vec<Vec<E>>> = (0..n).map(|j| (0..n).map(|k| (0..n).map(|i| h.comult[i][j][k].clone()).collect()).collect()).collect();
    // m = {φ : φ(1_H) = 0}
    let row = vec![h.unit.clone()];
    let m = linalg::kernel(f, &row, n);
    let mut a = DualLocalAlgebra { field: h.field.clone(), mult, unit: h.counit.clone(), m: m.clone(), filtration: vec![m.clone()] };
    let mut cur = m.clone();
    for _ in 0..=n {
        if cur.is_empty() {
            return Ok(a);
        }
        let next = a.product(&cur, &m);
        if next.len() == cur.len() {
            return Err(Error::InvalidInput(format!("{} is not unipotent: the augmentation ideal of the dual is not nilpotent", h.name)));
        }
        a.filtration.push(next.clone());
        cur = next;
    }
    Err(Error::InvalidInput("augmentation ideal not nilpotent".into()))
}
