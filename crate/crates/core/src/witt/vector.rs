//! Witt vectors of length r over a commutative ring.

use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::polys::WittPolynomials;
use crate::error::{Error, Result};
use crate::ring::Ring;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WittVector<E> {
    pub components: Vec<E>,
}

/// W_r(R) for a base ring R.
#[derive(Clone, Debug)]
pub struct WittRing<R: Ring> {
    pub base: R,
    pub p: u64,
    pub r: usize,
    polys: Arc<WittPolynomials>,
}

impl<R: Ring> WittRing<R> {
    pub fn new(base: R, p: u64, r: usize) -> Result<Self> {
        let polys = WittPolynomials::get(p, r)?;
        Ok(WittRing { base, p, r, polys })
    }

    pub fn polys(&self) -> &WittPolynomials {
        &self.polys
    }

    fn check(&self, a: &WittVector<R::Elem>) -> Result<()> {
        if a.components.len() != self.r {
            return Err(Error::Mismatch(format!("Witt vector of length {} in W_{}", a.components.len(), self.r)));
        }
        Ok(())
    }

    pub fn vector(&self, components: Vec<R::Elem>) -> Result<WittVector<R::Elem>> {
        let v = WittVector { components };
        self.check(&v)?;
        Ok(v)
    }

    pub fn zero(&self) -> WittVector<R::Elem> {
        WittVector { components: vec![self.base.zero(); self.r] }
    }

    pub fn one(&self) -> WittVector<R::Elem> {
        self.teichmuller(&self.base.one())
    }

    pub fn teichmuller(&self, x: &R::Elem) -> WittVector<R::Elem> {
        let mut c = vec![self.base.zero(); self.r];
        c[0] = x.clone();
        WittVector { components: c }
    }

    fn binary(&self, polys: &[super::polys::MPoly], a: &WittVector<R::Elem>, b: &WittVector<R::Elem>) -> Result<WittVector<R::Elem>> {
        self.check(a)?;
        self.check(b)?;
        let vals: Vec<R::Elem> = a.components.iter().chain(&b.components).cloned().collect();
        Ok(WittVector { components: polys.iter().map(|s| s.eval(&self.base, &vals)).collect() })
    }

    pub fn add(&self, a: &WittVector<R::Elem>, b: &WittVector<R::Elem>) -> Result<WittVector<R::Elem>> {
        self.binary(&self.polys.sum, a, b)
    }

    pub fn mul(&self, a: &WittVector<R::Elem>, b: &WittVector<R::Elem>) -> Result<WittVector<R::Elem>> {
        self.binary(&self.polys.prod, a, b)
    }

    pub fn neg(&self, a: &WittVector<R::Elem>) -> Result<WittVector<R::Elem>> {
        self.check(a)?;
        Ok(WittVector { components: self.polys.neg.iter().map(|s| s.eval(&self.base, &a.components)).collect() })
    }

    pub fn sub(&self, a: &WittVector<R::Elem>, b: &WittVector<R::Elem>) -> Result<WittVector<R::Elem>> {
        self.add(a, &self.neg(b)?)
    }

    /// n·a by double-and-add.
    pub fn scalar(&self, n: u64, a: &WittVector<R::Elem>) -> Result<WittVector<R::Elem>> {
        let mut acc = self.zero();
        let mut b = a.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &b)?;
            }
            k >>= 1;
            if k > 0 {
                b = self.add(&b, &b)?;
            }
        }
        Ok(acc)
    }

    /// Componentwise p-th power; valid over F_p-algebras.
    pub fn frobenius(&self, a: &WittVector<R::Elem>) -> Result<WittVector<R::Elem>> {
        self.check(a)?;
        if self.base.characteristic() != BigInt::from(self.p) {
            return Err(Error::Unsupported("componentwise Frobenius needs an F_p-algebra".into()));
        }
        Ok(WittVector { components: a.components.iter().map(|x| self.base.pow(x, self.p)).collect() })
    }

    pub fn verschiebung(&self, a: &WittVector<R::Elem>) -> Result<WittVector<R::Elem>> {
        self.check(a)?;
        let mut c = vec![self.base.zero()];
        c.extend(a.components[..self.r - 1].iter().cloned());
        Ok(WittVector { components: c })
    }

    /// Ghost components w_0..w_{r-1} computed in the base ring.
    pub fn ghost(&self, a: &WittVector<R::Elem>) -> Vec<R::Elem> {
        let p = self.p;
        (0..self.r)
            .map(|n| {
                let mut acc = self.base.zero();
                for i in 0..=n {
                    let t = self.base.pow(&a.components[i], p.pow((n - i) as u32));
                    let t = self.base.mul(&t, &self.base.from_int(&BigInt::from(p).pow(i as u32)));
                    acc = self.base.add(&acc, &t);
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self, a: &WittVector<R::Elem>) -> bool {
        a.components.iter().all(|x| self.base.is_zero(x))
    }
}

/// Independent oracle: Witt arithmetic on integer lifts via ghost components.
pub mod oracle {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::Zero;

    pub fn ghost(p: u64, a: &[BigInt]) -> Vec<BigInt> {
        (0..a.len())
            .map(|n| {
                (0..=n).fold(BigInt::zero(), |acc, i| acc + BigInt::from(p).pow(i as u32) * a[i].pow(p.pow((n - i) as u32) as u32))
            })
            .collect()
    }

    /// Invert the ghost map over Z; None when the vector is not a ghost image.
    pub fn unghost(p: u64, w: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut a: Vec<BigInt> = Vec::new();
        for n in 0..w.len() {
            let mut t = w[n].clone();
            for (i, ai) in a.iter().enumerate() {
                t -= BigInt::from(p).pow(i as u32) * ai.pow(p.pow((n - i) as u32) as u32);
            }
            let d = BigInt::from(p).pow(n as u32);
            let (q, r) = t.div_rem(&d);
            if !r.is_zero() {
                return None;
            }
            a.push(q);
        }
        Some(a)
    }

    fn reduce(x: &BigInt, p: u64) -> u64 {
        u64::try_from(x.mod_floor(&BigInt::from(p))).unwrap()
    }

    /// Sum of two Witt vectors over F_p computed through integer ghosts.
    pub fn add_fp(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
        let la: Vec<BigInt> = a.iter().map(|&x| BigInt::from(x)).collect();
        let lb: Vec<BigInt> = b.iter().map(|&x| BigInt::from(x)).collect();
        let w: Vec<BigInt> = ghost(p, &la).into_iter().zip(ghost(p, &lb)).map(|(x, y)| x + y).collect();
        unghost(p, &w).unwrap().iter().map(|x| reduce(x, p)).collect()
    }

    pub fn mul_fp(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
        let la: Vec<BigInt> = a.iter().map(|&x| BigInt::from(x)).collect();
        let lb: Vec<BigInt> = b.iter().map(|&x| BigInt::from(x)).collect();
        let w: Vec<BigInt> = ghost(p, &la).into_iter().zip(ghost(p, &lb)).map(|(x, y)| x * y).collect();
        unghost(p, &w).unwrap().iter().map(|x| reduce(x, p)).collect()
    }
}
