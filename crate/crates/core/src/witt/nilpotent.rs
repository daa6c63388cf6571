//! F_p[x_1..x_k]/(x_i^{e_i}) stored densely.

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::{PrimeField, Ring};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NilpotentPolyRing {
    pub p: u64,
    pub names: Vec<String>,
    pub caps: Vec<u32>,
    #[serde(skip)]
    exps: Vec<Vec<u32>>,
}

pub const MAX_DIM: usize = 4096;

impl NilpotentPolyRing {
    pub fn new(p: u64, names: &[&str], caps: &[u32]) -> Result<Self> {
        PrimeField::new(p)?;
        if names.len() != caps.len() {
            return Err(Error::InvalidInput("names and caps differ in length".into()));
        }
        if caps.iter().any(|&c| c == 0) {
            return Err(Error::InvalidInput("exponent caps must be positive".into()));
        }
        let dim: usize = caps.iter().map(|&c| c as usize).product();
        if dim > MAX_DIM {
            return Err(Error::CapExceeded(format!("nilpotent ring of dimension {dim}")));
        }
        let mut r = NilpotentPolyRing { p, names: names.iter().map(|s| s.to_string()).collect(), caps: caps.to_vec(), exps: Vec::new() };
        r.exps = (0..dim).map(|i| r.exponents_of(i)).collect();
        Ok(r)
    }

    /// Same caps for every variable.
    pub fn uniform(p: u64, names: &[&str], cap: u32) -> Result<Self> {
        Self::new(p, names, &vec![cap; names.len()])
    }

    pub fn dim(&self) -> usize {
        self.caps.iter().map(|&c| c as usize).product()
    }

    pub fn nvars(&self) -> usize {
        self.caps.len()
    }

    /// Mixed-radix index, first variable most significant.
    pub fn index(&self, e: &[u32]) -> Option<usize> {
        let mut idx = 0usize;
        for (x, c) in e.iter().zip(&self.caps) {
            if x >= c {
                return None;
            }
            idx = idx * *c as usize + *x as usize;
        }
        Some(idx)
    }

    pub fn exponents_of(&self, mut idx: usize) -> Vec<u32> {
        let mut e = vec![0; self.caps.len()];
        for i in (0..self.caps.len()).rev() {
            let c = self.caps[i] as usize;
            e[i] = (idx % c) as u32;
            idx /= c;
        }
        e
    }

    pub fn exponents(&self) -> &[Vec<u32>] {
        &self.exps
    }

    pub fn var(&self, i: usize) -> Vec<u64> {
        let mut e = vec![0; self.nvars()];
        e[i] = 1;
        self.monomial(&e, 1)
    }

    pub fn monomial(&self, e: &[u32], c: u64) -> Vec<u64> {
        let mut v = vec![0; self.dim()];
        if let Some(i) = self.index(e) {
            v[i] = c % self.p;
        }
        v
    }

    pub fn format(&self, a: &[u64]) -> String {
        let mut parts = Vec::new();
        for (i, &c) in a.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let e = self.exponents_of(i);
            let mut mono = Vec::new();
            for (n, &x) in self.names.iter().zip(&e) {
                match x {
                    0 => {}
                    1 => mono.push(n.clone()),
                    _ => mono.push(format!("{n}^{x}")),
                }
            }
            let m = mono.join("*");
            parts.push(match (c, m.is_empty()) {
                (_, true) => c.to_string(),
                (1, false) => m,
                _ => format!("{c}*{m}"),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl Ring for NilpotentPolyRing {
    type Elem = Vec<u64>;
    fn zero(&self) -> Vec<u64> {
        vec![0; self.dim()]
    }
    fn one(&self) -> Vec<u64> {
        let mut v = self.zero();
        v[0] = 1 % self.p;
        v
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|x| (self.p - x) % self.p).collect()
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let mut out = self.zero();
        let nz_b: Vec<usize> = (0..b.len()).filter(|&j| b[j] != 0).collect();
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let ei = &self.exps[i];
            'inner: for &j in &nz_b {
                let ej = &self.exps[j];
                let mut idx = 0usize;
                for k in 0..ei.len() {
                    let s = ei[k] + ej[k];
                    if s >= self.caps[k] {
                        continue 'inner;
                    }
                    idx = idx * self.caps[k] as usize + s as usize;
                }
                out[idx] = (out[idx] + x * b[j]) % self.p;
            }
        }
        out
    }
    fn from_int(&self, n: &BigInt) -> Vec<u64> {
        let mut v = self.zero();
        v[0] = PrimeField::new(self.p).unwrap().from_int(n);
        v
    }
    fn characteristic(&self) -> BigInt {
        BigInt::from(self.p)
    }
    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.iter().all(|&x| x == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nilpotency() {
        let r = NilpotentPolyRing::uniform(3, &["x", "y"], 3).unwrap();
        let x = r.var(0);
        let y = r.var(1);
        assert!(r.is_zero(&r.pow(&x, 3)));
        assert!(!r.is_zero(&r.pow(&x, 2)));
        let s = r.add(&x, &y);
        assert_eq!(r.format(&r.mul(&s, &s)), "y^2 + 2*x*y + x^2");
    }
}
