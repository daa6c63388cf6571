//! Galois rings GR(p^r, m) = (Z/p^r)[t]/(f), modelling W_r(F_{p^m}).

use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::{inv_mod, mul_mod};
use crate::error::{Error, Result};
use crate::fields::GF;
use crate::ring::{Field, Ring};

#[derive(Clone, Debug)]
pub struct GaloisRing {
    p: u64,
    r: u32,
    n: u64,
    residue: Arc<GF>,
    modulus: Vec<u64>,
    sigma_cols: Vec<Vec<u64>>,
    sigma_inv_cols: Vec<Vec<u64>>,
}

impl PartialEq for GaloisRing {
    fn eq(&self, o: &Self) -> bool {
        self.r == o.r && *self.residue == *o.residue
    }
}
impl Eq for GaloisRing {}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GaloisRingDescriptor {
    pub p: u64,
    pub r: u32,
    pub m: usize,
    pub poly: Vec<u64>,
}

impl GaloisRing {
    pub fn new(residue: Arc<GF>, r: u32) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidInput("precision r must be positive".into()));
        }
        let p = residue.p();
        let n = p.checked_pow(r).filter(|n| n.checked_mul(*n).is_some()).ok_or_else(|| Error::CapExceeded(format!("p^r too large for p = {p}, r = {r}")))?;
        let modulus = residue.modulus().to_vec();
        let mut gr = GaloisRing { p, r, n, residue, modulus, sigma_cols: Vec::new(), sigma_inv_cols: Vec::new() };
        let t = gr.generator();
        let st = gr.sigma_via_digits(&t)?;
        let sti = gr.sigma_inv_via_digits(&t)?;
        gr.sigma_cols = gr.power_cols(&st);
        gr.sigma_inv_cols = gr.power_cols(&sti);
        Ok(gr)
    }

    /// Same residue field at another precision.
    pub fn with_precision(&self, r: u32) -> Result<Self> {
        GaloisRing::new(self.residue.clone(), r)
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn r(&self) -> u32 {
        self.r
    }
    pub fn m(&self) -> usize {
        self.residue.degree()
    }
    pub fn modulus_int(&self) -> u64 {
        self.n
    }
    pub fn residue(&self) -> &Arc<GF> {
        &self.residue
    }
    pub fn descriptor(&self) -> GaloisRingDescriptor {
        GaloisRingDescriptor { p: self.p, r: self.r, m: self.m(), poly: self.modulus.clone() }
    }

    fn power_cols(&self, x: &[u64]) -> Vec<Vec<u64>> {
        let mut cols = Vec::with_capacity(self.m());
        let mut cur = self.one();
        for _ in 0..self.m() {
            cols.push(cur.clone());
            cur = self.mul(&cur, &x.to_vec());
        }
        cols
    }

    fn apply_cols(&self, cols: &[Vec<u64>], a: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.m()];
        for (j, &c) in a.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, x) in out.iter_mut().zip(&cols[j]) {
                *o = (*o + mul_mod(c, *x, self.n)) % self.n;
            }
        }
        out
    }

    pub fn generator(&self) -> Vec<u64> {
        let mut g = vec![0; self.m()];
        if self.m() == 1 {
            g[0] = (self.n - self.modulus[0]) % self.n;
        } else {
            g[1] = 1;
        }
        g
    }

    /// Residue mod p.
    pub fn reduce(&self, a: &[u64]) -> Vec<u64> {
        a.iter().map(|x| x % self.p).collect()
    }

    /// Coefficientwise lift of a residue element.
    pub fn lift(&self, x: &[u64]) -> Vec<u64> {
        x.to_vec()
    }

    /// Reduce to a lower precision ring.
    pub fn reduce_to(&self, a: &[u64], target: &GaloisRing) -> Vec<u64> {
        a.iter().map(|x| x % target.n).collect()
    }

    /// Reinterpret coefficients in a ring of higher precision.
    pub fn lift_to(&self, a: &[u64], _target: &GaloisRing) -> Vec<u64> {
        a.to_vec()
    }

    pub fn is_unit(&self, a: &[u64]) -> bool {
        a.iter().any(|x| x % self.p != 0)
    }

    pub fn valuation(&self, a: &[u64]) -> u32 {
        let mut v = self.r;
        for &x in a {
            if x != 0 {
                v = v.min(crate::arith::valuation(x, self.p));
            }
        }
        v
    }

    /// a / p^k when divisible; the result is only meaningful mod p^{r-k}.
    pub fn div_p_pow(&self, a: &[u64], k: u32) -> Option<Vec<u64>> {
        let d = self.p.pow(k);
        if a.iter().any(|x| x % d != 0) {
            return None;
        }
        Some(a.iter().map(|x| x / d).collect())
    }

    pub fn inv(&self, a: &[u64]) -> Option<Vec<u64>> {
        let ab = self.reduce(a);
        let binv = self.residue.inv(&ab)?;
        // Newton iteration y <- y(2 - a y)
        let mut y = self.lift(&binv);
        let two = self.from_i64(2);
        for _ in 0..=self.r.ilog2() + 1 {
            let ay = self.mul(&a.to_vec(), &y);
            y = self.mul(&y, &self.sub(&two, &ay));
        }
        debug_assert_eq!(self.mul(&a.to_vec(), &y), self.one());
        Some(y)
    }

    /// Teichmüller representative: iterate y ↦ y^{p^m} from any lift.
    pub fn teichmuller(&self, x: &[u64]) -> Result<Vec<u64>> {
        let mut y = self.lift(x);
        let cap = self.r + 4;
        for _ in 0..cap {
            let mut z = y.clone();
            for _ in 0..self.m() {
                z = self.pow(&z, self.p);
            }
            if z == y {
                return Ok(y);
            }
            y = z;
        }
        Err(Error::NonConvergence("Teichmüller iteration did not stabilise".into()))
    }

    /// Teichmüller digits: a = Σ p^i [d_i].
    pub fn digits(&self, a: &[u64]) -> Result<Vec<Vec<u64>>> {
        let mut cur = a.to_vec();
        let mut out = Vec::with_capacity(self.r as usize);
        for _ in 0..self.r {
            let d = self.reduce(&cur);
            let t = self.teichmuller(&d)?;
            let diff = self.sub(&cur, &t);
            cur = self.div_p_pow(&diff, 1).expect("difference divisible by p");
            out.push(d);
        }
        Ok(out)
    }

    pub fn from_digits(&self, d: &[Vec<u64>]) -> Result<Vec<u64>> {
        let mut acc = self.zero();
        let mut pk = 1u64;
        for di in d.iter().take(self.r as usize) {
            let t = self.teichmuller(di)?;
            acc = self.add(&acc, &t.iter().map(|x| mul_mod(*x, pk, self.n)).collect());
            pk = pk.saturating_mul(self.p);
        }
        Ok(acc)
    }

    pub fn sigma_via_digits(&self, a: &[u64]) -> Result<Vec<u64>> {
        let d: Vec<Vec<u64>> = self.digits(a)?.iter().map(|x| self.residue.frobenius(x, 1)).collect();
        self.from_digits(&d)
    }

    pub fn sigma_inv_via_digits(&self, a: &[u64]) -> Result<Vec<u64>> {
        let d: Vec<Vec<u64>> = self.digits(a)?.iter().map(|x| self.residue.frobenius(x, -1)).collect();
        self.from_digits(&d)
    }

    /// σ^k for any integer k.
    pub fn sigma_pow(&self, a: &[u64], k: i64) -> Vec<u64> {
        let m = self.m() as i64;
        let k = k.rem_euclid(m);
        let (cols, steps) = if k <= m / 2 { (&self.sigma_cols, k) } else { (&self.sigma_inv_cols, m - k) };
        let mut x = a.to_vec();
        for _ in 0..steps {
            x = self.apply_cols(cols, &x);
        }
        x
    }

    pub fn sigma(&self, a: &[u64]) -> Vec<u64> {
        self.apply_cols(&self.sigma_cols, a)
    }

    pub fn sigma_inv(&self, a: &[u64]) -> Vec<u64> {
        self.apply_cols(&self.sigma_inv_cols, a)
    }

    /// Witt components (a_0..a_{r-1}) of an element: a = Σ p^i [a_i^{1/p^i}].
    pub fn to_witt(&self, a: &[u64]) -> Result<Vec<Vec<u64>>> {
        Ok(self.digits(a)?.iter().enumerate().map(|(i, d)| self.residue.frobenius(d, i as i64)).collect())
    }

    pub fn from_witt(&self, comps: &[Vec<u64>]) -> Result<Vec<u64>> {
        let d: Vec<Vec<u64>> = comps.iter().enumerate().map(|(i, c)| self.residue.frobenius(c, -(i as i64))).collect();
        self.from_digits(&d)
    }

    /// Z/p^r-coordinates of an element (its coefficient vector).
    pub fn coords(&self, a: &[u64]) -> Vec<u64> {
        a.to_vec()
    }

    pub fn elements(&self) -> Vec<Vec<u64>> {
        let m = self.m();
        let total = self.n.pow(m as u32) as usize;
        (0..total)
            .map(|mut k| {
                let mut v = vec![0; m];
                for x in v.iter_mut() {
                    *x = (k as u64) % self.n;
                    k /= self.n as usize;
                }
                v
            })
            .collect()
    }

    pub fn inv_unit_int(&self, u: u64) -> Option<u64> {
        inv_mod(u, self.n)
    }
}

impl Ring for GaloisRing {
    type Elem = Vec<u64>;
    fn zero(&self) -> Vec<u64> {
        vec![0; self.m()]
    }
    fn one(&self) -> Vec<u64> {
        let mut v = self.zero();
        v[0] = 1 % self.n;
        v
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.n).collect()
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|x| (self.n - x % self.n) % self.n).collect()
    }
    fn sub(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| (x + self.n - y % self.n) % self.n).collect()
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let m = self.m();
        let n = self.n;
        if m == 1 {
            return vec![mul_mod(a[0], b[0], n)];
        }
        let mut c = vec![0u64; 2 * m - 1];
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if *y != 0 {
                    c[i + j] = (c[i + j] + mul_mod(*x, *y, n)) % n;
                }
            }
        }
        for k in (m..c.len()).rev() {
            let lead = c[k];
            if lead == 0 {
                continue;
            }
            for i in 0..m {
                c[k - m + i] = (c[k - m + i] + mul_mod(n - lead, self.modulus[i], n)) % n;
            }
        }
        c.truncate(m);
        c
    }
    fn from_int(&self, x: &BigInt) -> Vec<u64> {
        let mut v = self.zero();
        v[0] = crate::ring::Zmod::new(self.n).from_int(x);
        v
    }
    fn characteristic(&self) -> BigInt {
        BigInt::from(self.n)
    }
    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.iter().all(|&x| x == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_order_exhaustive_gr_4_2() {
        let gr = GaloisRing::new(Arc::new(GF::new(2, 2).unwrap()), 2).unwrap();
        let els = gr.elements();
        assert_eq!(els.len(), 16);
        for a in &els {
            assert_eq!(gr.sigma_pow(a, 2), *a);
            assert_eq!(gr.sigma(a), gr.sigma_via_digits(a).unwrap());
            assert_eq!(gr.reduce(&gr.sigma(a)), gr.residue().frobenius(&gr.reduce(a), 1));
        }
    }

    #[test]
    fn teichmuller_multiplicative() {
        let gr = GaloisRing::new(Arc::new(GF::new(3, 2).unwrap()), 3).unwrap();
        let f = gr.residue().clone();
        for x in f.elements() {
            let tx = gr.teichmuller(&x).unwrap();
            assert_eq!(gr.reduce(&tx), x);
            for y in f.elements().iter().take(4) {
                let ty = gr.teichmuller(y).unwrap();
                assert_eq!(gr.mul(&tx, &ty), gr.teichmuller(&f.mul(&x, y)).unwrap());
            }
        }
    }
}
