//! Context-carrying ring and field traits.
//!
//! Elements of finite fields, Galois rings and residue rings need runtime data
//! (the prime, the modulus polynomial) to be multiplied, so arithmetic lives on
//! a context object rather than on the element type.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith;
use crate::error::{Error, Result};

pub trait Ring: Clone + Debug + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Eq + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn from_int(&self, n: &BigInt) -> Self::Elem;
    /// 0 for rings of characteristic zero.
    fn characteristic(&self) -> BigInt;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }
    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_int(&BigInt::from(n))
    }
    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut r = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        r
    }
    fn sum<'a, I: IntoIterator<Item = &'a Self::Elem>>(&self, it: I) -> Self::Elem
    where
        Self::Elem: 'a,
    {
        it.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

pub trait Field: Ring {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Characteristic as a machine integer.
    fn p(&self) -> u64;
    /// Degree over the prime field.
    fn degree(&self) -> usize;
    /// x ↦ x^{p^k}, k may be negative.
    fn frobenius(&self, a: &Self::Elem, k: i64) -> Self::Elem;
    /// Coordinates over F_p.
    fn to_fp_coords(&self, a: &Self::Elem) -> Vec<u64>;
    fn from_fp_coords(&self, c: &[u64]) -> Self::Elem;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
}

/// The prime field F_p.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !(2..=97).contains(&p) || !arith::is_prime(p) {
            return Err(Error::InvalidInput(format!("p = {p} must be a prime in [2, 97]")));
        }
        Ok(PrimeField { p })
    }
    pub fn reduce(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
}

impl Ring for PrimeField {
    type Elem = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a % self.p) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn from_int(&self, n: &BigInt) -> u64 {
        let r = n % BigInt::from(self.p);
        let r = if r.is_negative() { r + BigInt::from(self.p) } else { r };
        u64::try_from(r).unwrap()
    }
    fn characteristic(&self) -> BigInt {
        BigInt::from(self.p)
    }
}

impl Field for PrimeField {
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            arith::inv_mod(*a, self.p)
        }
    }
    fn p(&self) -> u64 {
        self.p
    }
    fn degree(&self) -> usize {
        1
    }
    fn frobenius(&self, a: &u64, _k: i64) -> u64 {
        *a
    }
    fn to_fp_coords(&self, a: &u64) -> Vec<u64> {
        vec![*a]
    }
    fn from_fp_coords(&self, c: &[u64]) -> u64 {
        c[0] % self.p
    }
}

/// Z/nZ with a machine-word modulus.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Zmod {
    pub n: u64,
}

impl Zmod {
    pub fn new(n: u64) -> Self {
        assert!(n >= 1);
        Zmod { n }
    }
}

impl Ring for Zmod {
    type Elem = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.n
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.n as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.n - a % self.n) % self.n
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        arith::mul_mod(*a, *b, self.n)
    }
    fn from_int(&self, x: &BigInt) -> u64 {
        let r = x % BigInt::from(self.n);
        let r = if r.is_negative() { r + BigInt::from(self.n) } else { r };
        u64::try_from(r).unwrap()
    }
    fn characteristic(&self) -> BigInt {
        BigInt::from(self.n)
    }
}

/// Z/nZ with an arbitrary-size modulus.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BigZmod {
    pub n: BigInt,
}

impl BigZmod {
    pub fn new(n: BigInt) -> Self {
        BigZmod { n }
    }
    fn norm(&self, x: BigInt) -> BigInt {
        let r = x % &self.n;
        if r.is_negative() {
            r + &self.n
        } else {
            r
        }
    }
}

impl Ring for BigZmod {
    type Elem = BigInt;
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        self.norm(BigInt::one())
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.norm(a + b)
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        self.norm(-a)
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.norm(a * b)
    }
    fn from_int(&self, x: &BigInt) -> BigInt {
        self.norm(x.clone())
    }
    fn characteristic(&self) -> BigInt {
        self.n.clone()
    }
}

/// The integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn from_int(&self, x: &BigInt) -> BigInt {
        x.clone()
    }
    fn characteristic(&self) -> BigInt {
        BigInt::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_checks() {
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(101).is_err());
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.mul(&3, &5), 1);
        assert_eq!(f.inv(&3), Some(5));
        assert_eq!(f.from_i64(-1), 6);
        assert_eq!(f.pow(&3, 6), 1);
    }

    #[test]
    fn zmod_arith() {
        let z = Zmod::new(9);
        assert_eq!(z.mul(&4, &7), 1);
        assert_eq!(z.neg(&0), 0);
        let b = BigZmod::new(BigInt::from(27));
        assert_eq!(b.from_i64(-1), BigInt::from(26));
    }
}
