//! Dense univariate polynomials over a field, coefficients low to high.

use crate::ring::{Field, Ring};

pub type Poly<E> = Vec<E>;

pub fn trim<R: Ring>(r: &R, f: &mut Poly<R::Elem>) {
    while f.last().is_some_and(|c| r.is_zero(c)) {
        f.pop();
    }
}

pub fn degree<R: Ring>(r: &R, f: &Poly<R::Elem>) -> Option<usize> {
    let mut g = f.clone();
    trim(r, &mut g);
    if g.is_empty() {
        None
    } else {
        Some(g.len() - 1)
    }
}

pub fn add<R: Ring>(r: &R, a: &Poly<R::Elem>, b: &Poly<R::Elem>) -> Poly<R::Elem> {
    let n = a.len().max(b.len());
    let z = r.zero();
    let mut out: Vec<_> = (0..n).map(|i| r.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z))).collect();
    trim(r, &mut out);
    out
}

pub fn sub<R: Ring>(r: &R, a: &Poly<R::Elem>, b: &Poly<R::Elem>) -> Poly<R::Elem> {
    let n = a.len().max(b.len());
    let z = r.zero();
    let mut out: Vec<_> = (0..n).map(|i| r.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z))).collect();
    trim(r, &mut out);
    out
}

pub fn scale<R: Ring>(r: &R, a: &Poly<R::Elem>, c: &R::Elem) -> Poly<R::Elem> {
    let mut out: Vec<_> = a.iter().map(|x| r.mul(x, c)).collect();
    trim(r, &mut out);
    out
}

pub fn mul<R: Ring>(r: &R, a: &Poly<R::Elem>, b: &Poly<R::Elem>) -> Poly<R::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![r.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if r.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = r.add(&out[i + j], &r.mul(x, y));
        }
    }
    trim(r, &mut out);
    out
}

pub fn eval<R: Ring>(r: &R, f: &Poly<R::Elem>, x: &R::Elem) -> R::Elem {
    f.iter().rev().fold(r.zero(), |acc, c| r.add(&r.mul(&acc, x), c))
}

pub fn derivative<R: Ring>(r: &R, f: &Poly<R::Elem>) -> Poly<R::Elem> {
    let mut out: Vec<_> = f.iter().enumerate().skip(1).map(|(i, c)| r.mul(c, &r.from_i64(i as i64))).collect();
    trim(r, &mut out);
    out
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem<F: Field>(f: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> (Poly<F::Elem>, Poly<F::Elem>) {
    let mut b = b.clone();
    trim(f, &mut b);
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut rem = a.clone();
    trim(f, &mut rem);
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lead_inv = f.inv(b.last().unwrap()).unwrap();
    let db = b.len() - 1;
    let mut q = vec![f.zero(); rem.len() - db];
    while rem.len() >= b.len() {
        let k = rem.len() - b.len();
        let c = f.mul(rem.last().unwrap(), &lead_inv);
        for (i, bc) in b.iter().enumerate() {
            rem[k + i] = f.sub(&rem[k + i], &f.mul(&c, bc));
        }
        q[k] = c;
        rem.pop();
        trim(f, &mut rem);
    }
    trim(f, &mut q);
    (q, rem)
}

pub fn rem<F: Field>(f: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
    divrem(f, a, b).1
}

pub fn monic<F: Field>(f: &F, a: &Poly<F::Elem>) -> Poly<F::Elem> {
    let mut a = a.clone();
    trim(f, &mut a);
    match a.last() {
        None => a,
        Some(l) => {
            let li = f.inv(l).unwrap();
            scale(f, &a, &li)
        }
    }
}

/// Monic gcd.
pub fn gcd<F: Field>(f: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
    let mut x = a.clone();
    let mut y = b.clone();
    trim(f, &mut x);
    trim(f, &mut y);
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, &x)
}

pub fn mulmod<F: Field>(f: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>, m: &Poly<F::Elem>) -> Poly<F::Elem> {
    rem(f, &mul(f, a, b), m)
}

pub fn powmod<F: Field>(f: &F, a: &Poly<F::Elem>, mut e: u64, m: &Poly<F::Elem>) -> Poly<F::Elem> {
    let mut r = rem(f, &vec![f.one()], m);
    let mut b = rem(f, a, m);
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(f, &r, &b, m);
        }
        e >>= 1;
        if e > 0 {
            b = mulmod(f, &b, &b, m);
        }
    }
    r
}

/// a^{q} mod m where q = p^{deg F}: the field's absolute Frobenius applied
/// `deg F` times, each step a p-th power.
pub fn pow_q_mod<F: Field>(f: &F, a: &Poly<F::Elem>, times: usize, m: &Poly<F::Elem>) -> Poly<F::Elem> {
    let mut r = rem(f, a, m);
    for _ in 0..times * f.degree() {
        r = powmod(f, &r, f.p(), m);
    }
    r
}

pub fn x<F: Field>(f: &F) -> Poly<F::Elem> {
    vec![f.zero(), f.one()]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::PrimeField;

    #[test]
    fn division_identity() {
        let f = PrimeField::new(5).unwrap();
        let a = vec![1, 2, 3, 4, 1];
        let b = vec![2, 0, 1];
        let (q, r) = divrem(&f, &a, &b);
        assert_eq!(add(&f, &mul(&f, &q, &b), &r), a);
        assert!(r.len() < b.len());
        assert_eq!(gcd(&f, &mul(&f, &a, &b), &b), monic(&f, &b));
    }
}
