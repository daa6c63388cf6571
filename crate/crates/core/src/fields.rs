//! Finite fields F_{p^m}, towers of extensions and root finding.

use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::poly::{self, Poly};
use crate::ring::{Field, PrimeField, Ring};

pub const DEFAULT_DEGREE_CAP: usize = 24;

/// F_p[t]/(f) for a monic irreducible f of degree m.
#[derive(Clone, Debug)]
pub struct GF {
    fp: PrimeField,
    m: usize,
    modulus: Vec<u64>,
    frob: Vec<Vec<u64>>,
    frob_inv: Vec<Vec<u64>>,
}

impl PartialEq for GF {
    fn eq(&self, other: &Self) -> bool {
        self.fp == other.fp && self.modulus == other.modulus
    }
}
impl Eq for GF {}

/// JSON field descriptor.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FieldDescriptor {
    pub p: u64,
    pub degree: usize,
    pub poly: Vec<u64>,
}

impl GF {
    /// Field with the given monic irreducible modulus (low to high).
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self> {
        let fp = PrimeField::new(p)?;
        let m = modulus.len().checked_sub(1).ok_or_else(|| Error::InvalidInput("empty modulus".into()))?;
        if m == 0 || modulus[m] != 1 {
            return Err(Error::InvalidInput("modulus must be monic of degree >= 1".into()));
        }
        if !is_irreducible_fp(&fp, &modulus) {
            return Err(Error::InvalidInput(format!("{modulus:?} is not irreducible over F_{p}")));
        }
        let mut gf = GF { fp, m, modulus, frob: Vec::new(), frob_inv: Vec::new() };
        gf.build_frobenius();
        Ok(gf)
    }

    /// The default field of degree m: first irreducible found by seeded sampling.
    pub fn new(p: u64, m: usize) -> Result<Self> {
        let fp = PrimeField::new(p)?;
        Self::with_modulus(p, find_irreducible(&fp, m))
    }

    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1)
    }

    pub fn from_descriptor(d: &FieldDescriptor) -> Result<Self> {
        if d.poly.len() != d.degree + 1 {
            return Err(Error::InvalidInput("descriptor degree does not match poly".into()));
        }
        Self::with_modulus(d.p, d.poly.clone())
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor { p: self.fp.p(), degree: self.m, poly: self.modulus.clone() }
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn prime_field(&self) -> &PrimeField {
        &self.fp
    }

    /// Number of elements, if it fits.
    pub fn order(&self) -> Option<u64> {
        self.fp.p().checked_pow(self.m as u32)
    }

    fn build_frobenius(&mut self) {
        let t = self.generator();
        let tp = self.pow(&t, self.fp.p());
        let mut cols = Vec::with_capacity(self.m);
        let mut cur = self.one();
        for _ in 0..self.m {
            cols.push(cur.clone());
            cur = self.mul(&cur, &tp);
        }
        // cols[j] = image of t^j; invert by solving over F_p.
        let inv = crate::linalg::inverse(&self.fp, &transpose(&cols)).expect("Frobenius is invertible");
        self.frob = cols;
        self.frob_inv = transpose(&inv);
    }

    fn apply_cols(&self, cols: &[Vec<u64>], a: &[u64]) -> Vec<u64> {
        let p = self.fp.p();
        let mut out = vec![0u64; self.m];
        for (j, &c) in a.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, x) in out.iter_mut().zip(&cols[j]) {
                *o = (*o + c * x) % p;
            }
        }
        out
    }

    pub fn generator(&self) -> Vec<u64> {
        let mut g = vec![0; self.m];
        if self.m == 1 {
            g[0] = (self.fp.p() - self.modulus[0]) % self.fp.p();
        } else {
            g[1] = 1;
        }
        g
    }

    /// Reduce an arbitrary coefficient list (polynomial in the generator).
    pub fn elem(&self, coeffs: &[u64]) -> Vec<u64> {
        self.reduce_poly(coeffs)
    }

    fn reduce_poly(&self, c: &[u64]) -> Vec<u64> {
        let p = self.fp.p();
        let mut c: Vec<u64> = c.iter().map(|x| x % p).collect();
        let m = self.m;
        for k in (m..c.len()).rev() {
            let lead = c[k];
            if lead == 0 {
                continue;
            }
            c[k] = 0;
            for i in 0..m {
                c[k - m + i] = (c[k - m + i] + (p - lead) * self.modulus[i]) % p;
            }
        }
        c.truncate(m);
        c.resize(m, 0);
        c
    }

    pub fn random(&self, rng: &mut impl Rng) -> Vec<u64> {
        (0..self.m).map(|_| rng.gen_range(0..self.fp.p())).collect()
    }

    pub fn random_nonzero(&self, rng: &mut impl Rng) -> Vec<u64> {
        loop {
            let x = self.random(rng);
            if !self.is_zero(&x) {
                return x;
            }
        }
    }

    /// All elements in lexicographic order of coefficient vectors (small fields).
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let q = self.order().expect("field too large to enumerate") as usize;
        let p = self.fp.p();
        (0..q)
            .map(|mut k| {
                let mut v = vec![0u64; self.m];
                for i in (0..self.m).rev() {
                    v[i] = (k as u64) % p;
                    k /= p as usize;
                }
                v
            })
            .collect()
    }

    /// A generator of the multiplicative group.
    pub fn primitive_element(&self) -> Vec<u64> {
        let q1 = self.order().expect("field too large") - 1;
        let fs = arith::prime_factors(q1);
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ (self.m as u64));
        let mut cand: Vec<Vec<u64>> = Vec::new();
        // deterministic: lexicographic search first
        if q1 < 100_000 {
            cand = self.elements();
        }
        let mut idx = 0;
        loop {
            let g = if idx < cand.len() {
                idx += 1;
                cand[idx - 1].clone()
            } else {
                self.random_nonzero(&mut rng)
            };
            if self.is_zero(&g) {
                continue;
            }
            if fs.iter().all(|&l| self.pow(&g, q1 / l) != self.one()) {
                return g;
            }
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: &[u64]) -> u64 {
        let q1 = self.order().expect("field too large") - 1;
        let mut n = q1;
        for l in arith::prime_factors(q1) {
            while n % l == 0 && self.pow(&a.to_vec(), n / l) == self.one() {
                n /= l;
            }
        }
        n
    }

    fn ext_inv(&self, a: &[u64]) -> Option<Vec<u64>> {
        let f = &self.fp;
        let mut a0 = a.to_vec();
        poly::trim(f, &mut a0);
        if a0.is_empty() {
            return None;
        }
        let (mut r0, mut r1) = (self.modulus.clone(), a0);
        let (mut t0, mut t1): (Poly<u64>, Poly<u64>) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (q, r) = poly::divrem(f, &r0, &r1);
            let t = poly::sub(f, &t0, &poly::mul(f, &q, &t1));
            r0 = r1;
            r1 = r;
            t0 = t1;
            t1 = t;
        }
        // r0 is a nonzero constant
        let c = f.inv(&r0[0])?;
        let inv = poly::scale(f, &t0, &c);
        Some(self.elem(&inv))
    }
}

fn transpose(m: &[Vec<u64>]) -> Vec<Vec<u64>> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len()).map(|j| m.iter().map(|r| r[j]).collect()).collect()
}

impl Ring for GF {
    type Elem = Vec<u64>;
    fn zero(&self) -> Vec<u64> {
        vec![0; self.m]
    }
    fn one(&self) -> Vec<u64> {
        let mut v = vec![0; self.m];
        v[0] = 1;
        v
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let p = self.fp.p();
        a.iter().zip(b).map(|(x, y)| (x + y) % p).collect()
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        let p = self.fp.p();
        a.iter().map(|x| (p - x) % p).collect()
    }
    fn sub(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let p = self.fp.p();
        a.iter().zip(b).map(|(x, y)| (x + p - y) % p).collect()
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let p = self.fp.p();
        let m = self.m;
        if m == 1 {
            return vec![a[0] * b[0] % p];
        }
        let mut c = vec![0u64; 2 * m - 1];
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                c[i + j] = (c[i + j] + x * y) % p;
            }
        }
        for k in (m..c.len()).rev() {
            let lead = c[k];
            if lead == 0 {
                continue;
            }
            for i in 0..m {
                c[k - m + i] = (c[k - m + i] + (p - lead) * self.modulus[i]) % p;
            }
        }
        c.truncate(m);
        c
    }
    fn from_int(&self, n: &BigInt) -> Vec<u64> {
        let mut v = vec![0; self.m];
        v[0] = self.fp.from_int(n);
        v
    }
    fn characteristic(&self) -> BigInt {
        BigInt::from(self.fp.p())
    }
    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.iter().all(|&x| x == 0)
    }
}

impl Field for GF {
    fn inv(&self, a: &Vec<u64>) -> Option<Vec<u64>> {
        self.ext_inv(a)
    }
    fn p(&self) -> u64 {
        self.fp.p()
    }
    fn degree(&self) -> usize {
        self.m
    }
    fn frobenius(&self, a: &Vec<u64>, k: i64) -> Vec<u64> {
        let k = k.rem_euclid(self.m as i64) as usize;
        let (cols, steps) = if k <= self.m / 2 || self.m == 1 {
            (&self.frob, k)
        } else {
            (&self.frob_inv, self.m - k)
        };
        let mut x = a.clone();
        for _ in 0..steps {
            x = self.apply_cols(cols, &x);
        }
        x
    }
    fn to_fp_coords(&self, a: &Vec<u64>) -> Vec<u64> {
        a.clone()
    }
    fn from_fp_coords(&self, c: &[u64]) -> Vec<u64> {
        c.iter().map(|x| x % self.fp.p()).collect()
    }
}

/// Rabin's irreducibility test over F_p.
pub fn is_irreducible_fp(fp: &PrimeField, f: &[u64]) -> bool {
    let f = poly::monic(fp, &f.to_vec());
    let m = match f.len().checked_sub(1) {
        Some(0) | None => return false,
        Some(m) => m,
    };
    if m == 1 {
        return true;
    }
    let x = poly::x(fp);
    if poly::pow_q_mod(fp, &x, m, &f) != poly::rem(fp, &x, &f) {
        return false;
    }
    for q in arith::prime_factors(m as u64) {
        let h = poly::pow_q_mod(fp, &x, m / q as usize, &f);
        let g = poly::gcd(fp, &poly::sub(fp, &h, &x), &f);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// Seeded random monic irreducible of degree m (x when m = 1).
pub fn find_irreducible(fp: &PrimeField, m: usize) -> Vec<u64> {
    assert!(m >= 1);
    if m == 1 {
        return vec![0, 1];
    }
    let p = fp.p();
    let mut rng = ChaCha8Rng::seed_from_u64(p * 1000 + m as u64);
    loop {
        let mut f: Vec<u64> = (0..m).map(|_| rng.gen_range(0..p)).collect();
        f.push(1);
        if f[0] != 0 && is_irreducible_fp(fp, &f) {
            return f;
        }
    }
}

fn pth_root_poly<F: Field>(f: &F, a: &Poly<F::Elem>) -> Poly<F::Elem> {
    let p = f.p() as usize;
    a.iter().step_by(p).map(|c| f.frobenius(c, -1)).collect()
}

/// Squarefree decomposition: pairs (g, e) with f = c·Π g^e, g squarefree and coprime.
pub fn squarefree_decomposition<F: Field>(f: &F, a: &Poly<F::Elem>) -> Vec<(Poly<F::Elem>, usize)> {
    let a = poly::monic(f, a);
    let mut out = Vec::new();
    if a.len() <= 1 {
        return out;
    }
    let da = poly::derivative(f, &a);
    if da.is_empty() {
        for (g, e) in squarefree_decomposition(f, &pth_root_poly(f, &a)) {
            out.push((g, e * f.p() as usize));
        }
        return out;
    }
    let mut c = poly::gcd(f, &a, &da);
    let mut w = poly::divrem(f, &a, &c).0;
    let mut i = 1;
    while w.len() > 1 {
        let y = poly::gcd(f, &w, &c);
        let z = poly::divrem(f, &w, &y).0;
        if z.len() > 1 {
            out.push((poly::monic(f, &z), i));
        }
        i += 1;
        w = y;
        c = poly::divrem(f, &c, &w).0;
    }
    if c.len() > 1 {
        for (g, e) in squarefree_decomposition(f, &pth_root_poly(f, &c)) {
            out.push((g, e * f.p() as usize));
        }
    }
    out
}

/// Degrees (with multiplicity) of the irreducible factors of a squarefree polynomial.
pub fn distinct_degree_degrees<F: Field>(f: &F, a: &Poly<F::Elem>) -> Vec<usize> {
    let mut g = poly::monic(f, a);
    let x = poly::x(f);
    let mut h = poly::rem(f, &x, &g);
    let mut out = Vec::new();
    let mut i = 0;
    while g.len() > 1 {
        i += 1;
        if 2 * i > g.len() - 1 {
            out.push(g.len() - 1);
            break;
        }
        h = poly::pow_q_mod(f, &h, 1, &g);
        let d = poly::gcd(f, &poly::sub(f, &h, &x), &g);
        if d.len() > 1 {
            for _ in 0..(d.len() - 1) / i {
                out.push(i);
            }
            g = poly::divrem(f, &g, &d).0;
            h = poly::rem(f, &h, &g);
        }
    }
    out
}

fn split_linear<F: Field>(f: &F, g: &Poly<F::Elem>, rng: &mut ChaCha8Rng, out: &mut Vec<F::Elem>) {
    let g = poly::monic(f, g);
    match g.len() {
        0 | 1 => return,
        2 => {
            out.push(f.neg(&g[0]));
            return;
        }
        _ => {}
    }
    let p = f.p();
    let md = f.degree();
    loop {
        let mut h: Poly<F::Elem> = (0..g.len() - 1)
            .map(|_| {
                let coords: Vec<u64> = (0..md).map(|_| rng.gen_range(0..p)).collect();
                f.from_fp_coords(&coords)
            })
            .collect();
        poly::trim(f, &mut h);
        if h.len() < 2 {
            continue;
        }
        let s = if p == 2 {
            let mut t = poly::rem(f, &h, &g);
            let mut acc = t.clone();
            for _ in 1..md {
                t = poly::mulmod(f, &t, &t, &g);
                acc = poly::add(f, &acc, &t);
            }
            acc
        } else {
            let t = poly::powmod(f, &h, (p - 1) / 2, &g);
            let mut cur = t.clone();
            let mut acc = t;
            for _ in 1..md {
                cur = poly::powmod(f, &cur, p, &g);
                acc = poly::mulmod(f, &acc, &cur, &g);
            }
            poly::sub(f, &acc, &vec![f.one()])
        };
        let d = poly::gcd(f, &s, &g);
        if d.len() > 1 && d.len() < g.len() {
            let e = poly::divrem(f, &g, &d).0;
            split_linear(f, &d, rng, out);
            split_linear(f, &e, rng, out);
            return;
        }
    }
}

/// Roots lying in the field `f` itself, with multiplicities, sorted lexicographically.
pub fn roots_in_field<F: Field>(f: &F, a: &Poly<F::Elem>) -> Vec<(F::Elem, usize)>
where
    F::Elem: Ord,
{
    let mut a0 = a.clone();
    poly::trim(f, &mut a0);
    if a0.len() <= 1 {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x0a11_0f5e);
    let mut out = Vec::new();
    for (g, _) in squarefree_decomposition(f, &a0) {
        let x = poly::x(f);
        let h = poly::pow_q_mod(f, &x, 1, &g);
        let lin = poly::gcd(f, &poly::sub(f, &h, &x), &g);
        let mut rs = Vec::new();
        split_linear(f, &lin, &mut rng, &mut rs);
        for r in rs {
            let mut mult = 0;
            let mut cur = a0.clone();
            let lin = vec![f.neg(&r), f.one()];
            loop {
                let (q, rem) = poly::divrem(f, &cur, &lin);
                if !rem.is_empty() {
                    break;
                }
                mult += 1;
                cur = q;
            }
            out.push((r, mult));
        }
    }
    out.sort();
    out
}

/// An element of some level of a tower.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, PartialOrd, Ord, Hash)]
pub struct FieldElement {
    pub level: usize,
    pub coeffs: Vec<u64>,
}

#[derive(Debug)]
struct Level {
    field: Arc<GF>,
    /// images of t^j (j < previous degree) in this field
    embed_prev: Option<Vec<Vec<u64>>>,
}

/// Predicates accepted by [`FieldTower::extend_until`].
pub enum Predicate<'a> {
    /// Contains a root of the polynomial whose coefficients live at the given level.
    ContainsRootOf { level: usize, poly: Vec<Vec<u64>> },
    ContainsSubfield(usize),
    /// Caller-supplied test on candidate levels containing F_{p^base}; creates
    /// levels of degree base·j for the listed multipliers j.
    Stabilizes { base: usize, multipliers: Vec<usize>, test: &'a dyn Fn(&FieldTower, usize) -> Result<bool> },
}

/// Chain of extensions F_p = L_0 ⊂ L_1 ⊂ … with stored embeddings.
#[derive(Debug)]
pub struct FieldTower {
    p: u64,
    cap: usize,
    levels: RwLock<Vec<Level>>,
}

impl FieldTower {
    pub fn new(p: u64) -> Result<Self> {
        Self::with_cap(p, DEFAULT_DEGREE_CAP)
    }

    pub fn with_cap(p: u64, cap: usize) -> Result<Self> {
        let f = GF::prime(p)?;
        Ok(FieldTower { p, cap, levels: RwLock::new(vec![Level { field: Arc::new(f), embed_prev: None }]) })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn num_levels(&self) -> usize {
        self.levels.read().unwrap().len()
    }

    pub fn field(&self, level: usize) -> Arc<GF> {
        self.levels.read().unwrap()[level].field.clone()
    }

    pub fn degree(&self, level: usize) -> usize {
        self.field(level).degree()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.levels.read().unwrap().iter().map(|l| l.field.degree()).collect()
    }

    pub fn descriptors(&self) -> Vec<FieldDescriptor> {
        self.levels.read().unwrap().iter().map(|l| l.field.descriptor()).collect()
    }

    /// Smallest level whose degree is a multiple of d, creating one if needed.
    pub fn level_containing(&self, d: usize) -> Result<usize> {
        if d == 0 {
            return Err(Error::InvalidInput("degree 0".into()));
        }
        {
            let lv = self.levels.read().unwrap();
            if let Some(i) = lv.iter().position(|l| l.field.degree() % d == 0) {
                return Ok(i);
            }
        }
        let top = *self.degrees().last().unwrap();
        self.push_level(arith::lcm(top as u64, d as u64) as usize)
    }

    fn push_level(&self, degree: usize) -> Result<usize> {
        if degree > self.cap {
            return Err(Error::CapExceeded(format!("field degree {degree} exceeds cap {}", self.cap)));
        }
        let mut lv = self.levels.write().unwrap();
        let top = lv.last().unwrap().field.clone();
        if degree % top.degree() != 0 {
            return Err(Error::InvalidInput("tower levels must form a divisibility chain".into()));
        }
        if degree == top.degree() {
            return Ok(lv.len() - 1);
        }
        let new = GF::new(self.p, degree)?;
        // image of the old generator: smallest root of the old modulus
        let f: Vec<Vec<u64>> = top.modulus().iter().map(|&c| new.from_fp_coords(&[c])).collect();
        let roots = roots_in_field(&new, &f);
        let g = roots.first().ok_or_else(|| Error::NonConvergence("no embedding root".into()))?.0.clone();
        let mut cols = Vec::with_capacity(top.degree());
        let mut cur = new.one();
        for _ in 0..top.degree() {
            cols.push(cur.clone());
            cur = new.mul(&cur, &g);
        }
        lv.push(Level { field: Arc::new(new), embed_prev: Some(cols) });
        Ok(lv.len() - 1)
    }

    pub fn extend_until(&self, pred: Predicate<'_>) -> Result<usize> {
        match pred {
            Predicate::ContainsSubfield(d) => self.level_containing(d),
            Predicate::ContainsRootOf { level, poly } => {
                let f = self.field(level);
                let mut degs = Vec::new();
                for (g, _) in squarefree_decomposition(&*f, &poly) {
                    degs.extend(distinct_degree_degrees(&*f, &g));
                }
                let dmin = *degs.iter().min().ok_or_else(|| Error::InvalidInput("constant polynomial has no roots".into()))?;
                let base = f.degree();
                let n = self.num_levels();
                for i in level..n {
                    let rel = self.degree(i) / base;
                    if degs.iter().any(|d| rel % d == 0) {
                        return Ok(i);
                    }
                }
                self.level_containing(base * dmin)
            }
            Predicate::Stabilizes { base, multipliers, test } => {
                let n = self.num_levels();
                for i in 0..n {
                    if self.degree(i) % base == 0 && test(self, i)? {
                        return Ok(i);
                    }
                }
                for j in multipliers {
                    let i = self.level_containing(base * j)?;
                    if test(self, i)? {
                        return Ok(i);
                    }
                }
                Err(Error::CapExceeded("kernel dimension did not stabilize within the tried levels".into()))
            }
        }
    }

    /// Embed coefficients from level `from` into level `to ≥ from`.
    pub fn embed(&self, coeffs: &[u64], from: usize, to: usize) -> Vec<u64> {
        assert!(from <= to, "embedding goes upward only");
        let lv = self.levels.read().unwrap();
        let mut x = coeffs.to_vec();
        let p = self.p;
        for lvl in &lv[from + 1..=to] {
            let cols = lvl.embed_prev.as_ref().unwrap();
            let mut out = vec![0u64; lvl.field.degree()];
            for (j, &c) in x.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for (o, y) in out.iter_mut().zip(&cols[j]) {
                    *o = (*o + c * y) % p;
                }
            }
            x = out;
        }
        x
    }

    pub fn element(&self, level: usize, coeffs: &[u64]) -> FieldElement {
        FieldElement { level, coeffs: self.field(level).elem(coeffs) }
    }

    pub fn lift(&self, x: &FieldElement, to: usize) -> FieldElement {
        FieldElement { level: to, coeffs: self.embed(&x.coeffs, x.level, to) }
    }

    fn common(&self, a: &FieldElement, b: &FieldElement) -> (usize, Vec<u64>, Vec<u64>) {
        let l = a.level.max(b.level);
        (l, self.embed(&a.coeffs, a.level, l), self.embed(&b.coeffs, b.level, l))
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let (l, x, y) = self.common(a, b);
        FieldElement { level: l, coeffs: self.field(l).add(&x, &y) }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let (l, x, y) = self.common(a, b);
        FieldElement { level: l, coeffs: self.field(l).mul(&x, &y) }
    }

    pub fn equal(&self, a: &FieldElement, b: &FieldElement) -> bool {
        let (_, x, y) = self.common(a, b);
        x == y
    }

    pub fn frobenius(&self, x: &FieldElement, k: i64) -> FieldElement {
        FieldElement { level: x.level, coeffs: self.field(x.level).frobenius(&x.coeffs, k) }
    }

    /// All roots of f (coefficients at `level`) in the smallest level containing
    /// all of them, with multiplicities.
    pub fn roots(&self, level: usize, f: &[Vec<u64>]) -> Result<Vec<(FieldElement, usize)>> {
        let fld = self.field(level);
        let mut f0 = f.to_vec();
        poly::trim(&*fld, &mut f0);
        if f0.is_empty() {
            return Err(Error::InvalidInput("zero polynomial".into()));
        }
        let mut degs = Vec::new();
        for (g, _) in squarefree_decomposition(&*fld, &f0) {
            degs.extend(distinct_degree_degrees(&*fld, &g));
        }
        let rel = degs.iter().fold(1u64, |acc, &d| arith::lcm(acc, d as u64)) as usize;
        let target = self.level_containing(fld.degree() * rel)?;
        let big = self.field(target);
        let fe: Vec<Vec<u64>> = f0.iter().map(|c| self.embed(c, level, target)).collect();
        Ok(roots_in_field(&*big, &fe).into_iter().map(|(r, m)| (FieldElement { level: target, coeffs: r }, m)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_generator_squares() {
        let f = GF::new(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let x = f.generator();
        assert_eq!(f.frobenius(&x, 1), vec![1, 1]);
        assert_eq!(f.frobenius(&f.frobenius(&x, 1), -1), x);
    }

    #[test]
    fn inverses() {
        let f = GF::new(3, 4).unwrap();
        for a in f.elements().into_iter().skip(1) {
            let b = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &b), f.one());
        }
    }

    #[test]
    fn tower_lcm_levels() {
        let t = FieldTower::new(3).unwrap();
        t.level_containing(3).unwrap();
        let l = t.level_containing(4).unwrap();
        assert_eq!(t.degree(l), 12);
        assert_eq!(t.degrees(), vec![1, 3, 12]);
    }

    #[test]
    fn cap_is_enforced() {
        let t = FieldTower::new(2).unwrap();
        assert!(matches!(t.level_containing(25), Err(Error::CapExceeded(_))));
    }

    #[test]
    fn roots_small() {
        let t = FieldTower::new(3).unwrap();
        let r = t.roots(0, &[vec![2], vec![0], vec![1]]).unwrap();
        let v: Vec<_> = r.iter().map(|(e, m)| (e.coeffs[0], *m)).collect();
        assert_eq!(v, vec![(1, 1), (2, 1)]);
        let t2 = FieldTower::new(2).unwrap();
        let r = t2.roots(0, &[vec![1], vec![1], vec![1]]).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(t2.degree(r[0].0.level), 2);
    }

    #[test]
    fn multiplicities() {
        let f = GF::new(5, 1).unwrap();
        // (x-1)^3 (x-2)
        let mut a = vec![vec![1]];
        for r in [1u64, 1, 1, 2] {
            a = poly::mul(&f, &a, &vec![vec![5 - r], vec![1]]);
        }
        let rs = roots_in_field(&f, &a);
        assert_eq!(rs, vec![(vec![1], 3), (vec![2], 1)]);
        // x^5 - x^... p-th power case: (x-1)^5
        let a5 = vec![vec![4], vec![0], vec![0], vec![0], vec![0], vec![1]];
        assert_eq!(roots_in_field(&f, &a5), vec![(vec![1], 5)]);
    }
}
