//! Universal Witt sum, product and negation polynomials over Z.

use std::collections::{BTreeMap, HashMap};
use std::path::PathBuf;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::Ring;

/// Environment variable naming a directory for the on-disk polynomial cache.
pub const CACHE_ENV: &str = "UNIPOTENT_WITT_CACHE";
const CACHE_VERSION: u32 = 1;

pub const MAX_R: usize = 4;
/// Bound on p^{r-1}; the polynomials have weighted degree p^{r-1}.
pub const MAX_WEIGHT: u64 = 125;

/// Sparse integer polynomial; keys are exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MPoly {
    pub nvars: usize,
    pub terms: BTreeMap<Vec<u32>, BigInt>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut m = Self::zero(nvars);
        if !c.is_zero() {
            m.terms.insert(vec![0; nvars], c);
        }
        m
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut m = Self::zero(nvars);
        m.terms.insert(e, BigInt::one());
        m
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &MPoly) -> MPoly {
        let mut t = self.terms.clone();
        for (e, c) in &o.terms {
            let entry = t.entry(e.clone()).or_insert_with(BigInt::zero);
            *entry += c;
            if entry.is_zero() {
                t.remove(e);
            }
        }
        MPoly { nvars: self.nvars, terms: t }
    }

    pub fn scale(&self, c: &BigInt) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect() }
    }

    pub fn sub(&self, o: &MPoly) -> MPoly {
        self.add(&o.scale(&BigInt::from(-1)))
    }

    pub fn mul(&self, o: &MPoly) -> MPoly {
        let mut t: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                *t.entry(e).or_insert_with(BigInt::zero) += c1 * c2;
            }
        }
        t.retain(|_, c| !c.is_zero());
        MPoly { nvars: self.nvars, terms: t }
    }

    pub fn pow(&self, mut k: u64) -> MPoly {
        let mut r = MPoly::constant(self.nvars, BigInt::one());
        let mut b = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                r = r.mul(&b);
            }
            k >>= 1;
            if k > 0 {
                b = b.mul(&b);
            }
        }
        r
    }

    /// Exact division by an integer; errors if some coefficient is not divisible.
    pub fn div_exact(&self, d: &BigInt) -> Result<MPoly> {
        let mut t = BTreeMap::new();
        for (e, c) in &self.terms {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return Err(Error::AxiomFailure(format!("ghost equation not integral at {e:?}")));
            }
            t.insert(e.clone(), q);
        }
        Ok(MPoly { nvars: self.nvars, terms: t })
    }

    /// Rename variables: variable i becomes `map[i]` in a ring with `nvars` variables.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> MPoly {
        let mut t: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut ne = vec![0; nvars];
            for (i, &x) in e.iter().enumerate() {
                ne[map[i]] += x;
            }
            *t.entry(ne).or_insert_with(BigInt::zero) += c;
        }
        t.retain(|_, c| !c.is_zero());
        MPoly { nvars, terms: t }
    }

    /// Evaluate in a commutative ring.
    pub fn eval<R: Ring>(&self, ring: &R, vals: &[R::Elem]) -> R::Elem {
        let maxe: Vec<u32> = (0..self.nvars).map(|i| self.terms.keys().map(|e| e[i]).max().unwrap_or(0)).collect();
        let powers: Vec<Vec<R::Elem>> = (0..self.nvars)
            .map(|i| {
                let mut v = vec![ring.one()];
                for k in 1..=maxe[i] as usize {
                    let nx = ring.mul(&v[k - 1], &vals[i]);
                    v.push(nx);
                }
                v
            })
            .collect();
        let mut acc = ring.zero();
        'terms: for (e, c) in &self.terms {
            let mut t = ring.from_int(c);
            if ring.is_zero(&t) {
                continue;
            }
            for (i, &x) in e.iter().enumerate() {
                if x > 0 {
                    t = ring.mul(&t, &powers[i][x as usize]);
                    if ring.is_zero(&t) {
                        continue 'terms;
                    }
                }
            }
            acc = ring.add(&acc, &t);
        }
        acc
    }
}

/// Ghost polynomial w_n in variables offset..offset+n.
pub fn ghost(p: u64, n: usize, nvars: usize, offset: usize) -> MPoly {
    let mut w = MPoly::zero(nvars);
    for i in 0..=n {
        let term = MPoly::var(nvars, offset + i).pow(p.pow((n - i) as u32)).scale(&BigInt::from(p).pow(i as u32));
        w = w.add(&term);
    }
    w
}

/// S_n, P_n in variables X_0..X_{r-1}, Y_0..Y_{r-1}; N_n in X only.
#[derive(Clone, Debug)]
pub struct WittPolynomials {
    pub p: u64,
    pub r: usize,
    pub sum: Vec<MPoly>,
    pub prod: Vec<MPoly>,
    pub neg: Vec<MPoly>,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    p: u64,
    r: usize,
    sum: Vec<Vec<(Vec<u32>, String)>>,
    prod: Vec<Vec<(Vec<u32>, String)>>,
    neg: Vec<Vec<(Vec<u32>, String)>>,
}

fn to_file(v: &[MPoly]) -> Vec<Vec<(Vec<u32>, String)>> {
    v.iter().map(|m| m.terms.iter().map(|(e, c)| (e.clone(), c.to_string())).collect()).collect()
}

fn from_file(v: &[Vec<(Vec<u32>, String)>], nvars: usize) -> Option<Vec<MPoly>> {
    v.iter()
        .map(|terms| {
            let mut m = MPoly::zero(nvars);
            for (e, c) in terms {
                if e.len() != nvars {
                    return None;
                }
                m.terms.insert(e.clone(), c.parse().ok()?);
            }
            Some(m)
        })
        .collect()
}

/// Solve w_n(Z) = target_n for Z given the lower components.
fn solve_ghost(p: u64, target: impl Fn(usize) -> MPoly, r: usize) -> Result<Vec<MPoly>> {
    let mut out: Vec<MPoly> = Vec::with_capacity(r);
    // powers[i] = Z_i^{p^k} for the current k
    let mut pw: Vec<Vec<MPoly>> = Vec::new();
    for n in 0..r {
        let mut t = target(n);
        for (i, pows) in pw.iter_mut().enumerate() {
            let k = n - i;
            while pows.len() <= k {
                let nx = pows.last().unwrap().pow(p);
                pows.push(nx);
            }
            t = t.sub(&pows[k].scale(&BigInt::from(p).pow(i as u32)));
        }
        let z = t.div_exact(&BigInt::from(p).pow(n as u32))?;
        pw.push(vec![z.clone()]);
        out.push(z);
    }
    Ok(out)
}

impl WittPolynomials {
    fn compute(p: u64, r: usize) -> Result<Self> {
        let nv = 2 * r;
        let sum = solve_ghost(p, |n| ghost(p, n, nv, 0).add(&ghost(p, n, nv, r)), r)?;
        let prod = solve_ghost(p, |n| ghost(p, n, nv, 0).mul(&ghost(p, n, nv, r)), r)?;
        let neg = solve_ghost(p, |n| ghost(p, n, r, 0).scale(&BigInt::from(-1)), r)?;
        Ok(WittPolynomials { p, r, sum, prod, neg })
    }

    fn cache_path(p: u64, r: usize) -> Option<PathBuf> {
        std::env::var_os(CACHE_ENV).map(|d| PathBuf::from(d).join(format!("witt-p{p}-r{r}.json")))
    }

    fn load(p: u64, r: usize) -> Option<Self> {
        let path = Self::cache_path(p, r)?;
        let text = std::fs::read_to_string(path).ok()?;
        let f: CacheFile = serde_json::from_str(&text).ok()?;
        if f.version != CACHE_VERSION || f.p != p || f.r != r {
            return None;
        }
        let w = WittPolynomials {
            p,
            r,
            sum: from_file(&f.sum, 2 * r)?,
            prod: from_file(&f.prod, 2 * r)?,
            neg: from_file(&f.neg, r)?,
        };
        (w.sum.len() == r && w.prod.len() == r && w.neg.len() == r).then_some(w)
    }

    fn store(&self) {
        let Some(path) = Self::cache_path(self.p, self.r) else { return };
        let f = CacheFile {
            version: CACHE_VERSION,
            p: self.p,
            r: self.r,
            sum: to_file(&self.sum),
            prod: to_file(&self.prod),
            neg: to_file(&self.neg),
        };
        if let Some(dir) = path.parent() {
            let _ = std::fs::create_dir_all(dir);
        }
        if let Ok(text) = serde_json::to_string(&f) {
            let tmp = path.with_extension("tmp");
            if std::fs::write(&tmp, text).is_ok() {
                let _ = std::fs::rename(tmp, path);
            }
        }
    }

    /// Cached polynomials for (p, r).
    pub fn get(p: u64, r: usize) -> Result<Arc<Self>> {
        if r == 0 || r > MAX_R {
            return Err(Error::CapExceeded(format!("Witt length r = {r} outside 1..={MAX_R}")));
        }
        if !crate::arith::is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        if p.checked_pow(r as u32 - 1).is_none_or(|w| w > MAX_WEIGHT) {
            return Err(Error::CapExceeded(format!("p^(r-1) exceeds {MAX_WEIGHT} for p = {p}, r = {r}")));
        }
        static CACHE: OnceLock<Mutex<HashMap<(u64, usize), Arc<WittPolynomials>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().unwrap();
        if let Some(w) = guard.get(&(p, r)) {
            return Ok(w.clone());
        }
        let w = match Self::load(p, r) {
            Some(w) => w,
            None => {
                let w = Self::compute(p, r)?;
                w.store();
                w
            }
        };
        let w = Arc::new(w);
        guard.insert((p, r), w.clone());
        Ok(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s1_p2() {
        let w = WittPolynomials::get(2, 2).unwrap();
        // S_1 = X1 + Y1 - X0 Y0 for p = 2
        let mut expect = MPoly::var(4, 1).add(&MPoly::var(4, 3));
        expect = expect.sub(&MPoly::var(4, 0).mul(&MPoly::var(4, 2)));
        assert_eq!(w.sum[1], expect);
        // P_1 = X0^2 Y1 + X1 Y0^2 + 2 X1 Y1
        assert_eq!(w.prod[1].terms.len(), 3);
    }

    #[test]
    fn ghost_identity_holds() {
        for (p, r) in [(2u64, 3usize), (3, 3), (5, 2)] {
            let w = WittPolynomials::get(p, r).unwrap();
            let nv = 2 * r;
            let smap: Vec<MPoly> = w.sum.clone();
            for n in 0..r {
                // w_n(S) computed by substitution
                let mut lhs = MPoly::zero(nv);
                for i in 0..=n {
                    lhs = lhs.add(&smap[i].pow(p.pow((n - i) as u32)).scale(&BigInt::from(p).pow(i as u32)));
                }
                assert_eq!(lhs, ghost(p, n, nv, 0).add(&ghost(p, n, nv, r)));
            }
        }
    }

    #[test]
    fn caps() {
        assert!(WittPolynomials::get(2, 5).is_err());
        assert!(WittPolynomials::get(7, 4).is_err());
    }
}
