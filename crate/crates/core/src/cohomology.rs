//! Minimal free resolutions over finite local algebras and the resulting Betti numbers.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};
use crate::hopf::DualLocalAlgebra;
use crate::ring::Field;

pub const MAX_LOCAL_DIM: usize = 128;
pub const MAX_RES_DEGREE: usize = 10;
pub const MAX_NC_GENS: usize = 3;
pub const MAX_NC_DEGREE: usize = 8;

/// Dense row echelon form over F_p with deterministic pivoting.
struct Echelon {
    p: u64,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Echelon {
    fn new(p: u64) -> Self {
        Echelon { p, rows: Vec::new(), pivots: Vec::new() }
    }

    /// Reduces v against the current rows; returns the remainder.
    fn reduce(&self, v: &mut [u64]) {
        let p = self.p;
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let x = v[c];
            if x != 0 {
                let f = p - x;
                for (a, b) in v.iter_mut().zip(row).skip(c) {
                    if *b != 0 {
                        *a = (*a + f * b) % p;
                    }
                }
            }
        }
    }

    /// Inserts v if independent; returns whether it was.
    fn insert(&mut self, mut v: Vec<u64>) -> bool {
        self.reduce(&mut v);
        let Some(c) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = arith::inv_mod(v[c], self.p).expect("nonzero pivot");
        for a in v.iter_mut() {
            *a = *a * inv % self.p;
        }
        self.rows.push(v);
        self.pivots.push(c);
        true
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Kernel of the map whose images of the basis vectors are `cols` (each of length m).
fn kernel(p: u64, cols: &[Vec<u64>], m: usize) -> Vec<Vec<u64>> {
    let n = cols.len();
    let mut ech = Echelon::new(p);
    let mut out = Vec::new();
    for (j, c) in cols.iter().enumerate() {
        let mut v = Vec::with_capacity(m + n);
        v.extend_from_slice(c);
        v.extend((0..n).map(|k| u64::from(k == j)));
        let mut w = v.clone();
        ech.reduce(&mut w);
        if w[..m].iter().all(|&x| x == 0) {
            out.push(w[m..].to_vec());
        } else {
            ech.insert(v);
        }
    }
    // kernel vectors found early may be reduced further by later rows; re-echelon them
    let mut k = Echelon::new(p);
    for v in out {
        k.insert(v);
    }
    k.rows
}

/// Finite-dimensional local F_p-algebra with basis e_0 = 1, e_1..e_{n−1} spanning m.
#[derive(Clone, Debug)]
pub struct LocalAlgebra {
    pub p: u64,
    pub name: String,
    /// mult[i][j] = coordinates of e_i·e_j
    pub mult: Vec<Vec<Vec<u64>>>,
    /// basis indices of minimal algebra generators of m
    pub generators: Vec<Vec<u64>>,
    /// exponents e_i when built from a monomial presentation
    pub presentation: Option<Vec<u32>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BettiSeries {
    pub betti: Vec<usize>,
    pub g: usize,
    pub s: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct Resolution {
    pub series: BettiSeries,
    /// differentials[i][j] = image in A^{b_i} of the j-th generator of A^{b_{i+1}}
    pub differentials: Vec<Vec<Vec<u64>>>,
    pub minimal: bool,
    pub exact: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SeriesCheck {
    pub formula: String,
    pub expected: Vec<i64>,
    pub computed: Vec<usize>,
    pub first_mismatch: Option<usize>,
}

impl SeriesCheck {
    pub fn pass(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Ext1Check {
    pub g: usize,
    pub s: usize,
    pub b2: usize,
    pub expected: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FglDualFlags {
    pub g: usize,
    pub nc_fgl_dual: bool,
    pub comm_fgl_dual: bool,
    pub comm_lower_bound: bool,
    pub measured_s: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct NcOracle {
    pub g: usize,
    pub d: usize,
    /// (internal degree, rank of A^g → A in that degree, source dim, target dim)
    pub degrees: Vec<(usize, usize, usize, usize)>,
    pub injective: bool,
    pub cokernel_is_k: bool,
    pub exact: bool,
    pub ext_dims: Vec<usize>,
}

impl LocalAlgebra {
    /// k[x_1..x_s]/(x_1^{e_1},…,x_s^{e_s}) with monomial basis.
    pub fn truncated(p: u64, exps: &[u32]) -> Result<Self> {
        if !arith::is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        for &e in exps {
            let mut q = 1u64;
            while q < e as u64 {
                q *= p;
            }
            if e < 2 || q != e as u64 {
                return Err(Error::InvalidInput(format!("exponent {e} is not a positive power of {p}")));
            }
        }
        let dim = exps.iter().try_fold(1usize, |acc, &e| acc.checked_mul(e as usize)).filter(|&d| d <= MAX_LOCAL_DIM);
        let n = dim.ok_or_else(|| Error::CapExceeded(format!("local algebra dimension exceeds {MAX_LOCAL_DIM}")))?;
        let s = exps.len();
        let decode = |mut i: usize| -> Vec<u32> {
            let mut e = vec![0; s];
            for (k, &c) in exps.iter().enumerate() {
                e[k] = (i % c as usize) as u32;
                i /= c as usize;
            }
            e
        };
        let encode = |e: &[u32]| -> Option<usize> {
            let mut idx = 0;
            let mut stride = 1;
            for (k, &c) in exps.iter().enumerate() {
                if e[k] >= c {
                    return None;
                }
                idx += e[k] as usize * stride;
                stride *= c as usize;
            }
            Some(idx)
        };
        let mut mult = vec![vec![vec![0u64; n]; n]; n];
        for i in 0..n {
            let a = decode(i);
            for j in 0..n {
                let b = decode(j);
                let c: Vec<u32> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
                if let Some(k) = encode(&c) {
                    mult[i][j][k] = 1;
                }
            }
        }
        let generators = (0..s)
            .map(|v| {
                let e: Vec<u32> = (0..s).map(|u| u32::from(u == v)).collect();
                let mut g = vec![0u64; n];
                g[encode(&e).unwrap()] = 1;
                g
            })
            .collect();
        let name = if s == 0 {
            "k".to_string()
        } else {
            let vars = ["x", "y", "z", "w", "u", "v"];
            let parts: Vec<String> = exps.iter().enumerate().map(|(i, e)| format!("{}^{e}", vars.get(i).copied().unwrap_or("t"))).collect();
            format!("k[{}]/({})", vars.iter().take(s).copied().collect::<Vec<_>>().join(","), parts.join(","))
        };
        Ok(LocalAlgebra { p, name, mult, generators, presentation: Some(exps.to_vec()) })
    }

    /// Rebases a dual local algebra onto (1, basis of m); structure constants must lie in F_p.
    pub fn from_dual(a: &DualLocalAlgebra) -> Result<Self> {
        let f = &*a.field;
        let p = f.p();
        let n = a.dim();
        if n > MAX_LOCAL_DIM {
            return Err(Error::CapExceeded(format!("local algebra dimension exceeds {MAX_LOCAL_DIM}")));
        }
        let to_fp = |x: &Vec<u64>| -> Result<u64> {
            if x.iter().skip(1).any(|&c| c != 0) {
                Err(Error::Unsupported("structure constants outside F_p".into()))
            } else {
                Ok(x[0])
            }
        };
        let mut basis: Vec<Vec<u64>> = vec![a.unit.iter().map(to_fp).collect::<Result<_>>()?];
        for v in &a.m {
            basis.push(v.iter().map(to_fp).collect::<Result<_>>()?);
        }
        if basis.len() != n {
            return Err(Error::InvalidInput("maximal ideal is not a hyperplane".into()));
        }
        let inv = fp_inverse(p, &basis).ok_or_else(|| Error::InvalidInput("degenerate basis".into()))?;
        let coords = |v: &[u64]| -> Vec<u64> { (0..n).map(|i| (0..n).fold(0, |acc, j| (acc + inv[i][j] * v[j]) % p)).collect() };
        let fmult: Vec<Vec<Vec<u64>>> = a.mult.iter().map(|r| r.iter().map(|v| v.iter().map(to_fp).collect::<Result<_>>()).collect::<Result<_>>()).collect::<Result<_>>()?;
        let mul_old = |x: &[u64], y: &[u64]| -> Vec<u64> {
            let mut out = vec![0u64; n];
            for (i, xi) in x.iter().enumerate() {
                if *xi == 0 {
                    continue;
                }
                for (j, yj) in y.iter().enumerate() {
                    if *yj == 0 {
                        continue;
                    }
                    let c = xi * yj % p;
                    for (o, z) in out.iter_mut().zip(&fmult[i][j]) {
                        *o = (*o + c * z) % p;
                    }
                }
            }
            out
        };
        let mut mult = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in 0..n {
                mult[i][j] = coords(&mul_old(&basis[i], &basis[j]));
            }
        }
        let mut alg = LocalAlgebra { p, name: "dual algebra".into(), mult, generators: Vec::new(), presentation: None };
        alg.generators = alg.minimal_generators();
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.mult.len()
    }

    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let p = self.p;
        let n = self.dim();
        let mut out = vec![0u64; n];
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if *y == 0 {
                    continue;
                }
                let c = x * y % p;
                for (o, z) in out.iter_mut().zip(&self.mult[i][j]) {
                    if *z != 0 {
                        *o = (*o + c * z) % p;
                    }
                }
            }
        }
        out
    }

    fn m_basis(&self) -> Vec<Vec<u64>> {
        let n = self.dim();
        (1..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect()
    }

    fn m_squared(&self) -> Echelon {
        let mb = self.m_basis();
        let mut ech = Echelon::new(self.p);
        for a in &mb {
            for b in &mb {
                ech.insert(self.mul(a, b));
            }
        }
        ech
    }

    fn minimal_generators(&self) -> Vec<Vec<u64>> {
        let mut ech = self.m_squared();
        self.m_basis().into_iter().filter(|v| ech.insert(v.clone())).collect()
    }

    /// dim m/m².
    pub fn cotangent_dim(&self) -> usize {
        self.dim() - 1 - self.m_squared().rank()
    }

    /// a·v for a ∈ A acting on a free module element of rank b.
    fn act(&self, a: &[u64], v: &[u64], b: usize) -> Vec<u64> {
        let n = self.dim();
        let mut out = vec![0u64; n * b];
        for j in 0..b {
            let piece = self.mul(a, &v[j * n..(j + 1) * n]);
            out[j * n..(j + 1) * n].copy_from_slice(&piece);
        }
        out
    }

    fn basis_elt(&self, t: usize) -> Vec<u64> {
        (0..self.dim()).map(|i| u64::from(i == t)).collect()
    }

    /// Columns of the F_p-linear map A^{gens.len()} → A^b sending e_t·u_j to e_t·gens[j].
    fn map_columns(&self, gens: &[Vec<u64>], b: usize) -> Vec<Vec<u64>> {
        let n = self.dim();
        let mut cols = Vec::with_capacity(gens.len() * n);
        for g in gens {
            for t in 0..n {
                cols.push(self.act(&self.basis_elt(t), g, b));
            }
        }
        cols
    }

    /// Minimal resolution of k to homological degree D; `shuffle` randomizes pivot order.
    pub fn minimal_resolution(&self, d: usize, shuffle: Option<u64>) -> Result<Resolution> {
        if d > MAX_RES_DEGREE {
            return Err(Error::CapExceeded(format!("resolution degree {d} exceeds {MAX_RES_DEGREE}")));
        }
        let n = self.dim();
        let p = self.p;
        let mut rng = shuffle.map(ChaCha8Rng::seed_from_u64);
        let mut betti = vec![1usize];
        let mut differentials = Vec::new();
        let mut minimal = true;
        let mut exact = true;
        // kernel of the augmentation A → k is m ⊆ A^1
        let mut kern: Vec<Vec<u64>> = self.m_basis();
        let mut b = 1usize;
        for _ in 1..=d {
            if kern.is_empty() {
                betti.push(0);
                differentials.push(Vec::new());
                b = 0;
                continue;
            }
            let mut mk = Echelon::new(p);
            for g in &self.generators {
                for v in &kern {
                    mk.insert(self.act(g, v, b));
                }
            }
            let mut order = kern.clone();
            if let Some(r) = rng.as_mut() {
                order.shuffle(r);
            }
            let mut gens = Vec::new();
            for v in order {
                if mk.insert(v.clone()) {
                    gens.push(v);
                }
            }
            // minimality: generator entries lie in m, i.e. have no e_0 component
            if gens.iter().any(|g| (0..b).any(|j| g[j * n] != 0)) {
                minimal = false;
            }
            let cols = self.map_columns(&gens, b);
            let next = kernel(p, &cols, n * b);
            // image of the new map must be the whole previous kernel
            let rank = cols.len() - next.len();
            if rank != kern.len() {
                exact = false;
            }
            betti.push(gens.len());
            differentials.push(gens);
            kern = next;
            b = betti[betti.len() - 1];
        }
        // consecutive differentials compose to zero
        for i in 1..differentials.len() {
            let prev_b = betti[i - 1];
            let prev = &differentials[i - 1];
            for g in &differentials[i] {
                let mut acc = vec![0u64; n * prev_b];
                for (j, pg) in prev.iter().enumerate() {
                    let coeff = &g[j * n..(j + 1) * n];
                    let t = self.act(coeff, pg, prev_b);
                    for (a, x) in acc.iter_mut().zip(&t) {
                        *a = (*a + x) % p;
                    }
                }
                if acc.iter().any(|&x| x != 0) {
                    exact = false;
                }
            }
        }
        let g = betti.get(1).copied().unwrap_or(0);
        let s = self.presentation.as_ref().map(|e| e.len());
        Ok(Resolution { series: BettiSeries { betti, g, s }, differentials, minimal, exact })
    }
}

fn fp_inverse(p: u64, rows: &[Vec<u64>]) -> Option<Vec<Vec<u64>>> {
    // rows are basis vectors (columns of the change of basis); invert the matrix with those columns
    let n = rows.len();
    let mut a: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| rows[j][i] % p).chain((0..n).map(|j| u64::from(i == j))).collect()).collect();
    for c in 0..n {
        let r = (c..n).find(|&r| a[r][c] != 0)?;
        a.swap(c, r);
        let inv = arith::inv_mod(a[c][c], p)?;
        for x in a[c].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..n {
            if r != c && a[r][c] != 0 {
                let f = p - a[r][c];
                let pivot = a[c].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot) {
                    *x = (*x + f * y) % p;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

fn binom(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// Coefficients of (1+t)^g / (1−t²)^s up to t^d.
pub fn genfunc_series(g: usize, s: usize, d: usize) -> Vec<i64> {
    let num: Vec<i64> = (0..=d).map(|k| binom(g, k)).collect();
    // 1/(1−t²)^s = Σ C(k+s−1, s−1) t^{2k}
    let den: Vec<i64> = (0..=d).map(|k| if k % 2 == 1 { 0 } else if s == 0 { i64::from(k == 0) } else { binom(k / 2 + s - 1, s - 1) }).collect();
    (0..=d).map(|k| (0..=k).map(|i| num[i] * den[k - i]).sum()).collect()
}

pub fn verify_genfunc(a: &LocalAlgebra, d: usize, gs: Option<(usize, usize)>) -> Result<SeriesCheck> {
    let (g, s) = match (gs, &a.presentation) {
        (Some(x), _) => x,
        (None, Some(e)) => (e.len(), e.len()),
        (None, None) => return Err(Error::InvalidInput("genfunc needs (g, s) for algebras without a presentation".into())),
    };
    let res = a.minimal_resolution(d, None)?;
    let expected = genfunc_series(g, s, d);
    let computed = res.series.betti.clone();
    let first_mismatch = (0..=d).find(|&k| expected[k] != computed[k] as i64);
    Ok(SeriesCheck { formula: format!("(1+t)^{g}/(1-t^2)^{s}"), expected, computed, first_mismatch })
}

pub fn verify_ext1_formula(a: &LocalAlgebra) -> Result<Ext1Check> {
    let e = a.presentation.as_ref().ok_or_else(|| Error::InvalidInput("ext1 check needs a presentation".into()))?;
    let res = a.minimal_resolution(2, None)?;
    let (g, s) = (res.series.g, e.len());
    let b2 = res.series.betti[2];
    let expected = binom(g, 2) as usize + s;
    Ok(Ext1Check { g, s, b2, expected, pass: b2 == expected })
}

pub fn fgl_dual_criteria(series: &BettiSeries, g: usize) -> Result<FglDualFlags> {
    let b = &series.betti;
    if b.len() < 4 {
        return Err(Error::InvalidInput("criteria need the series to degree at least 3".into()));
    }
    let nc = b[0] == 1 && b[1] == g && b.iter().skip(2).all(|&x| x == 0);
    let comm = b.iter().enumerate().all(|(n, &x)| x as i64 == binom(g, n));
    let lower = b.iter().enumerate().all(|(n, &x)| x as i64 >= binom(g, n));
    Ok(FglDualFlags { g, nc_fgl_dual: nc, comm_fgl_dual: comm, comm_lower_bound: lower, measured_s: b[2] as i64 - binom(g, 2) })
}

/// Exactness of 0 → A^g → A → k for the truncated free associative algebra on g letters.
pub fn nc_resolution_oracle(g: usize, d: usize) -> Result<NcOracle> {
    if g > MAX_NC_GENS || d > MAX_NC_DEGREE {
        return Err(Error::CapExceeded(format!("nc oracle needs g ≤ {MAX_NC_GENS}, D ≤ {MAX_NC_DEGREE}")));
    }
    let words = |len: usize| -> Vec<Vec<u8>> {
        let mut out = vec![Vec::new()];
        for _ in 0..len {
            out = out.into_iter().flat_map(|w| (0..g as u8).map(move |l| [w.as_slice(), &[l]].concat())).collect();
        }
        if g == 0 && len > 0 {
            out.clear();
        }
        out
    };
    let mut degrees = Vec::new();
    let mut injective = true;
    let mut surjective = true;
    for deg in 1..d {
        // source: pairs (word of length deg−1, generator i) ↦ word·X_i
        let target: BTreeMap<Vec<u8>, usize> = words(deg).into_iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut pivots: BTreeMap<usize, ()> = BTreeMap::new();
        let mut rank = 0;
        let src = words(deg - 1);
        for w in &src {
            for i in 0..g as u8 {
                let img = [w.as_slice(), &[i]].concat();
                // images are distinct basis words, so independence is pivot distinctness
                if pivots.insert(target[&img], ()).is_none() {
                    rank += 1;
                }
            }
        }
        let sdim = src.len() * g;
        injective &= rank == sdim;
        surjective &= rank == target.len();
        degrees.push((deg, rank, sdim, target.len()));
    }
    let mut ext_dims = vec![1, g];
    ext_dims.extend(std::iter::repeat(0).take(d.saturating_sub(1)));
    let exact = injective && surjective;
    Ok(NcOracle { g, d, degrees, injective, cokernel_is_k: surjective, exact, ext_dims })
}

/// Preset local algebras used by the Betti checks.
pub fn preset(name: &str, p: u64) -> Result<LocalAlgebra> {
    let pp = (p * p) as u32;
    let e = p as u32;
    match name {
        "k" => LocalAlgebra::truncated(p, &[]),
        "x^p" => LocalAlgebra::truncated(p, &[e]),
        "x^p2" => LocalAlgebra::truncated(p, &[pp]),
        "xy" => LocalAlgebra::truncated(p, &[e, e]),
        "xyz" => LocalAlgebra::truncated(p, &[e, e, e]),
        _ => Err(Error::InvalidInput(format!("unknown preset {name}"))),
    }
}

pub const PRESETS: [&str; 4] = ["x^p", "x^p2", "xy", "xyz"];

impl std::fmt::Display for BettiSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.betti.iter().map(|b| b.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}
