//! Truncated formal group laws.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::algebra::{FiniteHopfAlgebra, MAX_HOPF_DIM};
use crate::arith;
use crate::error::{Error, Result};
use crate::ring::{Ring, Zmod};

pub const MAX_COMM_DEGREE: usize = 32;
pub const MAX_NC_DEGREE: usize = 6;
pub const MAX_NC_DIM: usize = 3;

type S1 = Vec<u64>;
type S2 = Vec<Vec<u64>>;

/// One-dimensional commutative law F(x,y) = Σ c_ij x^i y^j over Z/n, i + j ≤ D.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommFgl {
    pub ring: Zmod,
    pub d: usize,
    pub c: S2,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FglJson {
    pub g: usize,
    #[serde(rename = "D")]
    pub d: usize,
    pub ring: u64,
    pub coeffs: BTreeMap<String, u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Height {
    Exact(u32),
    AtLeast(u32),
}

impl std::fmt::Display for Height {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Height::Exact(h) => write!(f, "{h}"),
            Height::AtLeast(h) => write!(f, "≥ {h}"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FglReport {
    pub left_unit: bool,
    pub right_unit: bool,
    pub symmetric: bool,
    pub associative: bool,
    /// first violated identity and its total degree
    pub first_failure: Option<(String, usize)>,
}

impl FglReport {
    pub fn pass(&self) -> bool {
        self.first_failure.is_none()
    }
}

fn s2_zero(d: usize) -> S2 {
    vec![vec![0; d + 1]; d + 1]
}

impl CommFgl {
    pub fn new(n: u64, d: usize, c: S2) -> Result<Self> {
        if d > MAX_COMM_DEGREE {
            return Err(Error::CapExceeded(format!("truncation degree {d} exceeds {MAX_COMM_DEGREE}")));
        }
        if d < 1 {
            return Err(Error::InvalidInput("truncation degree must be at least 1".into()));
        }
        let ring = Zmod::new(n);
        let mut cc = s2_zero(d);
        for (i, row) in c.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if i + j <= d {
                    cc[i][j] = x % n;
                } else if x % n != 0 {
                    return Err(Error::InvalidInput(format!("coefficient of x^{i}y^{j} beyond degree {d}")));
                }
            }
        }
        Ok(CommFgl { ring, d, c: cc })
    }

    pub fn additive(n: u64, d: usize) -> Result<Self> {
        let mut c = s2_zero(d);
        c[1][0] = 1;
        c[0][1] = 1;
        CommFgl::new(n, d, c)
    }

    pub fn multiplicative(n: u64, d: usize) -> Result<Self> {
        let mut c = s2_zero(d);
        c[1][0] = 1;
        c[0][1] = 1;
        if d >= 2 {
            c[1][1] = 1;
        }
        CommFgl::new(n, d, c)
    }

    pub fn modulus(&self) -> u64 {
        self.ring.n
    }

    fn mul1(&self, a: &S1, b: &S1) -> S1 {
        let r = &self.ring;
        let mut out = vec![0; self.d + 1];
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(self.d + 1 - i) {
                out[i + j] = r.add(&out[i + j], &r.mul(x, y));
            }
        }
        out
    }

    fn mul2(&self, a: &S2, b: &S2) -> S2 {
        let r = &self.ring;
        let d = self.d;
        let mut out = s2_zero(d);
        for i1 in 0..=d {
            for j1 in 0..=d - i1 {
                let x = a[i1][j1];
                if x == 0 {
                    continue;
                }
                for i2 in 0..=d - i1 - j1 {
                    for j2 in 0..=d - i1 - j1 - i2 {
                        let y = b[i2][j2];
                        if y != 0 {
                            out[i1 + i2][j1 + j2] = r.add(&out[i1 + i2][j1 + j2], &r.mul(&x, &y));
                        }
                    }
                }
            }
        }
        out
    }

    fn powers1(&self, a: &S1) -> Vec<S1> {
        let mut one = vec![0; self.d + 1];
        one[0] = 1 % self.ring.n;
        let mut out = vec![one];
        for k in 1..=self.d {
            let next = self.mul1(&out[k - 1], a);
            out.push(next);
        }
        out
    }

    fn powers2(&self, a: &S2) -> Vec<S2> {
        let mut one = s2_zero(self.d);
        one[0][0] = 1 % self.ring.n;
        let mut out = vec![one];
        for k in 1..=self.d {
            let next = self.mul2(&out[k - 1], a);
            out.push(next);
        }
        out
    }

    /// F(a(x), b(x)) for one-variable series without constant term.
    pub fn eval1(&self, a: &S1, b: &S1) -> S1 {
        let (pa, pb) = (self.powers1(a), self.powers1(b));
        let r = &self.ring;
        let mut out = vec![0; self.d + 1];
        for i in 0..=self.d {
            for j in 0..=self.d - i {
                let c = self.c[i][j];
                if c == 0 {
                    continue;
                }
                let t = self.mul1(&pa[i], &pb[j]);
                for (o, x) in out.iter_mut().zip(&t) {
                    *o = r.add(o, &r.mul(&c, x));
                }
            }
        }
        out
    }

    pub fn x(&self) -> S1 {
        let mut v = vec![0; self.d + 1];
        v[1] = 1 % self.ring.n;
        v
    }

    /// [n](x) = F(x, [n−1](x)).
    pub fn n_series(&self, n: u64) -> S1 {
        let x = self.x();
        let mut acc = vec![0; self.d + 1];
        for _ in 0..n {
            acc = self.eval1(&x, &acc);
        }
        acc
    }

    pub fn p_series(&self, p: u64) -> S1 {
        self.n_series(p)
    }

    pub fn check(&self) -> FglReport {
        let d = self.d;
        let n = self.ring.n;
        let one = 1 % n;
        let mut first: Option<(String, usize)> = None;
        let mut fail = |what: &str, deg: usize| {
            if first.as_ref().is_none_or(|(_, d0)| deg < *d0) {
                first = Some((what.to_string(), deg));
            }
        };
        let mut left = true;
        let mut right = true;
        let mut sym = true;
        for i in 0..=d {
            let want = if i == 1 { one } else { 0 };
            if self.c[i][0] != want {
                right = false;
                fail("F(x,0) = x", i);
            }
            if self.c[0][i] != want {
                left = false;
                fail("F(0,y) = y", i);
            }
            for j in 0..=d - i {
                if self.c[i][j] != self.c[j][i] {
                    sym = false;
                    fail("F(x,y) = F(y,x)", i + j);
                }
            }
        }
        // F(F(x,y),z)[a][b][c] = Σ_i c_{i,c} P_i[a][b]; F(x,F(y,z))[a][b][c] = Σ_j c_{a,j} P_j[b][c]
        let pw = self.powers2(&self.c);
        let r = &self.ring;
        let mut assoc = true;
        'outer: for a in 0..=d {
            for b in 0..=d - a {
                for cz in 0..=d - a - b {
                    let mut lhs = 0;
                    let mut rhs = 0;
                    for i in 0..=d - cz {
                        lhs = r.add(&lhs, &r.mul(&self.c[i][cz], &pw[i][a][b]));
                    }
                    for j in 0..=d - a {
                        rhs = r.add(&rhs, &r.mul(&self.c[a][j], &pw[j][b][cz]));
                    }
                    if lhs != rhs {
                        assoc = false;
                        fail("F(F(x,y),z) = F(x,F(y,z))", a + b + cz);
                        break 'outer;
                    }
                }
            }
        }
        FglReport { left_unit: right, right_unit: left, symmetric: sym, associative: assoc, first_failure: first }
    }

    /// Reduction modulo a divisor of the coefficient modulus.
    pub fn reduce(&self, n: u64) -> Result<CommFgl> {
        if self.ring.n % n != 0 {
            return Err(Error::InvalidInput(format!("{n} does not divide {}", self.ring.n)));
        }
        CommFgl::new(n, self.d, self.c.clone())
    }

    /// Height over F_p from the lowest term u·x^{p^h} of [p](x).
    pub fn height(&self) -> Result<Height> {
        let p = self.ring.n;
        if !arith::is_prime(p) {
            return Err(Error::InvalidInput("height needs coefficients in F_p".into()));
        }
        let ps = self.p_series(p);
        match ps.iter().position(|&c| c != 0) {
            None => Ok(Height::AtLeast(arith::ilog(self.d as u64, p))),
            Some(e) => {
                let mut q = 1usize;
                let mut h = 0;
                while q < e {
                    q *= p as usize;
                    h += 1;
                }
                if q == e && e > 1 {
                    Ok(Height::Exact(h))
                } else {
                    Err(Error::AxiomFailure(format!("unexpected leading exponent {e} in the p-series")))
                }
            }
        }
    }

    /// Compositional inverse of φ = x + …
    pub fn series_inverse(&self, phi: &S1) -> Result<S1> {
        let r = &self.ring;
        if phi[0] != 0 || phi[1] != 1 % r.n {
            return Err(Error::InvalidInput("coordinate change must be x + higher terms".into()));
        }
        // ψ = x − Σ_{k≥2} φ_k ψ^k, solved degree by degree
        let mut psi = self.x();
        for _ in 0..self.d {
            let pw = self.powers1(&psi);
            let mut next = self.x();
            for k in 2..=self.d {
                if phi[k] == 0 {
                    continue;
                }
                for (o, x) in next.iter_mut().zip(&pw[k]) {
                    *o = r.sub(o, &r.mul(&phi[k], x));
                }
            }
            if next == psi {
                break;
            }
            psi = next;
        }
        Ok(psi)
    }

    /// F^φ(x,y) = φ(F(φ^{-1}(x), φ^{-1}(y))).
    pub fn coordinate_change(&self, phi: &S1) -> Result<CommFgl> {
        let psi = self.series_inverse(phi)?;
        let r = &self.ring;
        let d = self.d;
        let pp = self.powers1(&psi);
        let mut g = s2_zero(d);
        for i in 0..=d {
            for j in 0..=d - i {
                let c = self.c[i][j];
                if c == 0 {
                    continue;
                }
                for a in 0..=d {
                    if pp[i][a] == 0 {
                        continue;
                    }
                    for b in 0..=d - a {
                        if pp[j][b] != 0 {
                            g[a][b] = r.add(&g[a][b], &r.mul(&c, &r.mul(&pp[i][a], &pp[j][b])));
                        }
                    }
                }
            }
        }
        let gp = self.powers2(&g);
        let mut out = s2_zero(d);
        for (k, coef) in phi.iter().enumerate().skip(1) {
            if *coef == 0 {
                continue;
            }
            for a in 0..=d {
                for b in 0..=d - a {
                    out[a][b] = r.add(&out[a][b], &r.mul(coef, &gp[k][a][b]));
                }
            }
        }
        CommFgl::new(r.n, d, out)
    }

    pub fn to_json(&self) -> FglJson {
        let mut coeffs = BTreeMap::new();
        for i in 0..=self.d {
            for j in 0..=self.d - i {
                if self.c[i][j] != 0 {
                    coeffs.insert(format!("{i},{j}"), self.c[i][j]);
                }
            }
        }
        FglJson { g: 1, d: self.d, ring: self.ring.n, coeffs }
    }

    pub fn from_json(j: &FglJson) -> Result<Self> {
        if j.g != 1 {
            return Err(Error::InvalidInput("commutative laws are one-dimensional".into()));
        }
        let mut c = s2_zero(j.d);
        for (k, v) in &j.coeffs {
            let (a, b) = k.split_once(',').ok_or_else(|| Error::InvalidInput(format!("bad monomial key {k}")))?;
            let (a, b): (usize, usize) = (a.trim().parse().map_err(|_| Error::InvalidInput(format!("bad key {k}")))?, b.trim().parse().map_err(|_| Error::InvalidInput(format!("bad key {k}")))?);
            if a + b > j.d {
                return Err(Error::InvalidInput(format!("monomial {k} beyond degree {}", j.d)));
            }
            c[a][b] = *v;
        }
        CommFgl::new(j.ring, j.d, c)
    }
}

/// Lubin–Tate law for f(x) = p·x + x^{p^h} over Z/p^N, truncated at degree D.
pub fn lubin_tate(p: u64, h: u32, d: usize, n: u32) -> Result<CommFgl> {
    if h == 0 || !arith::is_prime(p) {
        return Err(Error::InvalidInput("Lubin–Tate needs a prime p and h ≥ 1".into()));
    }
    if d > MAX_COMM_DEGREE {
        return Err(Error::CapExceeded(format!("truncation degree {d} exceeds {MAX_COMM_DEGREE}")));
    }
    // each degree divides by p once, so work with D extra digits
    let work = n as usize + d;
    let big = arith::checked_pow(p, work as u32).filter(|&m| m < (1u64 << 62)).ok_or_else(|| Error::CapExceeded(format!("p^{work} exceeds machine precision")))?;
    let ph = arith::checked_pow(p, h).unwrap_or(u64::MAX) as usize;
    let mut f = CommFgl { ring: Zmod::new(big), d, c: s2_zero(d) };
    f.c[1][0] = 1;
    f.c[0][1] = 1;
    let r = f.ring.clone();
    let mut fx = vec![0u64; d + 1];
    fx[1] = p % big;
    if ph <= d {
        fx[ph] = r.add(&fx[ph], &1);
    }
    let fpow = f.powers1(&fx);
    for deg in 2..=d {
        // numerator = [F(f(x), f(y))]_deg − [F^{p^h}]_deg with F known below deg
        let mut num = vec![0u64; deg + 1];
        for i in 0..deg {
            for j in 0..deg - i {
                let c = f.c[i][j];
                if c == 0 {
                    continue;
                }
                for a in 0..=deg {
                    let x = fpow[i][a];
                    if x == 0 {
                        continue;
                    }
                    let y = fpow[j][deg - a];
                    if y != 0 {
                        num[a] = r.add(&num[a], &r.mul(&c, &r.mul(&x, &y)));
                    }
                }
            }
        }
        if ph <= deg {
            let mut acc = s2_zero(d);
            acc[0][0] = 1;
            let mut base = f.c.clone();
            let mut e = ph;
            while e > 0 {
                if e & 1 == 1 {
                    acc = f.mul2(&acc, &base);
                }
                e >>= 1;
                if e > 0 {
                    base = f.mul2(&base, &base);
                }
            }
            for a in 0..=deg {
                num[a] = r.sub(&num[a], &acc[a][deg - a]);
            }
        }
        // G_deg = num / (p − p^deg) = (num / p) · (1 − p^{deg−1})^{-1}
        let unit = r.sub(&1, &arith::pow_mod(p, deg as u64 - 1, big));
        let uinv = arith::inv_mod(unit, big).ok_or_else(|| Error::NonConvergence("1 − p^k not invertible".into()))?;
        for a in 0..=deg {
            if num[a] % p != 0 {
                return Err(Error::AxiomFailure(format!("Lubin–Tate obstruction not divisible by p in degree {deg}")));
            }
            f.c[a][deg - a] = r.mul(&(num[a] / p), &uinv);
        }
    }
    let out = arith::checked_pow(p, n).ok_or_else(|| Error::CapExceeded("p^N too large".into()))?;
    f.reduce(out)
}

/// Hopf algebra k[t]/(t^{p^r}) with Δt = F(t⊗1, 1⊗t).
pub fn fgl_dual_level(f: &CommFgl, r: u32) -> Result<FiniteHopfAlgebra> {
    let p = f.modulus();
    if !arith::is_prime(p) {
        return Err(Error::InvalidInput("dual level needs coefficients in F_p".into()));
    }
    let q = arith::checked_pow(p, r).ok_or_else(|| Error::CapExceeded("p^r too large".into()))? as usize;
    if q > MAX_HOPF_DIM {
        return Err(Error::CapExceeded(format!("dual level of dimension {q} exceeds {MAX_HOPF_DIM}")));
    }
    if f.d < 2 * (q - 1) {
        return Err(Error::InvalidInput(format!("truncation degree {} too small: need D ≥ 2(p^r − 1) = {}", f.d, 2 * (q - 1))));
    }
    let rep = f.check();
    if !rep.pass() {
        return Err(Error::AxiomFailure(format!("input law fails {:?}", rep.first_failure)));
    }
    let field = std::sync::Arc::new(crate::fields::GF::prime(p)?);
    let fe = |c: u64| vec![c % p];
    let zero = || vec![0u64];
    let bv = |i: usize| -> Vec<Vec<u64>> { (0..q).map(|j| if j == i { fe(1) } else { zero() }).collect() };
    let zv: Vec<Vec<u64>> = vec![zero(); q];
    let mult: Vec<Vec<Vec<Vec<u64>>>> = (0..q).map(|i| (0..q).map(|j| if i + j < q { bv(i + j) } else { zv.clone() }).collect()).collect();
    // Δ(t^k) = F(t⊗1, 1⊗t)^k truncated to exponents < q in each factor
    let base = |c: &S2| -> S2 { (0..q).map(|i| (0..q).map(|j| if i + j <= f.d { c[i][j] % p } else { 0 }).collect()).collect() };
    let fmod = base(&f.c);
    let mul_q = |a: &S2, b: &S2| -> S2 {
        let mut out = vec![vec![0u64; q]; q];
        for i1 in 0..q {
            for j1 in 0..q {
                if a[i1][j1] == 0 {
                    continue;
                }
                for i2 in 0..q - i1 {
                    for j2 in 0..q - j1 {
                        out[i1 + i2][j1 + j2] = (out[i1 + i2][j1 + j2] + a[i1][j1] * b[i2][j2]) % p;
                    }
                }
            }
        }
        out
    };
    let mut cur: S2 = vec![vec![0u64; q]; q];
    cur[0][0] = 1;
    let mut comult = Vec::with_capacity(q);
    for _ in 0..q {
        comult.push(cur.iter().map(|row| row.iter().map(|&c| fe(c)).collect()).collect());
        cur = mul_q(&cur, &fmod);
    }
    // antipode: ι(t) with F(t, ι(t)) = 0, solved degree by degree in k[t]/t^q
    let fr = CommFgl::new(p, q - 1, (0..q).map(|i| (0..q).map(|j| if i + j < q { fmod[i][j] } else { 0 }).collect()).collect())?;
    let mut iota = vec![0u64; q];
    if q > 1 {
        iota[1] = p - 1;
    }
    for _ in 0..q {
        let val = fr.eval1(&fr.x(), &iota);
        if val.iter().all(|&c| c == 0) {
            break;
        }
        // F(x, y) = x + y + …, so subtract the residual
        for (o, v) in iota.iter_mut().zip(&val) {
            *o = (*o + p - v) % p;
        }
    }
    let ipow = fr.powers1(&iota);
    let antipode = (0..q).map(|k| (0..q).map(|j| fe(ipow[k][j])).collect()).collect();
    FiniteHopfAlgebra {
        field,
        name: format!("dual level {r}"),
        mult,
        unit: bv(0),
        comult,
        counit: bv(0),
        antipode,
        generators: if q > 1 { vec![1] } else { vec![] },
    }
    .validate()
}

/// Non-commutative g-dimensional law: F_i as maps (X-word, Y-word) → coefficient mod n.
#[derive(Clone, Debug)]
pub struct NcFgl {
    pub g: usize,
    pub d: usize,
    pub n: u64,
    pub comps: Vec<BTreeMap<(Vec<u8>, Vec<u8>), u64>>,
}

type Words3 = BTreeMap<(Vec<u8>, Vec<u8>, Vec<u8>), u64>;

impl NcFgl {
    pub fn new(g: usize, d: usize, n: u64, comps: Vec<BTreeMap<(Vec<u8>, Vec<u8>), u64>>) -> Result<Self> {
        if g > MAX_NC_DIM || d > MAX_NC_DEGREE {
            return Err(Error::CapExceeded(format!("non-commutative law needs g ≤ {MAX_NC_DIM}, D ≤ {MAX_NC_DEGREE}")));
        }
        if comps.len() != g {
            return Err(Error::InvalidInput("one component per coordinate".into()));
        }
        for c in &comps {
            for (u, v) in c.keys() {
                if u.len() + v.len() > d || u.iter().chain(v).any(|&l| l as usize >= g) {
                    return Err(Error::InvalidInput("monomial out of range".into()));
                }
            }
        }
        let comps = comps.into_iter().map(|c| c.into_iter().map(|(k, v)| (k, v % n)).filter(|(_, v)| *v != 0).collect()).collect();
        Ok(NcFgl { g, d, n, comps })
    }

    /// F_i = X_i + Y_i + X_i·Y_i.
    pub fn multiplicative(g: usize, d: usize, n: u64) -> Result<Self> {
        let comps = (0..g as u8)
            .map(|i| {
                let mut m = BTreeMap::new();
                m.insert((vec![i], vec![]), 1);
                m.insert((vec![], vec![i]), 1);
                if d >= 2 {
                    m.insert((vec![i], vec![i]), 1);
                }
                m
            })
            .collect();
        NcFgl::new(g, d, n, comps)
    }

    fn mul3(&self, a: &Words3, b: &Words3) -> Words3 {
        let r = Zmod::new(self.n);
        let mut out = Words3::new();
        for ((a1, a2, a3), x) in a {
            for ((b1, b2, b3), y) in b {
                if a1.len() + a2.len() + a3.len() + b1.len() + b2.len() + b3.len() > self.d {
                    continue;
                }
                let key = ([a1.as_slice(), b1].concat(), [a2.as_slice(), b2].concat(), [a3.as_slice(), b3].concat());
                let e = out.entry(key).or_insert(0);
                *e = r.add(e, &r.mul(x, y));
            }
        }
        out.retain(|_, v| *v != 0);
        out
    }

    fn add3(&self, a: &mut Words3, b: &Words3, c: u64) {
        let r = Zmod::new(self.n);
        for (k, v) in b {
            let e = a.entry(k.clone()).or_insert(0);
            *e = r.add(e, &r.mul(v, &c));
        }
        a.retain(|_, v| *v != 0);
    }

    fn one3() -> Words3 {
        let mut m = Words3::new();
        m.insert((vec![], vec![], vec![]), 1);
        m
    }

    /// F_i placed on two of the three alphabets.
    fn embed(&self, i: usize, slots: (usize, usize)) -> Words3 {
        let mut out = Words3::new();
        for ((u, v), c) in &self.comps[i] {
            let mut parts = [Vec::new(), Vec::new(), Vec::new()];
            parts[slots.0] = u.clone();
            parts[slots.1] = v.clone();
            let [a, b, cc] = parts;
            out.insert((a, b, cc), *c);
        }
        out
    }

    fn letter(slot: usize, l: u8) -> Words3 {
        let mut parts = [Vec::new(), Vec::new(), Vec::new()];
        parts[slot] = vec![l];
        let [a, b, c] = parts;
        let mut m = Words3::new();
        m.insert((a, b, c), 1);
        m
    }

    pub fn check(&self) -> FglReport {
        let mut first: Option<(String, usize)> = None;
        let mut fail = |what: String, deg: usize| {
            if first.as_ref().is_none_or(|(_, d0)| deg < *d0) {
                first = Some((what, deg));
            }
        };
        let mut left = true;
        let mut right = true;
        let mut sym = true;
        for (i, comp) in self.comps.iter().enumerate() {
            let pure_x: Vec<_> = comp.iter().filter(|((_, v), _)| v.is_empty()).collect();
            let pure_y: Vec<_> = comp.iter().filter(|((u, _), _)| u.is_empty()).collect();
            let want_x = pure_x.len() == 1 && pure_x[0].0 .0 == vec![i as u8] && *pure_x[0].1 == 1 % self.n;
            let want_y = pure_y.len() == 1 && pure_y[0].0 .1 == vec![i as u8] && *pure_y[0].1 == 1 % self.n;
            if !want_x {
                right = false;
                fail(format!("F_{i}(X;0) = X_{i}"), pure_x.iter().map(|((u, _), _)| u.len()).min().unwrap_or(0));
            }
            if !want_y {
                left = false;
                fail(format!("F_{i}(0;Y) = Y_{i}"), pure_y.iter().map(|((_, v), _)| v.len()).min().unwrap_or(0));
            }
            for ((u, v), c) in comp {
                if comp.get(&(v.clone(), u.clone())).copied().unwrap_or(0) != *c {
                    sym = false;
                    fail(format!("F_{i}(X;Y) = F_{i}(Y;X)"), u.len() + v.len());
                }
            }
        }
        let mut assoc = true;
        for i in 0..self.g {
            // F_i(F(X;Y); Z) and F_i(X; F(Y;Z))
            let mut lhs = Words3::new();
            let mut rhs = Words3::new();
            for ((u, v), c) in &self.comps[i] {
                let mut t = Self::one3();
                for &l in u {
                    t = self.mul3(&t, &self.embed(l as usize, (0, 1)));
                }
                for &l in v {
                    t = self.mul3(&t, &Self::letter(2, l));
                }
                self.add3(&mut lhs, &t, *c);
                let mut t = Self::one3();
                for &l in u {
                    t = self.mul3(&t, &Self::letter(0, l));
                }
                for &l in v {
                    t = self.mul3(&t, &self.embed(l as usize, (1, 2)));
                }
                self.add3(&mut rhs, &t, *c);
            }
            if lhs != rhs {
                assoc = false;
                let deg = lhs
                    .iter()
                    .filter(|(k, v)| rhs.get(*k) != Some(*v))
                    .chain(rhs.iter().filter(|(k, v)| lhs.get(*k) != Some(*v)))
                    .map(|((a, b, c), _)| a.len() + b.len() + c.len())
                    .min()
                    .unwrap_or(0);
                fail(format!("F_{i}(F(X;Y);Z) = F_{i}(X;F(Y;Z))"), deg);
            }
        }
        FglReport { left_unit: right, right_unit: left, symmetric: sym, associative: assoc, first_failure: first }
    }
}
