use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::{FieldDescriptor, GF};
use crate::linalg::{self, Matrix};
use crate::ring::{Field, Ring};
use crate::witt::{NilpotentPolyRing, WittPolynomials};

pub const MAX_HOPF_DIM: usize = 32;

type E = Vec<u64>;

/// Finite Hopf algebra by structure constants on a basis e_0..e_{n-1}.
#[derive(Clone, Debug)]
pub struct FiniteHopfAlgebra {
    pub field: Arc<GF>,
    pub name: String,
    /// mult[i][j] = coordinates of e_i·e_j
    pub mult: Vec<Vec<Vec<E>>>,
    pub unit: Vec<E>,
    /// comult[i][j][k] = coefficient of e_j⊗e_k in Δe_i
    pub comult: Vec<Vec<Vec<E>>>,
    pub counit: Vec<E>,
    /// antipode[i] = coordinates of S(e_i)
    pub antipode: Vec<Vec<E>>,
    /// optional algebra generators (basis indices) used by the iso finder
    pub generators: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HopfJson {
    pub name: String,
    pub field: FieldDescriptor,
    pub mult: Vec<Vec<Vec<E>>>,
    pub unit: Vec<E>,
    pub comult: Vec<Vec<Vec<E>>>,
    pub counit: Vec<E>,
    pub antipode: Vec<Vec<E>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub dim: usize,
    pub associative: bool,
    pub unital: bool,
    pub coassociative: bool,
    pub counital: bool,
    pub comult_is_algebra_map: bool,
    pub counit_is_algebra_map: bool,
    pub antipode: bool,
    pub commutative: bool,
    pub cocommutative: bool,
    pub first_failure: Option<String>,
}

impl AxiomReport {
    pub fn pass(&self) -> bool {
        self.first_failure.is_none()
    }
}

impl FiniteHopfAlgebra {
    pub fn dim(&self) -> usize {
        self.unit.len()
    }

    fn f(&self) -> &GF {
        &self.field
    }

    fn zero_vec(&self) -> Vec<E> {
        vec![self.f().zero(); self.dim()]
    }

    pub fn basis_vec(&self, i: usize) -> Vec<E> {
        let mut v = self.zero_vec();
        v[i] = self.f().one();
        v
    }

    pub fn mul(&self, a: &[E], b: &[E]) -> Vec<E> {
        let f = self.f();
        let mut out = self.zero_vec();
        for (i, ai) in a.iter().enumerate() {
            if f.is_zero(ai) {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if f.is_zero(bj) {
                    continue;
                }
                let c = f.mul(ai, bj);
                for (o, m) in out.iter_mut().zip(&self.mult[i][j]) {
                    if !f.is_zero(m) {
                        *o = f.add(o, &f.mul(&c, m));
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &[E], k: usize) -> Vec<E> {
        let mut acc = self.unit.clone();
        for _ in 0..k {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Δ(a) as an n×n coefficient matrix.
    pub fn delta(&self, a: &[E]) -> Vec<Vec<E>> {
        let f = self.f();
        let n = self.dim();
        let mut out = vec![vec![f.zero(); n]; n];
        for (i, ai) in a.iter().enumerate() {
            if f.is_zero(ai) {
                continue;
            }
            for j in 0..n {
                for k in 0..n {
                    let c = &self.comult[i][j][k];
                    if !f.is_zero(c) {
                        out[j][k] = f.add(&out[j][k], &f.mul(ai, c));
                    }
                }
            }
        }
        out
    }

    pub fn eps(&self, a: &[E]) -> E {
        let f = self.f();
        a.iter().zip(&self.counit).fold(f.zero(), |acc, (x, y)| f.add(&acc, &f.mul(x, y)))
    }

    pub fn apply_antipode(&self, a: &[E]) -> Vec<E> {
        let f = self.f();
        let mut out = self.zero_vec();
        for (i, ai) in a.iter().enumerate() {
            for (o, s) in out.iter_mut().zip(&self.antipode[i]) {
                *o = f.add(o, &f.mul(ai, s));
            }
        }
        out
    }

    fn tensor_mul(&self, a: &[Vec<E>], b: &[Vec<E>]) -> Vec<Vec<E>> {
        // (Σ a_jk e_j⊗e_k)(Σ b_lm e_l⊗e_m) = Σ a_jk b_lm (e_j e_l)⊗(e_k e_m)
        let f = self.f();
        let n = self.dim();
        let mut out = vec![vec![f.zero(); n]; n];
        for j in 0..n {
            for k in 0..n {
                if f.is_zero(&a[j][k]) {
                    continue;
                }
                for l in 0..n {
                    for m in 0..n {
                        if f.is_zero(&b[l][m]) {
                            continue;
                        }
                        let c = f.mul(&a[j][k], &b[l][m]);
                        for (u, x) in self.mult[j][l].iter().enumerate() {
                            if f.is_zero(x) {
                                continue;
                            }
                            let cx = f.mul(&c, x);
                            for (v, y) in self.mult[k][m].iter().enumerate() {
                                if !f.is_zero(y) {
                                    out[u][v] = f.add(&out[u][v], &f.mul(&cx, y));
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    pub fn check_axioms(&self) -> AxiomReport {
        let f = self.f();
        let n = self.dim();
        let mut first: Option<String> = None;
        let mut note = |ok: bool, what: String| {
            if !ok && first.is_none() {
                first = Some(what);
            }
            ok
        };
        let mut associative = true;
        let mut commutative = true;
        for i in 0..n {
            for j in 0..n {
                if self.mult[i][j] != self.mult[j][i] {
                    commutative = false;
                }
                let ij = &self.mult[i][j];
                for k in 0..n {
                    let lhs = self.mul(ij, &self.basis_vec(k));
                    let rhs = self.mul(&self.basis_vec(i), &self.mult[j][k]);
                    if lhs != rhs {
                        associative = false;
                    }
                }
            }
        }
        associative = note(associative, "associativity".into());
        let unital = (0..n).all(|i| self.mul(&self.unit, &self.basis_vec(i)) == self.basis_vec(i) && self.mul(&self.basis_vec(i), &self.unit) == self.basis_vec(i));
        let unital = note(unital, "unit law".into());
        // (Δ⊗id)Δ = (id⊗Δ)Δ as n×n×n tensors
        let mut coassociative = true;
        let mut cocommutative = true;
        for i in 0..n {
            let d = &self.comult[i];
            let mut lhs = vec![vec![vec![f.zero(); n]; n]; n];
            let mut rhs = vec![vec![vec![f.zero(); n]; n]; n];
            for j in 0..n {
                for k in 0..n {
                    if d[j][k] != d[k][j] {
                        cocommutative = false;
                    }
                    let c = &d[j][k];
                    if f.is_zero(c) {
                        continue;
                    }
                    for a in 0..n {
                        for b in 0..n {
                            let x = &self.comult[j][a][b];
                            if !f.is_zero(x) {
                                lhs[a][b][k] = f.add(&lhs[a][b][k], &f.mul(c, x));
                            }
                            let y = &self.comult[k][a][b];
                            if !f.is_zero(y) {
                                rhs[j][a][b] = f.add(&rhs[j][a][b], &f.mul(c, y));
                            }
                        }
                    }
                }
            }
            if lhs != rhs {
                coassociative = false;
            }
        }
        let coassociative = note(coassociative, "coassociativity".into());
        let mut counital = true;
        for i in 0..n {
            let d = &self.comult[i];
            let mut l = self.zero_vec();
            let mut r = self.zero_vec();
            for j in 0..n {
                for k in 0..n {
                    l[k] = f.add(&l[k], &f.mul(&self.counit[j], &d[j][k]));
                    r[j] = f.add(&r[j], &f.mul(&self.counit[k], &d[j][k]));
                }
            }
            if l != self.basis_vec(i) || r != self.basis_vec(i) {
                counital = false;
            }
        }
        let counital = note(counital, "counit law".into());
        let mut unit_tensor = vec![vec![f.zero(); n]; n];
        for j in 0..n {
            for k in 0..n {
                unit_tensor[j][k] = f.mul(&self.unit[j], &self.unit[k]);
            }
        }
        let mut comult_alg = self.delta(&self.unit) == unit_tensor;
        let mut counit_alg = self.eps(&self.unit) == f.one();
        for i in 0..n {
            for j in i..n {
                let prod = &self.mult[i][j];
                if self.delta(prod) != self.tensor_mul(&self.comult[i], &self.comult[j]) {
                    comult_alg = false;
                }
                if self.eps(prod) != f.mul(&self.counit[i], &self.counit[j]) {
                    counit_alg = false;
                }
            }
        }
        let comult_alg = note(comult_alg, "Δ is an algebra map".into());
        let counit_alg = note(counit_alg, "ε is an algebra map".into());
        let mut antipode = true;
        for i in 0..n {
            let d = &self.comult[i];
            let mut l = self.zero_vec();
            let mut r = self.zero_vec();
            for j in 0..n {
                for k in 0..n {
                    if f.is_zero(&d[j][k]) {
                        continue;
                    }
                    let sl = self.mul(&self.antipode[j], &self.basis_vec(k));
                    let sr = self.mul(&self.basis_vec(j), &self.antipode[k]);
                    for u in 0..n {
                        l[u] = f.add(&l[u], &f.mul(&d[j][k], &sl[u]));
                        r[u] = f.add(&r[u], &f.mul(&d[j][k], &sr[u]));
                    }
                }
            }
            let want: Vec<E> = self.unit.iter().map(|x| f.mul(x, &self.counit[i])).collect();
            if l != want || r != want {
                antipode = false;
            }
        }
        let antipode = note(antipode, "antipode axiom".into());
        AxiomReport {
            dim: n,
            associative,
            unital,
            coassociative,
            counital,
            comult_is_algebra_map: comult_alg,
            counit_is_algebra_map: counit_alg,
            antipode,
            commutative,
            cocommutative,
            first_failure: first,
        }
    }

    pub fn validate(self) -> Result<Self> {
        if self.dim() > MAX_HOPF_DIM {
            return Err(Error::CapExceeded(format!("Hopf algebra of dimension {} exceeds {MAX_HOPF_DIM}", self.dim())));
        }
        let rep = self.check_axioms();
        match rep.first_failure {
            Some(what) => Err(Error::AxiomFailure(format!("{}: {what}", self.name))),
            None => Ok(self),
        }
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.mult[i][j] == self.mult[j][i]))
    }

    pub fn is_cocommutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| self.comult[i][j][k] == self.comult[i][k][j])))
    }

    /// Basis of {x : Δx = x⊗1 + 1⊗x}.
    pub fn primitives(&self) -> Vec<Vec<E>> {
        let f = self.f();
        let n = self.dim();
        let mut cols = Vec::with_capacity(n);
        for i in 0..n {
            let d = &self.comult[i];
            let mut col = Vec::with_capacity(n * n);
            for j in 0..n {
                for k in 0..n {
                    let mut v = d[j][k].clone();
                    if j == i {
                        v = f.sub(&v, &self.unit[k]);
                    }
                    if k == i {
                        v = f.sub(&v, &self.unit[j]);
                    }
                    col.push(v);
                }
            }
            cols.push(col);
        }
        linalg::kernel(f, &linalg::transpose(&cols), n)
    }

    /// Group-like elements: characters of the dual algebra, found as common eigenvectors.
    pub fn group_likes(&self) -> Result<Vec<Vec<E>>> {
        let f = self.f();
        let n = self.dim();
        let q = f.order().filter(|&q| q <= 4096).ok_or_else(|| Error::Unsupported("group-likes need a small field".into()))?;
        let _ = q;
        let elems = f.elements();
        // operators x ↦ (a ↦ x(e_i·a)) dual to left multiplication; on H they read M_i[j][k] = comult[k][i][j]
        let mut spaces: Vec<Vec<Vec<E>>> = vec![(0..n).map(|i| self.basis_vec(i)).collect()];
        for i in 0..n {
            let op: Matrix<E> = (0..n).map(|j| (0..n).map(|k| self.comult[k][i][j].clone()).collect()).collect();
            let mut next = Vec::new();
            for sp in &spaces {
                for lam in &elems {
                    // vectors v in span(sp) with op·v = λv
                    let imgs: Vec<Vec<E>> = sp
                        .iter()
                        .map(|v| {
                            let ov = linalg::mat_vec(f, &op, v);
                            ov.iter().zip(v).map(|(a, b)| f.sub(a, &f.mul(lam, b))).collect()
                        })
                        .collect();
                    let ker = linalg::kernel(f, &linalg::transpose(&imgs), sp.len());
                    if ker.is_empty() {
                        continue;
                    }
                    let sub: Vec<Vec<E>> = ker
                        .iter()
                        .map(|c| {
                            let mut v = self.zero_vec();
                            for (ci, b) in c.iter().zip(sp) {
                                for (o, x) in v.iter_mut().zip(b) {
                                    *o = f.add(o, &f.mul(ci, x));
                                }
                            }
                            v
                        })
                        .collect();
                    next.push(sub);
                }
            }
            spaces = next;
        }
        let mut out = Vec::new();
        for sp in spaces {
            if sp.len() != 1 {
                continue;
            }
            let v = &sp[0];
            let e = self.eps(v);
            if let Some(inv) = f.inv(&e) {
                let g: Vec<E> = v.iter().map(|x| f.mul(x, &inv)).collect();
                let d = self.delta(&g);
                let ok = (0..n).all(|j| (0..n).all(|k| d[j][k] == f.mul(&g[j], &g[k])));
                if ok {
                    out.push(g);
                }
            }
        }
        out.sort();
        Ok(out)
    }

    pub fn to_json(&self) -> HopfJson {
        HopfJson {
            name: self.name.clone(),
            field: self.field.descriptor(),
            mult: self.mult.clone(),
            unit: self.unit.clone(),
            comult: self.comult.clone(),
            counit: self.counit.clone(),
            antipode: self.antipode.clone(),
        }
    }

    pub fn from_json(j: &HopfJson) -> Result<Self> {
        let field = Arc::new(GF::from_descriptor(&j.field)?);
        let h = FiniteHopfAlgebra {
            field,
            name: j.name.clone(),
            mult: j.mult.clone(),
            unit: j.unit.clone(),
            comult: j.comult.clone(),
            counit: j.counit.clone(),
            antipode: j.antipode.clone(),
            generators: Vec::new(),
        };
        let n = h.dim();
        let m = h.field.degree();
        let ok = h.mult.len() == n
            && h.mult.iter().all(|r| r.len() == n && r.iter().all(|v| v.len() == n && v.iter().all(|x| x.len() == m)))
            && h.comult.len() == n
            && h.comult.iter().all(|r| r.len() == n && r.iter().all(|v| v.len() == n && v.iter().all(|x| x.len() == m)))
            && h.counit.len() == n
            && h.antipode.len() == n
            && h.antipode.iter().all(|v| v.len() == n);
        if !ok {
            return Err(Error::InvalidInput("Hopf tensors have inconsistent shapes".into()));
        }
        h.validate()
    }
}

/// Linear dual with all structure tensors transposed.
pub fn cartier_dual(h: &FiniteHopfAlgebra) -> Result<FiniteHopfAlgebra> {
    if !h.is_commutative() || !h.is_cocommutative() {
        return Err(Error::InvalidInput("Cartier duality needs a commutative and cocommutative Hopf algebra".into()));
    }
    let n = h.dim();
    let mult = (0..n).map(|j| (0..n).map(|k| (0..n).map(|i| h.comult[i][j][k].clone()).collect()).collect()).collect();
    let comult = (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| h.mult[j][k][i].clone()).collect()).collect()).collect();
    let antipode = (0..n).map(|i| (0..n).map(|j| h.antipode[j][i].clone()).collect()).collect();
    let name = match h.name.strip_prefix("dual(").and_then(|s| s.strip_suffix(')')) {
        Some(inner) => inner.to_string(),
        None => format!("dual({})", h.name),
    };
    FiniteHopfAlgebra {
        field: h.field.clone(),
        name,
        mult,
        unit: h.counit.clone(),
        comult,
        counit: h.unit.clone(),
        antipode,
        generators: Vec::new(),
    }
    .validate()
}

fn fp(f: &GF, c: u64) -> E {
    let mut v = f.zero();
    v[0] = c % f.p();
    v
}

/// Hopf algebra on a truncated polynomial ring with Δ of each variable given in the doubled ring.
fn from_truncated(
    field: Arc<GF>,
    name: String,
    ring: &NilpotentPolyRing,
    delta_vars: &[Vec<u64>],
    antipode_vars: &[Vec<u64>],
) -> Result<FiniteHopfAlgebra> {
    let n = ring.dim();
    if n > MAX_HOPF_DIM {
        return Err(Error::CapExceeded(format!("Hopf algebra of dimension {n} exceeds {MAX_HOPF_DIM}")));
    }
    let f = &*field;
    let s = ring.nvars();
    let names: Vec<String> = (0..2 * s).map(|i| format!("v{i}")).collect();
    let name_refs: Vec<&str> = names.iter().map(|x| x.as_str()).collect();
    let caps2: Vec<u32> = ring.caps.iter().chain(ring.caps.iter()).copied().collect();
    let ring2 = NilpotentPolyRing::new(ring.p, &name_refs, &caps2)?;
    let conv = |v: &[u64]| -> Vec<E> { v.iter().map(|&c| fp(f, c)).collect() };
    let mut mult = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let a = ring.monomial(&ring.exponents_of(i), 1);
            let b = ring.monomial(&ring.exponents_of(j), 1);
            mult[i][j] = conv(&ring.mul(&a, &b));
        }
    }
    let mut comult = Vec::with_capacity(n);
    let mut antipode = Vec::with_capacity(n);
    for i in 0..n {
        let e = ring.exponents_of(i);
        let mut d = ring2.one();
        let mut sv = ring.one();
        for (v, &k) in e.iter().enumerate() {
            for _ in 0..k {
                d = ring2.mul(&d, &delta_vars[v]);
                sv = ring.mul(&sv, &antipode_vars[v]);
            }
        }
        let mut t = vec![vec![f.zero(); n]; n];
        for (idx, c) in d.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            let ex = ring2.exponents_of(idx);
            let j = ring.index(&ex[..s]).unwrap();
            let k = ring.index(&ex[s..]).unwrap();
            t[j][k] = fp(f, *c);
        }
        comult.push(t);
        antipode.push(conv(&sv));
    }
    let counit = (0..n).map(|i| if i == 0 { f.one() } else { f.zero() }).collect();
    let unit = (0..n).map(|i| if i == 0 { f.one() } else { f.zero() }).collect();
    let generators = (0..s).map(|v| ring.index(&(0..s).map(|u| u32::from(u == v)).collect::<Vec<_>>()).unwrap()).collect();
    FiniteHopfAlgebra { field, name, mult, unit, comult, counit, antipode, generators }.validate()
}

fn field_for(p: u64, degree: usize) -> Result<Arc<GF>> {
    Ok(Arc::new(GF::new(p, degree)?))
}

/// α_{p^v} = k[x]/x^{p^v} with x primitive.
pub fn alpha(p: u64, v: u32, degree: usize) -> Result<FiniteHopfAlgebra> {
    let cap = crate::arith::checked_pow(p, v).filter(|&c| c as usize <= MAX_HOPF_DIM).ok_or_else(|| Error::CapExceeded("α_{p^v} too large".into()))?;
    let ring = NilpotentPolyRing::new(p, &["x"], &[cap as u32])?;
    let ring2 = NilpotentPolyRing::new(p, &["x", "y"], &[cap as u32, cap as u32])?;
    let dx = ring2.add(&ring2.var(0), &ring2.var(1));
    let sx = ring.neg(&ring.var(0));
    let name = if v == 1 { "alpha_p".to_string() } else { format!("alpha_p^{v}") };
    from_truncated(field_for(p, degree)?, name, &ring, &[dx], &[sx])
}

/// μ_p = k[x]/(x^p − 1), x group-like; basis x^0..x^{p−1}.
pub fn mu_p(p: u64, degree: usize) -> Result<FiniteHopfAlgebra> {
    let field = field_for(p, degree)?;
    let f = &*field;
    let n = p as usize;
    let bv = |i: usize| -> Vec<E> { (0..n).map(|j| if j == i % n { f.one() } else { f.zero() }).collect() };
    let mult = (0..n).map(|i| (0..n).map(|j| bv(i + j)).collect()).collect();
    let comult = (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| if j == i && k == i { f.one() } else { f.zero() }).collect()).collect()).collect();
    let antipode = (0..n).map(|i| bv(n - i)).collect();
    FiniteHopfAlgebra {
        field: field.clone(),
        name: "mu_p".into(),
        mult,
        unit: bv(0),
        comult,
        counit: vec![f.one(); n],
        antipode,
        generators: vec![1 % n],
    }
    .validate()
}

/// Functions on the constant group Z/p, basis of point indicators δ_g.
pub fn constant_zp(p: u64, degree: usize) -> Result<FiniteHopfAlgebra> {
    let field = field_for(p, degree)?;
    let f = &*field;
    let n = p as usize;
    let bv = |i: usize| -> Vec<E> { (0..n).map(|j| if j == i % n { f.one() } else { f.zero() }).collect() };
    let zero = vec![f.zero(); n];
    let mult = (0..n).map(|i| (0..n).map(|j| if i == j { bv(i) } else { zero.clone() }).collect()).collect();
    let comult = (0..n).map(|g| (0..n).map(|a| (0..n).map(|b| if (a + b) % n == g { f.one() } else { f.zero() }).collect()).collect()).collect();
    let antipode = (0..n).map(|g| bv(n - g)).collect();
    // generated by the coordinate function x(g) = g
    FiniteHopfAlgebra {
        field: field.clone(),
        name: "Z/p".into(),
        mult,
        unit: vec![f.one(); n],
        comult,
        counit: bv(0),
        antipode,
        generators: Vec::new(),
    }
    .validate()
}

/// W_r[F] = k[x_0..x_{r−1}]/(x_i^p) with Δx_i = S_i(x⊗1, 1⊗x).
pub fn witt_frobenius_kernel(p: u64, r: usize, degree: usize) -> Result<FiniteHopfAlgebra> {
    let dim = crate::arith::checked_pow(p, r as u32).filter(|&d| d as usize <= MAX_HOPF_DIM).ok_or_else(|| Error::CapExceeded(format!("W_{r}[F] has dimension p^{r}")))?;
    let _ = dim;
    let polys = WittPolynomials::get(p, r)?;
    let names: Vec<String> = (0..r).map(|i| format!("x{i}")).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let ring = NilpotentPolyRing::uniform(p, &refs, p as u32)?;
    let names2: Vec<String> = (0..2 * r).map(|i| format!("v{i}")).collect();
    let refs2: Vec<&str> = names2.iter().map(|s| s.as_str()).collect();
    let ring2 = NilpotentPolyRing::uniform(p, &refs2, p as u32)?;
    let xs: Vec<Vec<u64>> = (0..2 * r).map(|i| ring2.var(i)).collect();
    let dvars: Vec<Vec<u64>> = polys.sum.iter().map(|s| s.eval(&ring2, &xs)).collect();
    let ys: Vec<Vec<u64>> = (0..r).map(|i| ring.var(i)).collect();
    let svars: Vec<Vec<u64>> = polys.neg.iter().map(|s| s.eval(&ring, &ys)).collect();
    from_truncated(field_for(p, degree)?, format!("W_{r}[F]"), &ring, &dvars, &svars)
}

/// Preset by name: alpha_p, alpha_p^v, mu_p, Z/p, W_r[F]; W_r is infinite-dimensional.
pub fn make_group_scheme(name: &str, p: u64, r: usize, degree: usize) -> Result<FiniteHopfAlgebra> {
    match name {
        "alpha_p" => alpha(p, 1, degree),
        "mu_p" => mu_p(p, degree),
        "Z/p" | "const" | "Z/pZ" => constant_zp(p, degree),
        "W_r[F]" | "W_r_kernel_F" => witt_frobenius_kernel(p, r, degree),
        "W_r" => Err(Error::Unsupported("W_r is not finite; use its finite levels W_r[F]".into())),
        _ => {
            if let Some(v) = name.strip_prefix("alpha_p^") {
                let v: u32 = v.parse().map_err(|_| Error::InvalidInput(format!("bad preset {name}")))?;
                alpha(p, v, degree)
            } else if let Some(rs) = name.strip_prefix("W_").and_then(|s| s.strip_suffix("[F]")) {
                let r: usize = rs.parse().map_err(|_| Error::InvalidInput(format!("bad preset {name}")))?;
                witt_frobenius_kernel(p, r, degree)
            } else {
                Err(Error::InvalidInput(format!("unsupported group scheme {name}")))
            }
        }
    }
}

/// A Hopf isomorphism H → H' as a matrix (columns = images of basis vectors), if one is found.
pub fn find_hopf_iso(h: &FiniteHopfAlgebra, h2: &FiniteHopfAlgebra) -> Result<Option<Matrix<E>>> {
    if h.dim() != h2.dim() || *h.field != *h2.field {
        return Ok(None);
    }
    let f = &*h.field;
    let n = h.dim();
    let gens = if h.generators.is_empty() { algebra_generators(h) } else { h.generators.clone() };
    let mut cands: Vec<Vec<E>> = h2.primitives();
    if let Ok(g) = h2.group_likes() {
        for x in g {
            let shifted: Vec<E> = x.iter().zip(&h2.unit).map(|(a, u)| f.sub(a, u)).collect();
            cands.push(x);
            cands.push(shifted);
        }
    }
    cands.extend((0..n).map(|i| h2.basis_vec(i)));
    let mut seen = BTreeMap::new();
    cands.retain(|c| seen.insert(c.clone(), ()).is_none());
    let total = cands.len().checked_pow(gens.len() as u32).unwrap_or(usize::MAX);
    if total > 200_000 {
        return Err(Error::CapExceeded("iso search space too large".into()));
    }
    for mut code in 0..total {
        let mut imgs = Vec::with_capacity(gens.len());
        for _ in 0..gens.len() {
            imgs.push(cands[code % cands.len()].clone());
            code /= cands.len();
        }
        if let Some(phi) = extend_algebra_map(h, h2, &gens, &imgs) {
            if is_hopf_iso(h, h2, &phi) {
                return Ok(Some(phi));
            }
        }
    }
    Ok(None)
}

fn algebra_generators(h: &FiniteHopfAlgebra) -> Vec<usize> {
    let f = &*h.field;
    let n = h.dim();
    let mut gens = Vec::new();
    for i in 0..n {
        let span = subalgebra(h, &gens);
        if linalg::rank(f, &span) == n {
            break;
        }
        let mut with = span.clone();
        with.push(h.basis_vec(i));
        if linalg::rank(f, &with) > linalg::rank(f, &span) {
            gens.push(i);
        }
    }
    gens
}

fn subalgebra(h: &FiniteHopfAlgebra, gens: &[usize]) -> Vec<Vec<E>> {
    let f = &*h.field;
    let mut span = vec![h.unit.clone()];
    loop {
        let before = linalg::rank(f, &span);
        let cur = linalg::span_basis(f, &span);
        let mut next = cur.clone();
        for v in &cur {
            for &g in gens {
                next.push(h.mul(v, &h.basis_vec(g)));
            }
        }
        span = linalg::span_basis(f, &next);
        if span.len() == before {
            return span;
        }
    }
}

/// The algebra map sending generator g_i to imgs[i], if well defined and bijective.
fn extend_algebra_map(h: &FiniteHopfAlgebra, h2: &FiniteHopfAlgebra, gens: &[usize], imgs: &[Vec<E>]) -> Option<Matrix<E>> {
    let f = &*h.field;
    let n = h.dim();
    // words in the generators: pairs (element of H, image in H')
    let mut pairs: Vec<(Vec<E>, Vec<E>)> = vec![(h.unit.clone(), h2.unit.clone())];
    let mut frontier = pairs.clone();
    for _ in 0..n {
        let mut next = Vec::new();
        for (a, b) in &frontier {
            for (g, img) in gens.iter().zip(imgs) {
                let na = h.mul(a, &h.basis_vec(*g));
                let nb = h2.mul(b, img);
                let mut trial: Vec<Vec<E>> = pairs.iter().map(|p| p.0.clone()).collect();
                let r0 = linalg::rank(f, &trial);
                trial.push(na.clone());
                if linalg::rank(f, &trial) > r0 {
                    pairs.push((na.clone(), nb.clone()));
                    next.push((na, nb));
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    if pairs.len() != n {
        return None;
    }
    // φ with φ(a_i) = b_i: Φ = B·A^{-1}
    let a = linalg::transpose(&pairs.iter().map(|p| p.0.clone()).collect::<Vec<_>>());
    let b = linalg::transpose(&pairs.iter().map(|p| p.1.clone()).collect::<Vec<_>>());
    let ainv = linalg::inverse(f, &a)?;
    let phi = linalg::mat_mul(f, &b, &ainv);
    if linalg::rank(f, &phi) != n {
        return None;
    }
    Some(phi)
}

pub fn is_hopf_iso(h: &FiniteHopfAlgebra, h2: &FiniteHopfAlgebra, phi: &Matrix<E>) -> bool {
    let f = &*h.field;
    let n = h.dim();
    if linalg::rank(f, phi) != n {
        return false;
    }
    let ap = |v: &[E]| linalg::mat_vec(f, phi, v);
    if ap(&h.unit) != h2.unit {
        return false;
    }
    for i in 0..n {
        let ei = h.basis_vec(i);
        let pi = ap(&ei);
        if h.eps(&ei) != h2.eps(&pi) {
            return false;
        }
        if ap(&h.apply_antipode(&ei)) != h2.apply_antipode(&pi) {
            return false;
        }
        for j in 0..n {
            if ap(&h.mult[i][j]) != h2.mul(&pi, &ap(&h.basis_vec(j))) {
                return false;
            }
        }
        // (φ⊗φ)Δe_i = Δ'φ(e_i)
        let d = &h.comult[i];
        let mut lhs = vec![vec![f.zero(); n]; n];
        for j in 0..n {
            for k in 0..n {
                if f.is_zero(&d[j][k]) {
                    continue;
                }
                for u in 0..n {
                    let x = f.mul(&d[j][k], &phi[u][j]);
                    if f.is_zero(&x) {
                        continue;
                    }
                    for v in 0..n {
                        lhs[u][v] = f.add(&lhs[u][v], &f.mul(&x, &phi[v][k]));
                    }
                }
            }
        }
        if lhs != h2.delta(&pi) {
            return false;
        }
    }
    true
}

/// Tensor product H ⊗ H' (the product group scheme).
pub fn tensor_product(a: &FiniteHopfAlgebra, b: &FiniteHopfAlgebra) -> Result<FiniteHopfAlgebra> {
    if *a.field != *b.field {
        return Err(Error::Mismatch("Hopf algebras over different fields".into()));
    }
    let f = &*a.field;
    let (na, nb) = (a.dim(), b.dim());
    let n = na * nb;
    if n > MAX_HOPF_DIM {
        return Err(Error::CapExceeded(format!("tensor product of dimension {n}")));
    }
    let idx = |i: usize, j: usize| i * nb + j;
    let outer = |u: &[E], v: &[E]| -> Vec<E> {
        let mut o = vec![f.zero(); n];
        for (i, x) in u.iter().enumerate() {
            for (j, y) in v.iter().enumerate() {
                o[idx(i, j)] = f.mul(x, y);
            }
        }
        o
    };
    let mut mult = vec![vec![Vec::new(); n]; n];
    let mut comult = vec![vec![vec![f.zero(); n]; n]; n];
    let mut antipode = vec![Vec::new(); n];
    let mut counit = vec![f.zero(); n];
    for i1 in 0..na {
        for j1 in 0..nb {
            let s = idx(i1, j1);
            for i2 in 0..na {
                for j2 in 0..nb {
                    mult[s][idx(i2, j2)] = outer(&a.mult[i1][i2], &b.mult[j1][j2]);
                }
            }
            for x1 in 0..na {
                for x2 in 0..na {
                    let ca = &a.comult[i1][x1][x2];
                    if f.is_zero(ca) {
                        continue;
                    }
                    for y1 in 0..nb {
                        for y2 in 0..nb {
                            let cb = &b.comult[j1][y1][y2];
                            if !f.is_zero(cb) {
                                comult[s][idx(x1, y1)][idx(x2, y2)] = f.mul(ca, cb);
                            }
                        }
                    }
                }
            }
            antipode[s] = outer(&a.antipode[i1], &b.antipode[j1]);
            counit[s] = f.mul(&a.counit[i1], &b.counit[j1]);
        }
    }
    FiniteHopfAlgebra {
        field: a.field.clone(),
        name: format!("{}x{}", a.name, b.name),
        mult,
        unit: outer(&a.unit, &b.unit),
        comult,
        counit,
        antipode,
        generators: Vec::new(),
    }
    .validate()
}
