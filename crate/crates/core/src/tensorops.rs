//! G_a-valued bilinear, alternating and weak-alternating forms; abelian weak wedges.

use std::sync::Arc;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fields::GF;
use crate::hopf::{alpha, witt_frobenius_kernel, FiniteHopfAlgebra};
use crate::linalg;
use crate::ring::Ring;
use crate::witt::{verify_wf_ring_identity, NilpotentPolyRing, WittRing};

type E = Vec<u64>;
/// β ∈ R_G ⊗ R_H as an n_G × n_H coefficient matrix.
pub type Tensor = Vec<Vec<E>>;

pub const MAX_FORM_DIM: usize = 32;

#[derive(Clone, Debug)]
pub struct BilinearFormSpace {
    pub field: Arc<GF>,
    pub dims: (usize, usize),
    pub basis: Vec<Tensor>,
    pub same_source: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FormDims {
    pub bilinear: usize,
    pub alternating: Option<usize>,
    pub weak_alternating: Option<usize>,
}

fn flatten(t: &Tensor) -> Vec<E> {
    t.iter().flatten().cloned().collect()
}

fn unflatten(v: &[E], cols: usize) -> Tensor {
    v.chunks(cols).map(|c| c.to_vec()).collect()
}

fn combine(f: &GF, basis: &[Tensor], coeffs: &[E]) -> Tensor {
    let (r, c) = (basis[0].len(), basis[0][0..].first().map_or(0, |x| x.len()));
    let mut out = vec![vec![f.zero(); c]; r];
    for (t, k) in basis.iter().zip(coeffs) {
        if f.is_zero(k) {
            continue;
        }
        for (orow, trow) in out.iter_mut().zip(t) {
            for (o, x) in orow.iter_mut().zip(trow) {
                *o = f.add(o, &f.mul(k, x));
            }
        }
    }
    out
}

/// Residuals of the two biadditivity conditions; all zero iff β is bilinear.
pub fn biadditivity_residual(g: &FiniteHopfAlgebra, h: &FiniteHopfAlgebra, beta: &Tensor) -> bool {
    let f = &*g.field;
    let (ng, nh) = (g.dim(), h.dim());
    for j in 0..ng {
        for k in 0..ng {
            for b in 0..nh {
                let mut v = f.zero();
                for (a, row) in beta.iter().enumerate() {
                    v = f.add(&v, &f.mul(&row[b], &g.comult[a][j][k]));
                }
                v = f.sub(&v, &f.mul(&beta[j][b], &g.unit[k]));
                v = f.sub(&v, &f.mul(&beta[k][b], &g.unit[j]));
                if !f.is_zero(&v) {
                    return false;
                }
            }
        }
    }
    for (a, row) in beta.iter().enumerate() {
        for j in 0..nh {
            for k in 0..nh {
                let mut v = f.zero();
                for (b, x) in row.iter().enumerate() {
                    v = f.add(&v, &f.mul(x, &h.comult[b][j][k]));
                }
                v = f.sub(&v, &f.mul(&beta[a][j], &h.unit[k]));
                v = f.sub(&v, &f.mul(&beta[a][k], &h.unit[j]));
                if !f.is_zero(&v) {
                    return false;
                }
            }
        }
    }
    true
}

fn check_pair(g: &FiniteHopfAlgebra, h: &FiniteHopfAlgebra) -> Result<()> {
    if *g.field != *h.field {
        return Err(Error::InvalidInput("form spaces need a common field".into()));
    }
    if g.dim() > MAX_FORM_DIM || h.dim() > MAX_FORM_DIM {
        return Err(Error::CapExceeded(format!("form spaces need dimension ≤ {MAX_FORM_DIM}")));
    }
    if !g.is_commutative() || !h.is_commutative() || !g.is_cocommutative() || !h.is_cocommutative() {
        return Err(Error::InvalidInput("form spaces need commutative group schemes".into()));
    }
    Ok(())
}

/// Bilinear maps G × H → G_a: the primitivity conditions act slotwise, so solutions are Prim(R_G) ⊗ Prim(R_H).
pub fn bilinear_space(g: &FiniteHopfAlgebra, h: &FiniteHopfAlgebra) -> Result<BilinearFormSpace> {
    check_pair(g, h)?;
    let f = &*g.field;
    let (pg, ph) = (g.primitives(), h.primitives());
    let mut basis = Vec::new();
    for u in &pg {
        for v in &ph {
            basis.push(u.iter().map(|a| v.iter().map(|b| f.mul(a, b)).collect()).collect::<Tensor>());
        }
    }
    if !basis.iter().all(|b| biadditivity_residual(g, h, b)) {
        return Err(Error::AxiomFailure("product of primitives is not biadditive".into()));
    }
    Ok(BilinearFormSpace { field: g.field.clone(), dims: (g.dim(), h.dim()), basis, same_source: g.name == h.name && g.mult == h.mult && g.comult == h.comult })
}

/// The same space from the full linear system on R_G ⊗ R_H (used as a cross-check).
pub fn bilinear_space_direct(g: &FiniteHopfAlgebra, h: &FiniteHopfAlgebra) -> Result<BilinearFormSpace> {
    check_pair(g, h)?;
    let f = &*g.field;
    let (ng, nh) = (g.dim(), h.dim());
    let idx = |a: usize, b: usize| a * nh + b;
    let n = ng * nh;
    let mut rows: Vec<Vec<E>> = Vec::new();
    for j in 0..ng {
        for k in 0..ng {
            for b in 0..nh {
                let mut row = vec![f.zero(); n];
                for a in 0..ng {
                    row[idx(a, b)] = f.add(&row[idx(a, b)], &g.comult[a][j][k]);
                }
                row[idx(j, b)] = f.sub(&row[idx(j, b)], &g.unit[k]);
                row[idx(k, b)] = f.sub(&row[idx(k, b)], &g.unit[j]);
                rows.push(row);
            }
        }
    }
    for a in 0..ng {
        for j in 0..nh {
            for k in 0..nh {
                let mut row = vec![f.zero(); n];
                for b in 0..nh {
                    row[idx(a, b)] = f.add(&row[idx(a, b)], &h.comult[b][j][k]);
                }
                row[idx(a, j)] = f.sub(&row[idx(a, j)], &h.unit[k]);
                row[idx(a, k)] = f.sub(&row[idx(a, k)], &h.unit[j]);
                rows.push(row);
            }
        }
    }
    rows.retain(|r| r.iter().any(|x| !f.is_zero(x)));
    let rows = linalg::span_basis(f, &rows);
    let ker = linalg::kernel(f, &rows, n);
    let basis = ker.iter().map(|v| unflatten(v, nh)).collect();
    Ok(BilinearFormSpace { field: g.field.clone(), dims: (ng, nh), basis, same_source: g.mult == h.mult && g.comult == h.comult })
}

impl BilinearFormSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn sub_basis(&self, image: impl Fn(&Tensor) -> Vec<E>) -> Vec<Tensor> {
        let f = &*self.field;
        if self.basis.is_empty() {
            return Vec::new();
        }
        let cols: Vec<Vec<E>> = self.basis.iter().map(&image).collect();
        let ker = linalg::kernel(f, &linalg::transpose(&cols), self.basis.len());
        ker.iter().map(|c| combine(f, &self.basis, c)).collect()
    }

    fn need_same(&self) -> Result<()> {
        if !self.same_source || self.dims.0 != self.dims.1 {
            return Err(Error::InvalidInput("alternating conditions need G = H".into()));
        }
        Ok(())
    }

    /// Forms vanishing on the diagonal: mult(β) = 0.
    pub fn alternating(&self, g: &FiniteHopfAlgebra) -> Result<Vec<Tensor>> {
        self.need_same()?;
        let f = &*self.field;
        let n = g.dim();
        Ok(self.sub_basis(|t| {
            let mut out = vec![f.zero(); n];
            for (a, row) in t.iter().enumerate() {
                for (b, x) in row.iter().enumerate() {
                    if f.is_zero(x) {
                        continue;
                    }
                    for (o, m) in out.iter_mut().zip(&g.mult[a][b]) {
                        *o = f.add(o, &f.mul(x, m));
                    }
                }
            }
            out
        }))
    }

    /// Kernel of β ↦ β + swap(β).
    pub fn weak_alternating(&self) -> Result<Vec<Tensor>> {
        self.need_same()?;
        let f = &*self.field;
        Ok(self.sub_basis(|t| flatten(&sym(f, t))))
    }

    pub fn contains(&self, t: &Tensor) -> bool {
        let f = &*self.field;
        let mut vecs: Vec<Vec<E>> = self.basis.iter().map(flatten).collect();
        let before = linalg::span_basis(f, &vecs).len();
        vecs.push(flatten(t));
        linalg::span_basis(f, &vecs).len() == before
    }
}

pub fn swap(t: &Tensor) -> Tensor {
    let n = t.len();
    (0..n).map(|a| (0..n).map(|b| t[b][a].clone()).collect()).collect()
}

fn sym(f: &GF, t: &Tensor) -> Tensor {
    let s = swap(t);
    t.iter().zip(&s).map(|(r1, r2)| r1.iter().zip(r2).map(|(a, b)| f.add(a, b)).collect()).collect()
}

pub fn form_dims(g: &FiniteHopfAlgebra, h: &FiniteHopfAlgebra) -> Result<FormDims> {
    let s = bilinear_space(g, h)?;
    let same = s.same_source;
    Ok(FormDims {
        bilinear: s.dim(),
        alternating: if same { Some(s.alternating(g)?.len()) } else { None },
        weak_alternating: if same { Some(s.weak_alternating()?.len()) } else { None },
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct WfReport {
    pub p: u64,
    pub r: usize,
    pub identity_pass: bool,
    pub characters_dim: usize,
    pub bilinear_dim: usize,
    pub images_in_bilinear: bool,
    pub pairing_rank: usize,
    pub pass: bool,
}

/// u(x,y) = [x]·[y] : α_p × α_p → W_r[F] against the character spaces Hom(−, G_a).
pub fn wf_identification(p: u64, r: usize) -> Result<WfReport> {
    if !(1..=3).contains(&r) {
        return Err(Error::InvalidInput("wf identification needs 1 ≤ r ≤ 3".into()));
    }
    let identity_pass = if r >= 2 { verify_wf_ring_identity(p, r)?.pass } else { true };
    let w = witt_frobenius_kernel(p, r, 1)?;
    let a = alpha(p, 1, 1)?;
    let f = &*a.field;
    let chars = w.primitives();
    let bil = bilinear_space(&a, &a)?;
    // components of [x]·[y] in W_r(k[x,y]/(x^p, y^p))
    let ring = NilpotentPolyRing::uniform(p, &["x", "y"], p as u32)?;
    let wr = WittRing::new(ring.clone(), p, r)?;
    let prod = wr.mul(&wr.teichmuller(&ring.var(0)), &wr.teichmuller(&ring.var(1)))?;
    let names: Vec<String> = (0..r).map(|i| format!("x{i}")).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let wring = NilpotentPolyRing::uniform(p, &refs, p as u32)?;
    let aring = NilpotentPolyRing::uniform(p, &["x"], p as u32)?;
    // pull back each basis monomial of W_r[F] along u
    let pulled: Vec<Vec<u64>> = (0..wring.dim())
        .map(|i| {
            let e = wring.exponents_of(i);
            let mut acc = ring.one();
            for (c, &k) in prod.components.iter().zip(&e) {
                for _ in 0..k {
                    acc = ring.mul(&acc, c);
                }
            }
            acc
        })
        .collect();
    let to_tensor = |v: &[u64]| -> Tensor {
        let n = a.dim();
        let mut t = vec![vec![f.zero(); n]; n];
        for (idx, c) in v.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            let e = ring.exponents_of(idx);
            let (i, j) = (aring.index(&e[..1]).unwrap(), aring.index(&e[1..]).unwrap());
            let mut x = f.zero();
            x[0] = *c;
            t[i][j] = x;
        }
        t
    };
    let mut images = Vec::new();
    for ch in &chars {
        let mut acc = vec![0u64; ring.dim()];
        for (i, c) in ch.iter().enumerate() {
            if c[0] == 0 {
                continue;
            }
            acc = ring.add(&acc, &ring.mul(&ring.monomial(&vec![0; 2], c[0]), &pulled[i]));
        }
        images.push(to_tensor(&acc));
    }
    let images_in_bilinear = images.iter().all(|t| bil.contains(t));
    let pairing_rank = linalg::span_basis(f, &images.iter().map(flatten).collect::<Vec<_>>()).len();
    let pass = identity_pass && images_in_bilinear && chars.len() == 1 && bil.dim() == 1 && pairing_rank == 1;
    Ok(WfReport { p, r, identity_pass, characters_dim: chars.len(), bilinear_dim: bil.dim(), images_in_bilinear, pairing_rank, pass })
}

/// Finitely generated abelian group ⊕ Z/d_i with d_1 | d_2 | …, 0 meaning Z.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FgAbelianGroup {
    pub factors: Vec<u64>,
}

impl FgAbelianGroup {
    /// Normalizes any list of cyclic orders into invariant factors.
    pub fn new(orders: &[u64]) -> Self {
        let n = orders.len();
        let m: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| if i == j { orders[i] as i128 } else { 0 }).collect()).collect();
        FgAbelianGroup { factors: cokernel(&m, n) }
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().filter(|&&d| d == 0).count()
    }
}

impl std::fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.factors.iter().map(|&d| if d == 0 { "Z".to_string() } else { format!("Z/{d}") }).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Diagonal of the Smith form of an integer matrix (rows × cols).
pub fn smith_diagonal(m: &[Vec<i128>]) -> Vec<i128> {
    let mut a: Vec<Vec<i128>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero absolute value in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        let piv = a[t][t];
        for i in t + 1..rows {
            let q = a[i][t].div_euclid(piv);
            if q != 0 {
                for j in t..cols {
                    a[i][j] -= q * a[t][j];
                }
            }
            clean &= a[i][t] == 0;
        }
        for j in t + 1..cols {
            let q = a[t][j].div_euclid(piv);
            if q != 0 {
                for row in a.iter_mut().skip(t) {
                    row[j] -= q * row[t];
                }
            }
            clean &= a[t][j] == 0;
        }
        if !clean {
            continue;
        }
        // divisibility: fold any entry not divisible by the pivot into the pivot row
        if let Some(i) = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % piv != 0)) {
            for j in t..cols {
                let x = a[i][j];
                a[t][j] += x;
            }
            continue;
        }
        diag.push(piv.abs());
        t += 1;
    }
    diag
}

/// Invariant factors of Z^rows / (column span of m).
fn cokernel(m: &[Vec<i128>], rows: usize) -> Vec<u64> {
    let mut d = smith_diagonal(m);
    d.retain(|&x| x != 1);
    let mut out: Vec<u64> = d.iter().map(|&x| x as u64).collect();
    let nonzero = smith_diagonal(m).len();
    out.extend(std::iter::repeat(0).take(rows - nonzero));
    out
}

fn tensor_orders(a: &FgAbelianGroup) -> Vec<u64> {
    let n = a.factors.len();
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            out.push(a.factors[i].gcd(&a.factors[j]));
        }
    }
    out
}

/// Integer matrix of g⊗h ↦ g⊗h + h⊗g on the generators e_ij of A⊗A.
#[derive(Clone, Debug, Serialize)]
pub struct Whitehead {
    pub matrix: Vec<Vec<i128>>,
    pub tensor_orders: Vec<u64>,
    pub cokernel: FgAbelianGroup,
    pub cross_check: FgAbelianGroup,
    pub agrees: bool,
}

fn symmetrization_matrix(n: usize) -> Vec<Vec<i128>> {
    let mut m = vec![vec![0i128; n * n]; n * n];
    for i in 0..n {
        for j in 0..n {
            m[i * n + j][i * n + j] += 1;
            m[j * n + i][i * n + j] += 1;
        }
    }
    m
}

/// A ⋏ A = Coker(A⊗A → A⊗A, e_ij ↦ e_ij + e_ji).
pub fn weak_wedge_abelian(a: &FgAbelianGroup) -> FgAbelianGroup {
    let n = a.factors.len();
    let orders = tensor_orders(a);
    let mut m = symmetrization_matrix(n);
    for (k, &d) in orders.iter().enumerate() {
        if d != 0 {
            for (r, row) in m.iter_mut().enumerate() {
                row.push(if r == k { d as i128 } else { 0 });
            }
        }
    }
    FgAbelianGroup { factors: cokernel(&m, n * n) }
}

pub fn whitehead_symmetrization(a: &FgAbelianGroup) -> Whitehead {
    let n = a.factors.len();
    let matrix = symmetrization_matrix(n);
    let cokernel = weak_wedge_abelian(a);
    // block by block: the diagonal gives Z/gcd(2, d_i), each pair {ij, ji} one copy of Z/gcd(d_i, d_j)
    let mut orders = Vec::new();
    for i in 0..n {
        orders.push(2u64.gcd(&a.factors[i]));
        for j in i + 1..n {
            orders.push(a.factors[i].gcd(&a.factors[j]));
        }
    }
    let cross_check = FgAbelianGroup::new(&orders);
    let agrees = cross_check == cokernel;
    Whitehead { matrix, tensor_orders: tensor_orders(a), cokernel, cross_check, agrees }
}
