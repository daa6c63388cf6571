use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::fields::GF;
use crate::linalg::{self, Matrix};
use crate::ring::{Field, Ring};
use crate::witt::GaloisRing;
use crate::zmodlin::{self, Smith};

/// How a module was built, so it can be rebuilt at another precision.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Recipe {
    Dmn { m: usize, n: usize },
    Moduli { x1: Vec<u64>, x2: Vec<u64> },
    Dual(Box<Recipe>),
    Sum(Box<Recipe>, Box<Recipe>),
    Explicit,
}

/// Free W_r(k)-module with F(v) = MF·σ(v), V(v) = MV·σ^{-1}(v).
#[derive(Clone, Debug)]
pub struct DieudonneModule {
    pub gr: Arc<GaloisRing>,
    pub mf: Matrix<Vec<u64>>,
    pub mv: Matrix<Vec<u64>>,
    pub recipe: Recipe,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModuleJson {
    pub p: u64,
    pub r: u32,
    pub m: usize,
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poly: Option<Vec<u64>>,
    #[serde(rename = "F")]
    pub f: Matrix<Vec<u64>>,
    #[serde(rename = "V")]
    pub v: Matrix<Vec<u64>>,
}

pub(crate) fn sigma_mat(gr: &GaloisRing, a: &Matrix<Vec<u64>>, k: i64) -> Matrix<Vec<u64>> {
    a.iter().map(|row| row.iter().map(|x| gr.sigma_pow(x, k)).collect()).collect()
}

pub(crate) fn int_matrix(gr: &GaloisRing, a: &[Vec<i64>]) -> Matrix<Vec<u64>> {
    a.iter().map(|row| row.iter().map(|&x| gr.from_i64(x)).collect()).collect()
}

fn block_diag(gr: &GaloisRing, a: &Matrix<Vec<u64>>, b: &Matrix<Vec<u64>>) -> Matrix<Vec<u64>> {
    let (ha, hb) = (a.len(), b.len());
    let mut out = linalg::zeros(gr, ha + hb, ha + hb);
    for i in 0..ha {
        for j in 0..ha {
            out[i][j] = a[i][j].clone();
        }
    }
    for i in 0..hb {
        for j in 0..hb {
            out[ha + i][ha + j] = b[i][j].clone();
        }
    }
    out
}

/// Galois ring over a seeded field of degree m.
pub fn galois_ring(p: u64, m: usize, r: u32) -> Result<Arc<GaloisRing>> {
    Ok(Arc::new(GaloisRing::new(Arc::new(GF::new(p, m)?), r)?))
}

impl DieudonneModule {
    pub fn new(gr: Arc<GaloisRing>, mf: Matrix<Vec<u64>>, mv: Matrix<Vec<u64>>) -> Result<Self> {
        let m = DieudonneModule { gr, mf, mv, recipe: Recipe::Explicit };
        m.check_relations()?;
        Ok(m)
    }

    pub fn rank(&self) -> usize {
        self.mf.len()
    }

    pub fn p(&self) -> u64 {
        self.gr.p()
    }

    pub fn r(&self) -> u32 {
        self.gr.r()
    }

    /// MF·σ(MV) = p and MV·σ^{-1}(MF) = p.
    pub fn check_relations(&self) -> Result<()> {
        let gr = &*self.gr;
        let h = self.rank();
        let shape_ok = |a: &Matrix<Vec<u64>>| a.len() == h && a.iter().all(|row| row.len() == h && row.iter().all(|x| x.len() == gr.m()));
        if !shape_ok(&self.mf) || !shape_ok(&self.mv) {
            return Err(Error::InvalidInput("F and V must be square matrices over the Galois ring".into()));
        }
        let pid: Matrix<Vec<u64>> = (0..h).map(|i| (0..h).map(|j| gr.from_i64(if i == j { gr.p() as i64 } else { 0 })).collect()).collect();
        let fv = linalg::mat_mul(gr, &self.mf, &sigma_mat(gr, &self.mv, 1));
        let vf = linalg::mat_mul(gr, &self.mv, &sigma_mat(gr, &self.mf, -1));
        if fv != pid || vf != pid {
            return Err(Error::AxiomFailure("FV = VF = p fails".into()));
        }
        Ok(())
    }

    /// Cyclic module 𝒟/𝒟(V^n − F^m) on the words 1, V, …, V^n, F, …, F^{m−1}.
    pub fn dmn(m: usize, n: usize, gr: Arc<GaloisRing>) -> Result<Self> {
        if m == 0 || n == 0 || arith::gcd(m as u64, n as u64) != 1 {
            return Err(Error::InvalidInput(format!("D_{{{m},{n}}} needs coprime positive m, n")));
        }
        let h = m + n;
        if h > 16 {
            return Err(Error::CapExceeded(format!("rank {h} too large")));
        }
        let p = gr.p() as i64;
        // word index: V^j at j (0 ≤ j ≤ n), F^j at n + j (1 ≤ j < m); F^m = V^n
        let vword = |j: usize| j;
        let fword = |j: usize| if j == 0 { 0 } else if j == m { n } else { n + j };
        let mut f = vec![vec![0i64; h]; h];
        let mut v = vec![vec![0i64; h]; h];
        // F·V^j = p V^{j-1}, V·V^j = V^{j+1}, V·V^n = V F^m = p F^{m-1}
        for j in 0..=n {
            let col = vword(j);
            if j == 0 {
                f[fword(1)][col] += 1;
            } else {
                f[vword(j - 1)][col] += p;
            }
            if j < n {
                v[vword(j + 1)][col] += 1;
            } else {
                v[fword(m - 1)][col] += p;
            }
        }
        for j in 1..m {
            let col = fword(j);
            f[fword(j + 1)][col] += 1;
            v[fword(j - 1)][col] += p;
        }
        let mut out = DieudonneModule::new(gr.clone(), int_matrix(&gr, &f), int_matrix(&gr, &v))?;
        out.recipe = Recipe::Dmn { m, n };
        Ok(out)
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if *self.gr != *other.gr {
            return Err(Error::Mismatch("modules over different Galois rings".into()));
        }
        let gr = &*self.gr;
        Ok(DieudonneModule {
            gr: self.gr.clone(),
            mf: block_diag(gr, &self.mf, &other.mf),
            mv: block_diag(gr, &self.mv, &other.mv),
            recipe: Recipe::Sum(Box::new(self.recipe.clone()), Box::new(other.recipe.clone())),
        })
    }

    /// dim_k M/FM.
    pub fn dimension(&self) -> usize {
        let k = self.gr.residue().clone();
        let red: Matrix<Vec<u64>> = self.mf.iter().map(|row| row.iter().map(|x| self.gr.reduce(x)).collect()).collect();
        self.rank() - linalg::rank(&*k, &red)
    }

    /// Hom_W(M, W) with F·θ = σ∘θ∘V and V·θ = σ^{-1}∘θ∘F.
    pub fn dual(&self) -> Self {
        let gr = &*self.gr;
        DieudonneModule {
            gr: self.gr.clone(),
            mf: linalg::transpose(&sigma_mat(gr, &self.mv, 1)),
            mv: linalg::transpose(&sigma_mat(gr, &self.mf, -1)),
            recipe: Recipe::Dual(Box::new(self.recipe.clone())),
        }
    }

    pub fn at_precision(&self, r: u32) -> Result<Self> {
        if r == self.r() {
            return Ok(self.clone());
        }
        let gr = Arc::new(self.gr.with_precision(r)?);
        if r < self.r() {
            let red = |a: &Matrix<Vec<u64>>| a.iter().map(|row| row.iter().map(|x| self.gr.reduce_to(x, &gr)).collect()).collect();
            return Ok(DieudonneModule { gr: gr.clone(), mf: red(&self.mf), mv: red(&self.mv), recipe: self.recipe.clone() });
        }
        build(&self.recipe, gr)
    }

    pub fn to_json(&self) -> ModuleJson {
        ModuleJson {
            p: self.p(),
            r: self.r(),
            m: self.gr.m(),
            rank: self.rank(),
            poly: Some(self.gr.residue().modulus().to_vec()),
            f: self.mf.clone(),
            v: self.mv.clone(),
        }
    }

    pub fn from_json(j: &ModuleJson) -> Result<Self> {
        let k = match &j.poly {
            Some(poly) => GF::with_modulus(j.p, poly.clone())?,
            None => GF::new(j.p, j.m)?,
        };
        if k.degree() != j.m {
            return Err(Error::InvalidInput("field degree does not match m".into()));
        }
        let gr = Arc::new(GaloisRing::new(Arc::new(k), j.r)?);
        let n = gr.modulus_int();
        let norm = |a: &Matrix<Vec<u64>>| -> Matrix<Vec<u64>> { a.iter().map(|row| row.iter().map(|x| x.iter().map(|c| c % n).collect()).collect()).collect() };
        let out = DieudonneModule::new(gr, norm(&j.f), norm(&j.v))?;
        if out.rank() != j.rank {
            return Err(Error::InvalidInput("rank does not match the matrices".into()));
        }
        Ok(out)
    }
}

pub fn build(recipe: &Recipe, gr: Arc<GaloisRing>) -> Result<DieudonneModule> {
    match recipe {
        Recipe::Dmn { m, n } => DieudonneModule::dmn(*m, *n, gr),
        Recipe::Moduli { x1, x2 } => super::moduli::moduli_submodule(x1, x2, gr),
        Recipe::Dual(inner) => Ok(build(inner, gr)?.dual()),
        Recipe::Sum(a, b) => build(a, gr.clone())?.direct_sum(&build(b, gr)?),
        Recipe::Explicit => Err(Error::Unsupported("explicit module cannot be lifted to higher precision".into())),
    }
}

/// A Z/p^r-generating set of Hom(M, M') as h'×h matrices over the Galois ring.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub gens: Vec<Matrix<Vec<u64>>>,
    /// log_p of the order of the hom group
    pub length: u32,
    pub strict: bool,
}

impl HomSpace {
    pub fn is_zero(&self) -> bool {
        self.length == 0
    }
}

fn flatten(t: &Matrix<Vec<u64>>) -> Vec<u64> {
    t.iter().flatten().flatten().copied().collect()
}

fn unflatten(v: &[u64], rows: usize, cols: usize, m: usize) -> Matrix<Vec<u64>> {
    (0..rows).map(|i| (0..cols).map(|j| v[(i * cols + j) * m..(i * cols + j + 1) * m].to_vec()).collect()).collect()
}

/// Residuals T·MF − MF'·σ(T) and T·MV − MV'·σ^{-1}(T), flattened.
pub fn intertwining_residual(a: &DieudonneModule, b: &DieudonneModule, t: &Matrix<Vec<u64>>) -> Vec<u64> {
    let gr = &*a.gr;
    let r1 = linalg::mat_sub(gr, &linalg::mat_mul(gr, t, &a.mf), &linalg::mat_mul(gr, &b.mf, &sigma_mat(gr, t, 1)));
    let r2 = linalg::mat_sub(gr, &linalg::mat_mul(gr, t, &a.mv), &linalg::mat_mul(gr, &b.mv, &sigma_mat(gr, t, -1)));
    let mut out = flatten(&r1);
    out.extend(flatten(&r2));
    out
}

pub fn is_morphism(a: &DieudonneModule, b: &DieudonneModule, t: &Matrix<Vec<u64>>) -> bool {
    intertwining_residual(a, b, t).iter().all(|&x| x == 0)
}

fn hom_system(a: &DieudonneModule, b: &DieudonneModule) -> (Vec<Vec<u64>>, usize) {
    let gr = &*a.gr;
    let (h, h2, m) = (a.rank(), b.rank(), gr.m());
    let nunk = h2 * h * m;
    let mut cols = Vec::with_capacity(nunk);
    for i in 0..h2 {
        for j in 0..h {
            for k in 0..m {
                let mut c = gr.zero();
                c[k] = 1;
                let (sc, sic) = (gr.sigma(&c), gr.sigma_inv(&c));
                // T = c·E_ij: (T·MF) row i = c·MF[j][·]; (MF'·σT) column j = MF'[·][i]·σ(c)
                let mut r1 = linalg::zeros(gr, h2, h);
                let mut r2 = linalg::zeros(gr, h2, h);
                for col in 0..h {
                    r1[i][col] = gr.add(&r1[i][col], &gr.mul(&c, &a.mf[j][col]));
                    r2[i][col] = gr.add(&r2[i][col], &gr.mul(&c, &a.mv[j][col]));
                }
                for row in 0..h2 {
                    r1[row][j] = gr.sub(&r1[row][j], &gr.mul(&b.mf[row][i], &sc));
                    r2[row][j] = gr.sub(&r2[row][j], &gr.mul(&b.mv[row][i], &sic));
                }
                let mut v = flatten(&r1);
                v.extend(flatten(&r2));
                cols.push(v);
            }
        }
    }
    (linalg::transpose(&cols), nunk)
}

fn raw_hom_gens(a: &DieudonneModule, b: &DieudonneModule) -> Result<Vec<Vec<u64>>> {
    if *a.gr != *b.gr {
        return Err(Error::Mismatch("hom between modules over different Galois rings".into()));
    }
    let (mat, nunk) = hom_system(a, b);
    let s = Smith::new(a.p(), a.r(), &mat, nunk, false);
    Ok(s.kernel())
}

/// Hom(M, M'); when `strict`, only maps that lift to precision r+1.
pub fn hom_space(a: &DieudonneModule, b: &DieudonneModule, strict: bool) -> Result<HomSpace> {
    hom_space_depth(a, b, if strict { 1 } else { 0 })
}

/// Images in Hom_r of Hom_{r+depth}.
pub fn hom_space_depth(a: &DieudonneModule, b: &DieudonneModule, depth: u32) -> Result<HomSpace> {
    let (p, r, m) = (a.p(), a.r(), a.gr.m());
    let gens = if depth == 0 {
        raw_hom_gens(a, b)?
    } else {
        let (ah, bh) = (a.at_precision(r + depth)?, b.at_precision(r + depth)?);
        let n = p.pow(r);
        raw_hom_gens(&ah, &bh)?.into_iter().map(|g| g.iter().map(|x| x % n).collect()).collect()
    };
    let gens: Vec<Vec<u64>> = gens.into_iter().filter(|g| g.iter().any(|&x| x != 0)).collect();
    let length = zmodlin::span_length(p, r, &gens);
    Ok(HomSpace { gens: gens.iter().map(|g| unflatten(g, b.rank(), a.rank(), m)).collect(), length, strict: depth > 0 })
}

pub fn is_invertible(gr: &GaloisRing, t: &Matrix<Vec<u64>>) -> bool {
    if t.is_empty() || t.len() != t[0].len() {
        return t.is_empty();
    }
    let k = gr.residue();
    let red: Matrix<Vec<u64>> = t.iter().map(|row| row.iter().map(|x| gr.reduce(x)).collect()).collect();
    !k.is_zero(&linalg::det(&**k, &red))
}

/// Search the hom space for an invertible map: generators first, then random combinations.
pub fn find_isomorphism(a: &DieudonneModule, b: &DieudonneModule, tries: usize, rng: &mut impl rand::Rng) -> Result<Option<Matrix<Vec<u64>>>> {
    if a.rank() != b.rank() {
        return Ok(None);
    }
    let hs = hom_space(a, b, false)?;
    let gr = &*a.gr;
    for g in &hs.gens {
        if is_invertible(gr, g) {
            return Ok(Some(g.clone()));
        }
    }
    if hs.gens.is_empty() {
        return Ok(None);
    }
    let n = gr.modulus_int();
    for _ in 0..tries {
        let mut t = linalg::zeros(gr, b.rank(), a.rank());
        for g in &hs.gens {
            let c = gr.from_i64(rng.gen_range(0..n) as i64);
            t = linalg::mat_add(gr, &t, &g.iter().map(|row| row.iter().map(|x| gr.mul(&c, x)).collect()).collect());
        }
        if is_invertible(gr, &t) {
            return Ok(Some(t));
        }
    }
    Ok(None)
}
