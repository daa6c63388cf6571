//! σ-semilinear operators F(v) = A·σ(v) on k^d.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::{FieldDescriptor, FieldTower, Predicate, GF};
use crate::linalg::{self, Matrix};
use crate::ring::{Field, Ring};

pub const DEFAULT_DIM_CAP: usize = 12;

#[derive(Clone, Debug)]
pub struct SemilinearOperator {
    pub tower: Arc<FieldTower>,
    pub level: usize,
    pub a: Matrix<Vec<u64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OperatorJson {
    pub field: FieldDescriptor,
    pub matrix: Vec<Vec<Vec<u64>>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Split {
    pub vs: Vec<Vec<Vec<u64>>>,
    pub vn: Vec<Vec<Vec<u64>>>,
    pub n: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct FixedSpace {
    /// F_p-dimension of ker(F − id) over the starting field
    pub base_dim: usize,
    pub final_level: usize,
    pub final_degree: usize,
    /// F_p-basis at the final level
    pub basis: Vec<Vec<Vec<u64>>>,
    pub stabilized_dim: usize,
    pub dim_vs: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct TiltWitness {
    pub dim_vs: usize,
    /// V♭ → V, columns are V_s basis vectors
    pub flat_to_v: Matrix<Vec<u64>>,
    /// V → V_perf ≅ V_s, projection along V_n
    pub v_to_perf: Matrix<Vec<u64>>,
    pub composite: Matrix<Vec<u64>>,
    pub composite_rank: usize,
    pub is_isomorphism: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ColimCompare {
    pub fixed_dim: usize,
    pub colim_dim: usize,
    pub comparison_rank: usize,
    pub level_degree: usize,
    pub is_isomorphism: bool,
}

impl SemilinearOperator {
    pub fn new(tower: Arc<FieldTower>, level: usize, a: Matrix<Vec<u64>>) -> Result<Self> {
        let d = a.len();
        if d > DEFAULT_DIM_CAP {
            return Err(Error::CapExceeded(format!("operator dimension {d} exceeds {DEFAULT_DIM_CAP}")));
        }
        let m = tower.degree(level);
        if a.iter().any(|row| row.len() != d || row.iter().any(|x| x.len() != m)) {
            return Err(Error::InvalidInput("operator matrix must be square with entries in the field".into()));
        }
        Ok(SemilinearOperator { tower, level, a })
    }

    pub fn from_json(j: &OperatorJson) -> Result<Self> {
        let f = GF::from_descriptor(&j.field)?;
        let tower = Arc::new(FieldTower::new(f.p())?);
        let level = tower.level_containing(f.degree())?;
        // map the given field into the tower level via a root of its modulus
        let tf = tower.field(level);
        let poly: Vec<Vec<u64>> = f.modulus().iter().map(|&c| tf.from_fp_coords(&[c])).collect();
        let root = crate::fields::roots_in_field(&*tf, &poly)
            .first()
            .map(|x| x.0.clone())
            .ok_or_else(|| Error::InvalidInput("field does not embed".into()))?;
        let img = |x: &Vec<u64>| {
            let mut acc = tf.zero();
            let mut pw = tf.one();
            for c in x {
                acc = tf.add(&acc, &tf.mul(&pw, &tf.from_fp_coords(&[*c])));
                pw = tf.mul(&pw, &root);
            }
            acc
        };
        let a = j.matrix.iter().map(|row| row.iter().map(|x| img(&f.elem(x))).collect()).collect();
        SemilinearOperator::new(tower, level, a)
    }

    pub fn to_json(&self) -> OperatorJson {
        OperatorJson { field: self.field().descriptor(), matrix: self.a.clone() }
    }

    pub fn field(&self) -> Arc<GF> {
        self.tower.field(self.level)
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    fn sigma_mat(f: &GF, a: &Matrix<Vec<u64>>, k: i64) -> Matrix<Vec<u64>> {
        a.iter().map(|row| row.iter().map(|x| f.frobenius(x, k)).collect()).collect()
    }

    pub fn apply(&self, v: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let f = self.field();
        let sv: Vec<Vec<u64>> = v.iter().map(|x| f.frobenius(x, 1)).collect();
        linalg::mat_vec(&*f, &self.a, &sv)
    }

    /// A_k = A σ(A) ⋯ σ^{k−1}(A), so that F^k(v) = A_k σ^k(v).
    pub fn power_matrix(&self, k: usize) -> Matrix<Vec<u64>> {
        let f = self.field();
        let mut acc = linalg::identity(&*f, self.dim());
        for i in 0..k {
            acc = linalg::mat_mul(&*f, &acc, &Self::sigma_mat(&f, &self.a, i as i64));
        }
        acc
    }

    pub fn ss_nilpotent_split(&self) -> Split {
        let f = self.field();
        let d = self.dim();
        let mut n = 0;
        let mut ak = linalg::identity(&*f, d);
        let mut rk = d;
        loop {
            let next = linalg::mat_mul(&*f, &ak, &Self::sigma_mat(&f, &self.a, n as i64));
            let rn = linalg::rank(&*f, &next);
            if rn == rk {
                break;
            }
            ak = next;
            rk = rn;
            n += 1;
        }
        let vs = linalg::column_basis(&*f, &ak);
        let vn = linalg::kernel(&*f, &ak, d)
            .into_iter()
            .map(|v| v.iter().map(|x| f.frobenius(x, -(n as i64))).collect())
            .collect();
        Split { vs, vn, n }
    }

    /// Matrix of an F_p-linear map on V ⊗ L given as a function on L-vectors.
    fn fp_kernel_dim_at(&self, level: usize) -> (usize, Vec<Vec<Vec<u64>>>) {
        let big = self.tower.field(level);
        let md = big.degree();
        let d = self.dim();
        let a: Matrix<Vec<u64>> = self.a.iter().map(|row| row.iter().map(|x| self.tower.embed(x, self.level, level)).collect()).collect();
        let fp = big.prime_field().clone();
        // columns: images of e_i ⊗ t^j
        let mut cols: Vec<Vec<u64>> = Vec::with_capacity(d * md);
        for i in 0..d {
            for j in 0..md {
                let mut v = vec![big.zero(); d];
                v[i][j] = 1;
                let sv: Vec<Vec<u64>> = v.iter().map(|x| big.frobenius(x, 1)).collect();
                let fv = linalg::mat_vec(&*big, &a, &sv);
                let diff: Vec<u64> = fv.iter().zip(&v).flat_map(|(x, y)| big.sub(x, y)).collect();
                cols.push(diff);
            }
        }
        let mat = linalg::transpose(&cols);
        let ker = linalg::kernel(&fp, &mat, d * md);
        let basis = ker.iter().map(|k| k.chunks(md).map(|c| c.to_vec()).collect()).collect();
        (ker.len(), basis)
    }

    /// Order of F^m on V_s, m the degree of the operator's field.
    fn descent_order(&self, split: &Split) -> Result<Option<usize>> {
        let f = self.field();
        let s = split.vs.len();
        if s == 0 {
            return Ok(Some(1));
        }
        let m = f.degree();
        let phi = self.power_matrix(m);
        let b = linalg::transpose(&split.vs);
        // C with Φ B = B C
        let pb = linalg::mat_mul(&*f, &phi, &b);
        let mut c: Matrix<Vec<u64>> = vec![Vec::new(); s];
        for col in 0..s {
            let rhs: Vec<Vec<u64>> = pb.iter().map(|row| row[col].clone()).collect();
            let x = linalg::solve(&*f, &b, &rhs).ok_or_else(|| Error::AxiomFailure("V_s is not F-stable".into()))?;
            for (i, xi) in x.into_iter().enumerate() {
                c[i].push(xi);
            }
        }
        let id = linalg::identity(&*f, s);
        let mut cur = c.clone();
        for j in 1..=self.tower.cap() / m {
            if cur == id {
                return Ok(Some(j));
            }
            cur = linalg::mat_mul(&*f, &cur, &c);
        }
        Ok(None)
    }

    pub fn fixed_space(&self) -> Result<FixedSpace> {
        let split = self.ss_nilpotent_split();
        let dim_vs = split.vs.len();
        let (base_dim, base_basis) = self.fp_kernel_dim_at(self.level);
        let m = self.field().degree();
        if base_dim == dim_vs {
            return Ok(FixedSpace { base_dim, final_level: self.level, final_degree: m, basis: base_basis, stabilized_dim: base_dim, dim_vs });
        }
        let order = self.descent_order(&split)?.ok_or_else(|| {
            Error::CapExceeded(format!("fixed space needs an extension beyond degree {}", self.tower.cap()))
        })?;
        let multipliers: Vec<usize> = (2..=order).filter(|j| order % j == 0).collect();
        let test = |t: &FieldTower, lvl: usize| -> Result<bool> {
            if t.degree(lvl) % m != 0 || lvl < self.level {
                return Ok(false);
            }
            Ok(self.fp_kernel_dim_at(lvl).0 == dim_vs)
        };
        let lvl = self.tower.extend_until(Predicate::Stabilizes { base: m, multipliers, test: &test })?;
        let (dim, basis) = self.fp_kernel_dim_at(lvl);
        Ok(FixedSpace { base_dim, final_level: lvl, final_degree: self.tower.degree(lvl), basis, stabilized_dim: dim, dim_vs })
    }

    pub fn tilt_and_perfection(&self) -> Result<TiltWitness> {
        let f = self.field();
        let d = self.dim();
        let split = self.ss_nilpotent_split();
        let s = split.vs.len();
        let flat_to_v = linalg::transpose(&split.vs);
        let mut all: Vec<Vec<Vec<u64>>> = split.vs.clone();
        all.extend(split.vn.iter().cloned());
        let v_to_perf = if d == 0 {
            Vec::new()
        } else {
            let p = linalg::transpose(&all);
            let pinv = linalg::inverse(&*f, &p).ok_or_else(|| Error::AxiomFailure("V_s ⊕ V_n ≠ V".into()))?;
            pinv[..s].to_vec()
        };
        let composite = if s == 0 { Vec::new() } else { linalg::mat_mul(&*f, &v_to_perf, &flat_to_v) };
        let composite_rank = if s == 0 { 0 } else { linalg::rank(&*f, &composite) };
        Ok(TiltWitness { dim_vs: s, flat_to_v, v_to_perf, composite, composite_rank, is_isomorphism: composite_rank == s })
    }

    pub fn colim_fixed_compare(&self) -> Result<ColimCompare> {
        let fs = self.fixed_space()?;
        let big = self.tower.field(fs.final_level);
        let rank = if fs.basis.is_empty() { 0 } else { linalg::rank(&*big, &fs.basis) };
        Ok(ColimCompare {
            fixed_dim: fs.stabilized_dim,
            colim_dim: fs.dim_vs,
            comparison_rank: rank,
            level_degree: fs.final_degree,
            is_isomorphism: rank == fs.dim_vs && fs.stabilized_dim == fs.dim_vs,
        })
    }
}

pub fn random_operator(tower: Arc<FieldTower>, level: usize, d: usize, rng: &mut impl rand::Rng) -> Result<SemilinearOperator> {
    let f = tower.field(level);
    // mix in some rank deficiency so both parts of the splitting show up
    let rank = rng.gen_range(0..=d);
    let left: Matrix<Vec<u64>> = (0..d).map(|_| (0..rank).map(|_| f.random(rng)).collect()).collect();
    let right: Matrix<Vec<u64>> = (0..rank).map(|_| (0..d).map(|_| f.random(rng)).collect()).collect();
    let a = if rank == 0 { linalg::zeros(&*f, d, d) } else { linalg::mat_mul(&*f, &left, &right) };
    SemilinearOperator::new(tower, level, a)
}
