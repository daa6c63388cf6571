//! The twisted polynomial ring k_σ[F] with F·c = c^p·F, and finitely presented modules over it.

use std::cmp::Ordering;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::{FieldDescriptor, GF};
use crate::ring::{Field, Ring};

/// Coefficients of F^0, F^1, … (trimmed, empty = 0).
pub type SkewPoly = Vec<Vec<u64>>;

#[derive(Clone, Debug)]
pub struct SkewRing {
    pub field: Arc<GF>,
}

impl SkewRing {
    pub fn new(field: Arc<GF>) -> Self {
        SkewRing { field }
    }

    pub fn trim(&self, mut f: SkewPoly) -> SkewPoly {
        while f.last().is_some_and(|c| self.field.is_zero(c)) {
            f.pop();
        }
        f
    }

    pub fn degree(&self, f: &SkewPoly) -> Option<usize> {
        f.iter().rposition(|c| !self.field.is_zero(c))
    }

    pub fn constant(&self, c: Vec<u64>) -> SkewPoly {
        self.trim(vec![c])
    }

    /// c·F^k
    pub fn monomial(&self, c: Vec<u64>, k: usize) -> SkewPoly {
        let mut f = vec![self.field.zero(); k];
        f.push(c);
        self.trim(f)
    }

    pub fn add(&self, a: &SkewPoly, b: &SkewPoly) -> SkewPoly {
        let n = a.len().max(b.len());
        let z = self.field.zero();
        let out = (0..n).map(|i| self.field.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z))).collect();
        self.trim(out)
    }

    pub fn neg(&self, a: &SkewPoly) -> SkewPoly {
        a.iter().map(|c| self.field.neg(c)).collect()
    }

    pub fn sub(&self, a: &SkewPoly, b: &SkewPoly) -> SkewPoly {
        self.add(a, &self.neg(b))
    }

    /// (Σ a_i F^i)(Σ b_j F^j) = Σ a_i σ^i(b_j) F^{i+j}
    pub fn mul(&self, a: &SkewPoly, b: &SkewPoly) -> SkewPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let f = &self.field;
        let mut out = vec![f.zero(); a.len() + b.len() - 1];
        for (i, ai) in a.iter().enumerate() {
            if f.is_zero(ai) {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                let t = f.mul(ai, &f.frobenius(bj, i as i64));
                out[i + j] = f.add(&out[i + j], &t);
            }
        }
        self.trim(out)
    }

    /// f = q·g + r with deg r < deg g.
    pub fn right_divrem(&self, f: &SkewPoly, g: &SkewPoly) -> Result<(SkewPoly, SkewPoly)> {
        let dg = self.degree(g).ok_or_else(|| Error::InvalidInput("division by zero skew polynomial".into()))?;
        let fld = &self.field;
        let mut q: SkewPoly = Vec::new();
        let mut r = self.trim(f.clone());
        while let Some(dr) = self.degree(&r) {
            if dr < dg {
                break;
            }
            let k = dr - dg;
            let c = fld.div(&r[dr], &fld.frobenius(&g[dg], k as i64)).expect("nonzero leading coefficient");
            let t = self.monomial(c, k);
            q = self.add(&q, &t);
            r = self.sub(&r, &self.mul(&t, g));
        }
        Ok((q, r))
    }

    /// f = g·q + r with deg r < deg g.
    pub fn left_divrem(&self, f: &SkewPoly, g: &SkewPoly) -> Result<(SkewPoly, SkewPoly)> {
        let dg = self.degree(g).ok_or_else(|| Error::InvalidInput("division by zero skew polynomial".into()))?;
        let fld = &self.field;
        let mut q: SkewPoly = Vec::new();
        let mut r = self.trim(f.clone());
        while let Some(dr) = self.degree(&r) {
            if dr < dg {
                break;
            }
            let k = dr - dg;
            let c = fld.frobenius(&fld.div(&r[dr], &g[dg]).expect("nonzero leading coefficient"), -(dg as i64));
            let t = self.monomial(c, k);
            q = self.add(&q, &t);
            r = self.sub(&r, &self.mul(g, &t));
        }
        Ok((q, r))
    }

    fn cmp_pivot(&self, a: &SkewPoly, b: &SkewPoly) -> Ordering {
        self.degree(a).cmp(&self.degree(b)).then_with(|| a.cmp(b))
    }
}

#[derive(Clone, Debug)]
pub struct SkewPolyModule {
    pub ring: SkewRing,
    pub gens: usize,
    pub relations: Vec<Vec<SkewPoly>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SkewModuleJson {
    pub field: Option<FieldDescriptor>,
    pub gens: usize,
    pub relations: Vec<Vec<Vec<Vec<u64>>>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RankTorsion {
    pub free_rank: usize,
    pub relation_rank: usize,
    pub is_torsion: bool,
}

impl SkewPolyModule {
    pub fn new(field: Arc<GF>, gens: usize, relations: Vec<Vec<SkewPoly>>) -> Result<Self> {
        let m = field.degree();
        for row in &relations {
            if row.len() != gens {
                return Err(Error::InvalidInput(format!("relation has {} entries, expected {gens}", row.len())));
            }
            if row.iter().flatten().any(|c| c.len() != m) {
                return Err(Error::InvalidInput("relation coefficient not in the module's field".into()));
            }
        }
        let ring = SkewRing::new(field);
        let relations = relations.into_iter().map(|row| row.into_iter().map(|f| ring.trim(f)).collect()).collect();
        Ok(SkewPolyModule { ring, gens, relations })
    }

    pub fn from_json(j: &SkewModuleJson, p: u64) -> Result<Self> {
        let field = match &j.field {
            Some(d) => GF::from_descriptor(d)?,
            None => GF::prime(p)?,
        };
        let rels = j
            .relations
            .iter()
            .map(|row| row.iter().map(|f| f.iter().map(|c| field.elem(c)).collect()).collect())
            .collect();
        SkewPolyModule::new(Arc::new(field), j.gens, rels)
    }

    /// Row echelon form under left multiplication of rows; returns the number of pivots.
    pub fn rank_and_torsion(&self) -> RankTorsion {
        let ring = &self.ring;
        let mut rows = self.relations.clone();
        let mut used = vec![false; rows.len()];
        let mut pivots = 0;
        for col in 0..self.gens {
            loop {
                let active: Vec<usize> =
                    (0..rows.len()).filter(|&i| !used[i] && ring.degree(&rows[i][col]).is_some()).collect();
                if active.is_empty() {
                    break;
                }
                let piv = *active.iter().min_by(|&&a, &&b| ring.cmp_pivot(&rows[a][col], &rows[b][col])).unwrap();
                if active.len() == 1 {
                    used[piv] = true;
                    pivots += 1;
                    break;
                }
                let prow = rows[piv].clone();
                for &i in &active {
                    if i == piv {
                        continue;
                    }
                    let (q, _) = ring.right_divrem(&rows[i][col], &prow[col]).expect("pivot is nonzero");
                    for c in 0..self.gens {
                        rows[i][c] = ring.sub(&rows[i][c], &ring.mul(&q, &prow[c]));
                    }
                }
            }
        }
        let free_rank = self.gens - pivots;
        RankTorsion { free_rank, relation_rank: pivots, is_torsion: free_rank == 0 }
    }
}

pub fn is_profinite(hom_module: &SkewPolyModule) -> bool {
    hom_module.rank_and_torsion().is_torsion
}

/// Presentations of Hom(G, G_a) for standard unipotent group schemes.
pub fn hom_module_preset(name: &str, field: Arc<GF>) -> Result<SkewPolyModule> {
    let ring = SkewRing::new(field.clone());
    let one = field.one();
    let f_pow = |v: usize| ring.monomial(one.clone(), v);
    let (n, rels): (usize, Vec<Vec<SkewPoly>>) = match name {
        "G_a" => (1, vec![]),
        "alpha_p" => (1, vec![vec![f_pow(1)]]),
        "Z/p" => (1, vec![vec![ring.sub(&f_pow(1), &ring.constant(one.clone()))]]),
        _ => {
            if let Some(v) = name.strip_prefix("alpha_p^") {
                let v: usize = v.parse().map_err(|_| Error::InvalidInput(format!("bad preset {name}")))?;
                (1, vec![vec![f_pow(v)]])
            } else if let Some(r) = name.strip_prefix("Z/p^") {
                let _: usize = r.parse().map_err(|_| Error::InvalidInput(format!("bad preset {name}")))?;
                // additive characters of a constant group factor through Z/p
                (1, vec![vec![ring.sub(&f_pow(1), &ring.constant(one.clone()))]])
            } else if let Some(r) = name.strip_suffix("[F]").and_then(|s| s.strip_prefix("W_")) {
                let _: usize = r.parse().map_err(|_| Error::InvalidInput(format!("bad preset {name}")))?;
                // every additive map W_r[F] → G_a factors through x_0 and is killed by F
                (1, vec![vec![f_pow(1)]])
            } else if let Some(r) = name.strip_prefix("W_") {
                let _: usize = r.parse().map_err(|_| Error::InvalidInput(format!("bad preset {name}")))?;
                // additive maps W_r → G_a factor through W_r → G_a, (a_i) ↦ a_0
                (1, vec![])
            } else {
                return Err(Error::InvalidInput(format!("unknown preset {name}")));
            }
        }
    };
    SkewPolyModule::new(field, n, rels)
}
