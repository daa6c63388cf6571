//! Linear algebra over Z/p^r via Smith normal form (a local principal ring).

use crate::arith::{inv_mod, mul_mod};

/// Smith decomposition D = U·A·V with D diagonal, entries p^{v_i}.
#[derive(Clone, Debug)]
pub struct Smith {
    pub p: u64,
    pub r: u32,
    pub n: u64,
    pub rows: usize,
    pub cols: usize,
    /// valuations of the nonzero diagonal entries
    pub vals: Vec<u32>,
    pub u: Option<Vec<Vec<u64>>>,
    pub v: Vec<Vec<u64>>,
}

fn val(x: u64, p: u64, r: u32) -> u32 {
    if x == 0 {
        return r;
    }
    let mut x = x;
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    v
}

impl Smith {
    pub fn new(p: u64, r: u32, a: &[Vec<u64>], cols: usize, want_u: bool) -> Self {
        let n = p.pow(r);
        let rows = a.len();
        let mut a: Vec<Vec<u64>> = a.iter().map(|row| row.iter().map(|x| x % n).collect()).collect();
        let mut u: Option<Vec<Vec<u64>>> = want_u.then(|| {
            (0..rows).map(|i| (0..rows).map(|j| u64::from(i == j)).collect()).collect()
        });
        let mut v: Vec<Vec<u64>> = (0..cols).map(|i| (0..cols).map(|j| u64::from(i == j)).collect()).collect();
        let mut vals = Vec::new();
        let sub_mul = |row: &mut [u64], src: &[u64], c: u64| {
            if c == 0 {
                return;
            }
            let nc = n - c;
            for (x, y) in row.iter_mut().zip(src) {
                if *y != 0 {
                    *x = ((*x as u128 + mul_mod(nc, *y, n) as u128) % n as u128) as u64;
                }
            }
        };
        let steps = rows.min(cols);
        for t in 0..steps {
            // pivot of minimal valuation, scanning deterministically
            let mut best: Option<(u32, usize, usize)> = None;
            'scan: for (i, row) in a.iter().enumerate().skip(t) {
                for (j, &x) in row.iter().enumerate().skip(t) {
                    if x != 0 {
                        let vx = val(x, p, r);
                        if best.is_none_or(|b| vx < b.0) {
                            best = Some((vx, i, j));
                            if vx == 0 {
                                break 'scan;
                            }
                        }
                    }
                }
            }
            let Some((vp, pi, pj)) = best else { break };
            a.swap(t, pi);
            if let Some(u) = u.as_mut() {
                u.swap(t, pi);
            }
            if pj != t {
                for row in a.iter_mut() {
                    row.swap(t, pj);
                }
                for row in v.iter_mut() {
                    row.swap(t, pj);
                }
            }
            let pv = p.pow(vp);
            let unit = a[t][t] / pv;
            let ui = inv_mod(unit % n, n).expect("unit");
            for x in a[t].iter_mut() {
                *x = mul_mod(*x, ui, n);
            }
            if let Some(u) = u.as_mut() {
                for x in u[t].iter_mut() {
                    *x = mul_mod(*x, ui, n);
                }
            }
            let prow = a[t].clone();
            let urow = u.as_ref().map(|u| u[t].clone());
            for i in t + 1..rows {
                let c = a[i][t] / pv;
                if c != 0 {
                    sub_mul(&mut a[i], &prow, c);
                    if let (Some(u), Some(ur)) = (u.as_mut(), urow.as_ref()) {
                        sub_mul(&mut u[i], ur, c);
                    }
                }
            }
            // column elimination: only row t has nonzero entries beyond column t now
            let coeffs: Vec<(usize, u64)> = (t + 1..cols).map(|j| (j, a[t][j] / pv)).filter(|&(_, c)| c != 0).collect();
            for &(j, c) in &coeffs {
                a[t][j] = 0;
                for row in v.iter_mut() {
                    let y = row[t];
                    if y != 0 {
                        row[j] = (row[j] + mul_mod(n - c, y, n)) % n;
                    }
                }
            }
            vals.push(vp);
        }
        Smith { p, r, n, rows, cols, vals, u, v }
    }

    pub fn rank(&self) -> usize {
        self.vals.len()
    }

    /// Generators of {x : A·x = 0}.
    pub fn kernel(&self) -> Vec<Vec<u64>> {
        let mut out = Vec::new();
        for i in 0..self.cols {
            let scale = if i < self.vals.len() {
                if self.vals[i] == 0 {
                    continue;
                }
                self.p.pow(self.r - self.vals[i])
            } else {
                1
            };
            out.push(self.v.iter().map(|row| mul_mod(row[i], scale, self.n)).collect());
        }
        out
    }

    /// Some x with A·x = b; requires U.
    pub fn solve(&self, b: &[u64]) -> Option<Vec<u64>> {
        let u = self.u.as_ref().expect("solve needs U");
        let n = self.n;
        let c: Vec<u64> = u
            .iter()
            .map(|row| row.iter().zip(b).fold(0u64, |acc, (x, y)| (acc + mul_mod(*x, *y % n, n)) % n))
            .collect();
        let mut y = vec![0u64; self.cols];
        for (i, ci) in c.iter().enumerate() {
            if i < self.vals.len() {
                let pv = self.p.pow(self.vals[i]);
                if ci % pv != 0 {
                    return None;
                }
                y[i] = ci / pv;
            } else if *ci != 0 {
                return None;
            }
        }
        Some(
            self.v
                .iter()
                .map(|row| row.iter().zip(&y).fold(0u64, |acc, (x, z)| (acc + mul_mod(*x, *z, n)) % n))
                .collect(),
        )
    }
}

pub fn mat_vec_mod(a: &[Vec<u64>], x: &[u64], n: u64) -> Vec<u64> {
    a.iter().map(|row| row.iter().zip(x).fold(0u64, |acc, (u, v)| (acc + mul_mod(*u, *v, n)) % n)).collect()
}

/// Whether `v` lies in the Z/p^r-span of the columns `gens`.
pub fn in_span(p: u64, r: u32, gens: &[Vec<u64>], v: &[u64]) -> bool {
    let dim = v.len();
    if gens.is_empty() {
        return v.iter().all(|&x| x % p.pow(r) == 0);
    }
    let a: Vec<Vec<u64>> = (0..dim).map(|i| gens.iter().map(|g| g[i]).collect()).collect();
    Smith::new(p, r, &a, gens.len(), true).solve(v).is_some()
}

/// Order of the module spanned by the columns, as log_p.
pub fn span_length(p: u64, r: u32, gens: &[Vec<u64>]) -> u32 {
    if gens.is_empty() {
        return 0;
    }
    let dim = gens[0].len();
    let a: Vec<Vec<u64>> = (0..dim).map(|i| gens.iter().map(|g| g[i]).collect()).collect();
    Smith::new(p, r, &a, gens.len(), false).vals.iter().map(|v| r - v).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_mod_9() {
        // 3x = 0 mod 9 has kernel 3Z/9
        let s = Smith::new(3, 2, &[vec![3]], 1, true);
        assert_eq!(s.kernel(), vec![vec![3]]);
        assert!(s.solve(&[6]).is_some());
        assert!(s.solve(&[1]).is_none());
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let a = vec![vec![2, 4, 6, 1], vec![4, 0, 2, 2], vec![6, 4, 0, 3]];
        let s = Smith::new(2, 3, &a, 4, true);
        for k in s.kernel() {
            assert!(mat_vec_mod(&a, &k, 8).iter().all(|&x| x == 0));
        }
        // kernel order times image order = 8^4
        let img: u32 = s.vals.iter().map(|v| 3 - v).sum();
        let ker = span_length(2, 3, &s.kernel());
        assert_eq!(img + ker, 12);
        let b = mat_vec_mod(&a, &[1, 2, 3, 4], 8);
        let x = s.solve(&b).unwrap();
        assert_eq!(mat_vec_mod(&a, &x, 8), b);
    }
}
