//! Dense linear algebra over a field. Matrices are row-major `Vec<Vec<E>>`.

use crate::ring::{Field, Ring};

pub type Matrix<E> = Vec<Vec<E>>;

pub fn zeros<R: Ring>(r: &R, rows: usize, cols: usize) -> Matrix<R::Elem> {
    vec![vec![r.zero(); cols]; rows]
}

pub fn identity<R: Ring>(r: &R, n: usize) -> Matrix<R::Elem> {
    let mut m = zeros(r, n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = r.one();
    }
    m
}

pub fn transpose<E: Clone>(m: &Matrix<E>) -> Matrix<E> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len()).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn mat_mul<R: Ring>(r: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut out = zeros(r, n, m);
    for i in 0..n {
        for t in 0..k {
            let x = &a[i][t];
            if r.is_zero(x) {
                continue;
            }
            for j in 0..m {
                out[i][j] = r.add(&out[i][j], &r.mul(x, &b[t][j]));
            }
        }
    }
    out
}

pub fn mat_vec<R: Ring>(r: &R, a: &Matrix<R::Elem>, v: &[R::Elem]) -> Vec<R::Elem> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(r.zero(), |acc, (x, y)| r.add(&acc, &r.mul(x, y))))
        .collect()
}

pub fn mat_add<R: Ring>(r: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(u, v)| r.add(u, v)).collect()).collect()
}

pub fn mat_sub<R: Ring>(r: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(u, v)| r.sub(u, v)).collect()).collect()
}

pub fn is_zero_matrix<R: Ring>(r: &R, a: &Matrix<R::Elem>) -> bool {
    a.iter().all(|row| row.iter().all(|x| r.is_zero(x)))
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref<F: Field>(f: &F, m: &mut Matrix<F::Elem>) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !f.is_zero(&m[i][c])) else { continue };
        m.swap(r, pr);
        let inv = f.inv(&m[r][c]).unwrap();
        for x in m[r].iter_mut() {
            *x = f.mul(x, &inv);
        }
        let prow = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || f.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for (x, y) in row.iter_mut().zip(&prow).skip(c) {
                *x = f.sub(x, &f.mul(&factor, y));
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(f: &F, m: &Matrix<F::Elem>) -> usize {
    let mut a = m.clone();
    rref(f, &mut a).len()
}

/// Basis of {x : m·x = 0}.
pub fn kernel<F: Field>(f: &F, m: &Matrix<F::Elem>, ncols: usize) -> Vec<Vec<F::Elem>> {
    let mut a = m.clone();
    let pivots = rref(f, &mut a);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![f.zero(); ncols];
            v[fc] = f.one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(&a[i][fc]);
            }
            v
        })
        .collect()
}

pub fn inverse<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    let n = m.len();
    let mut aug: Matrix<F::Elem> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { f.one() } else { f.zero() }));
            r
        })
        .collect();
    let piv = rref(f, &mut aug);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Some x with m·x = b.
pub fn solve<F: Field>(f: &F, m: &Matrix<F::Elem>, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let ncols = if m.is_empty() { 0 } else { m[0].len() };
    let mut aug: Matrix<F::Elem> = m.iter().zip(b).map(|(row, x)| {
        let mut r = row.clone();
        r.push(x.clone());
        r
    }).collect();
    let piv = rref(f, &mut aug);
    if piv.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![f.zero(); ncols];
    for (i, &pc) in piv.iter().enumerate() {
        x[pc] = aug[i][ncols].clone();
    }
    Some(x)
}

/// Basis (as vectors) of the span of the given vectors, in echelon form.
pub fn span_basis<F: Field>(f: &F, vecs: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
    let mut a = vecs.to_vec();
    let piv = rref(f, &mut a);
    a.truncate(piv.len());
    a
}

/// Basis of the column space, chosen among the original columns.
pub fn column_basis<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let mut a = m.clone();
    let piv = rref(f, &mut a);
    piv.iter().map(|&c| m.iter().map(|row| row[c].clone()).collect()).collect()
}

pub fn det<F: Field>(f: &F, m: &Matrix<F::Elem>) -> F::Elem {
    let n = m.len();
    let mut a = m.clone();
    let mut d = f.one();
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| !f.is_zero(&a[i][c])) else { return f.zero() };
        if pr != c {
            a.swap(pr, c);
            d = f.neg(&d);
        }
        d = f.mul(&d, &a[c][c]);
        let inv = f.inv(&a[c][c]).unwrap();
        for i in c + 1..n {
            if f.is_zero(&a[i][c]) {
                continue;
            }
            let factor = f.mul(&a[i][c], &inv);
            for j in c..n {
                let t = f.mul(&factor, &a[c][j]);
                a[i][j] = f.sub(&a[i][j], &t);
            }
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::PrimeField;

    #[test]
    fn kernel_and_inverse() {
        let f = PrimeField::new(5).unwrap();
        let m = vec![vec![1, 2, 3], vec![2, 1, 1]];
        let k = kernel(&f, &m, 3);
        assert_eq!(k.len(), 1);
        assert!(mat_vec(&f, &m, &k[0]).iter().all(|&x| x == 0));
        let a = vec![vec![1, 2], vec![3, 4]];
        let ai = inverse(&f, &a).unwrap();
        assert_eq!(mat_mul(&f, &a, &ai), identity(&f, 2));
        assert_eq!(det(&f, &a), f.from_i64(-2));
        assert!(solve(&f, &m, &[1, 2]).is_some());
    }
}
