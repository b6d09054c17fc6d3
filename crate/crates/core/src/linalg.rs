//! Small dense helpers: incremental spans and kernels over GF(p).

use alloc::vec;
use alloc::vec::Vec;

use crate::field::Modulus;

/// Incrementally maintained row-echelon basis of a subspace of GF(p)^n.
#[derive(Debug, Clone)]
pub struct Span {
    modulus: Modulus,
    len: usize,
    // (pivot index, vector normalized to 1 at the pivot)
    basis: Vec<(usize, Vec<u32>)>,
}

impl Span {
    pub fn new(modulus: Modulus, len: usize) -> Self {
        Span {
            modulus,
            len,
            basis: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    fn residual(&self, v: &[u32]) -> Vec<u32> {
        let m = self.modulus;
        let mut r = v.to_vec();
        for (p, b) in &self.basis {
            let x = r[*p];
            if x != 0 {
                let f = m.neg(x);
                for (ri, bi) in r.iter_mut().zip(b) {
                    *ri = m.add(*ri, m.mul(f, *bi));
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.residual(v).iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns false (and changes nothing) if it is already spanned.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        debug_assert_eq!(v.len(), self.len);
        let m = self.modulus;
        let mut r = self.residual(v);
        let Some(p) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = m.inv(r[p]).expect("nonzero");
        for x in r.iter_mut() {
            *x = m.mul(*x, inv);
        }
        // keep earlier basis vectors reduced at the new pivot
        for (_, b) in self.basis.iter_mut() {
            let x = b[p];
            if x != 0 {
                let f = m.neg(x);
                for (bi, ri) in b.iter_mut().zip(&r) {
                    *bi = m.add(*bi, m.mul(f, *ri));
                }
            }
        }
        self.basis.push((p, r));
        true
    }
}

/// Dense matrix-vector product; `a` is row-major.
pub fn mul_vec(m: Modulus, a: &[Vec<u32>], x: &[u32]) -> Vec<u32> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(x)
                .fold(0, |acc, (&r, &v)| m.add(acc, m.mul(r, v)))
        })
        .collect()
}

pub fn mul(m: Modulus, a: &[Vec<u32>], b: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(0, |acc, k| m.add(acc, m.mul(row[k], b[k][j]))))
                .collect()
        })
        .collect()
}

/// Basis of the null space of a row-major `rows x ncols` matrix.
pub fn kernel(m: Modulus, a: &[Vec<u32>], ncols: usize) -> Vec<Vec<u32>> {
    let mut rows: Vec<Vec<u32>> = a.to_vec();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else {
            continue;
        };
        rows.swap(r, k);
        let inv = m.inv(rows[r][c]).expect("nonzero");
        for x in rows[r].iter_mut() {
            *x = m.mul(*x, inv);
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = m.neg(row[c]);
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = m.add(*x, m.mul(f, *y));
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0; ncols];
            v[f] = 1;
            for (i, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = m.neg(rows[i][f]);
            }
            v
        })
        .collect()
}
