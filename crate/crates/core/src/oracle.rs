//! Reference computations for testing: dense elimination and the classical
//! left-to-right column reduction. Nothing here reuses the matrix or
//! persistence code; only field elements are shared.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::barcode::{Barcode, Interval};
use crate::complex::{FilteredComplex, Grade, Simplex};
use crate::field::Fp;

/// Row-major dense matrix over GF(p).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseMatrix {
    p: u64,
    rows: Vec<Vec<Fp>>,
    ncols: usize,
}

impl DenseMatrix {
    pub fn zeros(nrows: usize, ncols: usize, p: u64) -> Self {
        let z = Fp::new(0, p).expect("prime modulus");
        DenseMatrix {
            p,
            rows: vec![vec![z; ncols]; nrows],
            ncols,
        }
    }

    pub fn from_rows(p: u64, rows: &[Vec<i64>]) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), ncols, p);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), ncols, "ragged rows");
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> Fp {
        self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.rows[i][j] = Fp::new(v, self.p).expect("prime modulus");
    }

    pub fn mul(&self, rhs: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.ncols, rhs.nrows());
        let mut out = DenseMatrix::zeros(self.nrows(), rhs.ncols, self.p);
        for i in 0..self.nrows() {
            for k in 0..self.ncols {
                let a = self.rows[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.ncols {
                    out.rows[i][j] = out.rows[i][j] + a * rhs.rows[k][j];
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(|x| x.is_zero()))
    }
}

/// Rank by Gaussian elimination.
pub fn dense_rank(a: &DenseMatrix) -> usize {
    let mut rows = a.rows.clone();
    let mut rank = 0;
    for c in 0..a.ncols {
        let Some(k) = (rank..rows.len()).find(|&k| !rows[k][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, k);
        let inv = rows[rank][c].inv().expect("nonzero pivot");
        let pivot: Vec<Fp> = rows[rank].iter().map(|&x| x * inv).collect();
        for row in rows.iter_mut().skip(rank + 1) {
            let f = row[c];
            if !f.is_zero() {
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x = *x - f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn boundary(s: &Simplex, p: u64) -> Vec<(Simplex, Fp)> {
    let v = s.vertices();
    (0..v.len())
        .map(|k| {
            let face = Simplex::new(
                v.iter()
                    .enumerate()
                    .filter(|&(i, _)| i != k)
                    .map(|(_, &x)| x),
            );
            let sign = if (k + 1) % 2 == 0 { 1 } else { -1 };
            (face, Fp::new(sign, p).expect("prime modulus"))
        })
        .collect()
}

fn dense_boundary(k: &FilteredComplex, dim: isize, p: u64) -> DenseMatrix {
    let cols: Vec<&Simplex> = k
        .iter()
        .map(|(_, s, _)| s)
        .filter(|s| s.dim() == dim)
        .collect();
    let rows: BTreeMap<&Simplex, usize> = k
        .iter()
        .map(|(_, s, _)| s)
        .filter(|s| s.dim() == dim - 1)
        .enumerate()
        .map(|(i, s)| (s, i))
        .collect();
    let mut m = DenseMatrix::zeros(rows.len(), cols.len(), p);
    for (j, s) in cols.iter().enumerate() {
        if dim == 0 {
            continue;
        }
        for (f, v) in boundary(s, p) {
            let i = *rows.get(&f).expect("complex is closed under faces");
            m.rows[i][j] = v;
        }
    }
    m
}

/// `dim Z_dim - dim B_dim` of the whole complex.
pub fn betti(k: &FilteredComplex, dim: usize, p: u64) -> usize {
    let d = dim as isize;
    let n = k.iter().filter(|(_, s, _)| s.dim() == d).count();
    n - dense_rank(&dense_boundary(k, d, p)) - dense_rank(&dense_boundary(k, d + 1, p))
}

/// Betti numbers of an abstract chain complex: cells with dimensions and a
/// differential given as `(row, col, value)` entries.
pub fn betti_numbers(
    cells: &BTreeMap<usize, isize>,
    entries: &[(usize, usize, u32)],
    p: u64,
) -> BTreeMap<isize, usize> {
    let mut by_dim: BTreeMap<isize, Vec<usize>> = BTreeMap::new();
    for (&c, &d) in cells {
        by_dim.entry(d).or_default().push(c);
    }
    let index: BTreeMap<usize, usize> = by_dim
        .values()
        .flat_map(|v| v.iter().enumerate().map(|(i, &c)| (c, i)))
        .collect();
    let rank_of = |d: isize| -> usize {
        let (Some(cols), Some(rows)) = (by_dim.get(&d), by_dim.get(&(d - 1))) else {
            return 0;
        };
        let mut m = DenseMatrix::zeros(rows.len(), cols.len(), p);
        for &(r, c, v) in entries {
            if cells[&c] == d && cells[&r] == d - 1 {
                m.set(index[&r], index[&c], v as i64);
            }
        }
        dense_rank(&m)
    };
    by_dim
        .iter()
        .map(|(&d, v)| (d, v.len() - rank_of(d) - rank_of(d + 1)))
        .collect()
}

/// Classical persistence algorithm: reduce the boundary matrix column by
/// column, left to right, in the complex's linear order, adding earlier
/// columns to cancel the lowest nonzero. Reports dimensions
/// `0..=max_dim`.
pub fn standard_reduction_barcode(k: &FilteredComplex, p: u64, max_dim: usize) -> Barcode {
    reduction_barcode(k, p, max_dim, false)
}

/// As [`standard_reduction_barcode`] for homology reduced by the empty
/// simplex.
pub fn standard_reduction_barcode_reduced(k: &FilteredComplex, p: u64, max_dim: usize) -> Barcode {
    reduction_barcode(k, p, max_dim, true)
}

fn reduction_barcode(k: &FilteredComplex, p: u64, max_dim: usize, augmented: bool) -> Barcode {
    let top = max_dim as isize + 1;
    // column order: [empty simplex,] then the complex order, truncated
    let mut grades: Vec<Grade> = Vec::new();
    let mut dims: Vec<isize> = Vec::new();
    let mut index: BTreeMap<Simplex, usize> = BTreeMap::new();
    if augmented {
        let g = k
            .iter()
            .filter(|(_, s, _)| s.dim() == 0)
            .map(|(_, _, g)| g)
            .min();
        grades.push(g.unwrap_or(Grade(0.0)));
        dims.push(-1);
        index.insert(Simplex::new([]), 0);
    }
    let mut columns: Vec<Vec<(usize, Fp)>> = if augmented {
        vec![Vec::new()]
    } else {
        Vec::new()
    };
    for (_, s, g) in k.iter() {
        if s.dim() > top {
            continue;
        }
        let mut col = Vec::new();
        if s.dim() > 0 || augmented {
            for (f, v) in boundary(s, p) {
                col.push((index[&f], v));
            }
        }
        col.sort_by_key(|e| e.0);
        index.insert(s.clone(), columns.len());
        columns.push(col);
        grades.push(g);
        dims.push(s.dim());
    }

    let n = columns.len();
    let mut low_owner: Vec<Option<usize>> = vec![None; n];
    let mut positive = vec![true; n];
    let mut pairs = Vec::new();
    for j in 0..n {
        let mut col = core::mem::take(&mut columns[j]);
        while let Some(&(low, x)) = col.last() {
            let Some(o) = low_owner[low] else { break };
            let other = &columns[o];
            let y = other.last().expect("owner column is nonzero").1;
            let f = -(x * y.inv().expect("nonzero"));
            col = combine(&col, f, other);
        }
        if let Some(&(low, _)) = col.last() {
            low_owner[low] = Some(j);
            positive[j] = false;
            pairs.push((low, j));
        }
        columns[j] = col;
    }

    let mut b = Barcode::new(Some(max_dim));
    let mut paired = vec![false; n];
    for &(s, t) in &pairs {
        paired[s] = true;
        if (0..=max_dim as isize).contains(&dims[s]) && grades[s] < grades[t] {
            b.push(dims[s] as usize, Interval::new(grades[s], grades[t]));
        }
    }
    for j in 0..n {
        if positive[j] && !paired[j] && (0..=max_dim as isize).contains(&dims[j]) {
            b.push(dims[j] as usize, Interval::essential(grades[j]));
        }
    }
    b
}

fn combine(a: &[(usize, Fp)], f: Fp, b: &[(usize, Fp)]) -> Vec<(usize, Fp)> {
    let zero = Fp::new(0, f.modulus().get() as u64).expect("prime modulus");
    let mut acc: BTreeMap<usize, Fp> = a.iter().copied().collect();
    for &(i, y) in b {
        let e = acc.entry(i).or_insert(zero);
        *e = *e + f * y;
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        for n in [0usize, 1, 4] {
            let id: Vec<Vec<i64>> = (0..n)
                .map(|i| (0..n).map(|j| (i == j) as i64).collect())
                .collect();
            assert_eq!(dense_rank(&DenseMatrix::from_rows(7, &id)), n);
        }
        let a = DenseMatrix::from_rows(2, &[vec![1, 1], vec![1, 1]]);
        assert_eq!(dense_rank(&a), 1);
        let a = DenseMatrix::from_rows(3, &[vec![1, 2], vec![2, 1]]);
        assert_eq!(dense_rank(&a), 1);
    }

    fn triangle(filled: bool) -> FilteredComplex {
        let mut s = vec![
            (vec![0], 0.0),
            (vec![1], 0.0),
            (vec![2], 0.0),
            (vec![0, 1], 1.0),
            (vec![1, 2], 1.0),
            (vec![0, 2], 1.0),
        ];
        if filled {
            s.push((vec![0, 1, 2], 2.0));
        }
        FilteredComplex::new(s).unwrap()
    }

    #[test]
    fn betti_of_triangles() {
        for p in [2, 3] {
            assert_eq!(
                (betti(&triangle(false), 0, p), betti(&triangle(false), 1, p)),
                (1, 1)
            );
            assert_eq!(
                (betti(&triangle(true), 0, p), betti(&triangle(true), 1, p)),
                (1, 0)
            );
        }
    }

    #[test]
    fn reduction_examples() {
        let k = FilteredComplex::new([(vec![0], 0.0)]).unwrap();
        assert_eq!(
            standard_reduction_barcode(&k, 2, 0).dim(0),
            &[Interval::essential(Grade(0.0))]
        );

        let k = FilteredComplex::new([(vec![1], 0.0), (vec![2], 0.0), (vec![1, 2], 1.0)]).unwrap();
        let b = standard_reduction_barcode(&k, 5, 1);
        assert_eq!(
            b.dim(0),
            &[
                Interval::new(Grade(0.0), Grade(1.0)),
                Interval::essential(Grade(0.0))
            ]
        );
        let b = standard_reduction_barcode_reduced(&k, 5, 1);
        assert_eq!(b.dim(0), &[Interval::new(Grade(0.0), Grade(1.0))]);

        let b = standard_reduction_barcode(&triangle(true), 3, 1);
        assert_eq!(b.dim(1), &[Interval::new(Grade(1.0), Grade(2.0))]);
    }

    #[test]
    fn chain_complex_betti() {
        let cells: BTreeMap<usize, isize> = [(0, 0), (1, 0), (2, 1)].into_iter().collect();
        let b = betti_numbers(&cells, &[(0, 2, 1), (1, 2, 1)], 2);
        assert_eq!(b[&0], 1);
        assert_eq!(b[&1], 0);
    }
}
