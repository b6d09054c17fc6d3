//! Jordan decompositions of square-zero and nilpotent operators, and
//! persistence barcodes of graded differentials.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::barcode::{Barcode, Interval};
use crate::complex::FilteredComplex;
use crate::error::{Error, Result};
use crate::field::Modulus;
use crate::graded::{Cell, GradedMatrix};
use crate::linalg::{self, Span};
use crate::morse;
use crate::sparse::{Column, IndexedMatrix, Label};

/// Pairs `(σ, τ)` with `Tτ ∼ σ`, unpaired cycles, and the basis change
/// `P` with `T P = P J`, where `J` has a single 1 at each `(σ, τ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedJordanBasis {
    pub pairs: Vec<(Label, Label)>,
    pub essentials: Vec<Label>,
    pub change_of_basis: IndexedMatrix,
}

impl GradedJordanBasis {
    /// The canonical form `J`, labelled like the columns of `P`.
    pub fn canonical_form(&self) -> IndexedMatrix {
        let labels = self.change_of_basis.cols().to_vec();
        IndexedMatrix::from_entries(
            labels.clone(),
            labels,
            self.change_of_basis.modulus(),
            self.pairs.iter().map(|&(s, t)| (s, t, 1)),
        )
        .expect("pair labels are basis labels")
    }
}

const NONE: u32 = u32::MAX;

type SparseCol = Vec<(u32, u32)>;

// a + f·b on sorted sparse columns
fn add_scaled(m: Modulus, a: &[(u32, u32)], f: u32, b: &[(u32, u32)]) -> SparseCol {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some(&(ra, va)), Some(&(rb, _))) if ra < rb => {
                out.push((ra, va));
                i += 1;
            }
            (Some(&(ra, _)), Some(&(rb, vb))) if rb < ra => {
                out.push((rb, m.mul(f, vb)));
                j += 1;
            }
            (Some(&(ra, va)), Some(&(_, vb))) => {
                let v = m.add(va, m.mul(f, vb));
                if v != 0 {
                    out.push((ra, v));
                }
                i += 1;
                j += 1;
            }
            (Some(&e), None) => {
                out.push(e);
                i += 1;
            }
            (None, Some(&(rb, vb))) => {
                out.push((rb, m.mul(f, vb)));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

struct Reduction {
    pairs: Vec<(usize, usize)>,
    essentials: Vec<usize>,
    // reduced column per pivot column, and chains when tracked
    reduced: Vec<SparseCol>,
    chains: Vec<SparseCol>,
}

/// Column reduction with pivot lookup. When the matrix respects cell
/// dimensions, columns are processed from the top dimension down and
/// columns whose index is already a pivot row are skipped outright.
fn reduce_columns(d: &GradedMatrix, track: bool) -> Reduction {
    let n = d.len();
    let m = d.modulus();
    let by_dim = (0..n).all(|j| {
        d.column(j)
            .iter()
            .all(|&(i, _)| d.cell(i as usize).dim + 1 == d.cell(j).dim)
    });
    let mut order: Vec<usize> = (0..n).collect();
    if by_dim {
        order.sort_by_key(|&j| (core::cmp::Reverse(d.cell(j).dim), j));
    }
    let mut pivot_of_row = vec![NONE; n];
    let mut cleared = vec![false; n];
    let mut reduced: Vec<SparseCol> = vec![Vec::new(); n];
    let mut chains: Vec<SparseCol> = vec![Vec::new(); if track { n } else { 0 }];
    let mut pairs = Vec::new();
    for j in order {
        if by_dim && cleared[j] {
            continue;
        }
        let mut r: SparseCol = d.column(j).to_vec();
        let mut v: SparseCol = if track {
            vec![(j as u32, 1)]
        } else {
            Vec::new()
        };
        while let Some(&(low, x)) = r.last() {
            let k = pivot_of_row[low as usize];
            if k == NONE {
                break;
            }
            let rk = &reduced[k as usize];
            let y = rk.last().expect("pivot column is nonzero").1;
            let f = m.neg(m.mul(x, m.inv(y).expect("nonzero")));
            r = add_scaled(m, &r, f, rk);
            if track {
                v = add_scaled(m, &v, f, &chains[k as usize]);
            }
        }
        if let Some(&(low, _)) = r.last() {
            pivot_of_row[low as usize] = j as u32;
            cleared[low as usize] = true;
            pairs.push((low as usize, j));
            reduced[j] = r;
        }
        if track {
            chains[j] = v;
        }
    }
    let mut used = vec![false; n];
    for &(s, t) in &pairs {
        used[s] = true;
        used[t] = true;
    }
    pairs.sort_unstable();
    Reduction {
        pairs,
        essentials: (0..n).filter(|&i| !used[i]).collect(),
        reduced,
        chains,
    }
}

/// Filtration-minimal Jordan basis of a graded differential.
pub fn filtered_jordan(d: &GradedMatrix) -> Result<GradedJordanBasis> {
    d.check_monotone()?;
    d.check_square_zero()?;
    let red = reduce_columns(d, true);
    let label = |i: usize| d.cell(i).label;
    let labels: Vec<Label> = d.cells().iter().map(|c| c.label).collect();
    let mut entries: Vec<(Label, Label, i64)> = Vec::new();
    let mut push = |col: usize, v: &[(u32, u32)]| {
        entries.extend(
            v.iter()
                .map(|&(i, x)| (label(i as usize), label(col), x as i64)),
        );
    };
    for &(s, t) in &red.pairs {
        push(t, &red.chains[t]);
        push(s, &red.reduced[t]);
    }
    for &e in &red.essentials {
        push(e, &red.chains[e]);
    }
    let p = IndexedMatrix::from_entries(labels.clone(), labels, d.modulus(), entries)?;
    Ok(GradedJordanBasis {
        pairs: red
            .pairs
            .iter()
            .map(|&(s, t)| (label(s), label(t)))
            .collect(),
        essentials: red.essentials.iter().map(|&e| label(e)).collect(),
        change_of_basis: p,
    })
}

/// Intervals of a Jordan basis. Pairs with equal grades are dropped unless
/// `keep_zero`; cells of negative dimension are ignored.
pub fn barcode(basis: &GradedJordanBasis, cells: &[Cell], keep_zero: bool) -> Barcode {
    let by_label: BTreeMap<Label, &Cell> = cells.iter().map(|c| (c.label, c)).collect();
    let top = cells.iter().map(|c| c.dim).max().filter(|&d| d >= 0);
    let mut b = Barcode::new(top.map(|d| d as usize));
    for &(s, t) in &basis.pairs {
        let (s, t) = (by_label[&s], by_label[&t]);
        if s.dim >= 0 && (keep_zero || s.grade < t.grade) {
            b.push(s.dim as usize, Interval::new(s.grade, t.grade));
        }
    }
    for e in &basis.essentials {
        let e = by_label[e];
        if e.dim >= 0 {
            b.push(e.dim as usize, Interval::essential(e.grade));
        }
    }
    b
}

/// Barcode of a graded differential without forming the basis change.
pub fn persistence_barcode(d: &GradedMatrix, keep_zero: bool) -> Result<Barcode> {
    d.check_monotone()?;
    d.check_square_zero()?;
    let red = reduce_columns(d, false);
    let top = d.max_dim().filter(|&x| x >= 0);
    let mut b = Barcode::new(top.map(|x| x as usize));
    for &(s, t) in &red.pairs {
        let (s, t) = (d.cell(s), d.cell(t));
        if s.dim >= 0 && (keep_zero || s.grade < t.grade) {
            b.push(s.dim as usize, Interval::new(s.grade, t.grade));
        }
    }
    for &e in &red.essentials {
        let e = d.cell(e);
        if e.dim >= 0 {
            b.push(e.dim as usize, Interval::essential(e.grade));
        }
    }
    Ok(b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BarcodeOptions {
    /// Eliminate apparent pairs before the reduction.
    pub reduce: bool,
    /// Augment with the empty simplex.
    pub reduced_homology: bool,
    pub keep_zero: bool,
    /// Shuffle ties within equal `(grade, dim)` before anything else.
    pub seed: Option<u64>,
}

impl Default for BarcodeOptions {
    fn default() -> Self {
        BarcodeOptions {
            reduce: true,
            reduced_homology: false,
            keep_zero: false,
            seed: None,
        }
    }
}

/// End-to-end barcode of a filtered complex, in dimensions
/// `0..=max(0, max_dim)` of the complex.
pub fn complex_barcode(k: &FilteredComplex, p: Modulus, opts: &BarcodeOptions) -> Result<Barcode> {
    let mut d = GradedMatrix::from_complex(k, p, opts.reduced_homology)?;
    if let Some(seed) = opts.seed {
        d = d.shuffle_ties(seed);
    }
    if opts.reduce {
        d = morse::reduce_graded(&d, k.max_dim())?;
    }
    let b = persistence_barcode(&d, opts.keep_zero)?;
    let mut full = Barcode::new(Some(k.max_dim().max(0) as usize));
    for (dim, ints) in b.dims() {
        for &i in ints {
            full.push(dim, i);
        }
    }
    Ok(full)
}

fn dense_of(t: &IndexedMatrix) -> (Vec<Label>, Vec<Vec<u32>>) {
    let labels = t.rows().to_vec();
    (labels, t.to_dense())
}

fn check_square(t: &IndexedMatrix) -> Result<()> {
    if t.rows() != t.cols() {
        return Err(Error::DimensionMismatch(format!(
            "operator is {}x{} with different row and column labels",
            t.nrows(),
            t.ncols()
        )));
    }
    Ok(())
}

/// Jordan pairing of an operator with `T² = 0`. Basis vectors are assigned
/// the operator's labels in the order: image and preimage of each pair,
/// then the essential kernel vectors.
pub fn jordan_unfiltered(t: &IndexedMatrix) -> Result<GradedJordanBasis> {
    check_square(t)?;
    if !t.matmul(t)?.is_zero() {
        return Err(Error::NotTwoNilpotent);
    }
    let m = t.modulus();
    let labels = t.rows().to_vec();
    let n = labels.len();
    let pos: BTreeMap<Label, u32> = labels
        .iter()
        .enumerate()
        .map(|(i, &l)| (l, i as u32))
        .collect();
    let cells: Vec<Cell> = labels
        .iter()
        .map(|&l| Cell {
            label: l,
            grade: crate::complex::Grade(0.0),
            dim: 0,
        })
        .collect();
    let columns: Vec<SparseCol> = labels
        .iter()
        .map(|&c| t.column(c).iter().map(|&(r, v)| (pos[&r], v)).collect())
        .collect();
    let g = GradedMatrix::from_parts(m, cells, columns);
    let red = reduce_columns(&g, true);

    let dense = |v: &[(u32, u32)]| {
        let mut x = vec![0u32; n];
        for &(i, a) in v {
            x[i as usize] = a;
        }
        x
    };
    let mut basis: Vec<Vec<u32>> = Vec::with_capacity(n);
    let mut span = Span::new(m, n);
    for &(_, c) in &red.pairs {
        let img = dense(&red.reduced[c]);
        span.insert(&img);
        basis.push(img);
        basis.push(dense(&red.chains[c]));
    }
    let n_pairs = red.pairs.len();
    let mut essentials = Vec::new();
    for &e in &red.essentials {
        let k = dense(&red.chains[e]);
        if span.insert(&k) {
            essentials.push(k);
        }
    }
    // columns that reduced to zero yet sit as pivot rows are kernel vectors too
    for (j, r) in red.reduced.iter().enumerate() {
        if r.is_empty() && !red.essentials.contains(&j) {
            let k = dense(&red.chains[j]);
            if span.insert(&k) {
                essentials.push(k);
            }
        }
    }
    basis.extend(essentials);
    if basis.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "Jordan basis has {} vectors for dimension {n}",
            basis.len()
        )));
    }
    let entries = basis.iter().enumerate().flat_map(|(b, v)| {
        let labels = &labels;
        v.iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(move |(i, &x)| (labels[i], labels[b], x as i64))
    });
    let p = IndexedMatrix::from_entries(labels.clone(), labels.clone(), m, entries)?;
    Ok(GradedJordanBasis {
        pairs: (0..n_pairs)
            .map(|k| (labels[2 * k], labels[2 * k + 1]))
            .collect(),
        essentials: labels[2 * n_pairs..].to_vec(),
        change_of_basis: p,
    })
}

/// A Jordan chain `v, Tv, ..., T^(m-1) v` with `T^m v = 0`.
pub type Orbit = Vec<Column>;

fn sparse_of(labels: &[Label], v: &[u32]) -> Column {
    labels
        .iter()
        .zip(v)
        .filter(|(_, &x)| x != 0)
        .map(|(&l, &x)| (l, x))
        .collect()
}

/// Jordan basis of a nilpotent operator as orbits of a minimum-weight
/// basis modulo the image: tops of weight `m` are kernel vectors of `T^m`
/// chosen independent of `Im T + Ker T^(m-1)`.
pub fn nilpotent_jordan_via_qbasis(t: &IndexedMatrix) -> Result<Vec<Orbit>> {
    check_square(t)?;
    let m = t.modulus();
    let (labels, a) = dense_of(t);
    let n = labels.len();
    let mut powers = vec![identity(n)];
    while powers.len() <= n {
        let last = powers.last().expect("nonempty");
        if last.iter().all(|r| r.iter().all(|&x| x == 0)) {
            break;
        }
        powers.push(linalg::mul(m, &a, last));
    }
    let degree = powers.len() - 1;
    if powers[degree].iter().any(|r| r.iter().any(|&x| x != 0)) {
        return Err(Error::NotNilpotent);
    }
    let mut span = Span::new(m, n);
    for j in 0..n {
        let col: Vec<u32> = a.iter().map(|r| r[j]).collect();
        span.insert(&col);
    }
    let mut orbits = Vec::new();
    for (w, power) in powers.iter().enumerate().skip(1) {
        for top in linalg::kernel(m, power, n) {
            if span.insert(&top) {
                let mut orbit = Vec::with_capacity(w);
                let mut v = top;
                for _ in 0..w {
                    orbit.push(sparse_of(&labels, &v));
                    v = linalg::mul_vec(m, &a, &v);
                }
                orbits.push(orbit);
            }
        }
    }
    Ok(orbits)
}

fn identity(n: usize) -> Vec<Vec<u32>> {
    (0..n)
        .map(|i| (0..n).map(|j| (i == j) as u32).collect())
        .collect()
}

/// Interval decomposition `[p, q]` of the persistence module
/// `V_0 -> V_1 -> ... -> V_L` given by `maps[p]: V_p -> V_(p+1)`.
pub fn decompose_module(maps: &[IndexedMatrix]) -> Result<Vec<(usize, usize)>> {
    decompose(maps, None)
}

/// As [`decompose_module`], visiting candidate vectors in a seeded random
/// order.
pub fn decompose_module_shuffled(maps: &[IndexedMatrix], seed: u64) -> Result<Vec<(usize, usize)>> {
    decompose(maps, Some(ChaCha8Rng::seed_from_u64(seed)))
}

fn decompose(maps: &[IndexedMatrix], mut rng: Option<ChaCha8Rng>) -> Result<Vec<(usize, usize)>> {
    let Some(first) = maps.first() else {
        return Ok(Vec::new());
    };
    let m = first.modulus();
    for (p, w) in maps.windows(2).enumerate() {
        if w[0].rows() != w[1].cols() {
            return Err(Error::DimensionMismatch(format!(
                "map {p} lands in a space of dimension {}, map {} starts from dimension {}",
                w[0].nrows(),
                p + 1,
                w[1].ncols()
            )));
        }
    }
    if let Some(b) = maps.iter().find(|b| b.modulus() != m) {
        return Err(Error::ModulusMismatch(m.get(), b.modulus().get()));
    }
    let len = maps.len();
    let mut dims = vec![first.ncols()];
    dims.extend(maps.iter().map(IndexedMatrix::nrows));
    let mut offset = vec![0usize];
    for d in &dims {
        offset.push(offset.last().unwrap() + d);
    }
    let total = offset[len + 1];
    let dense: Vec<Vec<Vec<u32>>> = maps.iter().map(IndexedMatrix::to_dense).collect();

    let mut span = Span::new(m, total);
    for (p, a) in dense.iter().enumerate() {
        for j in 0..dims[p] {
            let mut v = vec![0u32; total];
            for (x, row) in v[offset[p + 1]..].iter_mut().zip(a) {
                *x = row[j];
            }
            span.insert(&v);
        }
    }
    let mut intervals = Vec::new();
    for w in 1..=len + 1 {
        let mut candidates: Vec<(usize, Vec<u32>)> = Vec::new();
        for p in 0..=len {
            let kernel = if p + w > len {
                identity(dims[p])
            } else {
                let mut c = dense[p].clone();
                for a in &dense[p + 1..p + w] {
                    c = linalg::mul(m, a, &c);
                }
                linalg::kernel(m, &c, dims[p])
            };
            candidates.extend(kernel.into_iter().map(|k| (p, k)));
        }
        if let Some(rng) = rng.as_mut() {
            candidates.shuffle(rng);
        }
        for (p, k) in candidates {
            let mut v = vec![0u32; total];
            v[offset[p]..offset[p] + dims[p]].copy_from_slice(&k);
            if span.insert(&v) {
                intervals.push((p, p + w - 1));
            }
        }
    }
    intervals.sort_unstable();
    Ok(intervals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{rips, DistanceMatrix, Grade};

    fn two_vertices_one_edge() -> FilteredComplex {
        FilteredComplex::new([(vec![1], 0.0), (vec![2], 0.0), (vec![1, 2], 1.0)]).unwrap()
    }

    fn check_basis(t: &IndexedMatrix, b: &GradedJordanBasis) {
        let p = &b.change_of_basis;
        assert_eq!(p.rank(), p.nrows());
        let lhs = t.matmul(p).unwrap();
        let rhs = p.matmul(&b.canonical_form()).unwrap();
        assert_eq!(lhs.to_dense(), rhs.to_dense());
    }

    #[test]
    fn zero_differential() {
        let k = FilteredComplex::new([(vec![0], 0.0), (vec![1], 2.0)]).unwrap();
        let d = GradedMatrix::from_complex(&k, Modulus::TWO, false).unwrap();
        let b = filtered_jordan(&d).unwrap();
        assert!(b.pairs.is_empty());
        assert_eq!(b.essentials, vec![0, 1]);
    }

    #[test]
    fn single_merge() {
        let k = two_vertices_one_edge();
        for p in [2, 3, 7] {
            let p = Modulus::new(p).unwrap();
            let d = GradedMatrix::from_complex(&k, p, false).unwrap();
            let b = filtered_jordan(&d).unwrap();
            // labels: {1} = 0, {2} = 1, edge = 2
            assert_eq!(b.pairs, vec![(1, 2)]);
            assert_eq!(b.essentials, vec![0]);
            check_basis(&d.to_indexed(), &b);
            let bc = barcode(&b, d.cells(), false);
            let h0 = [
                Interval::new(Grade(0.0), Grade(1.0)),
                Interval::essential(Grade(0.0)),
            ];
            assert_eq!(bc.dim(0), &h0);
            assert_eq!(bc.dim(1), &[]);
            assert_eq!(persistence_barcode(&d, false).unwrap(), bc);
        }
    }

    #[test]
    fn errors() {
        let p = Modulus::TWO;
        let a = IndexedMatrix::from_dense(p, &[vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]]);
        let cells: Vec<Cell> = (0..3)
            .map(|l| Cell {
                label: l,
                grade: Grade(l as f64),
                dim: 0,
            })
            .collect();
        let d = GradedMatrix::from_matrix(&a, cells.clone()).unwrap();
        assert_eq!(filtered_jordan(&d), Err(Error::NonZeroSquare));
        assert_eq!(jordan_unfiltered(&a), Err(Error::NotTwoNilpotent));

        let b = IndexedMatrix::from_dense(p, &[vec![0, 0, 0], vec![1, 0, 0], vec![0, 0, 0]]);
        let d = GradedMatrix::from_matrix(&b, cells).unwrap();
        assert_eq!(filtered_jordan(&d), Err(Error::NonMonotone(1, 0)));

        let c = IndexedMatrix::from_dense(p, &[vec![1, 0], vec![0, 0]]);
        assert_eq!(nilpotent_jordan_via_qbasis(&c), Err(Error::NotNilpotent));
    }

    #[test]
    fn unit_square() {
        let pts = [(0.0f64, 0.0f64), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)];
        let dist = pts
            .iter()
            .map(|a| {
                pts.iter()
                    .map(|b| ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt())
                    .collect()
            })
            .collect();
        let dist = DistanceMatrix::new(dist).unwrap();
        let p = Modulus::TWO;
        let k1 = rips(&dist, 1, Some(2.0)).unwrap();
        let b1 = complex_barcode(&k1, p, &BarcodeOptions::default()).unwrap();
        assert!(b1.dim(1).contains(&Interval::essential(Grade(1.0))));
        let k2 = rips(&dist, 2, Some(2.0)).unwrap();
        for reduce in [false, true] {
            let opts = BarcodeOptions {
                reduce,
                ..Default::default()
            };
            let b2 = complex_barcode(&k2, p, &opts).unwrap();
            assert_eq!(b2.dim(1), &[Interval::new(Grade(1.0), Grade(2f64.sqrt()))]);
            assert_eq!(b2.dim(0).len(), 4);
        }
    }

    #[test]
    fn reduced_homology_drops_one_essential() {
        let k = two_vertices_one_edge();
        let opts = BarcodeOptions {
            reduced_homology: true,
            ..Default::default()
        };
        let b = complex_barcode(&k, Modulus::TWO, &opts).unwrap();
        assert_eq!(b.dim(0), &[Interval::new(Grade(0.0), Grade(1.0))]);
    }

    #[test]
    fn unfiltered_cases() {
        let p = Modulus::new(5).unwrap();
        let zero = IndexedMatrix::zeros(0..3, 0..3, p);
        let b = jordan_unfiltered(&zero).unwrap();
        assert!(b.pairs.is_empty());
        assert_eq!(b.essentials.len(), 3);

        let t = IndexedMatrix::from_dense(p, &[vec![0, 1], vec![0, 0]]);
        let b = jordan_unfiltered(&t).unwrap();
        assert_eq!(b.pairs.len(), 1);
        check_basis(&t, &b);

        // not triangular in label order
        let t = IndexedMatrix::from_dense(p, &[vec![0, 0, 0], vec![0, 0, 0], vec![3, 1, 0]]);
        let b = jordan_unfiltered(&t).unwrap();
        assert_eq!((b.pairs.len(), b.essentials.len()), (1, 1));
        check_basis(&t, &b);
    }

    fn orbit_matrix(t: &IndexedMatrix, orbits: &[Orbit]) -> (IndexedMatrix, IndexedMatrix) {
        // columns ordered bottom of each chain first, so T acts as a shift
        let labels = t.rows().to_vec();
        let mut entries = Vec::new();
        let mut j_entries = Vec::new();
        let mut b = 0;
        for o in orbits {
            for (k, v) in o.iter().rev().enumerate() {
                entries.extend(v.iter().map(|&(r, x)| (r, labels[b], x as i64)));
                if k > 0 {
                    j_entries.push((labels[b - 1], labels[b], 1));
                }
                b += 1;
            }
        }
        let p = IndexedMatrix::from_entries(labels.clone(), labels.clone(), t.modulus(), entries)
            .unwrap();
        let j =
            IndexedMatrix::from_entries(labels.clone(), labels, t.modulus(), j_entries).unwrap();
        (p, j)
    }

    #[test]
    fn qbasis_cases() {
        let p = Modulus::new(3).unwrap();
        let zero = IndexedMatrix::zeros(0..3, 0..3, p);
        let o = nilpotent_jordan_via_qbasis(&zero).unwrap();
        assert_eq!(o.iter().map(Vec::len).collect::<Vec<_>>(), vec![1, 1, 1]);

        let n = 5;
        let block: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| (j == i + 1) as i64).collect())
            .collect();
        let t = IndexedMatrix::from_dense(p, &block);
        let o = nilpotent_jordan_via_qbasis(&t).unwrap();
        assert_eq!(o.len(), 1);
        assert_eq!(o[0].len(), n);
        let (pm, j) = orbit_matrix(&t, &o);
        assert_eq!(pm.rank(), n);
        assert_eq!(t.matmul(&pm).unwrap(), pm.matmul(&j).unwrap());
    }

    #[test]
    fn module_cases() {
        let p = Modulus::new(7).unwrap();
        let zero = IndexedMatrix::zeros(0..2, 0..3, p);
        assert_eq!(
            decompose_module(&[zero]).unwrap(),
            vec![(0, 0), (0, 0), (0, 0), (1, 1), (1, 1)]
        );
        let id = IndexedMatrix::identity(0..1, p);
        assert_eq!(decompose_module(&[id]).unwrap(), vec![(0, 1)]);

        let a = IndexedMatrix::zeros(0..2, 0..3, p);
        let b = IndexedMatrix::zeros(0..3, 0..3, p);
        assert!(matches!(
            decompose_module(&[a, b]),
            Err(Error::DimensionMismatch(_))
        ));
    }
}
