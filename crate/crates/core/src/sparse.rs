//! Sparse matrices over GF(p) with explicit row and column label sets.
//!
//! Storage is column-major: a map from column label to a sorted sparse
//! column. Zero entries are never stored and empty columns are not kept in
//! the map, so structural equality is value equality.
//!
//! Besides the usual products this module houses the elimination
//! primitives everything else is built from: clearing operations, block
//! Schur complements, exchange-based LU factorization, and the inverse of a
//! matrix with acyclic support by signed path sums.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::Modulus;

pub type Label = usize;

/// A sparse column: `(row label, nonzero value)` sorted by row label.
pub type Column = Vec<(Label, u32)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexedMatrix {
    modulus: Modulus,
    rows: Vec<Label>,
    cols: Vec<Label>,
    columns: BTreeMap<Label, Column>,
}

fn label_set(labels: impl IntoIterator<Item = Label>) -> Vec<Label> {
    let mut v: Vec<Label> = labels.into_iter().collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// `y + a * x` for sorted sparse columns.
pub fn axpy(m: Modulus, y: &[(Label, u32)], a: u32, x: &[(Label, u32)]) -> Column {
    let mut out = Vec::with_capacity(y.len() + x.len());
    let (mut i, mut j) = (0, 0);
    while i < y.len() || j < x.len() {
        if j == x.len() || (i < y.len() && y[i].0 < x[j].0) {
            out.push(y[i]);
            i += 1;
        } else if i == y.len() || x[j].0 < y[i].0 {
            let v = m.mul(a, x[j].1);
            if v != 0 {
                out.push((x[j].0, v));
            }
            j += 1;
        } else {
            let v = m.add(y[i].1, m.mul(a, x[j].1));
            if v != 0 {
                out.push((y[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn lookup(col: &[(Label, u32)], row: Label) -> u32 {
    col.binary_search_by_key(&row, |e| e.0)
        .map(|k| col[k].1)
        .unwrap_or(0)
}

impl IndexedMatrix {
    /// The zero matrix on the given label sets.
    pub fn zeros(
        rows: impl IntoIterator<Item = Label>,
        cols: impl IntoIterator<Item = Label>,
        modulus: Modulus,
    ) -> Self {
        IndexedMatrix {
            modulus,
            rows: label_set(rows),
            cols: label_set(cols),
            columns: BTreeMap::new(),
        }
    }

    pub fn identity(labels: impl IntoIterator<Item = Label>, modulus: Modulus) -> Self {
        let labels = label_set(labels);
        let columns = labels.iter().map(|&l| (l, vec![(l, 1)])).collect();
        IndexedMatrix {
            modulus,
            rows: labels.clone(),
            cols: labels,
            columns,
        }
    }

    /// Builds a matrix from `(row, col, value)` triples; duplicates are summed.
    pub fn from_entries(
        rows: impl IntoIterator<Item = Label>,
        cols: impl IntoIterator<Item = Label>,
        modulus: Modulus,
        entries: impl IntoIterator<Item = (Label, Label, i64)>,
    ) -> Result<Self> {
        let mut m = Self::zeros(rows, cols, modulus);
        for (r, c, v) in entries {
            let cur = m.get(r, c)?;
            m.set(r, c, modulus.add(cur, modulus.reduce(v)))?;
        }
        Ok(m)
    }

    /// Row-major dense data with labels `0..nrows` and `0..ncols`.
    pub fn from_dense(modulus: Modulus, data: &[Vec<i64>]) -> Self {
        let nrows = data.len();
        let ncols = data.first().map_or(0, Vec::len);
        let entries = data
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, &v)| (i, j, v)));
        Self::from_entries(0..nrows, 0..ncols, modulus, entries).expect("labels in range")
    }

    /// Builds a matrix directly from sorted, nonzero columns.
    pub(crate) fn from_columns(
        rows: Vec<Label>,
        cols: Vec<Label>,
        modulus: Modulus,
        columns: BTreeMap<Label, Column>,
    ) -> Self {
        let columns = columns.into_iter().filter(|(_, c)| !c.is_empty()).collect();
        IndexedMatrix {
            modulus,
            rows,
            cols,
            columns,
        }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn rows(&self) -> &[Label] {
        &self.rows
    }

    pub fn cols(&self) -> &[Label] {
        &self.cols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn nnz(&self) -> usize {
        self.columns.values().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn has_row(&self, r: Label) -> bool {
        self.rows.binary_search(&r).is_ok()
    }

    pub fn has_col(&self, c: Label) -> bool {
        self.cols.binary_search(&c).is_ok()
    }

    fn check(&self, r: Label, c: Label) -> Result<()> {
        if !self.has_row(r) {
            return Err(Error::UnknownLabel(r));
        }
        if !self.has_col(c) {
            return Err(Error::UnknownLabel(c));
        }
        Ok(())
    }

    pub fn get(&self, r: Label, c: Label) -> Result<u32> {
        self.check(r, c)?;
        Ok(self.entry(r, c))
    }

    /// Entry lookup without label validation; absent labels read as zero.
    pub fn entry(&self, r: Label, c: Label) -> u32 {
        self.columns.get(&c).map_or(0, |col| lookup(col, r))
    }

    pub fn set(&mut self, r: Label, c: Label, v: u32) -> Result<()> {
        self.check(r, c)?;
        let v = v % self.modulus.get();
        let col = self.columns.entry(c).or_default();
        match col.binary_search_by_key(&r, |e| e.0) {
            Ok(k) if v == 0 => {
                col.remove(k);
            }
            Ok(k) => col[k].1 = v,
            Err(_) if v == 0 => {}
            Err(k) => col.insert(k, (r, v)),
        }
        if col.is_empty() {
            self.columns.remove(&c);
        }
        Ok(())
    }

    pub fn column(&self, c: Label) -> &[(Label, u32)] {
        self.columns.get(&c).map_or(&[], Vec::as_slice)
    }

    /// Nonzero columns in label order.
    pub fn columns(&self) -> impl Iterator<Item = (Label, &[(Label, u32)])> {
        self.columns.iter().map(|(&c, col)| (c, col.as_slice()))
    }

    /// All nonzero entries as `(row, col, value)`, column-major.
    pub fn entries(&self) -> impl Iterator<Item = (Label, Label, u32)> + '_ {
        self.columns
            .iter()
            .flat_map(|(&c, col)| col.iter().map(move |&(r, v)| (r, c, v)))
    }

    /// Nonzero rows as sorted `(col, value)` lists.
    pub fn row_map(&self) -> BTreeMap<Label, Vec<(Label, u32)>> {
        let mut out: BTreeMap<Label, Vec<(Label, u32)>> = BTreeMap::new();
        for (r, c, v) in self.entries() {
            out.entry(r).or_default().push((c, v));
        }
        out
    }

    pub fn transpose(&self) -> Self {
        IndexedMatrix {
            modulus: self.modulus,
            rows: self.cols.clone(),
            cols: self.rows.clone(),
            columns: self.row_map(),
        }
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(
                self.modulus.get(),
                other.modulus.get(),
            ));
        }
        Ok(())
    }

    /// `self * x` for a sparse vector indexed by column labels.
    pub fn mat_vec(&self, x: &[(Label, u32)]) -> Result<Column> {
        let mut acc: Column = Vec::new();
        for &(c, v) in x {
            if !self.has_col(c) {
                return Err(Error::UnknownLabel(c));
            }
            acc = axpy(self.modulus, &acc, v, self.column(c));
        }
        Ok(acc)
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        self.same_field(rhs)?;
        if self.cols != rhs.rows {
            return Err(Error::LabelMismatch(format!(
                "{} columns against {} rows",
                self.ncols(),
                rhs.nrows()
            )));
        }
        let columns = rhs
            .columns
            .iter()
            .map(|(&c, col)| (c, self.mat_vec(col).expect("labels checked")))
            .collect();
        Ok(Self::from_columns(
            self.rows.clone(),
            rhs.cols.clone(),
            self.modulus,
            columns,
        ))
    }

    fn combine(&self, rhs: &Self, a: u32) -> Result<Self> {
        self.same_field(rhs)?;
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::LabelMismatch("operands differ in shape".into()));
        }
        let mut columns = self.columns.clone();
        for (&c, col) in &rhs.columns {
            let y = columns.remove(&c).unwrap_or_default();
            columns.insert(c, axpy(self.modulus, &y, a, col));
        }
        Ok(Self::from_columns(
            self.rows.clone(),
            self.cols.clone(),
            self.modulus,
            columns,
        ))
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.combine(rhs, 1)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.combine(rhs, self.modulus.minus_one())
    }

    pub fn scale(&self, a: u32) -> Self {
        let m = self.modulus;
        let columns = self
            .columns
            .iter()
            .map(|(&c, col)| (c, axpy(m, &[], a, col)))
            .collect();
        Self::from_columns(self.rows.clone(), self.cols.clone(), m, columns)
    }

    /// Restriction to the given label subsets.
    pub fn submatrix(&self, rows: &[Label], cols: &[Label]) -> Result<Self> {
        let rows = label_set(rows.iter().copied());
        let cols = label_set(cols.iter().copied());
        if let Some(&r) = rows.iter().find(|r| !self.has_row(**r)) {
            return Err(Error::UnknownLabel(r));
        }
        if let Some(&c) = cols.iter().find(|c| !self.has_col(**c)) {
            return Err(Error::UnknownLabel(c));
        }
        let columns = cols
            .iter()
            .map(|&c| {
                let col = self
                    .column(c)
                    .iter()
                    .filter(|(r, _)| rows.binary_search(r).is_ok())
                    .copied()
                    .collect();
                (c, col)
            })
            .collect();
        Ok(Self::from_columns(rows, cols, self.modulus, columns))
    }

    /// Row-major dense copy in label order.
    pub fn to_dense(&self) -> Vec<Vec<u32>> {
        let mut out = vec![vec![0; self.ncols()]; self.nrows()];
        for (r, c, v) in self.entries() {
            let i = self.rows.binary_search(&r).expect("row label");
            let j = self.cols.binary_search(&c).expect("col label");
            out[i][j] = v;
        }
        out
    }

    pub fn rank(&self) -> usize {
        lu_exchange(self, PivotRule::Markowitz).pivots.len()
    }

    fn pivot_value(&self, (r, c): (Label, Label)) -> Result<u32> {
        let a = self.get(r, c)?;
        if a == 0 {
            return Err(Error::NotInvertible);
        }
        Ok(a)
    }
}

/// Column clearing on the pivot `(r, c)`: returns `A U`, where `U` subtracts
/// multiples of column `c` so that row `r` vanishes away from the pivot.
pub fn clear_column(a: &IndexedMatrix, pivot: (Label, Label)) -> Result<IndexedMatrix> {
    let p = a.pivot_value(pivot)?;
    let m = a.modulus;
    let (r, c) = pivot;
    let inv = m.inv(p).expect("nonzero");
    let pivot_col = a.column(c).to_vec();
    let mut out = a.clone();
    for (&j, col) in a.columns.iter() {
        if j == c {
            continue;
        }
        let x = lookup(col, r);
        if x != 0 {
            let factor = m.neg(m.mul(x, inv));
            let updated = axpy(m, col, factor, &pivot_col);
            if updated.is_empty() {
                out.columns.remove(&j);
            } else {
                out.columns.insert(j, updated);
            }
        }
    }
    Ok(out)
}

/// Row clearing on the pivot `(r, c)`: returns `L A`, where `L` subtracts
/// multiples of row `r` so that column `c` vanishes away from the pivot.
pub fn clear_row(a: &IndexedMatrix, pivot: (Label, Label)) -> Result<IndexedMatrix> {
    Ok(clear_column(&a.transpose(), (pivot.1, pivot.0))?.transpose())
}

/// Schur complement `a22 - a21 a11^{-1} a12` of the block `A(alpha, beta)`,
/// computed by eliminating one entry of the block at a time. The pivot in
/// each step is the block column with the fewest nonzeros.
pub fn schur_complement(
    a: &IndexedMatrix,
    alpha: &[Label],
    beta: &[Label],
) -> Result<IndexedMatrix> {
    let alpha = label_set(alpha.iter().copied());
    let beta = label_set(beta.iter().copied());
    if alpha.len() != beta.len() {
        return Err(Error::DimensionMismatch(format!(
            "pivot block is {}x{}",
            alpha.len(),
            beta.len()
        )));
    }
    for &r in &alpha {
        if !a.has_row(r) {
            return Err(Error::UnknownLabel(r));
        }
    }
    for &c in &beta {
        if !a.has_col(c) {
            return Err(Error::UnknownLabel(c));
        }
    }
    let m = a.modulus;
    let mut cols = a.columns.clone();
    let mut rows_left: BTreeSet<Label> = alpha.iter().copied().collect();
    let mut cols_left: BTreeSet<Label> = beta.iter().copied().collect();
    while !cols_left.is_empty() {
        let mut best: Option<(usize, Label, Label)> = None;
        for &b in &cols_left {
            let Some(col) = cols.get(&b) else { continue };
            if let Some(&(r, _)) = col.iter().find(|(r, _)| rows_left.contains(r)) {
                if best.is_none_or(|(n, _, _)| col.len() < n) {
                    best = Some((col.len(), r, b));
                }
            }
        }
        let (_, r, b) = best.ok_or(Error::SingularPivotBlock)?;
        let pivot_col = cols.remove(&b).expect("pivot column");
        let inv = m.inv(lookup(&pivot_col, r)).expect("nonzero pivot");
        for col in cols.values_mut() {
            let x = lookup(col, r);
            if x != 0 {
                *col = axpy(m, col, m.neg(m.mul(x, inv)), &pivot_col);
            }
        }
        rows_left.remove(&r);
        cols_left.remove(&b);
    }
    let rows: Vec<Label> = a
        .rows
        .iter()
        .copied()
        .filter(|r| alpha.binary_search(r).is_err())
        .collect();
    let out_cols: Vec<Label> = a
        .cols
        .iter()
        .copied()
        .filter(|c| beta.binary_search(c).is_err())
        .collect();
    let columns = cols
        .into_iter()
        .map(|(c, col)| {
            let col = col
                .into_iter()
                .filter(|(r, _)| alpha.binary_search(r).is_err())
                .collect();
            (c, col)
        })
        .collect();
    Ok(IndexedMatrix::from_columns(rows, out_cols, m, columns))
}

/// How `lu_exchange` picks its next exchange pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PivotRule {
    /// Sparsest live column, then sparsest row within it; ties by label.
    #[default]
    Markowitz,
    /// Smallest column label, then smallest row label.
    Lexicographic,
}

/// `A = L D U` with `L` and `U` unit triangular under the pivot order and
/// `D` holding the pivot values, at most one per row and column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LUFactorization {
    pub l: IndexedMatrix,
    pub d: IndexedMatrix,
    pub u: IndexedMatrix,
    pub pivots: Vec<(Label, Label)>,
}

impl LUFactorization {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn product(&self) -> Result<IndexedMatrix> {
        self.l.matmul(&self.d)?.matmul(&self.u)
    }

    /// Row labels ordered pivots first (in sequence), then the rest.
    pub fn row_order(&self) -> Vec<Label> {
        order_with_pivots(self.l.rows(), self.pivots.iter().map(|p| p.0))
    }

    pub fn col_order(&self) -> Vec<Label> {
        order_with_pivots(self.u.rows(), self.pivots.iter().map(|p| p.1))
    }
}

fn order_with_pivots(all: &[Label], pivots: impl Iterator<Item = Label>) -> Vec<Label> {
    let mut order: Vec<Label> = pivots.collect();
    let seen: BTreeSet<Label> = order.iter().copied().collect();
    order.extend(all.iter().copied().filter(|l| !seen.contains(l)));
    order
}

/// Exchange-based LU factorization. Each step fixes an exchange pair with
/// invertible entry in the current Schur complement, records it, and
/// replaces the working matrix by the complement of that entry; the loop
/// ends when no nonzero entry is left, so rank-deficient inputs are fine.
pub fn lu_exchange(a: &IndexedMatrix, rule: PivotRule) -> LUFactorization {
    let m = a.modulus;
    let mut work = a.columns.clone();
    let mut row_count: BTreeMap<Label, usize> = BTreeMap::new();
    for (r, _, _) in a.entries() {
        *row_count.entry(r).or_default() += 1;
    }
    let mut l_cols: BTreeMap<Label, Column> = BTreeMap::new();
    let mut u_rows: BTreeMap<Label, Column> = BTreeMap::new();
    let mut d = IndexedMatrix::zeros(a.rows.iter().copied(), a.cols.iter().copied(), m);
    let mut pivots = Vec::new();

    loop {
        let choice = match rule {
            PivotRule::Lexicographic => work.iter().next().map(|(&c, col)| (col[0].0, c)),
            PivotRule::Markowitz => {
                work.iter()
                    .min_by_key(|(&c, col)| (col.len(), c))
                    .map(|(&c, col)| {
                        let r = col
                            .iter()
                            .min_by_key(|(r, _)| (row_count[r], *r))
                            .expect("nonempty column")
                            .0;
                        (r, c)
                    })
            }
        };
        let Some((r, c)) = choice else { break };
        let pivot_col = work.remove(&c).expect("pivot column");
        let pv = lookup(&pivot_col, r);
        let inv = m.inv(pv).expect("stored entries are nonzero");
        for &(i, _) in &pivot_col {
            *row_count.get_mut(&i).expect("counted") -= 1;
        }

        let mut u_row: Column = vec![(c, 1)];
        let mut emptied = Vec::new();
        for (&j, col) in work.iter_mut() {
            let x = lookup(col, r);
            if x == 0 {
                continue;
            }
            let ratio = m.mul(x, inv);
            u_row.push((j, ratio));
            let before: Vec<Label> = col.iter().map(|e| e.0).collect();
            *col = axpy(m, col, m.neg(ratio), &pivot_col);
            for i in before {
                *row_count.get_mut(&i).expect("counted") -= 1;
            }
            for &(i, _) in col.iter() {
                *row_count.entry(i).or_default() += 1;
            }
            if col.is_empty() {
                emptied.push(j);
            }
        }
        for j in emptied {
            work.remove(&j);
        }
        u_row.sort_unstable();
        let l_col = axpy(m, &[], inv, &pivot_col);
        l_cols.insert(r, l_col);
        u_rows.insert(c, u_row);
        d.set(r, c, pv).expect("labels from input");
        pivots.push((r, c));
    }

    for &r in &a.rows {
        l_cols.entry(r).or_insert_with(|| vec![(r, 1)]);
    }
    for &c in &a.cols {
        u_rows.entry(c).or_insert_with(|| vec![(c, 1)]);
    }
    let l = IndexedMatrix::from_columns(a.rows.clone(), a.rows.clone(), m, l_cols);
    let u = IndexedMatrix::from_columns(a.cols.clone(), a.cols.clone(), m, u_rows).transpose();
    LUFactorization { l, d, u, pivots }
}

/// Topological order of the labels under the relation `i -> j` for every
/// off-diagonal nonzero `A(i, j)`; fails when that relation has a cycle.
pub fn support_order(a: &IndexedMatrix) -> Result<Vec<Label>> {
    if a.rows != a.cols {
        return Err(Error::LabelMismatch(
            "matrix is not square on one label set".into(),
        ));
    }
    let mut indeg: BTreeMap<Label, usize> = a.rows.iter().map(|&l| (l, 0)).collect();
    for (r, c, _) in a.entries() {
        if r != c {
            *indeg.get_mut(&c).expect("label") += 1;
        }
    }
    let rows = a.row_map();
    let mut queue: VecDeque<Label> = indeg
        .iter()
        .filter(|(_, &d)| d == 0)
        .map(|(&l, _)| l)
        .collect();
    let mut order = Vec::with_capacity(a.nrows());
    while let Some(i) = queue.pop_front() {
        order.push(i);
        for &(j, _) in rows.get(&i).map_or(&[][..], Vec::as_slice) {
            if j == i {
                continue;
            }
            let d = indeg.get_mut(&j).expect("label");
            *d -= 1;
            if *d == 0 {
                queue.push_back(j);
            }
        }
    }
    if order.len() != a.nrows() {
        return Err(Error::CyclicSupport);
    }
    Ok(order)
}

/// Inverse of a matrix with acyclic support by signed path sums:
///
/// `A^{-1}(i, j) = sum over paths i = p0 -> ... -> pm = j of
///   (-1)^m A(p0,p0)^{-1} A(p0,p1) A(p1,p1)^{-1} ... A(pm,pm)^{-1}`.
///
/// Path weights are accumulated along a topological order of the support,
/// one source row at a time.
pub fn mobius_inverse(a: &IndexedMatrix) -> Result<IndexedMatrix> {
    let order = support_order(a)?;
    let m = a.modulus;
    let pos: BTreeMap<Label, usize> = order.iter().enumerate().map(|(k, &l)| (l, k)).collect();
    let mut diag_inv: BTreeMap<Label, u32> = BTreeMap::new();
    for &l in &a.rows {
        let inv = m.inv(a.entry(l, l)).ok_or(Error::Singular)?;
        diag_inv.insert(l, inv);
    }
    let rows = a.row_map();
    let mut inv_rows: BTreeMap<Label, Column> = BTreeMap::new();
    for &source in &a.rows {
        // keyed by topological position so each node is settled before use
        let mut frontier: BTreeMap<usize, u32> = BTreeMap::new();
        frontier.insert(pos[&source], diag_inv[&source]);
        let mut row: Column = Vec::new();
        while let Some((k, w)) = frontier.pop_first() {
            if w == 0 {
                continue;
            }
            let u = order[k];
            row.push((u, w));
            for &(v, x) in rows.get(&u).map_or(&[][..], Vec::as_slice) {
                if v == u {
                    continue;
                }
                let step = m.mul(m.mul(w, m.neg(x)), diag_inv[&v]);
                let slot = frontier.entry(pos[&v]).or_insert(0);
                *slot = m.add(*slot, step);
            }
        }
        row.sort_unstable();
        inv_rows.insert(source, row);
    }
    Ok(IndexedMatrix::from_columns(a.rows.clone(), a.rows.clone(), m, inv_rows).transpose())
}
