//! Linear matroids given by standard representations.
//!
//! A [`StandardRep`] stores only the block `M` of `[I | M]`: rows are
//! indexed by a basis `B`, columns by `E - B`, and each basis element is
//! implicitly the unit vector on its own row. Every query reduces to rank
//! computations on the implied columns.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::Modulus;
use crate::linalg::Span;
use crate::sparse::{IndexedMatrix, Label};

/// Largest ground set the exhaustive searches accept.
pub const EXHAUSTIVE_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardRep {
    matrix: IndexedMatrix,
}

/// Integer weights on the ground set.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WeightFunction(pub BTreeMap<Label, i64>);

impl WeightFunction {
    pub fn get(&self, e: Label) -> i64 {
        self.0.get(&e).copied().unwrap_or(0)
    }

    pub fn weight(&self, s: &[Label]) -> i64 {
        s.iter().map(|&e| self.get(e)).sum()
    }

    /// The sublevel set `{e : F(e) <= eps}` within `ground`.
    pub fn sublevel(&self, ground: &[Label], eps: i64) -> Vec<Label> {
        ground
            .iter()
            .copied()
            .filter(|&e| self.get(e) <= eps)
            .collect()
    }
}

impl FromIterator<(Label, i64)> for WeightFunction {
    fn from_iter<I: IntoIterator<Item = (Label, i64)>>(iter: I) -> Self {
        WeightFunction(iter.into_iter().collect())
    }
}

impl StandardRep {
    /// Wraps `M`; its row labels form the basis and must be disjoint from
    /// its column labels.
    pub fn new(matrix: IndexedMatrix) -> Result<Self> {
        if let Some(&l) = matrix.rows().iter().find(|r| matrix.has_col(**r)) {
            return Err(Error::InBasis(l));
        }
        Ok(StandardRep { matrix })
    }

    /// Standard representation of the column matroid of an arbitrary
    /// matrix; the basis is the lexicographically first one.
    pub fn from_columns_of(a: &IndexedMatrix) -> Self {
        let m = a.modulus();
        let n = a.nrows();
        let row_pos: BTreeMap<Label, usize> =
            a.rows().iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let dense_col = |c: Label| {
            let mut v = vec![0u32; n];
            for &(r, x) in a.column(c) {
                v[row_pos[&r]] = x;
            }
            v
        };
        let mut span = Span::new(m, n);
        let mut basis = Vec::new();
        for &c in a.cols() {
            if span.insert(&dense_col(c)) {
                basis.push(c);
            }
        }
        // coordinates of every column in the chosen basis
        let bvecs: Vec<Vec<u32>> = basis.iter().map(|&b| dense_col(b)).collect();
        let nonbasis: Vec<Label> = a
            .cols()
            .iter()
            .copied()
            .filter(|c| !basis.contains(c))
            .collect();
        let mut entries = Vec::new();
        for &e in &nonbasis {
            let coords = solve_in_basis(m, &bvecs, &dense_col(e));
            for (k, x) in coords.into_iter().enumerate() {
                if x != 0 {
                    entries.push((basis[k], e, x as i64));
                }
            }
        }
        let matrix = IndexedMatrix::from_entries(basis.clone(), nonbasis, m, entries)
            .expect("labels drawn from the input");
        StandardRep { matrix }
    }

    /// Graphic matroid of an undirected graph; edge `k` of the slice gets
    /// label `k`.
    pub fn graphic(edges: &[(usize, usize)], modulus: Modulus) -> Self {
        let nodes: BTreeSet<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        let entries = edges.iter().enumerate().flat_map(|(k, &(u, v))| {
            let (u, v) = (u.min(v), u.max(v));
            [(u, k, 1i64), (v, k, -1i64)]
        });
        let a = IndexedMatrix::from_entries(nodes, 0..edges.len(), modulus, entries)
            .expect("labels drawn from the edge list");
        Self::from_columns_of(&a)
    }

    pub fn matrix(&self) -> &IndexedMatrix {
        &self.matrix
    }

    pub fn modulus(&self) -> Modulus {
        self.matrix.modulus()
    }

    pub fn basis(&self) -> &[Label] {
        self.matrix.rows()
    }

    pub fn nonbasis(&self) -> &[Label] {
        self.matrix.cols()
    }

    pub fn ground_set(&self) -> Vec<Label> {
        let mut e: Vec<Label> = self
            .basis()
            .iter()
            .chain(self.nonbasis())
            .copied()
            .collect();
        e.sort_unstable();
        e
    }

    pub fn in_basis(&self, e: Label) -> bool {
        self.matrix.has_row(e)
    }

    fn contains(&self, e: Label) -> bool {
        self.matrix.has_row(e) || self.matrix.has_col(e)
    }

    /// The full representation `[I | M]`, rows `B`, columns `E`.
    pub fn full_matrix(&self) -> IndexedMatrix {
        let entries = self
            .basis()
            .iter()
            .map(|&b| (b, b, 1))
            .chain(self.matrix.entries().map(|(r, c, v)| (r, c, v as i64)));
        IndexedMatrix::from_entries(
            self.basis().iter().copied(),
            self.ground_set(),
            self.modulus(),
            entries,
        )
        .expect("labels drawn from the representation")
    }

    fn vector(&self, e: Label) -> Result<Vec<u32>> {
        let basis = self.basis();
        let mut v = vec![0u32; basis.len()];
        if let Ok(k) = basis.binary_search(&e) {
            v[k] = 1;
        } else if self.matrix.has_col(e) {
            for &(r, x) in self.matrix.column(e) {
                v[basis.binary_search(&r).expect("row label")] = x;
            }
        } else {
            return Err(Error::UnknownLabel(e));
        }
        Ok(v)
    }

    pub fn rank(&self, s: &[Label]) -> Result<usize> {
        let mut span = Span::new(self.modulus(), self.basis().len());
        for &e in s {
            span.insert(&self.vector(e)?);
        }
        Ok(span.rank())
    }

    pub fn is_independent(&self, s: &[Label]) -> Result<bool> {
        let distinct: BTreeSet<Label> = s.iter().copied().collect();
        Ok(distinct.len() == s.len() && self.rank(s)? == s.len())
    }

    pub fn is_basis(&self, s: &[Label]) -> Result<bool> {
        Ok(s.len() == self.basis().len() && self.is_independent(s)?)
    }

    /// `{t in E : rank(S + t) = rank(S)}`.
    pub fn closure(&self, s: &[Label]) -> Result<Vec<Label>> {
        let mut span = Span::new(self.modulus(), self.basis().len());
        for &e in s {
            span.insert(&self.vector(e)?);
        }
        let mut out = Vec::new();
        for e in self.ground_set() {
            if span.contains(&self.vector(e)?) {
                out.push(e);
            }
        }
        Ok(out)
    }

    /// The unique circuit in `B + e`: `e` together with the support of its
    /// column. A loop is its own circuit.
    pub fn fundamental_circuit(&self, e: Label) -> Result<Vec<Label>> {
        if self.in_basis(e) {
            return Err(Error::InBasis(e));
        }
        if !self.matrix.has_col(e) {
            return Err(Error::UnknownLabel(e));
        }
        let mut out: Vec<Label> = self.matrix.column(e).iter().map(|&(r, _)| r).collect();
        out.push(e);
        out.sort_unstable();
        Ok(out)
    }

    /// Elementary exchange of `b in B` for `e not in B` with `M(b, e) != 0`.
    fn pivot(&self, b: Label, e: Label) -> StandardRep {
        let m = self.modulus();
        let a = self.matrix.entry(b, e);
        let ainv = m.inv(a).expect("pivot entry is nonzero");
        let pivot_col: BTreeMap<Label, u32> = self.matrix.column(e).iter().copied().collect();
        let pivot_row: BTreeMap<Label, u32> = self
            .matrix
            .row_map()
            .remove(&b)
            .unwrap_or_default()
            .into_iter()
            .collect();
        let rows: Vec<Label> = self
            .basis()
            .iter()
            .copied()
            .filter(|&r| r != b)
            .chain([e])
            .collect();
        let cols: Vec<Label> = self
            .nonbasis()
            .iter()
            .copied()
            .filter(|&c| c != e)
            .chain([b])
            .collect();
        let mut entries: Vec<(Label, Label, i64)> = Vec::new();
        entries.push((e, b, ainv as i64));
        for (&c, &x) in &pivot_row {
            if c != e {
                entries.push((e, c, m.mul(x, ainv) as i64));
            }
        }
        for (&r, &y) in &pivot_col {
            if r != b {
                entries.push((r, b, m.neg(m.mul(y, ainv)) as i64));
            }
        }
        for (r, c, v) in self.matrix.entries() {
            if r == b || c == e {
                continue;
            }
            entries.push((r, c, v as i64));
        }
        for (&r, &y) in &pivot_col {
            if r == b {
                continue;
            }
            for (&c, &x) in &pivot_row {
                if c != e {
                    entries.push((r, c, m.neg(m.mul(m.mul(y, x), ainv)) as i64));
                }
            }
        }
        let matrix = IndexedMatrix::from_entries(rows, cols, m, entries).expect("labels");
        StandardRep { matrix }
    }

    /// Block exchange: rotates the `e`s into the basis and the `b`s out.
    /// The new basis depends only on the two label sets; pivots are taken
    /// one nonzero entry of the remaining block at a time.
    pub fn exchange_basis(&self, pairs: &[(Label, Label)]) -> Result<StandardRep> {
        let mut outgoing: BTreeSet<Label> = BTreeSet::new();
        let mut incoming: BTreeSet<Label> = BTreeSet::new();
        for &(b, e) in pairs {
            if !self.in_basis(b) {
                return Err(if self.contains(b) {
                    Error::InvalidMatching("outgoing element is not in the basis".into())
                } else {
                    Error::UnknownLabel(b)
                });
            }
            if !self.matrix.has_col(e) {
                return Err(if self.contains(e) {
                    Error::InBasis(e)
                } else {
                    Error::UnknownLabel(e)
                });
            }
            if !outgoing.insert(b) || !incoming.insert(e) {
                return Err(Error::InvalidMatching("repeated label".into()));
            }
        }
        let mut rep = self.clone();
        while !outgoing.is_empty() {
            let next = outgoing.iter().find_map(|&b| {
                incoming
                    .iter()
                    .find(|&&e| rep.matrix.entry(b, e) != 0)
                    .map(|&e| (b, e))
            });
            let (b, e) = next.ok_or(Error::SingularPivotBlock)?;
            rep = rep.pivot(b, e);
            outgoing.remove(&b);
            incoming.remove(&e);
        }
        Ok(rep)
    }

    fn drop_labels(&self, s: &BTreeSet<Label>) -> StandardRep {
        let rows: Vec<Label> = self
            .basis()
            .iter()
            .copied()
            .filter(|l| !s.contains(l))
            .collect();
        let cols: Vec<Label> = self
            .nonbasis()
            .iter()
            .copied()
            .filter(|l| !s.contains(l))
            .collect();
        StandardRep {
            matrix: self
                .matrix
                .submatrix(&rows, &cols)
                .expect("subset of labels"),
        }
    }

    fn check_subset(&self, s: &[Label]) -> Result<BTreeSet<Label>> {
        for &e in s {
            if !self.contains(e) {
                return Err(Error::UnknownLabel(e));
            }
        }
        Ok(s.iter().copied().collect())
    }

    /// Deletion minor `M \ S`.
    pub fn delete(&self, s: &[Label]) -> Result<StandardRep> {
        let s = self.check_subset(s)?;
        let mut rep = self.clone();
        for &b in s.iter().filter(|&&b| self.in_basis(b)) {
            let partner = rep
                .matrix
                .column_labels_in_row(b)
                .into_iter()
                .find(|c| !s.contains(c));
            if let Some(e) = partner {
                rep = rep.pivot(b, e);
            }
        }
        Ok(rep.drop_labels(&s))
    }

    /// Contraction minor `M / S`.
    pub fn contract(&self, s: &[Label]) -> Result<StandardRep> {
        let s = self.check_subset(s)?;
        let mut rep = self.clone();
        for &e in s.iter().filter(|&&e| !self.in_basis(e)) {
            let partner = rep
                .matrix
                .column(e)
                .iter()
                .map(|&(r, _)| r)
                .find(|r| !s.contains(r));
            if let Some(b) = partner {
                rep = rep.pivot(b, e);
            }
        }
        Ok(rep.drop_labels(&s))
    }

    /// Standard representation `-M^T` of the dual matroid, basis `E - B`.
    pub fn dual(&self) -> StandardRep {
        StandardRep {
            matrix: self.matrix.transpose().scale(self.modulus().minus_one()),
        }
    }

    /// Minimum-weight basis by the greedy algorithm; ties go to the smaller
    /// label.
    pub fn greedy_minimal_basis(&self, weights: &WeightFunction) -> Result<Vec<Label>> {
        let mut order = self.ground_set();
        order.sort_by_key(|&e| (weights.get(e), e));
        let mut span = Span::new(self.modulus(), self.basis().len());
        let mut out = Vec::new();
        for e in order {
            if span.insert(&self.vector(e)?) {
                out.push(e);
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    pub fn is_modular_pair(&self, s: &[Label], t: &[Label]) -> Result<bool> {
        let ss = self.check_subset(s)?;
        let ts = self.check_subset(t)?;
        let union: Vec<Label> = ss.union(&ts).copied().collect();
        let inter: Vec<Label> = ss.intersection(&ts).copied().collect();
        Ok(self.rank(&union)? + self.rank(&inter)? == self.rank(s)? + self.rank(t)?)
    }

    /// Whether some basis `B` has `B ∩ S` spanning `S` for every member.
    ///
    /// Families of inclusion width at most two are bifiltrations; there
    /// pairwise modularity decides the question. Anything else is searched
    /// exhaustively over bases.
    pub fn is_freely_generated(&self, family: &[Vec<Label>]) -> Result<bool> {
        if family.is_empty() {
            return Err(Error::DimensionMismatch("empty family".into()));
        }
        let sets: Vec<BTreeSet<Label>> = family
            .iter()
            .map(|s| self.check_subset(s))
            .collect::<Result<_>>()?;
        if inclusion_width_at_most_two(&sets) {
            for (i, s) in family.iter().enumerate() {
                for t in &family[i + 1..] {
                    if !self.is_modular_pair(s, t)? {
                        return Ok(false);
                    }
                }
            }
            return Ok(true);
        }
        self.is_freely_generated_exhaustive(family)
    }

    pub fn is_freely_generated_exhaustive(&self, family: &[Vec<Label>]) -> Result<bool> {
        let ranks: Vec<usize> = family.iter().map(|s| self.rank(s)).collect::<Result<_>>()?;
        for b in self.bases()? {
            let bs: BTreeSet<Label> = b.into_iter().collect();
            let mut ok = true;
            for (s, &r) in family.iter().zip(&ranks) {
                let part: Vec<Label> = s.iter().copied().filter(|e| bs.contains(e)).collect();
                if self.rank(&part)? != r {
                    ok = false;
                    break;
                }
            }
            if ok {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Every basis, by brute force over subsets of size `rank(E)`.
    pub fn bases(&self) -> Result<Vec<Vec<Label>>> {
        let ground = self.ground_set();
        if ground.len() > EXHAUSTIVE_LIMIT {
            return Err(Error::InstanceTooLarge(ground.len(), EXHAUSTIVE_LIMIT));
        }
        let r = self.basis().len();
        let mut out = Vec::new();
        for mask in 0u32..(1 << ground.len()) {
            if mask.count_ones() as usize != r {
                continue;
            }
            let s = subset(&ground, mask);
            if self.is_independent(&s)? {
                out.push(s);
            }
        }
        Ok(out)
    }
}

impl IndexedMatrix {
    pub(crate) fn column_labels_in_row(&self, r: Label) -> Vec<Label> {
        self.columns()
            .filter(|(_, col)| col.iter().any(|&(i, _)| i == r))
            .map(|(c, _)| c)
            .collect()
    }
}

/// Elements of `ground` selected by the bits of `mask`.
pub fn subset(ground: &[Label], mask: u32) -> Vec<Label> {
    ground
        .iter()
        .enumerate()
        .filter(|(k, _)| mask >> k & 1 == 1)
        .map(|(_, &e)| e)
        .collect()
}

fn inclusion_width_at_most_two(sets: &[BTreeSet<Label>]) -> bool {
    let comparable = |a: &BTreeSet<Label>, b: &BTreeSet<Label>| a.is_subset(b) || b.is_subset(a);
    let n = sets.len();
    for i in 0..n {
        for j in i + 1..n {
            if comparable(&sets[i], &sets[j]) {
                continue;
            }
            for k in j + 1..n {
                if !comparable(&sets[i], &sets[k]) && !comparable(&sets[j], &sets[k]) {
                    return false;
                }
            }
        }
    }
    true
}

/// Coordinates of `v` in the (independent) columns `basis`.
fn solve_in_basis(m: Modulus, basis: &[Vec<u32>], v: &[u32]) -> Vec<u32> {
    let n = v.len();
    let k = basis.len();
    // augmented system [basis | v], row-reduced
    let mut rows: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            let mut row: Vec<u32> = basis.iter().map(|b| b[i]).collect();
            row.push(v[i]);
            row
        })
        .collect();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..k {
        let Some(p) = (r..n).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = m.inv(rows[r][c]).expect("nonzero");
        for x in rows[r].iter_mut() {
            *x = m.mul(*x, inv);
        }
        let pr = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = m.neg(row[c]);
                for (x, y) in row.iter_mut().zip(&pr) {
                    *x = m.add(*x, m.mul(f, *y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut out = vec![0; k];
    for (i, &c) in pivots.iter().enumerate() {
        out[c] = rows[i][k];
    }
    out
}
