//! Acyclic matchings and discrete Morse reduction.
//!
//! A matching pairs rows with columns of a matrix. Matched cells are
//! eliminated, and the Morse complex on the remaining (critical) cells is
//! the Schur complement of the pivot block restricted to critical rows and
//! columns. [`morse_boundary_paths`] evaluates the same matrix by summing
//! over gradient paths and serves as a cross-check.

use alloc::collections::{BTreeMap, BTreeSet, BinaryHeap};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::complex::FilteredComplex;
use crate::error::{Error, Result};
use crate::field::Modulus;
use crate::graded::GradedMatrix;
use crate::sparse::{IndexedMatrix, Label};

/// Set of `(row, column)` pairs using each row and each column at most once.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PartialMatching {
    flat: BTreeMap<Label, Label>,
    sharp: BTreeMap<Label, Label>,
}

impl PartialMatching {
    pub fn new(pairs: impl IntoIterator<Item = (Label, Label)>) -> Result<Self> {
        let mut m = PartialMatching::default();
        for (r, c) in pairs {
            m.insert(r, c)?;
        }
        Ok(m)
    }

    pub fn insert(&mut self, row: Label, col: Label) -> Result<()> {
        if self.flat.contains_key(&row) {
            return Err(Error::InvalidMatching(alloc::format!(
                "row {row} matched twice"
            )));
        }
        if self.sharp.contains_key(&col) {
            return Err(Error::InvalidMatching(alloc::format!(
                "column {col} matched twice"
            )));
        }
        self.flat.insert(row, col);
        self.sharp.insert(col, row);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.flat.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flat.is_empty()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (Label, Label)> + '_ {
        self.flat.iter().map(|(&r, &c)| (r, c))
    }

    /// Matched rows.
    pub fn domain(&self) -> impl Iterator<Item = Label> + '_ {
        self.flat.keys().copied()
    }

    /// Matched columns.
    pub fn image(&self) -> impl Iterator<Item = Label> + '_ {
        self.sharp.keys().copied()
    }

    pub fn flat(&self, row: Label) -> Option<Label> {
        self.flat.get(&row).copied()
    }

    pub fn sharp(&self, col: Label) -> Option<Label> {
        self.sharp.get(&col).copied()
    }

    pub fn union(&self, other: &PartialMatching) -> Result<PartialMatching> {
        PartialMatching::new(self.pairs().chain(other.pairs()))
    }

    /// Every pair lies in the support of `a` and the pivot block is
    /// invertible.
    pub fn validate(&self, a: &IndexedMatrix) -> Result<()> {
        for (r, c) in self.pairs() {
            if a.get(r, c)? == 0 {
                return Err(Error::InvalidMatching(alloc::format!(
                    "({r}, {c}) is outside the support"
                )));
            }
        }
        let rows: Vec<Label> = self.domain().collect();
        let cols: Vec<Label> = self.image().collect();
        if a.submatrix(&rows, &cols)?.rank() != self.len() {
            return Err(Error::InvalidMatching("pivot block is singular".into()));
        }
        Ok(())
    }
}

/// A reflexive, transitive relation stored as its full set of pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedRelation {
    pairs: BTreeSet<(Label, Label)>,
}

impl InducedRelation {
    fn closure(elements: &[Label], edges: impl IntoIterator<Item = (Label, Label)>) -> Self {
        let mut succ: BTreeMap<Label, BTreeSet<Label>> = BTreeMap::new();
        for (a, b) in edges {
            succ.entry(a).or_default().insert(b);
        }
        let mut pairs = BTreeSet::new();
        for &s in elements {
            let mut stack = vec![s];
            let mut seen = BTreeSet::from([s]);
            while let Some(x) = stack.pop() {
                for &y in succ.get(&x).into_iter().flatten() {
                    if seen.insert(y) {
                        stack.push(y);
                    }
                }
            }
            pairs.extend(seen.into_iter().map(|t| (s, t)));
        }
        InducedRelation { pairs }
    }

    pub fn contains(&self, a: Label, b: Label) -> bool {
        self.pairs.contains(&(a, b))
    }

    pub fn pairs(&self) -> impl Iterator<Item = (Label, Label)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn is_identity(&self) -> bool {
        self.pairs.iter().all(|(a, b)| a == b)
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.pairs
            .iter()
            .all(|&(a, b)| a == b || !self.pairs.contains(&(b, a)))
    }
}

/// Induced relations of a matching on a relation `support ⊆ rows × cols`:
/// on rows, `i -> j` whenever `j` is matched and `(i, j♭)` is in the
/// support; on columns, `i -> j` whenever `i` is matched and `(i♯, j)` is.
pub fn induced_relations_on(
    support: &BTreeSet<(Label, Label)>,
    rows: &[Label],
    cols: &[Label],
    matching: &PartialMatching,
) -> (InducedRelation, InducedRelation) {
    let row_edges = support
        .iter()
        .filter_map(|&(i, c)| matching.sharp(c).map(|j| (i, j)));
    let col_edges = support
        .iter()
        .filter_map(|&(r, j)| matching.flat(r).map(|i| (i, j)));
    (
        InducedRelation::closure(rows, row_edges),
        InducedRelation::closure(cols, col_edges),
    )
}

fn support_of(a: &IndexedMatrix) -> BTreeSet<(Label, Label)> {
    a.entries().map(|(r, c, _)| (r, c)).collect()
}

pub fn induced_relations(
    a: &IndexedMatrix,
    matching: &PartialMatching,
) -> Result<(InducedRelation, InducedRelation)> {
    matching.validate(a)?;
    Ok(induced_relations_on(
        &support_of(a),
        a.rows(),
        a.cols(),
        matching,
    ))
}

/// Both induced relations are antisymmetric. Errors if the matching is
/// not valid for `a`.
pub fn is_acyclic(a: &IndexedMatrix, matching: &PartialMatching) -> Result<bool> {
    for (r, c) in matching.pairs() {
        if a.get(r, c)? == 0 {
            return Err(Error::InvalidMatching(alloc::format!(
                "({r}, {c}) is outside the support"
            )));
        }
    }
    // Acyclicity makes the pivot block triangular with nonzero diagonal, so
    // validity only needs checking in the cyclic case.
    let acyclic = acyclic_on(&support_of(a), matching);
    if !acyclic {
        matching.validate(a)?;
    }
    Ok(acyclic)
}

/// Cycle test on the row relation; the column relation has a cycle iff
/// the row relation does, but both are checked.
pub fn acyclic_on(support: &BTreeSet<(Label, Label)>, matching: &PartialMatching) -> bool {
    let row_edges: Vec<(Label, Label)> = support
        .iter()
        .filter_map(|&(i, c)| matching.sharp(c).map(|j| (i, j)))
        .filter(|(i, j)| i != j)
        .collect();
    let col_edges: Vec<(Label, Label)> = support
        .iter()
        .filter_map(|&(r, j)| matching.flat(r).map(|i| (i, j)))
        .filter(|(i, j)| i != j)
        .collect();
    !has_cycle(&row_edges) && !has_cycle(&col_edges)
}

fn has_cycle(edges: &[(Label, Label)]) -> bool {
    let mut indeg: BTreeMap<Label, usize> = BTreeMap::new();
    let mut succ: BTreeMap<Label, Vec<Label>> = BTreeMap::new();
    for &(a, b) in edges {
        indeg.entry(a).or_default();
        *indeg.entry(b).or_default() += 1;
        succ.entry(a).or_default().push(b);
    }
    let mut ready: Vec<Label> = indeg
        .iter()
        .filter(|(_, &d)| d == 0)
        .map(|(&l, _)| l)
        .collect();
    let mut seen = 0;
    while let Some(x) = ready.pop() {
        seen += 1;
        for &y in succ.get(&x).into_iter().flatten() {
            let d = indeg.get_mut(&y).expect("node");
            *d -= 1;
            if *d == 0 {
                ready.push(y);
            }
        }
    }
    seen != indeg.len()
}

/// Apparent pairs `(σ, τ)`: σ is the last row of column τ, τ is the first
/// column with a nonzero in row σ, and both have the same grade.
pub fn obvious_pairs_graded(d: &GradedMatrix) -> PartialMatching {
    let mut m = PartialMatching::default();
    for (s, t) in apparent_positions(d) {
        m.insert(d.cell(s).label, d.cell(t).label)
            .expect("apparent pairs form a matching");
    }
    m
}

fn apparent_positions(d: &GradedMatrix) -> Vec<(usize, usize)> {
    let n = d.len();
    let mut first_coface = vec![usize::MAX; n];
    for j in 0..n {
        for &(i, _) in d.column(j) {
            let f = &mut first_coface[i as usize];
            if *f == usize::MAX {
                *f = j;
            }
        }
    }
    (0..n)
        .filter_map(|t| {
            let &(s, _) = d.column(t).last()?;
            let s = s as usize;
            (first_coface[s] == t && d.cell(s).grade == d.cell(t).grade).then_some((s, t))
        })
        .collect()
}

/// Apparent pairs between `dim`-simplices and `(dim+1)`-simplices.
pub fn obvious_pairs(k: &FilteredComplex, dim: usize, p: Modulus) -> Result<PartialMatching> {
    let d = GradedMatrix::from_complex(k, p, false)?;
    let pairs = apparent_positions(&d)
        .into_iter()
        .filter(|&(s, _)| d.cell(s).dim == dim as isize)
        .map(|(s, t)| (d.cell(s).label, d.cell(t).label));
    PartialMatching::new(pairs)
}

struct Resolved {
    // matched column position for each matched row position
    flat: Vec<u32>,
    critical: Vec<usize>,
}

const NONE: u32 = u32::MAX;

fn resolve(d: &GradedMatrix, matching: &PartialMatching) -> Result<Resolved> {
    let pos = d.positions();
    let n = d.len();
    let mut flat = vec![NONE; n];
    let mut matched = vec![false; n];
    for (r, c) in matching.pairs() {
        let (&ri, &ci) =
            pos.get(&r)
                .zip(pos.get(&c))
                .ok_or(Error::UnknownLabel(if pos.contains_key(&r) {
                    c
                } else {
                    r
                }))?;
        if !d.column(ci).iter().any(|&(i, _)| i as usize == ri) {
            return Err(Error::InvalidMatching(alloc::format!(
                "({r}, {c}) is outside the support"
            )));
        }
        flat[ri] = ci as u32;
        matched[ri] = true;
        matched[ci] = true;
    }
    let critical = (0..n).filter(|&i| !matched[i]).collect();
    Ok(Resolved { flat, critical })
}

/// Morse complex as the Schur complement of the pivot block, restricted to
/// critical cells.
pub fn morse_boundary_schur(d: &GradedMatrix, matching: &PartialMatching) -> Result<GradedMatrix> {
    let Resolved { flat, critical } = resolve(d, matching)?;
    let n = d.len();
    let m = d.modulus();

    // topological rank of matched rows: σ before σ' when σ' is a face of σ♭
    let mut indeg = vec![0u32; n];
    for s in 0..n {
        if flat[s] != NONE {
            for &(i, _) in d.column(flat[s] as usize) {
                if i as usize != s && flat[i as usize] != NONE {
                    indeg[i as usize] += 1;
                }
            }
        }
    }
    let mut ready: Vec<usize> = (0..n)
        .filter(|&s| flat[s] != NONE && indeg[s] == 0)
        .collect();
    let mut rank = vec![NONE; n];
    let mut next = 0u32;
    while let Some(s) = ready.pop() {
        rank[s] = next;
        next += 1;
        for &(i, _) in d.column(flat[s] as usize) {
            let i = i as usize;
            if i != s && flat[i] != NONE {
                indeg[i] -= 1;
                if indeg[i] == 0 {
                    ready.push(i);
                }
            }
        }
    }
    if next as usize != matching.len() {
        return Err(Error::CyclicSupport);
    }
    let mut by_rank = vec![0usize; next as usize];
    for s in 0..n {
        if rank[s] != NONE {
            by_rank[rank[s] as usize] = s;
        }
    }
    let pivot_inv: Vec<u32> = (0..n)
        .map(|s| {
            if flat[s] == NONE {
                return 0;
            }
            let col = d.column(flat[s] as usize);
            let v = col[col
                .binary_search_by_key(&(s as u32), |e| e.0)
                .expect("in support")]
            .1;
            m.inv(v).expect("nonzero")
        })
        .collect();

    let mut new_pos = vec![NONE; n];
    for (k, &c) in critical.iter().enumerate() {
        new_pos[c] = k as u32;
    }
    let mut acc = vec![0u32; n];
    let mut touched: Vec<usize> = Vec::new();
    let mut queued = vec![false; n];
    let mut heap: BinaryHeap<Reverse<u32>> = BinaryHeap::new();
    let mut columns = Vec::with_capacity(critical.len());
    for &c in &critical {
        for &(i, v) in d.column(c) {
            let i = i as usize;
            acc[i] = v;
            touched.push(i);
            if flat[i] != NONE && !queued[i] {
                queued[i] = true;
                heap.push(Reverse(rank[i]));
            }
        }
        while let Some(Reverse(r)) = heap.pop() {
            let s = by_rank[r as usize];
            let x = acc[s];
            if x == 0 {
                continue;
            }
            let f = m.neg(m.mul(x, pivot_inv[s]));
            for &(i, v) in d.column(flat[s] as usize) {
                let i = i as usize;
                if acc[i] == 0 {
                    touched.push(i);
                }
                acc[i] = m.add(acc[i], m.mul(f, v));
                if flat[i] != NONE && !queued[i] {
                    queued[i] = true;
                    heap.push(Reverse(rank[i]));
                }
            }
            debug_assert_eq!(acc[s], 0);
        }
        let mut col: Vec<(u32, u32)> = touched
            .iter()
            .filter(|&&i| acc[i] != 0 && new_pos[i] != NONE)
            .map(|&i| (new_pos[i], acc[i]))
            .collect();
        col.sort_unstable();
        col.dedup();
        columns.push(col);
        for &i in &touched {
            acc[i] = 0;
            queued[i] = false;
        }
        touched.clear();
    }
    let cells = critical.iter().map(|&c| *d.cell(c)).collect();
    Ok(GradedMatrix::from_parts(m, cells, columns))
}

/// Morse complex by summing `m(γ)` over gradient paths, memoized per
/// matched cell.
pub fn morse_boundary_paths(d: &GradedMatrix, matching: &PartialMatching) -> Result<GradedMatrix> {
    let a = d.to_indexed();
    let m = d.modulus();
    let matched: BTreeSet<Label> = matching.domain().chain(matching.image()).collect();
    for (r, c) in matching.pairs() {
        if a.get(r, c)? == 0 {
            return Err(Error::InvalidMatching(alloc::format!(
                "({r}, {c}) is outside the support"
            )));
        }
    }
    let critical: Vec<Label> = d
        .cells()
        .iter()
        .map(|c| c.label)
        .filter(|l| !matched.contains(l))
        .collect();

    // flow[σ] = Σ over paths from matched row σ to critical cells
    #[derive(Clone, Copy, PartialEq)]
    enum State {
        Active,
        Done,
    }
    let mut state: BTreeMap<Label, State> = BTreeMap::new();
    let mut flow: BTreeMap<Label, BTreeMap<Label, u32>> = BTreeMap::new();

    fn visit(
        s: Label,
        a: &IndexedMatrix,
        matching: &PartialMatching,
        m: Modulus,
        state: &mut BTreeMap<Label, State>,
        flow: &mut BTreeMap<Label, BTreeMap<Label, u32>>,
    ) -> Result<()> {
        match state.get(&s) {
            Some(State::Done) => return Ok(()),
            Some(State::Active) => return Err(Error::CyclicSupport),
            None => {}
        }
        state.insert(s, State::Active);
        let t = matching.flat(s).expect("matched row");
        let step = m.neg(m.inv(a.entry(s, t)).expect("nonzero"));
        let mut out: BTreeMap<Label, u32> = BTreeMap::new();
        for &(alpha, v) in a.column(t) {
            if alpha == s {
                continue;
            }
            let w = m.mul(step, v);
            if matching.flat(alpha).is_some() {
                visit(alpha, a, matching, m, state, flow)?;
                for (&target, &x) in &flow[&alpha] {
                    let e = out.entry(target).or_insert(0);
                    *e = m.add(*e, m.mul(w, x));
                }
            } else if matching.sharp(alpha).is_none() {
                let e = out.entry(alpha).or_insert(0);
                *e = m.add(*e, w);
            }
        }
        out.retain(|_, x| *x != 0);
        flow.insert(s, out);
        state.insert(s, State::Done);
        Ok(())
    }

    for s in matching.domain() {
        visit(s, &a, matching, m, &mut state, &mut flow)?;
    }

    let mut entries = Vec::new();
    for &beta in &critical {
        let mut col: BTreeMap<Label, u32> = BTreeMap::new();
        for &(alpha, v) in a.column(beta) {
            if matching.flat(alpha).is_some() {
                for (&target, &x) in &flow[&alpha] {
                    let e = col.entry(target).or_insert(0);
                    *e = m.add(*e, m.mul(v, x));
                }
            } else if !matched.contains(&alpha) {
                let e = col.entry(alpha).or_insert(0);
                *e = m.add(*e, v);
            }
        }
        entries.extend(col.into_iter().map(|(r, x)| (r, beta, x as i64)));
    }
    let sub = IndexedMatrix::from_entries(critical.clone(), critical.clone(), m, entries)?;
    let cells = d
        .cells()
        .iter()
        .copied()
        .filter(|c| !matched.contains(&c.label));
    GradedMatrix::from_matrix(&sub, cells).map(|g| g.permute_like(d))
}

impl GradedMatrix {
    // Reorders cells to follow their relative order in `reference`.
    fn permute_like(&self, reference: &GradedMatrix) -> GradedMatrix {
        let rank = reference.positions();
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| rank[&self.cell(i).label]);
        self.permute(&order)
    }
}

/// Repeatedly eliminates apparent pairs until none remain, then drops
/// cells above dimension `target_dim + 1`.
pub fn reduce_graded(d: &GradedMatrix, target_dim: isize) -> Result<GradedMatrix> {
    let mut cur = d.clone();
    loop {
        let pairs = obvious_pairs_graded(&cur);
        if pairs.is_empty() {
            break;
        }
        cur = morse_boundary_schur(&cur, &pairs)?;
    }
    Ok(cur.truncate(target_dim + 1))
}

/// Morse reduction of a complex's boundary operator; the result has the
/// same barcode in dimensions up to `target_dim`.
pub fn reduce(
    k: &FilteredComplex,
    p: Modulus,
    target_dim: usize,
    reduced: bool,
) -> Result<GradedMatrix> {
    let d = GradedMatrix::from_complex(k, p, reduced)?;
    reduce_graded(&d, target_dim as isize)
}
