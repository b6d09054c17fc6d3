//! Filtered simplicial complexes, boundary matrices and Vietoris–Rips
//! construction.

use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::Modulus;
use crate::sparse::{IndexedMatrix, Label};

/// A filtration value. Ordered by `f64::total_cmp`; grades are only ever
/// copied and compared, never computed with.
#[derive(Debug, Clone, Copy)]
pub struct Grade(pub f64);

impl Grade {
    pub const INFINITY: Grade = Grade(f64::INFINITY);

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }
}

impl PartialEq for Grade {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Grade {}

impl PartialOrd for Grade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Grade {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// Vertex set of a simplex, sorted and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex(Vec<u32>);

impl Simplex {
    pub fn new(vertices: impl IntoIterator<Item = u32>) -> Self {
        let mut v: Vec<u32> = vertices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Simplex(v)
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0
    }

    /// `|vertices| - 1`; the empty simplex has dimension -1.
    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    /// Codimension-one faces with their 1-based removal position `q`; the
    /// boundary coefficient of the face is `(-1)^q`.
    pub fn facets(&self) -> impl Iterator<Item = (usize, Simplex)> + '_ {
        (0..self.0.len()).map(move |k| {
            let mut f = self.0.clone();
            f.remove(k);
            (k + 1, Simplex(f))
        })
    }
}

/// Simplices with grades, stored in the linear order
/// `(grade, dimension, lexicographic vertex tuple)`. A simplex's label is
/// its position in that order.
#[derive(Debug, Clone)]
pub struct FilteredComplex {
    simplices: Vec<Simplex>,
    grades: Vec<Grade>,
    // labels sorted by (dimension, vertices), for lookup
    lex: Vec<u32>,
}

impl FilteredComplex {
    /// Builds a complex from `(vertices, grade)` pairs. Face closure and
    /// monotonicity are not enforced here; see [`FilteredComplex::validate`].
    pub fn new(simplices: impl IntoIterator<Item = (Vec<u32>, f64)>) -> Result<Self> {
        let mut items: Vec<(Grade, Simplex)> = Vec::new();
        for (v, f) in simplices {
            if f.is_nan() {
                return Err(Error::InvalidComplex("NaN filtration value".into()));
            }
            let s = Simplex::new(v);
            if s.0.is_empty() {
                return Err(Error::InvalidComplex("empty simplex".into()));
            }
            items.push((Grade(f), s));
        }
        items.sort_by(|a, b| {
            a.0.cmp(&b.0)
                .then(a.1.dim().cmp(&b.1.dim()))
                .then(a.1.cmp(&b.1))
        });
        let (grades, simplices): (Vec<Grade>, Vec<Simplex>) = items.into_iter().unzip();
        let mut lex: Vec<u32> = (0..simplices.len() as u32).collect();
        lex.sort_by(|&a, &b| {
            let (x, y) = (&simplices[a as usize], &simplices[b as usize]);
            x.dim().cmp(&y.dim()).then(x.cmp(y))
        });
        for w in lex.windows(2) {
            if simplices[w[0] as usize] == simplices[w[1] as usize] {
                return Err(Error::InvalidComplex(format!(
                    "duplicate simplex {:?}",
                    simplices[w[0] as usize].0
                )));
            }
        }
        Ok(FilteredComplex {
            simplices,
            grades,
            lex,
        })
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn simplex(&self, label: Label) -> &Simplex {
        &self.simplices[label]
    }

    pub fn grade(&self, label: Label) -> Grade {
        self.grades[label]
    }

    pub fn dim(&self, label: Label) -> isize {
        self.simplices[label].dim()
    }

    pub fn max_dim(&self) -> isize {
        self.simplices.iter().map(Simplex::dim).max().unwrap_or(-1)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Label, &Simplex, Grade)> {
        self.simplices
            .iter()
            .zip(&self.grades)
            .enumerate()
            .map(|(l, (s, &g))| (l, s, g))
    }

    /// Labels of the simplices of one dimension, in filtration order.
    pub fn labels_of_dim(&self, dim: isize) -> Vec<Label> {
        (0..self.len()).filter(|&l| self.dim(l) == dim).collect()
    }

    /// The label standing for the empty simplex in augmented boundaries.
    pub fn empty_label(&self) -> Label {
        self.len()
    }

    pub fn find(&self, s: &Simplex) -> Option<Label> {
        self.lex
            .binary_search_by(|&l| {
                let x = &self.simplices[l as usize];
                x.dim().cmp(&s.dim()).then_with(|| x.cmp(s))
            })
            .ok()
            .map(|k| self.lex[k] as Label)
    }

    /// Face closure and monotone grades along every face relation.
    pub fn validate(&self) -> bool {
        self.iter().all(|(_, s, g)| {
            s.dim() == 0
                || s.facets()
                    .all(|(_, f)| self.find(&f).is_some_and(|fl| self.grade(fl) <= g))
        })
    }

    /// Signed boundary coefficients of one simplex as `(face label, (-1)^q)`;
    /// the empty face is reported with label `empty_label()`.
    pub fn boundary_of(&self, label: Label, p: Modulus) -> Result<Vec<(Label, u32)>> {
        let s = &self.simplices[label];
        let mut out = Vec::with_capacity(s.0.len());
        for (q, f) in s.facets() {
            let fl = if f.0.is_empty() {
                self.empty_label()
            } else {
                self.find(&f).ok_or_else(|| {
                    Error::InvalidComplex(format!("face {:?} of {:?} is missing", f.0, s.0))
                })?
            };
            out.push((fl, p.sign(q)));
        }
        out.sort_unstable();
        Ok(out)
    }

    /// `∂_dim`: rows are the (dim-1)-simplices, columns the dim-simplices.
    /// With `reduced`, dimension 0 gets a single row for the empty simplex.
    pub fn boundary_matrix(&self, dim: usize, p: Modulus, reduced: bool) -> Result<IndexedMatrix> {
        let cols = self.labels_of_dim(dim as isize);
        let rows = if dim == 0 {
            if reduced {
                alloc::vec![self.empty_label()]
            } else {
                Vec::new()
            }
        } else {
            self.labels_of_dim(dim as isize - 1)
        };
        let mut entries = Vec::new();
        if dim > 0 || reduced {
            for &c in &cols {
                for (r, v) in self.boundary_of(c, p)? {
                    entries.push((r, c, v as i64));
                }
            }
        }
        IndexedMatrix::from_entries(rows, cols, p, entries)
    }
}

/// A validated symmetric, non-negative distance matrix with zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<f64>,
}

impl DistanceMatrix {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        let mut d = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidDistances(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (j, &x) in row.iter().enumerate() {
                if !x.is_finite() || x < 0.0 {
                    return Err(Error::InvalidDistances(format!("entry ({i}, {j}) is {x}")));
                }
                if i == j && x != 0.0 {
                    return Err(Error::InvalidDistances(format!(
                        "diagonal entry {i} is {x}"
                    )));
                }
                if rows[j][i] != x {
                    return Err(Error::InvalidDistances(format!("asymmetric at ({i}, {j})")));
                }
            }
            d.extend_from_slice(row);
        }
        Ok(DistanceMatrix { n, d })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.d[i * self.n + j]
    }
}

/// Vietoris–Rips complex: all cliques of at most `max_dim + 1` points with
/// pairwise distances `<= max_scale`, graded by diameter.
pub fn rips(
    dist: &DistanceMatrix,
    max_dim: usize,
    max_scale: Option<f64>,
) -> Result<FilteredComplex> {
    let n = dist.len();
    let scale = max_scale.unwrap_or(f64::INFINITY);
    if scale.is_nan() || scale < 0.0 {
        return Err(Error::InvalidDistances(format!("scale {scale}")));
    }
    let higher: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            (i + 1..n)
                .filter(|&j| dist.get(i, j) <= scale)
                .map(|j| j as u32)
                .collect()
        })
        .collect();
    let mut out: Vec<(Vec<u32>, f64)> = Vec::new();
    let mut stack: Vec<(Vec<u32>, f64, Vec<u32>)> = Vec::new();
    for v in 0..n as u32 {
        stack.push((alloc::vec![v], 0.0, higher[v as usize].clone()));
        while let Some((simplex, diam, candidates)) = stack.pop() {
            if simplex.len() <= max_dim {
                for (k, &w) in candidates.iter().enumerate() {
                    let d = simplex
                        .iter()
                        .map(|&u| dist.get(u as usize, w as usize))
                        .fold(diam, f64::max);
                    let next: Vec<u32> = candidates[k + 1..]
                        .iter()
                        .copied()
                        .filter(|&x| dist.get(w as usize, x as usize) <= scale)
                        .collect();
                    let mut s = simplex.clone();
                    s.push(w);
                    stack.push((s, d, next));
                }
            }
            out.push((simplex, diam));
        }
    }
    FilteredComplex::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn unit_square() -> DistanceMatrix {
        let pts = [(0.0f64, 0.0f64), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)];
        let rows = pts
            .iter()
            .map(|a| {
                pts.iter()
                    .map(|b| ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt())
                    .collect()
            })
            .collect();
        DistanceMatrix::new(rows).unwrap()
    }

    #[test]
    fn edge_boundary_signs() {
        let p = Modulus::new(7).unwrap();
        let k = FilteredComplex::new([(vec![1], 0.0), (vec![2], 0.0), (vec![1, 2], 1.0)]).unwrap();
        let d = k.boundary_matrix(1, p, false).unwrap();
        let v1 = k.find(&Simplex::new([1])).unwrap();
        let v2 = k.find(&Simplex::new([2])).unwrap();
        let e = k.find(&Simplex::new([1, 2])).unwrap();
        // removing vertex 1 (q = 1) leaves {2} with sign -1
        assert_eq!(d.get(v2, e).unwrap(), 6);
        assert_eq!(d.get(v1, e).unwrap(), 1);
    }

    #[test]
    fn dimension_zero_conventions() {
        let p = Modulus::TWO;
        let k = FilteredComplex::new([(vec![0], 0.0), (vec![1], 0.0)]).unwrap();
        let d = k.boundary_matrix(0, p, false).unwrap();
        assert_eq!((d.nrows(), d.ncols()), (0, 2));
        let d = k.boundary_matrix(0, p, true).unwrap();
        assert_eq!(d.rows(), &[k.empty_label()]);
        assert_eq!(d.nnz(), 2);
    }

    #[test]
    fn graph_incidence() {
        let p = Modulus::new(3).unwrap();
        let edges = [(0u32, 1u32), (1, 2), (0, 2), (2, 3)];
        let mut simplices: Vec<(Vec<u32>, f64)> = (0..4).map(|v| (vec![v], 0.0)).collect();
        simplices.extend(edges.iter().map(|&(a, b)| (vec![a, b], 1.0)));
        let k = FilteredComplex::new(simplices).unwrap();
        let d = k.boundary_matrix(1, p, false).unwrap();
        for &(a, b) in &edges {
            let e = k.find(&Simplex::new([a, b])).unwrap();
            let va = k.find(&Simplex::new([a])).unwrap();
            let vb = k.find(&Simplex::new([b])).unwrap();
            assert_eq!(d.get(va, e).unwrap(), 1);
            assert_eq!(d.get(vb, e).unwrap(), 2);
            assert_eq!(d.column(e).len(), 2);
        }
    }

    #[test]
    fn boundary_squares_to_zero() {
        let p = Modulus::new(5).unwrap();
        let d = DistanceMatrix::new(vec![vec![0.0; 5]; 5]).unwrap();
        let k = rips(&d, 3, None).unwrap();
        for dim in 1..=3 {
            let a = k.boundary_matrix(dim, p, false).unwrap();
            let b = k.boundary_matrix(dim + 1, p, false).unwrap();
            if b.ncols() > 0 {
                assert!(a.matmul(&b).unwrap().is_zero());
            }
        }
        let a = k.boundary_matrix(0, p, true).unwrap();
        let b = k.boundary_matrix(1, p, true).unwrap();
        assert!(a.matmul(&b).unwrap().is_zero());
    }

    #[test]
    fn rips_small_cases() {
        let two = DistanceMatrix::new(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let k = rips(&two, 1, Some(0.5)).unwrap();
        assert_eq!(k.len(), 2);
        assert!(k.validate());

        let tri = DistanceMatrix::new(vec![
            vec![0.0, 1.0, 1.0],
            vec![1.0, 0.0, 1.0],
            vec![1.0, 1.0, 0.0],
        ])
        .unwrap();
        let k = rips(&tri, 2, Some(1.0)).unwrap();
        assert_eq!(k.len(), 7);
        for (_, s, g) in k.iter() {
            let expected = if s.dim() == 0 { 0.0 } else { 1.0 };
            assert_eq!(g.value(), expected);
        }

        let k = rips(&unit_square(), 1, Some(2.0)).unwrap();
        assert_eq!(k.labels_of_dim(0).len(), 4);
        let edges = k.labels_of_dim(1);
        assert_eq!(edges.len(), 6);
        let sides = edges.iter().filter(|&&e| k.grade(e).value() == 1.0).count();
        let diagonals = edges
            .iter()
            .filter(|&&e| k.grade(e).value() == 2f64.sqrt())
            .count();
        assert_eq!((sides, diagonals), (4, 2));
        assert!(k.validate());
    }

    #[test]
    fn rejects_bad_distances() {
        assert!(DistanceMatrix::new(vec![vec![0.0, 1.0], vec![2.0, 0.0]]).is_err());
        assert!(DistanceMatrix::new(vec![vec![0.0, -1.0], vec![-1.0, 0.0]]).is_err());
        assert!(DistanceMatrix::new(vec![vec![1.0]]).is_err());
        assert!(DistanceMatrix::new(vec![vec![0.0, 1.0]]).is_err());
    }

    #[test]
    fn validate_catches_defects() {
        let missing = FilteredComplex::new([(vec![0], 0.0), (vec![0, 1], 1.0)]).unwrap();
        assert!(!missing.validate());
        let early =
            FilteredComplex::new([(vec![0], 0.0), (vec![1], 2.0), (vec![0, 1], 1.0)]).unwrap();
        assert!(!early.validate());
        assert!(FilteredComplex::new([(vec![0], 0.0), (vec![0], 1.0)]).is_err());
    }

    #[test]
    fn storage_order() {
        let k = FilteredComplex::new([
            (vec![0, 1], 1.0),
            (vec![1], 0.0),
            (vec![0], 0.0),
            (vec![2], 1.0),
        ])
        .unwrap();
        let order: Vec<&[u32]> = k.iter().map(|(_, s, _)| s.vertices()).collect();
        assert_eq!(order, vec![&[0][..], &[1], &[2], &[0, 1]]);
    }
}
