//! Graded differentials: a square matrix whose rows and columns are cells
//! carrying a grade and a dimension, stored in a fixed linear order.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::complex::{FilteredComplex, Grade};
use crate::error::{Error, Result};
use crate::field::Modulus;
use crate::sparse::{IndexedMatrix, Label};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cell {
    pub label: Label,
    pub grade: Grade,
    pub dim: isize,
}

/// Column-sparse square matrix indexed by position in the linear order.
/// Columns hold `(row position, value)` sorted by position, no zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedMatrix {
    modulus: Modulus,
    cells: Vec<Cell>,
    columns: Vec<Vec<(u32, u32)>>,
}

impl GradedMatrix {
    /// The total boundary operator of a complex, in the complex's order.
    /// With `reduced`, an empty cell of dimension -1 is prepended.
    pub fn from_complex(k: &FilteredComplex, p: Modulus, reduced: bool) -> Result<Self> {
        let shift = reduced as usize;
        let mut cells = Vec::with_capacity(k.len() + shift);
        if reduced {
            let g = k
                .iter()
                .filter(|(_, s, _)| s.dim() == 0)
                .map(|(_, _, g)| g)
                .min()
                .unwrap_or(Grade(0.0));
            cells.push(Cell {
                label: k.empty_label(),
                grade: g,
                dim: -1,
            });
        }
        let mut columns = vec![Vec::new(); shift];
        for (l, s, g) in k.iter() {
            cells.push(Cell {
                label: l,
                grade: g,
                dim: s.dim(),
            });
            let col = if s.dim() == 0 && !reduced {
                Vec::new()
            } else {
                k.boundary_of(l, p)?
                    .into_iter()
                    .map(|(r, v)| {
                        let pos = if r == k.empty_label() { 0 } else { r + shift };
                        (pos as u32, v)
                    })
                    .collect::<Vec<_>>()
            };
            let mut col = col;
            col.sort_unstable();
            columns.push(col);
        }
        Ok(GradedMatrix {
            modulus: p,
            cells,
            columns,
        })
    }

    /// Orders `cells` by `(grade, dim, label)`. Every row and column label
    /// of `a` must name a cell.
    pub fn from_matrix(a: &IndexedMatrix, cells: impl IntoIterator<Item = Cell>) -> Result<Self> {
        let mut cells: Vec<Cell> = cells.into_iter().collect();
        cells.sort_by(|x, y| {
            x.grade
                .cmp(&y.grade)
                .then(x.dim.cmp(&y.dim))
                .then(x.label.cmp(&y.label))
        });
        let pos: BTreeMap<Label, u32> = cells
            .iter()
            .enumerate()
            .map(|(i, c)| (c.label, i as u32))
            .collect();
        if pos.len() != cells.len() {
            return Err(Error::LabelMismatch("duplicate cell label".into()));
        }
        for l in a.rows().iter().chain(a.cols()) {
            if !pos.contains_key(l) {
                return Err(Error::UnknownLabel(*l));
            }
        }
        let mut columns = vec![Vec::new(); cells.len()];
        for (c, col) in a.columns() {
            let mut v: Vec<(u32, u32)> = col.iter().map(|&(r, x)| (pos[&r], x)).collect();
            v.sort_unstable();
            columns[pos[&c] as usize] = v;
        }
        Ok(GradedMatrix {
            modulus: a.modulus(),
            cells,
            columns,
        })
    }

    pub(crate) fn from_parts(
        modulus: Modulus,
        cells: Vec<Cell>,
        columns: Vec<Vec<(u32, u32)>>,
    ) -> Self {
        debug_assert_eq!(cells.len(), columns.len());
        GradedMatrix {
            modulus,
            cells,
            columns,
        }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, pos: usize) -> &Cell {
        &self.cells[pos]
    }

    pub fn column(&self, pos: usize) -> &[(u32, u32)] {
        &self.columns[pos]
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn max_dim(&self) -> Option<isize> {
        self.cells.iter().map(|c| c.dim).max()
    }

    pub fn positions(&self) -> BTreeMap<Label, usize> {
        self.cells
            .iter()
            .enumerate()
            .map(|(i, c)| (c.label, i))
            .collect()
    }

    pub fn to_indexed(&self) -> IndexedMatrix {
        let labels: Vec<Label> = self.cells.iter().map(|c| c.label).collect();
        let entries = self.columns.iter().enumerate().flat_map(|(j, col)| {
            col.iter()
                .map(move |&(i, v)| (self.cells[i as usize].label, self.cells[j].label, v as i64))
        });
        IndexedMatrix::from_entries(labels.clone(), labels, self.modulus, entries)
            .expect("labels are cells")
    }

    /// Every entry lies strictly above the diagonal, i.e. rows precede
    /// columns in the linear order.
    pub fn check_monotone(&self) -> Result<()> {
        for (j, col) in self.columns.iter().enumerate() {
            if let Some(&(i, _)) = col.last() {
                if i as usize >= j {
                    return Err(Error::NonMonotone(
                        self.cells[i as usize].label,
                        self.cells[j].label,
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn check_square_zero(&self) -> Result<()> {
        let m = self.modulus;
        let mut acc = vec![0u32; self.len()];
        let mut touched = Vec::new();
        for col in &self.columns {
            for &(k, a) in col {
                for &(i, b) in &self.columns[k as usize] {
                    let i = i as usize;
                    if acc[i] == 0 {
                        touched.push(i);
                    }
                    acc[i] = m.add(acc[i], m.mul(a, b));
                }
            }
            let nonzero = touched.iter().any(|&i| acc[i] != 0);
            for &i in &touched {
                acc[i] = 0;
            }
            touched.clear();
            if nonzero {
                return Err(Error::NonZeroSquare);
            }
        }
        Ok(())
    }

    /// Keeps the cells at the given positions (ascending), dropping all
    /// entries in other rows.
    pub fn restrict(&self, keep: &[usize]) -> GradedMatrix {
        let mut new_pos = vec![u32::MAX; self.len()];
        for (n, &o) in keep.iter().enumerate() {
            new_pos[o] = n as u32;
        }
        let columns = keep
            .iter()
            .map(|&o| {
                self.columns[o]
                    .iter()
                    .filter_map(|&(i, v)| {
                        let n = new_pos[i as usize];
                        (n != u32::MAX).then_some((n, v))
                    })
                    .collect()
            })
            .collect();
        GradedMatrix {
            modulus: self.modulus,
            cells: keep.iter().map(|&o| self.cells[o]).collect(),
            columns,
        }
    }

    /// Drops cells of dimension above `max_dim`.
    pub fn truncate(&self, max_dim: isize) -> GradedMatrix {
        let keep: Vec<usize> = (0..self.len())
            .filter(|&i| self.cells[i].dim <= max_dim)
            .collect();
        self.restrict(&keep)
    }

    /// Randomly permutes cells within each run of equal `(grade, dim)`.
    /// Such runs contain no face relations, so the result is another
    /// admissible refinement of the same filtration.
    pub fn shuffle_ties(&self, seed: u64) -> GradedMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut order: Vec<usize> = (0..self.len()).collect();
        let mut start = 0;
        while start < order.len() {
            let key = (self.cells[start].grade, self.cells[start].dim);
            let mut end = start + 1;
            while end < order.len() && (self.cells[end].grade, self.cells[end].dim) == key {
                end += 1;
            }
            order[start..end].shuffle(&mut rng);
            start = end;
        }
        self.permute(&order)
    }

    /// `order[new] = old`. Caller guarantees the result is still a valid
    /// refinement.
    pub(crate) fn permute(&self, order: &[usize]) -> GradedMatrix {
        let mut new_pos = vec![0u32; self.len()];
        for (n, &o) in order.iter().enumerate() {
            new_pos[o] = n as u32;
        }
        let columns = order
            .iter()
            .map(|&o| {
                let mut c: Vec<(u32, u32)> = self.columns[o]
                    .iter()
                    .map(|&(i, v)| (new_pos[i as usize], v))
                    .collect();
                c.sort_unstable();
                c
            })
            .collect();
        GradedMatrix {
            modulus: self.modulus,
            cells: order.iter().map(|&o| self.cells[o]).collect(),
            columns,
        }
    }
}
