//! Persistence barcodes.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::complex::Grade;

/// Half-open interval `[birth, death)`; essential classes die at `+inf`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Interval {
    pub birth: Grade,
    pub death: Grade,
}

impl Interval {
    pub fn new(birth: Grade, death: Grade) -> Self {
        Interval { birth, death }
    }

    pub fn essential(birth: Grade) -> Self {
        Interval {
            birth,
            death: Grade::INFINITY,
        }
    }

    pub fn is_essential(&self) -> bool {
        self.death.is_infinite()
    }

    pub fn length(&self) -> f64 {
        self.death.value() - self.birth.value()
    }

    pub fn contains(&self, g: Grade) -> bool {
        self.birth <= g && g < self.death
    }
}

/// Intervals per homology dimension, each list sorted. Every dimension in
/// `0..=max_dim` has an entry, possibly empty.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Barcode {
    dims: BTreeMap<usize, Vec<Interval>>,
}

impl Barcode {
    pub fn new(max_dim: Option<usize>) -> Self {
        let mut b = Barcode::default();
        if let Some(m) = max_dim {
            for d in 0..=m {
                b.dims.insert(d, Vec::new());
            }
        }
        b
    }

    pub fn push(&mut self, dim: usize, interval: Interval) {
        let v = self.dims.entry(dim).or_default();
        let at = v.partition_point(|x| x <= &interval);
        v.insert(at, interval);
    }

    pub fn dim(&self, d: usize) -> &[Interval] {
        self.dims.get(&d).map_or(&[], Vec::as_slice)
    }

    pub fn dims(&self) -> impl Iterator<Item = (usize, &[Interval])> {
        self.dims.iter().map(|(&d, v)| (d, v.as_slice()))
    }

    pub fn max_dim(&self) -> Option<usize> {
        self.dims.keys().next_back().copied()
    }

    pub fn len(&self) -> usize {
        self.dims.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Drops dimensions above `max_dim`.
    pub fn truncated(mut self, max_dim: usize) -> Self {
        self.dims.retain(|&d, _| d <= max_dim);
        self
    }

    /// Number of dim-`d` intervals alive at grade `g`.
    pub fn rank_at(&self, d: usize, g: Grade) -> usize {
        self.dim(d).iter().filter(|i| i.contains(g)).count()
    }
}

impl FromIterator<(usize, Interval)> for Barcode {
    fn from_iter<T: IntoIterator<Item = (usize, Interval)>>(iter: T) -> Self {
        let mut b = Barcode::default();
        for (d, i) in iter {
            b.dims.entry(d).or_default().push(i);
        }
        for v in b.dims.values_mut() {
            v.sort_unstable();
        }
        b
    }
}
