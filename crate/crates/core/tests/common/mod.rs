#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use exph_core::morse::{self, PartialMatching};
use exph_core::{oracle, DistanceMatrix, FilteredComplex, GradedMatrix, IndexedMatrix, Modulus};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn euclidean(pts: &[(f64, f64)]) -> DistanceMatrix {
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

pub fn random_cloud(rng: &mut impl Rng, n: usize) -> Vec<(f64, f64)> {
    (0..n).map(|_| (rng.gen(), rng.gen())).collect()
}

/// Random complex: closure of a few random simplices on up to `vertices`
/// vertices, with small integer grades made monotone. At most `cap`
/// simplices.
pub fn random_complex(
    rng: &mut impl Rng,
    vertices: u32,
    max_dim: usize,
    cap: usize,
    levels: u32,
) -> FilteredComplex {
    let mut set: BTreeSet<Vec<u32>> = BTreeSet::new();
    for _ in 0..20 {
        let k = rng.gen_range(1..=max_dim + 1).min(vertices as usize);
        let mut all: Vec<u32> = (0..vertices).collect();
        all.shuffle(rng);
        let mut top: Vec<u32> = all[..k].to_vec();
        top.sort_unstable();
        let mut closure = Vec::new();
        for mask in 1u32..(1 << top.len()) {
            let s: Vec<u32> = (0..top.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| top[i])
                .collect();
            if !set.contains(&s) {
                closure.push(s);
            }
        }
        if set.len() + closure.len() > cap {
            break;
        }
        set.extend(closure);
    }
    let mut grade: BTreeMap<Vec<u32>, u32> = BTreeMap::new();
    let mut by_size: Vec<&Vec<u32>> = set.iter().collect();
    by_size.sort_by_key(|s| s.len());
    for s in by_size {
        let mut g = rng.gen_range(0..levels);
        if s.len() > 1 {
            for k in 0..s.len() {
                let mut f = s.clone();
                f.remove(k);
                g = g.max(grade[&f]);
            }
        }
        grade.insert(s.clone(), g);
    }
    FilteredComplex::new(grade.into_iter().map(|(s, g)| (s, g as f64))).unwrap()
}

/// Greedy random acyclic matching on the support of `d`.
pub fn random_acyclic_matching(rng: &mut impl Rng, d: &GradedMatrix) -> PartialMatching {
    let a = d.to_indexed();
    let mut entries: Vec<(usize, usize)> = a.entries().map(|(r, c, _)| (r, c)).collect();
    entries.shuffle(rng);
    let mut m = PartialMatching::default();
    for (r, c) in entries {
        if m.flat(r).is_some()
            || m.sharp(c).is_some()
            || m.flat(c).is_some()
            || m.sharp(r).is_some()
        {
            continue;
        }
        if rng.gen_bool(0.3) {
            continue;
        }
        let mut trial = m.clone();
        trial.insert(r, c).unwrap();
        if morse::is_acyclic(&a, &trial) == Ok(true) {
            m = trial;
        }
    }
    m
}

pub fn betti_of(d: &GradedMatrix) -> BTreeMap<isize, usize> {
    let cells: BTreeMap<usize, isize> = d.cells().iter().map(|c| (c.label, c.dim)).collect();
    let entries: Vec<(usize, usize, u32)> = d.to_indexed().entries().collect();
    let mut b = oracle::betti_numbers(&cells, &entries, d.modulus().get() as u64);
    b.retain(|_, n| *n > 0);
    b
}

pub fn random_matrix(
    rng: &mut impl Rng,
    p: Modulus,
    rows: usize,
    cols: usize,
    density: f64,
) -> IndexedMatrix {
    let mut entries = Vec::new();
    for i in 0..rows {
        for j in 0..cols {
            if rng.gen_bool(density) {
                entries.push((i, j, rng.gen_range(1..p.get()) as i64));
            }
        }
    }
    IndexedMatrix::from_entries(0..rows, 0..cols, p, entries).unwrap()
}

pub fn to_oracle(a: &IndexedMatrix) -> oracle::DenseMatrix {
    let rows: Vec<Vec<i64>> = a
        .to_dense()
        .into_iter()
        .map(|r| r.into_iter().map(i64::from).collect())
        .collect();
    if rows.is_empty() {
        return oracle::DenseMatrix::zeros(0, a.ncols(), a.modulus().get() as u64);
    }
    oracle::DenseMatrix::from_rows(a.modulus().get() as u64, &rows)
}
