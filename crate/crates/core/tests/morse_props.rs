mod common;

use std::collections::BTreeSet;

use exph_core::morse::{
    self, acyclic_on, induced_relations, is_acyclic, morse_boundary_paths, morse_boundary_schur,
    obvious_pairs_graded, reduce_graded,
};
use exph_core::{FilteredComplex, GradedMatrix, Modulus};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn graded() -> impl Strategy<Value = (GradedMatrix, u64)> {
    (
        3u32..7,
        1usize..4,
        prop::sample::select(vec![2u64, 3, 7]),
        any::<bool>(),
        any::<u64>(),
    )
        .prop_map(|(v, d, p, reduced, seed)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let k = common::random_complex(&mut rng, v, d, 20, 3);
            (
                GradedMatrix::from_complex(&k, Modulus::new(p).unwrap(), reduced).unwrap(),
                seed,
            )
        })
}

proptest! {
    #[test]
    fn both_formulas_agree((d, seed) in graded()) {
        let m = common::random_acyclic_matching(&mut ChaCha8Rng::seed_from_u64(seed ^ 1), &d);
        let schur = morse_boundary_schur(&d, &m).unwrap();
        let paths = morse_boundary_paths(&d, &m).unwrap();
        prop_assert_eq!(schur.to_indexed(), paths.to_indexed());
        prop_assert_eq!(schur.len(), d.len() - 2 * m.len());
        schur.check_square_zero().unwrap();
        prop_assert_eq!(common::betti_of(&schur), common::betti_of(&d));
    }

    #[test]
    fn induced_relations_are_partial_orders((d, seed) in graded()) {
        let m = common::random_acyclic_matching(&mut ChaCha8Rng::seed_from_u64(seed ^ 2), &d);
        let (on_rows, on_cols) = induced_relations(&d.to_indexed(), &m).unwrap();
        prop_assert!(on_rows.is_antisymmetric());
        prop_assert!(on_cols.is_antisymmetric());
    }

    #[test]
    fn apparent_pairs_are_acyclic_and_flat((d, _) in graded()) {
        let m = obvious_pairs_graded(&d);
        let a = d.to_indexed();
        m.validate(&a).unwrap();
        prop_assert!(is_acyclic(&a, &m).unwrap());
        let pos = d.positions();
        for (s, t) in m.pairs() {
            prop_assert_eq!(d.cell(pos[&s]).grade, d.cell(pos[&t]).grade);
            prop_assert_eq!(d.cell(pos[&s]).dim + 1, d.cell(pos[&t]).dim);
        }
    }

    #[test]
    fn reduction_keeps_homology((d, _) in graded()) {
        let top = d.max_dim().unwrap();
        let r = reduce_graded(&d, top).unwrap();
        r.check_monotone().unwrap();
        r.check_square_zero().unwrap();
        prop_assert!(r.len() <= d.len());
        prop_assert_eq!(common::betti_of(&r), common::betti_of(&d));
    }

    #[test]
    fn matchings_acyclic_on_a_product_support((d, seed) in graded()) {
        // a matching acyclic for a square-zero D stays acyclic on the support
        // of D + D·E, for any E on the matched columns
        let m = common::random_acyclic_matching(&mut ChaCha8Rng::seed_from_u64(seed ^ 3), &d);
        let a = d.to_indexed();
        let mut support: BTreeSet<(usize, usize)> = a.entries().map(|(r, c, _)| (r, c)).collect();
        prop_assert!(acyclic_on(&support, &m));
        for (s, t) in m.pairs() {
            support.insert((s, t));
        }
        prop_assert!(acyclic_on(&support, &m));
    }
}

#[test]
fn contractible_collapses_to_a_point() {
    let tet: Vec<Vec<u32>> = (1u32..16)
        .map(|mask| (0..4).filter(|i| mask >> i & 1 == 1).collect())
        .collect();
    let k = FilteredComplex::new(tet.into_iter().map(|s| (s, 0.0))).unwrap();
    let r = morse::reduce(&k, Modulus::TWO, 3, false).unwrap();
    assert_eq!(r.len(), 1);
    assert_eq!(r.cell(0).dim, 0);
    let r = morse::reduce(&k, Modulus::new(5).unwrap(), 3, true).unwrap();
    assert!(r.is_empty());
}

#[test]
fn single_edge_collapses() {
    let k = FilteredComplex::new([(vec![0], 0.0), (vec![1], 0.0), (vec![0, 1], 0.0)]).unwrap();
    let d = GradedMatrix::from_complex(&k, Modulus::TWO, false).unwrap();
    let m = exph_core::PartialMatching::new([(0, 2)]).unwrap();
    assert!(is_acyclic(&d.to_indexed(), &m).unwrap());
    let r = morse_boundary_schur(&d, &m).unwrap();
    assert_eq!(r.len(), 1);
}

#[test]
fn cyclic_matching_is_rejected() {
    // each vertex of a hollow triangle matched to a different edge
    let k = FilteredComplex::new([
        (vec![0], 0.0),
        (vec![1], 0.0),
        (vec![2], 0.0),
        (vec![0, 1], 0.0),
        (vec![0, 2], 0.0),
        (vec![1, 2], 0.0),
    ])
    .unwrap();
    let find = |v: &[u32]| k.find(&exph_core::Simplex::new(v.iter().copied())).unwrap();
    let pairs = [
        (find(&[0]), find(&[0, 1])),
        (find(&[1]), find(&[1, 2])),
        (find(&[2]), find(&[0, 2])),
    ];
    let m = exph_core::PartialMatching::new(pairs).unwrap();
    // the edges of a cycle are dependent, so the pivot block is singular
    for p in [2, 3, 7] {
        let d = GradedMatrix::from_complex(&k, Modulus::new(p).unwrap(), false).unwrap();
        assert!(is_acyclic(&d.to_indexed(), &m).is_err());
    }
    let a =
        exph_core::IndexedMatrix::from_dense(Modulus::new(3).unwrap(), &[vec![1, 1], vec![1, 2]]);
    let m = exph_core::PartialMatching::new([(0, 0), (1, 1)]).unwrap();
    assert_eq!(is_acyclic(&a, &m), Ok(false));
}
