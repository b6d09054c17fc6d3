//! Exact persistent homology over prime fields.
//!
//! Barcodes are computed by filtration-minimal Jordan decomposition of the
//! boundary operator, after an optional reduction by acyclic matchings
//! whose Morse complex is obtained as a Schur complement. The matroid,
//! elimination and Möbius-inversion machinery the engine rests on is
//! exposed as well, together with an independent brute-force oracle.
//!
//! The crate is `no_std` and needs only `alloc`.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod barcode;
pub mod complex;
pub mod error;
pub mod field;
pub mod graded;
pub(crate) mod linalg;
pub mod matroid;
pub mod morse;
pub mod oracle;
pub mod persistence;
pub mod sparse;

pub use barcode::{Barcode, Interval};
pub use complex::{rips, DistanceMatrix, FilteredComplex, Grade, Simplex};
pub use error::{Error, Result};
pub use field::{Fp, Modulus};
pub use graded::{Cell, GradedMatrix};
pub use morse::PartialMatching;
pub use persistence::{BarcodeOptions, GradedJordanBasis};
pub use sparse::{IndexedMatrix, LUFactorization, Label, PivotRule};
