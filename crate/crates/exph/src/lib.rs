//! File formats and the command-line front end for `exph-core`.

pub mod cli;
pub mod formats;
