//! Permutation-group engine for checking order and generator-rank bounds of
//! transitive permutation groups.
//!
//! The crate is `no_std` (it needs `alloc`). File formats, report
//! serialization and the command line live in the `permbound` crate.
//!
//! Points are `0..degree` internally; cycle notation parsing and printing use
//! `1..=degree`. Products compose left to right: `x^(a*b) = (x^a)^b`.

#![no_std]

extern crate alloc;

pub mod bounds;
pub mod chain;
pub mod construct;
pub mod enumerate;
mod error;
pub mod genrank;
pub mod group;
pub mod numeric;
pub mod perm;
pub mod series;
pub mod structure;

pub use error::{Error, Result};
pub use group::Group;
pub use perm::Permutation;
