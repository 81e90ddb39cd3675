//! File formats, reports, catalog persistence and corpus harness on top of
//! `permbound-core`. The `permbound` binary is a thin wrapper over [`cli`].

pub mod catalog;
pub mod cli;
pub mod groupfile;
pub mod harness;
pub mod report;

pub use harness::Harness;
