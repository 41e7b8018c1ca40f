//! Command-line tooling around `bgmat-core`: text formats for matroids and
//! biased graphs, plus the self-contained verification suites behind
//! `bgmat verify`.

pub mod format;
pub mod suites;
