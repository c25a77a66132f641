//! Doc-test shim for the book under `book/`.
//!
//! mdBook cannot run examples that depend on a crate, so every chapter is
//! included here as module documentation and `cargo test -p ongoing-guide`
//! compiles and runs each of its Rust snippets. One module per chapter
//! keeps failures attributable.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/time-points.md")]
pub mod time_points {}

#[doc = include_str!("../../../book/src/ongoing-booleans.md")]
pub mod ongoing_booleans {}

#[doc = include_str!("../../../book/src/time-intervals.md")]
pub mod time_intervals {}

#[doc = include_str!("../../../book/src/relations-and-algebra.md")]
pub mod relations_and_algebra {}

#[doc = include_str!("../../../book/src/query-language.md")]
pub mod query_language {}

#[doc = include_str!("../../../book/src/differential-checking.md")]
pub mod differential_checking {}

#[doc = include_str!("../../../book/src/datasets-and-benchmarks.md")]
pub mod datasets_and_benchmarks {}
