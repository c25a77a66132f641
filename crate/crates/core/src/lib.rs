//! An in-memory temporal query engine for relations with *ongoing* time
//! points — generalizations of `now` that stay uninstantiated through query
//! processing, so results remain valid as time passes.
//!
//! The crate is organized around a small core:
//!
//! - [`Tick`], [`OngoingTimePoint`]: fixed and ongoing time points with
//!   `bind`, `min`, `max` and per-reference-time comparisons.
//! - [`IntervalSet`]: ongoing booleans / reference-time sets in canonical
//!   form, with sweep-line connectives.
//! - [`OngoingInterval`]: ongoing time intervals and the temporal predicates
//!   on them (`overlaps`, `before`, `meets`, ...).
//! - [`relation`] and [`algebra`]: ongoing relations carrying a
//!   reference-time attribute, and the relational operators that restrict it.
//! - [`oracle`]: a bind-then-evaluate reference evaluator and a differential
//!   checker for `∀rt: bind(Q(D), rt) ≡ Q(bind(D, rt))`.
//! - [`parse`]: the textual query language.
//! - [`synth`] and [`bench`]: synthetic datasets and the re-evaluation
//!   benchmark harness.
//!
//! The mdBook under `book/` walks through the concepts chapter by chapter;
//! its code snippets are compiled as doc-tests.

pub mod algebra;
pub mod bench;
pub mod boolean;
pub mod calendar;
pub mod csvio;
pub mod fixed;
pub mod interval;
pub mod oracle;
pub mod parse;
pub mod point;
pub mod relation;
pub mod synth;
pub mod tick;

pub use boolean::{IntervalSet, TickInterval};
pub use interval::{FixedInterval, OngoingInterval};
pub use point::OngoingTimePoint;
pub use relation::{AttrType, AttributeValue, Catalog, Relation, Schema, Tuple};
pub use tick::Tick;
