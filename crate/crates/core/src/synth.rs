//! Seeded synthetic datasets for the benchmark harness.
//!
//! A generated relation has schema `id:int, key:int, vt:ointerval` over a
//! tick history `[0, span)`. A configurable share of the rows carries
//! ongoing intervals, either expanding `[a, now)` or shrinking `[now, b)`;
//! the remaining rows carry fixed intervals. The ongoing anchors can be
//! confined to one of `segments` equal slices of the history, mirroring
//! experiments that move the ongoing rows around the timeline.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::interval::OngoingInterval;
use crate::point::OngoingTimePoint;
use crate::relation::{AttrType, AttributeValue, Relation, Schema};
use crate::tick::Tick;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum IntervalShape {
    /// `[a, now)`: bound duration grows with the reference time.
    Expanding,
    /// `[now, b)`: bound duration shrinks as the reference time advances.
    Shrinking,
}

impl std::str::FromStr for IntervalShape {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "expanding" => Ok(IntervalShape::Expanding),
            "shrinking" => Ok(IntervalShape::Shrinking),
            other => Err(format!("unknown shape '{other}', expected expanding|shrinking")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct DatasetSpec {
    pub rows: usize,
    /// Percentage of rows with an ongoing interval, 0..=100.
    pub pct_ongoing: f64,
    pub shape: IntervalShape,
    /// History length in ticks; all anchors fall in `[0, span)`.
    pub span: i64,
    pub seed: u64,
    /// Number of equal history slices for anchor placement.
    pub segments: u32,
    /// Confine ongoing anchors (start points for expanding, end points for
    /// shrinking) to this segment; `None` spreads them over the history.
    pub ongoing_segment: Option<u32>,
}

impl DatasetSpec {
    pub fn new(rows: usize, pct_ongoing: f64, shape: IntervalShape, span: i64, seed: u64) -> Self {
        DatasetSpec {
            rows,
            pct_ongoing,
            shape,
            span,
            seed,
            segments: 5,
            ongoing_segment: None,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SynthError {
    #[error("pct_ongoing must be within 0..=100")]
    BadPercentage,
    #[error("span must be at least 2 ticks")]
    BadSpan,
    #[error("segments must be at least 1")]
    BadSegments,
    #[error("ongoing segment {segment} does not exist with {segments} segments")]
    BadSegment { segment: u32, segments: u32 },
}

/// Generates a relation; identical specs produce identical relations.
pub fn generate(spec: &DatasetSpec) -> Result<Relation, SynthError> {
    if !(0.0..=100.0).contains(&spec.pct_ongoing) {
        return Err(SynthError::BadPercentage);
    }
    if spec.span < 2 {
        return Err(SynthError::BadSpan);
    }
    if spec.segments == 0 {
        return Err(SynthError::BadSegments);
    }
    if let Some(segment) = spec.ongoing_segment {
        if segment >= spec.segments {
            return Err(SynthError::BadSegment {
                segment,
                segments: spec.segments,
            });
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let ongoing_rows = ((spec.rows as f64) * spec.pct_ongoing / 100.0).round() as usize;
    let key_space = (spec.rows / 10).max(1) as i64;
    let max_len = (spec.span / 5).max(1);

    let anchor_range = match spec.ongoing_segment {
        Some(segment) => {
            let width = spec.span / i64::from(spec.segments);
            let lo = i64::from(segment) * width;
            let hi = if segment + 1 == spec.segments {
                spec.span
            } else {
                lo + width
            };
            lo..hi.max(lo + 1)
        }
        None => 0..spec.span,
    };

    let mut relation = Relation::new(Schema::bare(&[
        ("id", AttrType::Int),
        ("key", AttrType::Int),
        ("vt", AttrType::Interval),
    ]));
    for i in 0..spec.rows {
        // Even spread: row i is ongoing iff the scaled counter steps here.
        let is_ongoing =
            (i as u64 + 1) * ongoing_rows as u64 / spec.rows.max(1) as u64
                > i as u64 * ongoing_rows as u64 / spec.rows.max(1) as u64;
        let key = rng.gen_range(0..key_space);
        let vt = if is_ongoing {
            let anchor = Tick::new(rng.gen_range(anchor_range.clone()));
            match spec.shape {
                IntervalShape::Expanding => OngoingInterval::new(
                    OngoingTimePoint::fixed(anchor),
                    OngoingTimePoint::now(),
                ),
                IntervalShape::Shrinking => OngoingInterval::new(
                    OngoingTimePoint::now(),
                    OngoingTimePoint::fixed(anchor),
                ),
            }
        } else {
            let start = rng.gen_range(0..spec.span - 1);
            let end = rng.gen_range(start + 1..=(start + max_len).min(spec.span));
            OngoingInterval::fixed(Tick::new(start), Tick::new(end))
        };
        relation
            .push_base(vec![
                AttributeValue::Int(i as i64),
                AttributeValue::Int(key),
                AttributeValue::Interval(vt),
            ])
            .expect("generated tuple conforms");
    }
    Ok(relation)
}

/// Counts the rows whose interval is ongoing (either bound non-fixed).
pub fn ongoing_row_count(relation: &Relation) -> usize {
    relation
        .tuples()
        .iter()
        .filter(|t| {
            t.values.iter().any(|v| match v {
                AttributeValue::Interval(i) => !(i.start().is_fixed() && i.end().is_fixed()),
                AttributeValue::Point(p) => !p.is_fixed(),
                _ => false,
            })
        })
        .count()
}
