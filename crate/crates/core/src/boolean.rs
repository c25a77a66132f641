//! Ongoing booleans: truth values that depend on the reference time.
//!
//! An ongoing boolean is represented by the set of reference times at which
//! it is *true*, stored as a canonical [`IntervalSet`]: non-empty, sorted,
//! maximal, non-overlapping closed-open tick intervals. The false-set is
//! implicit (the complement), so negation is just complement over the whole
//! axis. The same representation doubles as the reference-time (`RT`)
//! attribute of tuples in ongoing relations.
//!
//! The connectives run as sweep lines over the two interval lists: inputs
//! stay sorted, each interval is visited at most once, and the output is
//! canonical by construction.

use std::fmt;
use std::ops::{BitAnd, BitOr, Not};

use crate::tick::Tick;

/// A closed-open interval `[start, end)` of fixed ticks.
///
/// Sentinels are allowed as bounds; `(-inf, x)` is stored as `[-inf, x)`,
/// so the full axis is `[-inf, +inf)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TickInterval {
    pub start: Tick,
    pub end: Tick,
}

impl TickInterval {
    pub fn new(start: Tick, end: Tick) -> Self {
        TickInterval { start, end }
    }

    pub fn is_empty(self) -> bool {
        self.start >= self.end
    }

    pub fn contains(self, rt: Tick) -> bool {
        self.start <= rt && rt < self.end
    }
}

impl fmt::Display for TickInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{})", self.start, self.end)
    }
}

impl fmt::Debug for TickInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A canonical set of tick intervals: the true-set of an ongoing boolean,
/// and the representation of a tuple's reference time.
///
/// Invariants (enforced by every constructor and operation):
/// - every interval is non-empty (`start < end`),
/// - intervals are sorted ascending by start,
/// - consecutive intervals neither overlap nor touch (maximality).
///
/// ```
/// use ongoing::{IntervalSet, Tick};
///
/// let open = IntervalSet::new([(Tick::new(1), Tick::new(3)), (Tick::new(3), Tick::new(5))]);
/// // Touching pieces merge into one maximal interval:
/// assert_eq!(open.cardinality(), 1);
/// assert!(open.bind(Tick::new(4)));
/// assert!(!open.bind(Tick::new(5)));
/// ```
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntervalSet {
    intervals: Vec<TickInterval>,
}

impl IntervalSet {
    /// The ongoing boolean that is false everywhere.
    pub fn empty() -> Self {
        IntervalSet { intervals: Vec::new() }
    }

    /// The ongoing boolean that is true everywhere: `{(-inf, +inf)}`.
    pub fn full() -> Self {
        IntervalSet {
            intervals: vec![TickInterval::new(Tick::NEG_INF, Tick::POS_INF)],
        }
    }

    /// Lifts a plain boolean: `true ↦ full`, `false ↦ empty`.
    pub fn lift(value: bool) -> Self {
        if value {
            IntervalSet::full()
        } else {
            IntervalSet::empty()
        }
    }

    /// True exactly while `rt < end`.
    pub fn before(end: Tick) -> Self {
        IntervalSet::new([(Tick::NEG_INF, end)])
    }

    /// True exactly from `start` on.
    pub fn after(start: Tick) -> Self {
        IntervalSet::new([(start, Tick::POS_INF)])
    }

    /// Canonicalizing constructor: drops empty intervals, sorts, and merges
    /// overlapping or touching ones.
    pub fn new(intervals: impl IntoIterator<Item = (Tick, Tick)>) -> Self {
        let mut items: Vec<TickInterval> = intervals
            .into_iter()
            .map(|(s, e)| TickInterval::new(s, e))
            .filter(|iv| !iv.is_empty())
            .collect();
        items.sort();
        let mut merged: Vec<TickInterval> = Vec::with_capacity(items.len());
        for iv in items {
            match merged.last_mut() {
                Some(last) if iv.start <= last.end => last.end = last.end.max(iv.end),
                _ => merged.push(iv),
            }
        }
        IntervalSet { intervals: merged }
    }

    pub fn intervals(&self) -> &[TickInterval] {
        &self.intervals
    }

    /// Number of stored intervals.
    pub fn cardinality(&self) -> usize {
        self.intervals.len()
    }

    /// False at every reference time?
    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Instantiates the boolean at reference time `rt`.
    pub fn bind(&self, rt: Tick) -> bool {
        // Sets are tiny (typically one interval); a scan beats a search.
        self.intervals.iter().any(|iv| iv.contains(rt))
    }

    /// Pointwise AND via the two-cursor sweep.
    ///
    /// On overlap it emits `[max(starts), min(ends))` and advances the
    /// cursor with the smaller end, so each input interval is visited once.
    pub fn and(&self, other: &IntervalSet) -> IntervalSet {
        self.and_counting(other).0
    }

    /// [`Self::and`] plus the total number of cursor advances, so tests can
    /// pin the `≤ |self| + |other|` sweep bound.
    pub fn and_counting(&self, other: &IntervalSet) -> (IntervalSet, usize) {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        let mut advances = 0;
        while i < self.intervals.len() && j < other.intervals.len() {
            let (x, y) = (self.intervals[i], other.intervals[j]);
            advances += 1;
            if x.end <= y.start {
                i += 1;
            } else if y.end <= x.start {
                j += 1;
            } else {
                out.push(TickInterval::new(x.start.max(y.start), x.end.min(y.end)));
                if x.end < y.end {
                    i += 1;
                } else {
                    j += 1;
                }
            }
        }
        // Intersections of canonical inputs are already canonical.
        (IntervalSet { intervals: out }, advances)
    }

    /// Pointwise OR: a sweep merge that coalesces overlapping and touching
    /// intervals.
    pub fn or(&self, other: &IntervalSet) -> IntervalSet {
        let mut out: Vec<TickInterval> = Vec::new();
        let (mut i, mut j) = (0, 0);
        let push = |iv: TickInterval, out: &mut Vec<TickInterval>| match out.last_mut() {
            Some(last) if iv.start <= last.end => last.end = last.end.max(iv.end),
            _ => out.push(iv),
        };
        while i < self.intervals.len() || j < other.intervals.len() {
            let take_left = match (self.intervals.get(i), other.intervals.get(j)) {
                (Some(x), Some(y)) => x.start <= y.start,
                (Some(_), None) => true,
                _ => false,
            };
            if take_left {
                push(self.intervals[i], &mut out);
                i += 1;
            } else {
                push(other.intervals[j], &mut out);
                j += 1;
            }
        }
        IntervalSet { intervals: out }
    }

    /// Pointwise NOT: the complement over the whole axis `[-inf, +inf)`.
    pub fn negate(&self) -> IntervalSet {
        let mut out = Vec::with_capacity(self.intervals.len() + 1);
        let mut cursor = Tick::NEG_INF;
        for iv in &self.intervals {
            if cursor < iv.start {
                out.push(TickInterval::new(cursor, iv.start));
            }
            cursor = iv.end;
        }
        if cursor < Tick::POS_INF {
            out.push(TickInterval::new(cursor, Tick::POS_INF));
        }
        IntervalSet { intervals: out }
    }

    /// Checks the canonical-form invariants; used by tests to assert closure.
    pub fn is_canonical(&self) -> bool {
        self.intervals.iter().all(|iv| iv.start < iv.end)
            && self
                .intervals
                .windows(2)
                .all(|w| w[0].end < w[1].start)
    }

    /// Finite bounds appearing in the set, for breakpoint derivation.
    pub(crate) fn collect_finite_ticks(&self, out: &mut Vec<i64>) {
        for iv in &self.intervals {
            for t in [iv.start, iv.end] {
                if t.is_finite() {
                    out.push(t.raw());
                }
            }
        }
    }
}

impl BitAnd for &IntervalSet {
    type Output = IntervalSet;
    fn bitand(self, rhs: Self) -> IntervalSet {
        self.and(rhs)
    }
}

impl BitOr for &IntervalSet {
    type Output = IntervalSet;
    fn bitor(self, rhs: Self) -> IntervalSet {
        self.or(rhs)
    }
}

impl Not for &IntervalSet {
    type Output = IntervalSet;
    fn not(self) -> IntervalSet {
        self.negate()
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, iv) in self.intervals.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{iv}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
