//! Ongoing time intervals and the temporal predicates on them.
//!
//! An ongoing time interval `[t_s, t_e)` has ongoing time points as its
//! bounds. Binding both bounds at a reference time yields a fixed interval,
//! which may be empty at some reference times and non-empty at others
//! ("partially empty"), so every predicate carries explicit non-emptiness
//! checks for both operands: it is not enough that an operand is non-empty
//! at *some* reference time, it has to be non-empty at the reference time
//! under test.

use std::fmt;

use crate::boolean::IntervalSet;
use crate::point::OngoingTimePoint;
use crate::tick::Tick;

/// A fixed closed-open interval, the result of binding an ongoing one.
///
/// All empty intervals denote the same (empty) set of time points and
/// compare equal regardless of their raw bounds; `Display` keeps the raw
/// bounds.
#[derive(Clone, Copy)]
pub struct FixedInterval {
    pub start: Tick,
    pub end: Tick,
}

impl FixedInterval {
    pub fn new(start: Tick, end: Tick) -> Self {
        FixedInterval { start, end }
    }

    pub fn is_empty(self) -> bool {
        self.start >= self.end
    }

    /// Equality key: `None` for every empty interval.
    fn key(self) -> Option<(Tick, Tick)> {
        if self.is_empty() {
            None
        } else {
            Some((self.start, self.end))
        }
    }
}

impl PartialEq for FixedInterval {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for FixedInterval {}

impl PartialOrd for FixedInterval {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FixedInterval {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

impl std::hash::Hash for FixedInterval {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

impl fmt::Display for FixedInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{})", self.start, self.end)
    }
}

impl fmt::Debug for FixedInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An ongoing time interval `[start, end)` over ongoing time points.
///
/// ```
/// use ongoing::{IntervalSet, OngoingInterval, OngoingTimePoint, Tick};
///
/// // Open since tick 17, still open: [17, now).
/// let bug = OngoingInterval::new(
///     OngoingTimePoint::fixed(Tick::new(17)),
///     OngoingTimePoint::now(),
/// );
/// // Empty until the reference time passes the start...
/// assert!(bug.bind(Tick::new(16)).is_empty());
/// // ...and non-empty exactly from reference time 18 on.
/// assert_eq!(bug.nonempty(), IntervalSet::after(Tick::new(18)));
/// ```
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct OngoingInterval {
    start: OngoingTimePoint,
    end: OngoingTimePoint,
}

impl OngoingInterval {
    /// There is no static emptiness constraint: intervals may be partially
    /// or even always empty.
    pub fn new(start: OngoingTimePoint, end: OngoingTimePoint) -> Self {
        OngoingInterval { start, end }
    }

    pub fn fixed(start: Tick, end: Tick) -> Self {
        OngoingInterval {
            start: OngoingTimePoint::fixed(start),
            end: OngoingTimePoint::fixed(end),
        }
    }

    pub fn start(self) -> OngoingTimePoint {
        self.start
    }

    pub fn end(self) -> OngoingTimePoint {
        self.end
    }

    /// Instantiates both bounds at `rt`.
    pub fn bind(self, rt: Tick) -> FixedInterval {
        FixedInterval::new(self.start.bind(rt), self.end.bind(rt))
    }

    /// `[max(starts), min(ends))`: binds to the intersection of the bound
    /// operands at every reference time.
    pub fn intersect(self, other: Self) -> Self {
        OngoingInterval {
            start: self.start.max(other.start),
            end: self.end.min(other.end),
        }
    }

    /// The reference times at which the interval binds to something
    /// non-empty: `start < end`.
    pub fn nonempty(self) -> IntervalSet {
        self.start.less_than(self.end)
    }

    fn both_nonempty(self, other: Self) -> IntervalSet {
        self.nonempty().and(&other.nonempty())
    }

    /// The usual overlap check `t_s < t̃_e ∧ t̃_s < t_e`, plus both
    /// non-emptiness checks.
    pub fn overlaps(self, other: Self) -> IntervalSet {
        self.start
            .less_than(other.end)
            .and(&other.start.less_than(self.end))
            .and(&self.both_nonempty(other))
    }

    /// Ends at or before the other starts: `t_e ≤ t̃_s`, plus both
    /// non-emptiness checks.
    pub fn before(self, other: Self) -> IntervalSet {
        self.end
            .less_equal(other.start)
            .and(&self.both_nonempty(other))
    }

    /// Ends exactly where the other starts.
    pub fn meets(self, other: Self) -> IntervalSet {
        self.end
            .equals(other.start)
            .and(&self.both_nonempty(other))
    }

    /// Same start, strictly shorter.
    pub fn starts(self, other: Self) -> IntervalSet {
        self.start
            .equals(other.start)
            .and(&self.end.less_than(other.end))
            .and(&self.both_nonempty(other))
    }

    /// Strictly inside the other.
    pub fn during(self, other: Self) -> IntervalSet {
        other
            .start
            .less_than(self.start)
            .and(&self.end.less_than(other.end))
            .and(&self.both_nonempty(other))
    }

    /// Same end, strictly later start.
    pub fn finishes(self, other: Self) -> IntervalSet {
        self.end
            .equals(other.end)
            .and(&other.start.less_than(self.start))
            .and(&self.both_nonempty(other))
    }

    /// Both bounds equal (and both operands non-empty).
    pub fn equals(self, other: Self) -> IntervalSet {
        self.start
            .equals(other.start)
            .and(&self.end.equals(other.end))
            .and(&self.both_nonempty(other))
    }
}

impl fmt::Display for OngoingInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{})", self.start, self.end)
    }
}

impl fmt::Debug for OngoingInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
