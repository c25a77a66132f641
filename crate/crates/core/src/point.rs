//! Ongoing time points: time values that stay correct as time passes.
//!
//! An ongoing time point `⟨a|b⟩` means *not earlier than `a`, but not later
//! than `b`*. At a reference time `rt` it instantiates ("binds") to the fixed
//! tick `min(b, max(a, rt))`. The familiar special cases are all expressible:
//!
//! | shape            | value        | binds to                  |
//! |------------------|--------------|---------------------------|
//! | fixed point `t`  | `⟨t\|t⟩`     | `t` at every `rt`         |
//! | `now`            | `⟨-inf\|+inf⟩` | `rt` at every `rt`      |
//! | growing `from(a)`| `⟨a\|+inf⟩`  | `a`, then `rt` once past  |
//! | limited `until(b)`| `⟨-inf\|b⟩` | `rt`, capped at `b`       |
//!
//! The domain is closed under [`OngoingTimePoint::min`] and
//! [`OngoingTimePoint::max`], and comparisons return an [`IntervalSet`] of
//! the reference times at which they hold, rather than a plain `bool`.

use std::fmt;

use thiserror::Error;

use crate::boolean::IntervalSet;
use crate::tick::Tick;

/// An ongoing time point `⟨a|b⟩` with anchors `a ≤ b`.
///
/// ```
/// use ongoing::{OngoingTimePoint, Tick};
///
/// let deadline = OngoingTimePoint::now().min(OngoingTimePoint::fixed(Tick::new(17)));
/// // min(now, 17) caps the reference time at 17:
/// assert_eq!(deadline, OngoingTimePoint::limited(Tick::new(17)));
/// assert_eq!(deadline.bind(Tick::new(15)), Tick::new(15));
/// assert_eq!(deadline.bind(Tick::new(19)), Tick::new(17));
/// ```
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct OngoingTimePoint {
    lower: Tick,
    upper: Tick,
}

/// Error for anchor pairs with `lower > upper`.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("invalid ongoing time point: lower anchor {lower} exceeds upper anchor {upper}")]
pub struct PointAnchorError {
    pub lower: Tick,
    pub upper: Tick,
}

impl OngoingTimePoint {
    /// Creates `⟨lower|upper⟩`, requiring `lower ≤ upper`.
    pub fn new(lower: Tick, upper: Tick) -> Result<Self, PointAnchorError> {
        if lower <= upper {
            Ok(OngoingTimePoint { lower, upper })
        } else {
            Err(PointAnchorError { lower, upper })
        }
    }

    /// The fixed point `⟨t|t⟩`.
    pub fn fixed(t: Tick) -> Self {
        OngoingTimePoint { lower: t, upper: t }
    }

    /// `now` = `⟨-inf|+inf⟩`: binds to the reference time everywhere.
    pub fn now() -> Self {
        OngoingTimePoint {
            lower: Tick::NEG_INF,
            upper: Tick::POS_INF,
        }
    }

    /// The growing point `⟨a|+inf⟩` (literal syntax `from(a)`).
    pub fn growing(a: Tick) -> Self {
        OngoingTimePoint {
            lower: a,
            upper: Tick::POS_INF,
        }
    }

    /// The limited point `⟨-inf|b⟩` (literal syntax `until(b)`).
    pub fn limited(b: Tick) -> Self {
        OngoingTimePoint {
            lower: Tick::NEG_INF,
            upper: b,
        }
    }

    pub fn lower(self) -> Tick {
        self.lower
    }

    pub fn upper(self) -> Tick {
        self.upper
    }

    /// A fixed point binds to the same tick at every reference time.
    pub fn is_fixed(self) -> bool {
        self.lower == self.upper
    }

    /// Instantiates the point at reference time `rt`.
    ///
    /// Clamps the reference time into `[lower, upper]`:
    /// `a` while `rt ≤ a`, then `rt`, then `b` from `rt ≥ b` on.
    pub fn bind(self, rt: Tick) -> Tick {
        self.upper.min(self.lower.max(rt))
    }

    /// Pointwise minimum: binds to `min` of the bound operands at every `rt`.
    pub fn min(self, other: Self) -> Self {
        OngoingTimePoint {
            lower: self.lower.min(other.lower),
            upper: self.upper.min(other.upper),
        }
    }

    /// Pointwise maximum, dual of [`OngoingTimePoint::min`].
    pub fn max(self, other: Self) -> Self {
        OngoingTimePoint {
            lower: self.lower.max(other.lower),
            upper: self.upper.max(other.upper),
        }
    }

    /// The reference times at which `self` binds strictly below `other`.
    ///
    /// ```
    /// use ongoing::{IntervalSet, OngoingTimePoint, Tick};
    ///
    /// let p = OngoingTimePoint::fixed(Tick::new(17));
    /// let truth = p.less_than(OngoingTimePoint::now());
    /// // 17 < rt exactly from reference time 18 on:
    /// assert_eq!(truth, IntervalSet::after(Tick::new(18)));
    /// ```
    pub fn less_than(self, other: Self) -> IntervalSet {
        self.less_than_counting(other).0
    }

    /// [`Self::less_than`] plus the number of tick comparisons performed.
    ///
    /// The case analysis is a decision tree that needs at most three
    /// comparisons; the count is exposed so tests can pin that bound.
    pub fn less_than_counting(self, other: Self) -> (IntervalSet, u32) {
        let (a, b) = (self.lower, self.upper);
        let (c, d) = (other.lower, other.upper);
        if b < d {
            if b < c {
                // a ≤ b < c ≤ d: below at every reference time.
                (IntervalSet::full(), 2)
            } else if a < c {
                // a < c ≤ b < d: below early and again once rt passes b.
                let set = IntervalSet::new([
                    (Tick::NEG_INF, c),
                    (b.successor(), Tick::POS_INF),
                ]);
                (set, 3)
            } else {
                // c ≤ a ≤ b < d: below exactly from rt = b + 1 on.
                (IntervalSet::after(b.successor()), 3)
            }
        } else if a < c {
            // a < c ≤ d ≤ b: below exactly while rt < c.
            (IntervalSet::before(c), 2)
        } else {
            (IntervalSet::empty(), 2)
        }
    }

    /// `self ≤ other` at each reference time; `¬(other < self)`.
    pub fn less_equal(self, other: Self) -> IntervalSet {
        other.less_than(self).negate()
    }

    pub fn greater_than(self, other: Self) -> IntervalSet {
        other.less_than(self)
    }

    pub fn greater_equal(self, other: Self) -> IntervalSet {
        self.less_than(other).negate()
    }

    /// The reference times at which both points bind to the same tick.
    ///
    /// Note this is per-reference-time equality, not structural equality:
    /// `now.equals(17)` holds during the single chronon `[17, 18)`.
    pub fn equals(self, other: Self) -> IntervalSet {
        self.less_than(other)
            .negate()
            .and(&other.less_than(self).negate())
    }

    pub fn not_equals(self, other: Self) -> IntervalSet {
        self.equals(other).negate()
    }
}

impl fmt::Display for OngoingTimePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.lower, self.upper) {
            (Tick::NEG_INF, Tick::POS_INF) => f.write_str("now"),
            (a, b) if a == b => write!(f, "{a}"),
            (a, Tick::POS_INF) => write!(f, "from({a})"),
            (Tick::NEG_INF, b) => write!(f, "until({b})"),
            (a, b) => write!(f, "point({a},{b})"),
        }
    }
}

impl fmt::Debug for OngoingTimePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
