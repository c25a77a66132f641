//! Fixed-semantics truth table for temporal predicates.
//!
//! This is the reference side of the differential check: the functions here
//! operate on already-instantiated intervals and are deliberately written as
//! plain comparisons, independent of the ongoing implementations in
//! [`crate::interval`]. They are used by [`crate::oracle`] and by the
//! brute-force tests; the ongoing evaluation path never calls them.
//!
//! Every predicate requires both operands to be non-empty at the reference
//! time under test, mirroring the explicit non-empty checks on the ongoing
//! side.

use crate::interval::FixedInterval;

fn both_nonempty(i: FixedInterval, j: FixedInterval) -> bool {
    !i.is_empty() && !j.is_empty()
}

pub fn overlaps(i: FixedInterval, j: FixedInterval) -> bool {
    both_nonempty(i, j) && i.start < j.end && j.start < i.end
}

/// Ends at or before the other starts. The boundary is inclusive: under the
/// closed-open convention `[1,5)` is before `[5,9)`.
pub fn before(i: FixedInterval, j: FixedInterval) -> bool {
    both_nonempty(i, j) && i.end <= j.start
}

pub fn meets(i: FixedInterval, j: FixedInterval) -> bool {
    both_nonempty(i, j) && i.end == j.start
}

pub fn starts(i: FixedInterval, j: FixedInterval) -> bool {
    both_nonempty(i, j) && i.start == j.start && i.end < j.end
}

pub fn during(i: FixedInterval, j: FixedInterval) -> bool {
    both_nonempty(i, j) && j.start < i.start && i.end < j.end
}

pub fn finishes(i: FixedInterval, j: FixedInterval) -> bool {
    both_nonempty(i, j) && i.end == j.end && j.start < i.start
}

pub fn equals(i: FixedInterval, j: FixedInterval) -> bool {
    both_nonempty(i, j) && i.start == j.start && i.end == j.end
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tick::Tick;

    fn iv(s: i64, e: i64) -> FixedInterval {
        FixedInterval::new(Tick::new(s), Tick::new(e))
    }

    // Hand-enumerated tick cases pin the fixed semantics on their own, so
    // the differential check is not comparing an implementation to itself.
    #[test]
    fn overlaps_hand_cases() {
        assert!(overlaps(iv(1, 5), iv(4, 9)));
        assert!(overlaps(iv(4, 9), iv(1, 5)));
        assert!(overlaps(iv(1, 9), iv(3, 4)));
        assert!(!overlaps(iv(1, 5), iv(5, 9)), "touching is not overlapping");
        assert!(!overlaps(iv(1, 5), iv(7, 9)));
        assert!(!overlaps(iv(5, 5), iv(1, 9)), "empty operand");
        assert!(!overlaps(iv(5, 1), iv(1, 9)), "inverted operand is empty");
    }

    #[test]
    fn before_hand_cases() {
        assert!(before(iv(1, 5), iv(5, 9)), "inclusive boundary");
        assert!(before(iv(1, 5), iv(7, 9)));
        assert!(!before(iv(1, 6), iv(5, 9)));
        assert!(!before(iv(5, 9), iv(1, 5)));
        assert!(!before(iv(1, 1), iv(5, 9)), "empty operand");
        assert!(!before(iv(1, 5), iv(9, 9)), "empty operand");
    }

    #[test]
    fn remaining_hand_cases() {
        assert!(meets(iv(1, 5), iv(5, 9)));
        assert!(!meets(iv(1, 4), iv(5, 9)));
        assert!(!meets(iv(5, 5), iv(5, 9)));
        assert!(starts(iv(1, 4), iv(1, 9)));
        assert!(!starts(iv(1, 9), iv(1, 9)), "starts is strict");
        assert!(during(iv(3, 4), iv(1, 9)));
        assert!(!during(iv(1, 4), iv(1, 9)));
        assert!(finishes(iv(5, 9), iv(1, 9)));
        assert!(!finishes(iv(1, 9), iv(1, 9)), "finishes is strict");
        assert!(equals(iv(2, 7), iv(2, 7)));
        assert!(!equals(iv(2, 2), iv(2, 2)), "empty intervals never satisfy equals");
    }
}
