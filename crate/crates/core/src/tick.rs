//! Fixed time points ("ticks") with `-inf`/`+inf` sentinels.
//!
//! The engine is granularity-agnostic: a tick is a signed discrete time
//! coordinate, one tick per chronon. Calendar mappings (days, microseconds)
//! live in [`crate::calendar`].

use std::fmt;

use thiserror::Error;

/// A fixed time point on a linearly ordered, discrete time axis.
///
/// Two values are reserved as sentinels: [`Tick::NEG_INF`] below every finite
/// tick and [`Tick::POS_INF`] above every finite tick. Finite ticks occupy
/// `i64::MIN + 1 ..= i64::MAX - 1`, so taking a successor never wraps.
///
/// ```
/// use ongoing::Tick;
///
/// let t = Tick::new(42);
/// assert!(Tick::NEG_INF < t && t < Tick::POS_INF);
/// assert_eq!(t.successor(), Tick::new(43));
/// ```
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tick(i64);

/// Error for tick values that collide with the reserved sentinels.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("tick value {0} is reserved for a sentinel")]
pub struct TickRangeError(pub i64);

impl Tick {
    /// Sentinel below every finite tick.
    pub const NEG_INF: Tick = Tick(i64::MIN);
    /// Sentinel above every finite tick.
    pub const POS_INF: Tick = Tick(i64::MAX);

    /// Creates a finite tick.
    ///
    /// # Panics
    /// Panics if `value` collides with a sentinel. Use [`Tick::checked_new`]
    /// for untrusted input.
    pub fn new(value: i64) -> Tick {
        Tick::checked_new(value).expect("finite tick collides with a sentinel")
    }

    /// Creates a finite tick, rejecting the reserved sentinel values.
    pub fn checked_new(value: i64) -> Result<Tick, TickRangeError> {
        if value == i64::MIN || value == i64::MAX {
            Err(TickRangeError(value))
        } else {
            Ok(Tick(value))
        }
    }

    /// Raw coordinate, sentinels included.
    pub fn raw(self) -> i64 {
        self.0
    }

    pub fn is_finite(self) -> bool {
        self != Tick::NEG_INF && self != Tick::POS_INF
    }

    /// The next tick. `+inf` absorbs; everything else steps by one chronon.
    pub fn successor(self) -> Tick {
        if self == Tick::POS_INF {
            Tick::POS_INF
        } else {
            Tick(self.0 + 1)
        }
    }
}

impl fmt::Display for Tick {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Tick::NEG_INF => f.write_str("-inf"),
            Tick::POS_INF => f.write_str("+inf"),
            Tick(v) => write!(f, "{v}"),
        }
    }
}

impl fmt::Debug for Tick {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sentinel_order() {
        let t = Tick::new(0);
        assert!(Tick::NEG_INF < t);
        assert!(t < Tick::POS_INF);
        assert!(Tick::NEG_INF < Tick::POS_INF);
    }

    #[test]
    fn successor_rules() {
        assert_eq!(Tick::new(5).successor(), Tick::new(6));
        assert_eq!(Tick::POS_INF.successor(), Tick::POS_INF);
        // The lowest tick still has a well-defined successor; it is needed
        // when a -inf anchor reaches the b+1 arm of the less-than cases.
        assert_eq!(Tick::NEG_INF.successor().raw(), i64::MIN + 1);
    }

    #[test]
    fn rejects_sentinel_payloads() {
        assert!(Tick::checked_new(i64::MIN).is_err());
        assert!(Tick::checked_new(i64::MAX).is_err());
        assert!(Tick::checked_new(i64::MAX - 1).is_ok());
    }

    #[test]
    fn display() {
        assert_eq!(Tick::new(-3).to_string(), "-3");
        assert_eq!(Tick::NEG_INF.to_string(), "-inf");
        assert_eq!(Tick::POS_INF.to_string(), "+inf");
    }
}
