//! Calendar mappings between ticks and civil time.
//!
//! The engine itself only needs ordered discrete ticks. These helpers map
//! ISO dates to proleptic-Gregorian day numbers (one tick per day) and ISO
//! timestamps to microseconds since the Unix epoch (one tick per
//! microsecond), which is how the CLI reads and prints time literals.

use chrono::{Datelike, NaiveDate, NaiveDateTime};
use thiserror::Error;

use crate::tick::Tick;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CalendarError {
    #[error("invalid date {0}")]
    InvalidDate(String),
    #[error("invalid timestamp {0}")]
    InvalidTimestamp(String),
    #[error("tick {0} is outside the supported calendar range")]
    OutOfRange(i64),
}

/// Day-granularity tick for a calendar date: the proleptic-Gregorian day
/// number (0001-01-01 is day 1).
pub fn date_tick(year: i32, month: u32, day: u32) -> Result<Tick, CalendarError> {
    let date = NaiveDate::from_ymd_opt(year, month, day)
        .ok_or_else(|| CalendarError::InvalidDate(format!("{year:04}-{month:02}-{day:02}")))?;
    Ok(Tick::new(i64::from(date.num_days_from_ce())))
}

/// Parses `YYYY-MM-DD` into a day tick.
pub fn parse_date(text: &str) -> Result<Tick, CalendarError> {
    let date = NaiveDate::parse_from_str(text, "%Y-%m-%d")
        .map_err(|_| CalendarError::InvalidDate(text.to_string()))?;
    Ok(Tick::new(i64::from(date.num_days_from_ce())))
}

/// Parses `YYYY-MM-DDTHH:MM:SS[.ffffff]` into a microsecond tick.
pub fn parse_timestamp(text: &str) -> Result<Tick, CalendarError> {
    let dt = NaiveDateTime::parse_from_str(text, "%Y-%m-%dT%H:%M:%S%.f")
        .map_err(|_| CalendarError::InvalidTimestamp(text.to_string()))?;
    Ok(Tick::new(dt.and_utc().timestamp_micros()))
}

/// Renders a day tick back as `YYYY-MM-DD`.
pub fn format_date(tick: Tick) -> Result<String, CalendarError> {
    let days = i32::try_from(tick.raw()).map_err(|_| CalendarError::OutOfRange(tick.raw()))?;
    let date = NaiveDate::from_num_days_from_ce_opt(days)
        .ok_or(CalendarError::OutOfRange(tick.raw()))?;
    Ok(date.format("%Y-%m-%d").to_string())
}

/// Renders a microsecond tick back as an ISO timestamp.
pub fn format_timestamp(tick: Tick) -> Result<String, CalendarError> {
    let dt = chrono::DateTime::from_timestamp_micros(tick.raw())
        .ok_or(CalendarError::OutOfRange(tick.raw()))?;
    Ok(dt.naive_utc().format("%Y-%m-%dT%H:%M:%S%.6f").to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn day_ordinals() {
        // Anchors for the running example, all in 2019.
        assert_eq!(date_tick(2019, 1, 1).unwrap(), Tick::new(737060));
        assert_eq!(date_tick(2019, 8, 15).unwrap(), Tick::new(737286));
        assert_eq!(parse_date("2019-08-15").unwrap(), Tick::new(737286));
        assert_eq!(format_date(Tick::new(737286)).unwrap(), "2019-08-15");
    }

    #[test]
    fn timestamps_round_trip() {
        let t = parse_timestamp("2019-08-15T10:30:00.000042").unwrap();
        assert_eq!(format_timestamp(t).unwrap(), "2019-08-15T10:30:00.000042");
        assert!(parse_timestamp("2019-08-15").is_err());
    }

    #[test]
    fn rejects_malformed_dates() {
        assert!(parse_date("2019-13-01").is_err());
        assert!(parse_date("yesterday").is_err());
    }
}
