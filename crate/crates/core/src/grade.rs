//! Exact membership grades in the unit interval.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{CheckedSub, One, Zero};

use crate::error::Error;

/// A membership grade: an exact rational in `[0, 1]`, always in lowest terms.
///
/// Ordering, `min` and `max` are exact, so every verdict built on grades is
/// independent of evaluation order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Grade(Ratio<u64>);

impl Grade {
    pub const ZERO: Grade = Grade(Ratio::new_raw(0, 1));
    pub const ONE: Grade = Grade(Ratio::new_raw(1, 1));

    /// Builds `numerator/denominator`, reducing to lowest terms.
    pub fn new(numerator: u64, denominator: u64) -> Result<Self, Error> {
        if denominator == 0 {
            return Err(Error::InvalidGrade(format!("{numerator}/0: zero denominator")));
        }
        if numerator > denominator {
            return Err(Error::InvalidGrade(format!(
                "{numerator}/{denominator}: grade outside [0,1]"
            )));
        }
        Ok(Grade(Ratio::new(numerator, denominator)))
    }

    pub fn numerator(&self) -> u64 {
        *self.0.numer()
    }

    pub fn denominator(&self) -> u64 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn to_f64(self) -> f64 {
        self.numerator() as f64 / self.denominator() as f64
    }

    /// `self - other`, or `None` when `other > self`.
    pub fn checked_sub(self, other: Grade) -> Result<Option<Grade>, Error> {
        if other > self {
            return Ok(None);
        }
        self.0
            .checked_sub(&other.0)
            .map(|r| Some(Grade(r)))
            .ok_or(Error::GradeOverflow)
    }

    /// Whether the grade is a multiple of `1/q`.
    pub fn is_multiple_of(&self, q: u64) -> bool {
        q.is_multiple_of(self.denominator())
    }
}

impl Default for Grade {
    fn default() -> Self {
        Grade::ZERO
    }
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Grade({})", self.0)
    }
}

/// Parses `p/q`, an integer (`0` or `1`), or a plain decimal such as `0.25`.
/// Decimals are converted exactly; no float round-trip is involved.
impl FromStr for Grade {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || Error::InvalidGrade(format!("`{s}` is not a grade (expected p/q or a decimal)"));
        if let Some((p, q)) = s.split_once('/') {
            let p: u64 = parse_digits(p).ok_or_else(bad)?;
            let q: u64 = parse_digits(q).ok_or_else(bad)?;
            return Grade::new(p, q);
        }
        let (int_part, frac_part) = match s.split_once('.') {
            Some((i, f)) => (i, f),
            None => (s, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        if frac_part.len() > 18 {
            return Err(Error::InvalidGrade(format!("`{s}`: too many decimal places")));
        }
        let int: u64 = if int_part.is_empty() { 0 } else { parse_digits(int_part).ok_or_else(bad)? };
        let frac: u64 = if frac_part.is_empty() { 0 } else { parse_digits(frac_part).ok_or_else(bad)? };
        let scale = 10u64.pow(frac_part.len() as u32);
        let numerator = int
            .checked_mul(scale)
            .and_then(|v| v.checked_add(frac))
            .ok_or_else(|| Error::InvalidGrade(format!("`{s}`: grade outside [0,1]")))?;
        Grade::new(numerator, scale)
    }
}

fn parse_digits(s: &str) -> Option<u64> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}
