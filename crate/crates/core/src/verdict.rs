//! Outcome of a checked property.

use std::fmt;

/// Result of evaluating a definition on concrete data.
///
/// A violated property always carries the first counterexample found in
/// carrier (or sample) order, so repeated runs report the same witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<W> {
    Holds,
    Violated(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Violated(w) => Some(w),
        }
    }

    pub fn into_witness(self) -> Option<W> {
        match self {
            Verdict::Holds => None,
            Verdict::Violated(w) => Some(w),
        }
    }

    pub fn map<U>(self, f: impl FnOnce(W) -> U) -> Verdict<U> {
        match self {
            Verdict::Holds => Verdict::Holds,
            Verdict::Violated(w) => Verdict::Violated(f(w)),
        }
    }

    /// `Holds` for `None`, `Violated` for `Some`.
    pub fn from_violation(violation: Option<W>) -> Self {
        match violation {
            None => Verdict::Holds,
            Some(w) => Verdict::Violated(w),
        }
    }
}

impl<W: fmt::Display> fmt::Display for Verdict<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Holds => f.write_str("holds"),
            Verdict::Violated(w) => write!(f, "violated at {w}"),
        }
    }
}
