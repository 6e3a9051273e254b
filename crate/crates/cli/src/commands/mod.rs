pub mod actions;
pub mod groups;
pub mod lie;
pub mod manifold;
pub mod topology;

use fuzzylie::Verdict;

use crate::report::Report;

/// Adds `AUDIT=confirmed|refuted` for a re-checked witness.
pub(crate) fn audit(report: &mut Report, enabled: bool, confirmed: impl FnOnce() -> bool) {
    if enabled && report.outcome == crate::report::Outcome::Fail {
        report.field("AUDIT", if confirmed() { "confirmed" } else { "refuted" });
    }
}

/// `pass` or `fail` for a sub-verdict.
pub(crate) fn word<W>(v: &Verdict<W>) -> &'static str {
    if v.holds() {
        "pass"
    } else {
        "fail"
    }
}
