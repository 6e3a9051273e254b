//! Fuzzy topological groups: multiplication and inversion are continuous.

use std::sync::Arc;

use crate::error::Error;
use crate::groups::group::FiniteGroup;
use crate::maps::ProperFunction;
use crate::sets::{Carrier, FuzzySet};
use crate::topology::{continuity, FuzzyTopology, OpenFamily, ProductBase};
use crate::verdict::Verdict;

/// Continuity verdicts for `m: G × G → G` and `i: G → G`. Witnesses are
/// target opens with a non-open preimage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopologicalGroupReport {
    pub multiplication: Verdict<FuzzySet>,
    pub inversion: Verdict<FuzzySet>,
}

impl TopologicalGroupReport {
    pub fn holds(&self) -> bool {
        self.multiplication.holds() && self.inversion.holds()
    }
}

/// Multiplication as a proper function between all-ones sets.
pub fn multiplication_map(group: &FiniteGroup) -> ProperFunction {
    let n = group.order();
    let pairs = Arc::new(Carrier::product(group.carrier(), group.carrier()));
    let map = (0..n * n).map(|k| group.op(k / n, k % n)).collect();
    ProperFunction::new(FuzzySet::ones(pairs), FuzzySet::ones(group.carrier().clone()), map)
        .expect("group product is total")
}

/// Inversion as a proper function between all-ones sets.
pub fn inversion_map(group: &FiniteGroup) -> ProperFunction {
    let ones = FuzzySet::ones(group.carrier().clone());
    let map = (0..group.order()).map(|x| group.inverse(x)).collect();
    ProperFunction::new(ones.clone(), ones, map).expect("inverse is total")
}

/// `τ` must live on the all-ones set over `G`. The product topology on
/// `G × G` is consulted through its base, so it is never enumerated.
pub fn is_fuzzy_topological_group(group: &FiniteGroup, tau: &FuzzyTopology) -> Result<TopologicalGroupReport, Error> {
    if *tau.ambient() != FuzzySet::ones(group.carrier().clone()) {
        return Err(Error::NotCrispAmbient);
    }
    let square = ProductBase::new(tau, tau)?;
    Ok(TopologicalGroupReport {
        multiplication: continuity(&multiplication_map(group), &square, tau)?,
        inversion: continuity(&inversion_map(group), tau, tau)?,
    })
}
