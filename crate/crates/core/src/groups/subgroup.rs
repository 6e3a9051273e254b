//! Fuzzy subgroups of finite groups.

use std::fmt;

use crate::error::Error;
use crate::grade::Grade;
use crate::groups::group::{check_subgroup, FiniteGroup, SubgroupViolation};
use crate::sets::{level_set, FuzzySet};
use crate::verdict::Verdict;

/// First failure of the fuzzy-subgroup conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FuzzySubgroupViolation {
    /// `μ(xy) < min(μ(x), μ(y))`.
    Product { x: usize, y: usize, product: Grade, bound: Grade },
    /// `μ(x⁻¹) != μ(x)`.
    Inverse { x: usize, grade: Grade, inverse_grade: Grade },
}

impl fmt::Display for FuzzySubgroupViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FuzzySubgroupViolation::Product { x, y, product, bound } => {
                write!(f, "mu({x}*{y}) = {product} < {bound}")
            }
            FuzzySubgroupViolation::Inverse { x, grade, inverse_grade } => {
                write!(f, "mu({x}^-1) = {inverse_grade} != mu({x}) = {grade}")
            }
        }
    }
}

fn ensure_on_group(mu: &FuzzySet, group: &FiniteGroup) -> Result<(), Error> {
    if **mu.carrier() != **group.carrier() {
        return Err(Error::CarrierMismatch);
    }
    Ok(())
}

/// Checks `μ(xy) >= min(μ(x), μ(y))` over all pairs in carrier order, then
/// `μ(x⁻¹) = μ(x)` over all elements.
pub fn is_fuzzy_subgroup(mu: &FuzzySet, group: &FiniteGroup) -> Result<Verdict<FuzzySubgroupViolation>, Error> {
    ensure_on_group(mu, group)?;
    let n = group.order();
    for x in 0..n {
        for y in 0..n {
            let bound = mu.at(x).min(mu.at(y));
            let product = mu.at(group.op(x, y));
            if product < bound {
                return Ok(Verdict::Violated(FuzzySubgroupViolation::Product { x, y, product, bound }));
            }
        }
    }
    for x in 0..n {
        let inverse_grade = mu.at(group.inverse(x));
        if inverse_grade != mu.at(x) {
            return Ok(Verdict::Violated(FuzzySubgroupViolation::Inverse {
                x,
                grade: mu.at(x),
                inverse_grade,
            }));
        }
    }
    Ok(Verdict::Holds)
}

/// Independent characterization: every nonempty level subset `μ_t`, for `t`
/// among the grades `μ` actually takes, is closed under product and inverse.
///
/// Shares no code path with [`is_fuzzy_subgroup`] beyond table lookups.
pub fn level_subgroup_oracle(mu: &FuzzySet, group: &FiniteGroup) -> Result<bool, Error> {
    ensure_on_group(mu, group)?;
    let mut levels: Vec<Grade> = mu.grades().to_vec();
    levels.sort_unstable();
    levels.dedup();
    for t in levels {
        let members: Vec<usize> = level_set(mu, t).into_iter().collect();
        if members.is_empty() {
            continue;
        }
        if !check_subgroup(group, &members).holds() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Finite reading of a fuzzy Lie subgroup: `members` form a subgroup of
/// `group` and lie in the support of the ambient fuzzy set on the group.
pub fn is_fuzzy_lie_subgroup(
    group: &FiniteGroup,
    ambient: &FuzzySet,
    members: &[usize],
) -> Result<Verdict<LieSubgroupViolation>, Error> {
    ensure_on_group(ambient, group)?;
    if let Verdict::Violated(w) = check_subgroup(group, members) {
        return Ok(Verdict::Violated(LieSubgroupViolation::NotSubgroup(w)));
    }
    let mut sorted = members.to_vec();
    sorted.sort_unstable();
    Ok(Verdict::from_violation(
        sorted
            .into_iter()
            .find(|&h| ambient.at(h).is_zero())
            .map(LieSubgroupViolation::OutsideSupport),
    ))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LieSubgroupViolation {
    NotSubgroup(SubgroupViolation),
    OutsideSupport(usize),
}
