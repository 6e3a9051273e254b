//! Finite fuzzy transformation groups: a finite group acting on a fuzzy set.

use std::fmt;
use std::sync::Arc;

use crate::error::Error;
use crate::grade::Grade;
use crate::groups::group::FiniteGroup;
use crate::sets::{Carrier, FuzzySet};
use crate::verdict::Verdict;

/// A map `G × M → M` with `M` carrying an ambient fuzzy set.
///
/// Construction only checks that the table is total and stays in `M`; the
/// action laws are decided by [`verify_action`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAction {
    group: FiniteGroup,
    ambient: FuzzySet,
    act: Vec<usize>,
}

impl FiniteAction {
    /// `table[g][x]` is the image of `x` under `g`.
    pub fn new(group: FiniteGroup, ambient: FuzzySet, table: Vec<Vec<usize>>) -> Result<Self, Error> {
        let m = ambient.len();
        if table.len() != group.order() || table.iter().any(|row| row.len() != m || row.iter().any(|&y| y >= m)) {
            return Err(Error::InvalidAction);
        }
        Ok(FiniteAction { group, ambient, act: table.concat() })
    }

    /// Builds the table from `act(g, x)` on indices.
    pub fn from_fn(group: FiniteGroup, ambient: FuzzySet, act: impl Fn(usize, usize) -> usize) -> Result<Self, Error> {
        let table = (0..group.order())
            .map(|g| (0..ambient.len()).map(|x| act(g, x)).collect())
            .collect();
        FiniteAction::new(group, ambient, table)
    }

    /// `G` acting on its own elements by left translation.
    pub fn translation(group: &FiniteGroup) -> FiniteAction {
        let ambient = FuzzySet::ones(group.carrier().clone());
        FiniteAction::from_fn(group.clone(), ambient, |g, x| group.op(g, x)).expect("translation is total")
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn ambient(&self) -> &FuzzySet {
        &self.ambient
    }

    pub fn space(&self) -> &Arc<Carrier> {
        self.ambient.carrier()
    }

    pub fn apply(&self, g: usize, x: usize) -> usize {
        self.act[g * self.ambient.len() + x]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.act.chunks(self.ambient.len()).map(<[usize]>::to_vec).collect()
    }

    /// Overwrites one entry; used to build broken actions.
    pub fn set_image(&mut self, g: usize, x: usize, y: usize) {
        let m = self.ambient.len();
        self.act[g * m + x] = y;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ActionViolation {
    /// `act(g, act(h, x)) != act(gh, x)`.
    Composition { g: usize, h: usize, x: usize },
    /// A point of the ambient support that nothing maps to.
    Uncovered { x: usize },
}

impl fmt::Display for ActionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ActionViolation::Composition { g, h, x } => write!(f, "composition fails at (g={g}, h={h}, x={x})"),
            ActionViolation::Uncovered { x } => write!(f, "point {x} is not in the image"),
        }
    }
}

/// The composition law over all `(g, h, x)`, then surjectivity onto the
/// support of the ambient set.
pub fn verify_action(action: &FiniteAction) -> Verdict<ActionViolation> {
    let n = action.group.order();
    let m = action.ambient.len();
    for g in 0..n {
        for h in 0..n {
            for x in 0..m {
                if action.apply(g, action.apply(h, x)) != action.apply(action.group.op(g, h), x) {
                    return Verdict::Violated(ActionViolation::Composition { g, h, x });
                }
            }
        }
    }
    let mut hit = vec![false; m];
    for &y in &action.act {
        hit[y] = true;
    }
    match (0..m).find(|&x| !action.ambient.at(x).is_zero() && !hit[x]) {
        Some(x) => Verdict::Violated(ActionViolation::Uncovered { x }),
        None => Verdict::Holds,
    }
}

/// A point where the image of `S` rises above `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvarianceViolation {
    pub y: usize,
    pub image: Grade,
    pub grade: Grade,
}

impl fmt::Display for InvarianceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "image {} > {} at point {}", self.image, self.grade, self.y)
    }
}

/// `Φ(G × S) ⊆ S` with `G` carrying the all-ones set.
pub fn is_g_invariant(action: &FiniteAction, s: &FuzzySet) -> Result<Verdict<InvarianceViolation>, Error> {
    let ones = FuzzySet::ones(action.group.carrier().clone());
    is_invariant_under(action, &ones, s)
}

/// `Φ(ν × S) ⊆ S` for a fuzzy subset `ν` of `G`: the image
/// `T(y) = max { min(ν(g), S(x)) : act(g, x) = y }` must lie below `S`.
pub fn is_invariant_under(
    action: &FiniteAction,
    nu: &FuzzySet,
    s: &FuzzySet,
) -> Result<Verdict<InvarianceViolation>, Error> {
    if **nu.carrier() != **action.group.carrier() || **s.carrier() != **action.space() {
        return Err(Error::CarrierMismatch);
    }
    let m = action.ambient.len();
    let mut image = vec![Grade::ZERO; m];
    for g in 0..action.group.order() {
        for x in 0..m {
            let y = action.apply(g, x);
            image[y] = image[y].max(nu.at(g).min(s.at(x)));
        }
    }
    Ok(Verdict::from_violation(
        (0..m)
            .find(|&y| image[y] > s.at(y))
            .map(|y| InvarianceViolation { y, image: image[y], grade: s.at(y) }),
    ))
}

fn checked(action: FiniteAction) -> Result<FiniteAction, Error> {
    match verify_action(&action) {
        Verdict::Holds => Ok(action),
        Verdict::Violated(w) => Err(Error::NotAnAction(w.to_string())),
    }
}

/// The action of the subgroup with the given element indices.
pub fn restrict_to_subgroup(action: &FiniteAction, members: &[usize]) -> Result<FiniteAction, Error> {
    let (sub, members) = action.group.subgroup(members)?;
    let table = members
        .iter()
        .map(|&g| (0..action.ambient.len()).map(|x| action.apply(g, x)).collect())
        .collect();
    checked(FiniteAction::new(sub, action.ambient.clone(), table)?)
}

/// The action on the support of an invariant fuzzy subset `S`, which becomes
/// the new ambient set.
pub fn restrict_to_invariant(action: &FiniteAction, s: &FuzzySet) -> Result<FiniteAction, Error> {
    if let Verdict::Violated(w) = is_g_invariant(action, s)? {
        let label = action.space().label(w.y);
        return Err(Error::NotInvariant(format!("image {} > {} at `{label}`", w.image, w.grade)));
    }
    let support = s.support();
    let carrier = Arc::new(Carrier::new(support.iter().map(|&x| action.space().label(x).to_string()))?);
    let ambient = FuzzySet::new(carrier, support.iter().map(|&x| s.at(x)).collect())?;
    let local = |x: usize| support.binary_search(&x).expect("invariant support is closed");
    let table = (0..action.group.order())
        .map(|g| support.iter().map(|&x| local(action.apply(g, x))).collect())
        .collect();
    checked(FiniteAction::new(action.group.clone(), ambient, table)?)
}

/// A partition of the action space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceRelation {
    space: Arc<Carrier>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl EquivalenceRelation {
    /// Classes are sorted internally and ordered by their least element.
    pub fn new(space: Arc<Carrier>, classes: Vec<Vec<usize>>) -> Result<Self, Error> {
        let mut class_of = vec![usize::MAX; space.len()];
        let mut classes: Vec<Vec<usize>> = classes
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c
            })
            .collect();
        classes.sort();
        for (k, class) in classes.iter().enumerate() {
            if class.is_empty() {
                return Err(Error::InvalidRelation("empty class".into()));
            }
            for &x in class {
                if x >= space.len() {
                    return Err(Error::InvalidRelation(format!("index {x} outside the space")));
                }
                if class_of[x] != usize::MAX {
                    return Err(Error::InvalidRelation(format!("`{}` is in two classes", space.label(x))));
                }
                class_of[x] = k;
            }
        }
        if let Some(x) = class_of.iter().position(|&k| k == usize::MAX) {
            return Err(Error::InvalidRelation(format!("`{}` is in no class", space.label(x))));
        }
        Ok(EquivalenceRelation { space, classes, class_of })
    }

    pub fn from_labels<S: AsRef<str>>(space: Arc<Carrier>, classes: &[Vec<S>]) -> Result<Self, Error> {
        let classes = classes
            .iter()
            .map(|c| c.iter().map(|l| space.require(l.as_ref())).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        EquivalenceRelation::new(space, classes)
    }

    /// Equality: every point alone.
    pub fn discrete(space: Arc<Carrier>) -> Self {
        let classes = (0..space.len()).map(|x| vec![x]).collect();
        EquivalenceRelation::new(space, classes).expect("singletons partition")
    }

    /// Everything in one class.
    pub fn total(space: Arc<Carrier>) -> Self {
        let classes = vec![(0..space.len()).collect()];
        EquivalenceRelation::new(space, classes).expect("one class partitions")
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    /// Labels such as `{a,b}`.
    pub fn class_label(&self, k: usize) -> String {
        let inner: Vec<&str> = self.classes[k].iter().map(|&x| self.space.label(x)).collect();
        format!("{{{}}}", inner.join(","))
    }
}

/// The induced action `(g, [x]) ↦ [gx]` on equivalence classes. The ambient
/// grade of a class is the largest grade among its members.
pub fn quotient_action(action: &FiniteAction, rho: &EquivalenceRelation) -> Result<FiniteAction, Error> {
    if rho.space.as_ref() != action.space().as_ref() {
        return Err(Error::CarrierMismatch);
    }
    let m = action.ambient.len();
    for g in 0..action.group.order() {
        for x in 0..m {
            for y in 0..m {
                if x != y
                    && rho.class_of(x) == rho.class_of(y)
                    && rho.class_of(action.apply(g, x)) != rho.class_of(action.apply(g, y))
                {
                    let label = |i: usize| action.space().label(i).to_string();
                    return Err(Error::RelationNotPreserved {
                        g: action.group.label(g).to_string(),
                        x: label(x),
                        y: label(y),
                    });
                }
            }
        }
    }
    let carrier = Arc::new(Carrier::new((0..rho.classes.len()).map(|k| rho.class_label(k)))?);
    let grades = rho
        .classes
        .iter()
        .map(|c| c.iter().map(|&x| action.ambient.at(x)).max().expect("classes are nonempty"))
        .collect();
    let ambient = FuzzySet::new(carrier, grades)?;
    let table = (0..action.group.order())
        .map(|g| rho.classes.iter().map(|c| rho.class_of(action.apply(g, c[0]))).collect())
        .collect();
    checked(FiniteAction::new(action.group.clone(), ambient, table)?)
}
