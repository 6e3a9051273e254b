//! Finite carriers, fuzzy subsets and their lattice operations.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::Error;
use crate::grade::Grade;
use crate::verdict::Verdict;

/// A nonempty finite set of distinct labels, kept in a fixed order.
///
/// The order is significant: products, reports and witnesses all follow it.
#[derive(Debug, Clone)]
pub struct Carrier {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl Carrier {
    pub fn new<I, S>(labels: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyCarrier);
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            if index.insert(label.clone(), i).is_some() {
                return Err(Error::DuplicateElement(label.clone()));
            }
        }
        Ok(Carrier { labels, index })
    }

    /// Carrier `0, 1, ..., n-1`.
    pub fn numbered(n: usize) -> Result<Self, Error> {
        Carrier::new((0..n).map(|i| i.to_string()))
    }

    /// Ordered cartesian product; element `(x, y)` sits at `ix * |Y| + iy`.
    pub fn product(left: &Carrier, right: &Carrier) -> Carrier {
        let labels = left
            .labels
            .iter()
            .flat_map(|x| right.labels.iter().map(move |y| format!("({x},{y})")))
            .collect::<Vec<_>>();
        // Distinct pairs of distinct labels are distinct unless labels contain
        // the delimiters in a colliding way; fall back to indices then.
        Carrier::new(labels).unwrap_or_else(|_| {
            Carrier::new(
                (0..left.len())
                    .flat_map(|i| (0..right.len()).map(move |j| format!("#({i},{j})"))),
            )
            .expect("index pairs are distinct")
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn require(&self, label: &str) -> Result<usize, Error> {
        self.position(label)
            .ok_or_else(|| Error::UnknownElement(label.to_string()))
    }
}

impl PartialEq for Carrier {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels
    }
}

impl Eq for Carrier {}

/// A fuzzy subset: one grade for every element of its carrier.
#[derive(Clone)]
pub struct FuzzySet {
    carrier: Arc<Carrier>,
    grades: Vec<Grade>,
}

impl FuzzySet {
    pub fn new(carrier: Arc<Carrier>, grades: Vec<Grade>) -> Result<Self, Error> {
        if grades.len() != carrier.len() {
            return Err(Error::GradeCount {
                expected: carrier.len(),
                found: grades.len(),
            });
        }
        Ok(FuzzySet { carrier, grades })
    }

    /// Builds a set from `(label, grade)` pairs; unlisted elements get grade 0.
    pub fn from_pairs<'a, I>(carrier: Arc<Carrier>, pairs: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (&'a str, Grade)>,
    {
        let mut grades = vec![Grade::ZERO; carrier.len()];
        let mut seen = vec![false; carrier.len()];
        for (label, grade) in pairs {
            let i = carrier.require(label)?;
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::DuplicateElement(label.to_string()));
            }
            grades[i] = grade;
        }
        Ok(FuzzySet { carrier, grades })
    }

    pub fn constant(carrier: Arc<Carrier>, grade: Grade) -> Self {
        let grades = vec![grade; carrier.len()];
        FuzzySet { carrier, grades }
    }

    pub fn zero(carrier: Arc<Carrier>) -> Self {
        FuzzySet::constant(carrier, Grade::ZERO)
    }

    pub fn ones(carrier: Arc<Carrier>) -> Self {
        FuzzySet::constant(carrier, Grade::ONE)
    }

    /// Crisp indicator of `members`.
    pub fn indicator(carrier: Arc<Carrier>, members: &[usize]) -> Self {
        let mut grades = vec![Grade::ZERO; carrier.len()];
        for &i in members {
            grades[i] = Grade::ONE;
        }
        FuzzySet { carrier, grades }
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        &self.carrier
    }

    pub fn grades(&self) -> &[Grade] {
        &self.grades
    }

    pub fn into_grades(self) -> Vec<Grade> {
        self.grades
    }

    pub fn at(&self, i: usize) -> Grade {
        self.grades[i]
    }

    pub fn grade(&self, label: &str) -> Result<Grade, Error> {
        Ok(self.grades[self.carrier.require(label)?])
    }

    pub fn len(&self) -> usize {
        self.grades.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grades.is_empty()
    }

    pub fn max_grade(&self) -> Grade {
        self.grades.iter().copied().max().unwrap_or(Grade::ZERO)
    }

    /// Indices with positive grade.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| !self.grades[i].is_zero()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.grades.iter().all(Grade::is_zero)
    }

    pub fn same_carrier(&self, other: &FuzzySet) -> bool {
        Arc::ptr_eq(&self.carrier, &other.carrier) || self.carrier == other.carrier
    }

    pub fn ensure_same_carrier(&self, other: &FuzzySet) -> Result<(), Error> {
        if self.same_carrier(other) {
            Ok(())
        } else {
            Err(Error::CarrierMismatch)
        }
    }

    /// Same grades on a different but equal carrier handle.
    pub fn with_carrier(&self, carrier: Arc<Carrier>) -> Result<FuzzySet, Error> {
        if *carrier != *self.carrier {
            return Err(Error::CarrierMismatch);
        }
        Ok(FuzzySet { carrier, grades: self.grades.clone() })
    }

    /// Re-expresses the set on `carrier`, which must hold the same labels in
    /// any order.
    pub fn reindexed(&self, carrier: Arc<Carrier>) -> Result<FuzzySet, Error> {
        if carrier.len() != self.carrier.len() {
            return Err(Error::CarrierMismatch);
        }
        let mut grades = vec![Grade::ZERO; carrier.len()];
        for (i, label) in self.carrier.labels().iter().enumerate() {
            let j = carrier.position(label).ok_or(Error::CarrierMismatch)?;
            grades[j] = self.grades[i];
        }
        Ok(FuzzySet { carrier, grades })
    }

    pub fn union(&self, other: &FuzzySet) -> Result<FuzzySet, Error> {
        self.zip_with(other, Grade::max)
    }

    pub fn intersection(&self, other: &FuzzySet) -> Result<FuzzySet, Error> {
        self.zip_with(other, Grade::min)
    }

    /// The cut `t ∩ self`: every grade capped at `t`.
    pub fn cut(&self, t: Grade) -> FuzzySet {
        FuzzySet {
            carrier: self.carrier.clone(),
            grades: self.grades.iter().map(|&g| g.min(t)).collect(),
        }
    }

    fn zip_with(&self, other: &FuzzySet, f: impl Fn(Grade, Grade) -> Grade) -> Result<FuzzySet, Error> {
        self.ensure_same_carrier(other)?;
        Ok(FuzzySet {
            carrier: self.carrier.clone(),
            grades: self
                .grades
                .iter()
                .zip(&other.grades)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    /// First element where `self` exceeds `other`, if any. Carriers must match.
    pub(crate) fn first_excess(&self, other: &FuzzySet) -> Option<usize> {
        self.grades
            .iter()
            .zip(&other.grades)
            .position(|(a, b)| a > b)
    }

    /// `Ok(())` if `self <= bound` pointwise, otherwise an error naming the
    /// first offending element.
    pub fn ensure_within(&self, bound: &FuzzySet) -> Result<(), Error> {
        self.ensure_same_carrier(bound)?;
        match self.first_excess(bound) {
            None => Ok(()),
            Some(i) => Err(Error::ExceedsBound {
                element: self.carrier.label(i).to_string(),
                grade: self.grades[i],
                bound: bound.grades[i],
            }),
        }
    }
}

impl PartialEq for FuzzySet {
    fn eq(&self, other: &Self) -> bool {
        self.same_carrier(other) && self.grades == other.grades
    }
}

impl Eq for FuzzySet {}

impl Hash for FuzzySet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.grades.hash(state);
    }
}

impl PartialOrd for FuzzySet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order used for canonical listings: carrier labels first, then grades
/// lexicographically. Not the pointwise inclusion order.
impl Ord for FuzzySet {
    fn cmp(&self, other: &Self) -> Ordering {
        if !Arc::ptr_eq(&self.carrier, &other.carrier) {
            let c = self.carrier.labels.cmp(&other.carrier.labels);
            if c != Ordering::Equal {
                return c;
            }
        }
        self.grades.cmp(&other.grades)
    }
}

impl fmt::Debug for FuzzySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FuzzySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, g) in self.grades.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}:{}", self.carrier.label(i), g)?;
        }
        f.write_str("}")
    }
}

/// The fuzzy point `x_p`: grade `p > 0` at `x`, zero elsewhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzyPoint {
    base: String,
    height: Grade,
}

impl FuzzyPoint {
    pub fn new(base: impl Into<String>, height: Grade) -> Result<Self, Error> {
        if height.is_zero() {
            return Err(Error::ZeroHeight);
        }
        Ok(FuzzyPoint { base: base.into(), height })
    }

    pub fn base(&self) -> &str {
        &self.base
    }

    pub fn height(&self) -> Grade {
        self.height
    }

    pub fn to_set(&self, carrier: Arc<Carrier>) -> Result<FuzzySet, Error> {
        let i = carrier.require(&self.base)?;
        let mut grades = vec![Grade::ZERO; carrier.len()];
        grades[i] = self.height;
        FuzzySet::new(carrier, grades)
    }
}

impl fmt::Display for FuzzyPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.base, self.height)
    }
}

/// Pointwise supremum of a nonempty family on one carrier.
pub fn union(sets: &[&FuzzySet]) -> Result<FuzzySet, Error> {
    fold(sets, FuzzySet::union)
}

/// Pointwise infimum of a nonempty family on one carrier.
pub fn intersection(sets: &[&FuzzySet]) -> Result<FuzzySet, Error> {
    fold(sets, FuzzySet::intersection)
}

fn fold(
    sets: &[&FuzzySet],
    op: impl Fn(&FuzzySet, &FuzzySet) -> Result<FuzzySet, Error>,
) -> Result<FuzzySet, Error> {
    let (first, rest) = sets.split_first().ok_or(Error::EmptyFamily)?;
    rest.iter().try_fold((*first).clone(), |acc, s| op(&acc, s))
}

/// `(λ × μ)(x, y) = min(λ(x), μ(y))` on the ordered product carrier.
pub fn product(lambda: &FuzzySet, mu: &FuzzySet) -> FuzzySet {
    let carrier = Arc::new(Carrier::product(&lambda.carrier, &mu.carrier));
    let grades = lambda
        .grades
        .iter()
        .flat_map(|&a| mu.grades.iter().map(move |&b| a.min(b)))
        .collect();
    FuzzySet { carrier, grades }
}

/// The crisp level subset `{x : μ(x) >= t}`, as carrier indices.
pub fn level_set(mu: &FuzzySet, t: Grade) -> BTreeSet<usize> {
    (0..mu.len()).filter(|&i| mu.grades[i] >= t).collect()
}

/// Complement of `sub` relative to `ambient`: `ambient(x) - sub(x)`.
///
/// Requires `sub <= ambient`; the first element where that fails is reported.
pub fn complement_in(ambient: &FuzzySet, sub: &FuzzySet) -> Result<FuzzySet, Error> {
    sub.ensure_within(ambient)?;
    let grades = ambient
        .grades
        .iter()
        .zip(&sub.grades)
        .map(|(&a, &s)| a.checked_sub(s).map(|d| d.expect("sub <= ambient")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FuzzySet { carrier: ambient.carrier.clone(), grades })
}

/// Pointwise inclusion `a <= b`; the witness is the first element with
/// `a(x) > b(x)`.
pub fn is_subset(a: &FuzzySet, b: &FuzzySet) -> Result<Verdict<usize>, Error> {
    a.ensure_same_carrier(b)?;
    Ok(Verdict::from_violation(a.first_excess(b)))
}

/// `x_p ∈ μ` iff `p <= μ(x)`.
pub fn point_in(point: &FuzzyPoint, mu: &FuzzySet) -> Result<bool, Error> {
    Ok(point.height <= mu.grade(&point.base)?)
}

/// Whether `a` is a normal element of `λ` with respect to `μ`:
/// `λ(a) >= μ(y)` for every `y`. The witness is the first such `y` that fails.
pub fn is_normal_element(lambda: &FuzzySet, mu: &FuzzySet, a: &str) -> Result<Verdict<usize>, Error> {
    lambda.ensure_same_carrier(mu)?;
    let top = lambda.grade(a)?;
    Ok(Verdict::from_violation(mu.grades.iter().position(|&g| g > top)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> Grade {
        s.parse().unwrap()
    }

    fn ab() -> Arc<Carrier> {
        Arc::new(Carrier::new(["a", "b"]).unwrap())
    }

    fn set(c: &Arc<Carrier>, grades: &[&str]) -> FuzzySet {
        FuzzySet::new(c.clone(), grades.iter().map(|s| g(s)).collect()).unwrap()
    }

    #[test]
    fn carrier_rejects_duplicates_and_empty() {
        assert_eq!(Carrier::new(["a", "a"]).unwrap_err(), Error::DuplicateElement("a".into()));
        assert_eq!(Carrier::new(Vec::<String>::new()).unwrap_err(), Error::EmptyCarrier);
    }

    #[test]
    fn union_and_intersection_by_hand() {
        let c = ab();
        let mu = set(&c, &["1/2", "0"]);
        let nu = set(&c, &["1/4", "3/4"]);
        assert_eq!(union(&[&mu, &nu]).unwrap(), set(&c, &["1/2", "3/4"]));
        assert_eq!(intersection(&[&mu, &nu]).unwrap(), set(&c, &["1/4", "0"]));
    }

    #[test]
    fn identities_and_absorption() {
        let c = ab();
        let mu = set(&c, &["1/3", "1"]);
        let zero = FuzzySet::zero(c.clone());
        let ones = FuzzySet::ones(c.clone());
        assert_eq!(union(&[&mu, &zero]).unwrap(), mu);
        assert_eq!(union(&[&mu, &mu]).unwrap(), mu);
        assert_eq!(intersection(&[&mu, &ones]).unwrap(), mu);
        assert_eq!(intersection(&[&mu, &zero]).unwrap(), zero);
    }

    #[test]
    fn family_errors() {
        assert_eq!(union(&[]).unwrap_err(), Error::EmptyFamily);
        let other = Arc::new(Carrier::new(["a", "c"]).unwrap());
        let mu = FuzzySet::ones(ab());
        let nu = FuzzySet::ones(other);
        assert_eq!(intersection(&[&mu, &nu]).unwrap_err(), Error::CarrierMismatch);
    }

    #[test]
    fn equal_carriers_from_different_handles_are_compatible() {
        let mu = FuzzySet::ones(ab());
        let nu = FuzzySet::zero(ab());
        assert!(union(&[&mu, &nu]).is_ok());
    }

    #[test]
    fn product_takes_minimum() {
        let x = Arc::new(Carrier::new(["x1", "x2"]).unwrap());
        let y = Arc::new(Carrier::new(["y1", "y2", "y3"]).unwrap());
        let lambda = FuzzySet::ones(x.clone());
        let mu = set(&y, &["1/5", "7/10", "0"]);
        let p = product(&lambda, &mu);
        assert_eq!(p.len(), 6);
        assert_eq!(p.grade("(x2,y2)").unwrap(), g("7/10"));
        assert_eq!(p.grades()[3..], mu.grades()[..]);

        let lambda = set(&x, &["3/10", "1"]);
        assert_eq!(product(&lambda, &mu).grade("(x1,y2)").unwrap(), g("3/10"));
    }

    #[test]
    fn level_sets() {
        let c = Arc::new(Carrier::new(["a", "b", "c"]).unwrap());
        let mu = set(&c, &["1", "1/2", "1/4"]);
        assert_eq!(level_set(&mu, Grade::ZERO), BTreeSet::from([0, 1, 2]));
        assert_eq!(level_set(&mu, g("1/2")), BTreeSet::from([0, 1]));
        let low = set(&c, &["1/2", "1/2", "1/4"]);
        assert!(level_set(&low, g("3/4")).is_empty());
    }

    #[test]
    fn complement_by_subtraction() {
        let c = ab();
        let ambient = FuzzySet::ones(c.clone());
        let sub = set(&c, &["1/4", "1"]);
        assert_eq!(complement_in(&ambient, &sub).unwrap(), set(&c, &["3/4", "0"]));
        assert!(complement_in(&sub, &sub).unwrap().is_zero());
        assert_eq!(complement_in(&sub, &FuzzySet::zero(c.clone())).unwrap(), sub);
    }

    #[test]
    fn complement_reports_excess() {
        let c = ab();
        let ambient = set(&c, &["1/2", "1/2"]);
        let sub = set(&c, &["1/4", "3/4"]);
        assert_eq!(
            complement_in(&ambient, &sub).unwrap_err(),
            Error::ExceedsBound { element: "b".into(), grade: g("3/4"), bound: g("1/2") }
        );
    }

    #[test]
    fn subset_with_witness() {
        let c = Arc::new(Carrier::new(["x"]).unwrap());
        let a = set(&c, &["1/2"]);
        let b = set(&c, &["1/4"]);
        assert_eq!(is_subset(&a, &b).unwrap(), Verdict::Violated(0));
        assert!(is_subset(&FuzzySet::zero(c.clone()), &a).unwrap().holds());
        assert!(is_subset(&a, &a).unwrap().holds());
    }

    #[test]
    fn fuzzy_point_membership() {
        let c = ab();
        let mu = set(&c, &["1/4", "1"]);
        let at_boundary = FuzzyPoint::new("a", g("1/4")).unwrap();
        assert!(point_in(&at_boundary, &mu).unwrap());
        assert!(point_in(&FuzzyPoint::new("b", g("1/3")).unwrap(), &mu).unwrap());
        assert!(!point_in(&FuzzyPoint::new("a", g("1/2")).unwrap(), &mu).unwrap());
        assert_eq!(
            point_in(&FuzzyPoint::new("z", g("1/2")).unwrap(), &mu).unwrap_err(),
            Error::UnknownElement("z".into())
        );
        assert_eq!(FuzzyPoint::new("a", Grade::ZERO).unwrap_err(), Error::ZeroHeight);
        assert_eq!(at_boundary.to_set(c).unwrap().grades(), &[g("1/4"), Grade::ZERO]);
    }

    #[test]
    fn normal_elements() {
        let c = ab();
        let any_mu = set(&c, &["1", "1"]);
        assert!(is_normal_element(&set(&c, &["1", "0"]), &any_mu, "a").unwrap().holds());
        let lambda = set(&c, &["1/2", "0"]);
        let quarter = FuzzySet::constant(c.clone(), g("1/4"));
        assert!(is_normal_element(&lambda, &quarter, "a").unwrap().holds());
        let lambda = set(&c, &["1/4", "0"]);
        let mu = set(&c, &["0", "1/2"]);
        assert_eq!(is_normal_element(&lambda, &mu, "a").unwrap(), Verdict::Violated(1));
        assert!(is_normal_element(&lambda, &mu, "q").is_err());
    }

    #[test]
    fn reindex_preserves_grades_by_label() {
        let c = ab();
        let mu = set(&c, &["1/4", "1/2"]);
        let ba = Arc::new(Carrier::new(["b", "a"]).unwrap());
        let r = mu.reindexed(ba).unwrap();
        assert_eq!(r.grade("a").unwrap(), g("1/4"));
        assert_eq!(r.at(0), g("1/2"));
    }
}
