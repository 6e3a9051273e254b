//! Fuzzy proper functions induced by crisp maps.
//!
//! A proper function `F: λ → μ` is stored as a total crisp map `X → Y`
//! together with the source and target fuzzy sets. The fuzzy relation is
//! derived: `F(x, y) = λ(x)` when `y = map(x)` and `0` otherwise, so the
//! equalities `F(x, y) = λ(x)` used by surjectivity and by homomorphisms hold
//! exactly on the graph.

use std::fmt;

use crate::error::Error;
use crate::grade::Grade;
use crate::groups::FiniteGroup;
use crate::sets::FuzzySet;
use crate::verdict::Verdict;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProperFunction {
    source: FuzzySet,
    target: FuzzySet,
    map: Vec<usize>,
}

impl ProperFunction {
    pub fn new(source: FuzzySet, target: FuzzySet, map: Vec<usize>) -> Result<Self, Error> {
        if map.len() != source.len() {
            return Err(Error::MapNotTotal { expected: source.len(), found: map.len() });
        }
        if let Some(&y) = map.iter().find(|&&y| y >= target.len()) {
            return Err(Error::MapOutOfRange(y));
        }
        if let Some(x) = (0..map.len()).find(|&x| source.at(x) > target.at(map[x])) {
            return Err(Error::NotProper(source.carrier().label(x).to_string()));
        }
        Ok(ProperFunction { source, target, map })
    }

    /// Builds the map from `(x, y)` label pairs; every source element must
    /// appear exactly once.
    pub fn from_pairs<'a>(
        source: FuzzySet,
        target: FuzzySet,
        pairs: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<Self, Error> {
        let mut map = vec![None; source.len()];
        for (x, y) in pairs {
            let i = source.carrier().require(x)?;
            let j = target.carrier().require(y)?;
            if map[i].replace(j).is_some() {
                return Err(Error::DuplicateElement(x.to_string()));
            }
        }
        let map = map
            .into_iter()
            .enumerate()
            .map(|(i, y)| y.ok_or_else(|| Error::MissingImage(source.carrier().label(i).to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        ProperFunction::new(source, target, map)
    }

    pub fn source(&self) -> &FuzzySet {
        &self.source
    }

    pub fn target(&self) -> &FuzzySet {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// The derived fuzzy relation `F(x, y)`.
    pub fn relation(&self, x: usize, y: usize) -> Grade {
        if self.map[x] == y {
            self.source.at(x)
        } else {
            Grade::ZERO
        }
    }

    /// `x ↦ other(self(x))`, from this source to the other's target.
    pub fn then(&self, other: &ProperFunction) -> Result<ProperFunction, Error> {
        if *self.target.carrier() != *other.source.carrier() {
            return Err(Error::CarrierMismatch);
        }
        let map = self.map.iter().map(|&y| other.map[y]).collect();
        ProperFunction::new(self.source.clone(), other.target.clone(), map)
    }
}

/// `F(A)(y) = sup { min(F(x, y), A(x)) : x }`, zero off the image.
pub fn image(f: &ProperFunction, a: &FuzzySet) -> Result<FuzzySet, Error> {
    a.ensure_within(&f.source)?;
    let mut grades = vec![Grade::ZERO; f.target.len()];
    for (x, &y) in f.map.iter().enumerate() {
        let g = f.source.at(x).min(a.at(x));
        if g > grades[y] {
            grades[y] = g;
        }
    }
    FuzzySet::new(f.target.carrier().clone(), grades)
}

/// `F⁻¹(B)(x) = min(λ(x), B(map(x)))`.
pub fn preimage(f: &ProperFunction, b: &FuzzySet) -> Result<FuzzySet, Error> {
    b.ensure_within(&f.target)?;
    let grades = f
        .map
        .iter()
        .enumerate()
        .map(|(x, &y)| f.source.at(x).min(b.at(y)))
        .collect();
    FuzzySet::new(f.source.carrier().clone(), grades)
}

/// Injectivity, surjectivity and bijectivity of a proper function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapClass {
    /// Witness: the first pair `x1 < x2` with the same image.
    pub injective: Verdict<(usize, usize)>,
    /// Witness: the first `y` with `μ(y) > 0` and no preimage.
    pub surjective: Verdict<usize>,
}

impl MapClass {
    pub fn bijective(&self) -> bool {
        self.injective.holds() && self.surjective.holds()
    }
}

pub fn classify(f: &ProperFunction) -> MapClass {
    let mut hit = vec![false; f.target.len()];
    for &y in &f.map {
        hit[y] = true;
    }
    // With the derived relation, F(x, map(x)) = λ(x) always holds, so a
    // preimage is all surjectivity needs.
    let uncovered = (0..f.target.len()).find(|&y| !f.target.at(y).is_zero() && !hit[y]);
    MapClass {
        injective: Verdict::from_violation(earliest_collision(f)),
        surjective: Verdict::from_violation(uncovered),
    }
}

/// Lexicographically first `(x1, x2)`, `x1 < x2`, with `map(x1) = map(x2)`.
fn earliest_collision(f: &ProperFunction) -> Option<(usize, usize)> {
    let n = f.map.len();
    (0..n).find_map(|x1| ((x1 + 1)..n).find(|&x2| f.map[x1] == f.map[x2]).map(|x2| (x1, x2)))
}

/// Witness pair `(x, z)` where `map(xz) != map(x) map(z)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomomorphismViolation {
    pub x: usize,
    pub z: usize,
}

impl fmt::Display for HomomorphismViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.z)
    }
}

/// For all `x, z` in `G`, with `y = map(x)` and `w = map(z)`, requires
/// `F(xz, yw) = λ(xz)`, which under the derived relation is `map(xz) = yw`.
pub fn is_fuzzy_homomorphism(
    f: &ProperFunction,
    source_group: &FiniteGroup,
    target_group: &FiniteGroup,
) -> Result<Verdict<HomomorphismViolation>, Error> {
    if **f.source.carrier() != **source_group.carrier() || **f.target.carrier() != **target_group.carrier() {
        return Err(Error::CarrierMismatch);
    }
    let n = source_group.order();
    for x in 0..n {
        for z in 0..n {
            let expected = target_group.op(f.map[x], f.map[z]);
            if f.map[source_group.op(x, z)] != expected {
                return Ok(Verdict::Violated(HomomorphismViolation { x, z }));
            }
        }
    }
    Ok(Verdict::Holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::cyclic;
    use crate::sets::Carrier;
    use std::sync::Arc;

    fn g(s: &str) -> Grade {
        s.parse().unwrap()
    }

    fn carrier(labels: &[&str]) -> Arc<Carrier> {
        Arc::new(Carrier::new(labels.iter().copied()).unwrap())
    }

    fn set(c: &Arc<Carrier>, grades: &[&str]) -> FuzzySet {
        FuzzySet::new(c.clone(), grades.iter().map(|s| g(s)).collect()).unwrap()
    }

    fn identity(c: &Arc<Carrier>) -> ProperFunction {
        let ones = FuzzySet::ones(c.clone());
        ProperFunction::new(ones.clone(), ones, (0..c.len()).collect()).unwrap()
    }

    #[test]
    fn identity_images() {
        let c = carrier(&["a", "b", "c"]);
        let f = identity(&c);
        let a = set(&c, &["1/2", "0", "1"]);
        assert_eq!(image(&f, &a).unwrap(), a);
        assert_eq!(preimage(&f, &a).unwrap(), a);
    }

    #[test]
    fn constant_map_image_is_max() {
        let x = carrier(&["a", "b", "c"]);
        let y = carrier(&["y0", "y1"]);
        let f = ProperFunction::new(FuzzySet::ones(x.clone()), FuzzySet::ones(y.clone()), vec![0, 0, 0]).unwrap();
        let a = set(&x, &["1/4", "2/3", "1/2"]);
        assert_eq!(image(&f, &a).unwrap(), set(&y, &["2/3", "0"]));
    }

    #[test]
    fn image_enumerates_preimage() {
        let x = carrier(&["a", "b"]);
        let y = carrier(&["y"]);
        let f = ProperFunction::new(FuzzySet::ones(x.clone()), FuzzySet::ones(y.clone()), vec![0, 0]).unwrap();
        let a = set(&x, &["1/2", "3/4"]);
        assert_eq!(image(&f, &a).unwrap().at(0), g("3/4"));
    }

    #[test]
    fn preimage_takes_min_with_source() {
        let x = carrier(&["a"]);
        let y = carrier(&["y"]);
        let f = ProperFunction::new(set(&x, &["1/2"]), FuzzySet::ones(y.clone()), vec![0]).unwrap();
        let b = set(&y, &["3/4"]);
        assert_eq!(preimage(&f, &b).unwrap().at(0), g("1/2"));
        // B = μ gives min(λ(x), μ(map x))
        assert_eq!(preimage(&f, f.target()).unwrap().at(0), g("1/2"));
    }

    #[test]
    fn image_rejects_sets_above_source() {
        let x = carrier(&["a"]);
        let f = ProperFunction::new(set(&x, &["1/4"]), set(&x, &["1"]), vec![0]).unwrap();
        assert!(matches!(image(&f, &set(&x, &["1/2"])), Err(Error::ExceedsBound { .. })));
        assert!(preimage(&f, &set(&x, &["1"])).is_ok());
        let f = ProperFunction::new(set(&x, &["1/4"]), set(&x, &["1/4"]), vec![0]).unwrap();
        assert!(matches!(preimage(&f, &set(&x, &["1/2"])), Err(Error::ExceedsBound { .. })));
    }

    #[test]
    fn source_grades_must_fit_under_images() {
        let x = carrier(&["a"]);
        let err = ProperFunction::new(set(&x, &["1"]), set(&x, &["1/4"]), vec![0]).unwrap_err();
        assert_eq!(err, Error::NotProper("a".into()));
    }

    #[test]
    fn classification() {
        let c = carrier(&["a", "b"]);
        let id = identity(&c);
        let class = classify(&id);
        assert!(class.injective.holds() && class.surjective.holds() && class.bijective());

        let x = carrier(&["a", "b"]);
        let y = carrier(&["y", "z"]);
        let f = ProperFunction::new(FuzzySet::ones(x.clone()), set(&y, &["1", "1/2"]), vec![0, 0]).unwrap();
        let class = classify(&f);
        assert_eq!(class.injective, Verdict::Violated((0, 1)));
        assert_eq!(class.surjective, Verdict::Violated(1));
        assert!(!class.bijective());

        // z has grade 0, so missing it does not break surjectivity
        let f = ProperFunction::new(FuzzySet::ones(x), set(&y, &["1", "0"]), vec![0, 0]).unwrap();
        assert!(classify(&f).surjective.holds());
    }

    #[test]
    fn homomorphisms_on_cyclic_groups() {
        let z4 = cyclic(4);
        let z2 = cyclic(2);
        let ones4 = FuzzySet::ones(z4.carrier().clone());
        let ones2 = FuzzySet::ones(z2.carrier().clone());

        let id = ProperFunction::new(ones4.clone(), ones4.clone(), vec![0, 1, 2, 3]).unwrap();
        assert!(is_fuzzy_homomorphism(&id, &z4, &z4).unwrap().holds());

        let trivial = ProperFunction::new(ones4.clone(), ones2.clone(), vec![0; 4]).unwrap();
        assert!(is_fuzzy_homomorphism(&trivial, &z4, &z2).unwrap().holds());

        let parity = ProperFunction::new(ones4.clone(), ones2.clone(), vec![0, 1, 0, 1]).unwrap();
        assert!(is_fuzzy_homomorphism(&parity, &z4, &z2).unwrap().holds());

        // x ↦ 1: map(0+0) = 1 but map(0)+map(0) = 0
        let constant_one = ProperFunction::new(ones4, ones2, vec![1; 4]).unwrap();
        assert_eq!(
            is_fuzzy_homomorphism(&constant_one, &z4, &z2).unwrap(),
            Verdict::Violated(HomomorphismViolation { x: 0, z: 0 })
        );
        assert!(is_fuzzy_homomorphism(&constant_one, &z4, &z4).is_err());
    }

    #[test]
    fn from_pairs_requires_total_map() {
        let x = carrier(&["a", "b"]);
        let ones = FuzzySet::ones(x.clone());
        let err = ProperFunction::from_pairs(ones.clone(), ones.clone(), [("a", "b")]).unwrap_err();
        assert_eq!(err, Error::MissingImage("b".into()));
        let f = ProperFunction::from_pairs(ones.clone(), ones, [("a", "b"), ("b", "b")]).unwrap();
        assert_eq!(f.map(), &[1, 1]);
        assert_eq!(f.relation(0, 1), Grade::ONE);
        assert_eq!(f.relation(0, 0), Grade::ZERO);
    }
}
