//! Finite-dimensional Lie algebras over the rationals and fuzzy Lie
//! subalgebras and ideals checked on finite sample sets.
//!
//! Basis indices are 0-based here; text formats and reports use 1-based ones.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::grade::Grade;
use crate::verdict::Verdict;

pub type Scalar = BigRational;
pub type Vector = Vec<Scalar>;

pub fn scalar(num: i64, den: i64) -> Scalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int_vector(coords: &[i64]) -> Vector {
    coords.iter().map(|&c| scalar(c, 1)).collect()
}

/// `(a,b,c)` with rationals as `p/q`.
pub fn format_vector(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

fn check_dim(expected: usize, v: &[Scalar]) -> Result<(), Error> {
    if v.len() != expected {
        return Err(Error::DimensionMismatch { expected, found: v.len() });
    }
    Ok(())
}

/// Structure constants `c[i][j][k]` with `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureConstants {
    dim: usize,
    c: Vec<Scalar>,
    nonzero: Vec<(usize, usize, usize)>,
}

impl StructureConstants {
    pub fn zero(dim: usize) -> Result<Self, Error> {
        if dim == 0 {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        Ok(StructureConstants { dim, c: vec![Scalar::zero(); dim * dim * dim], nonzero: Vec::new() })
    }

    /// Builds from 0-based `(i, j, k, value)` entries; later entries for the
    /// same index overwrite earlier ones.
    pub fn from_entries(dim: usize, entries: impl IntoIterator<Item = (usize, usize, usize, Scalar)>) -> Result<Self, Error> {
        let mut sc = StructureConstants::zero(dim)?;
        for (i, j, k, v) in entries {
            let m = i.max(j).max(k);
            if m >= dim {
                return Err(Error::DimensionMismatch { expected: dim, found: m + 1 });
            }
            sc.c[(i * dim + j) * dim + k] = v;
        }
        sc.nonzero = (0..dim * dim * dim)
            .filter(|&t| !sc.c[t].is_zero())
            .map(|t| (t / (dim * dim), (t / dim) % dim, t % dim))
            .collect();
        Ok(sc)
    }

    /// `[e1,e2] = e3`, `[e2,e3] = e1`, `[e3,e1] = e2`: the cross product.
    pub fn cross_product() -> Self {
        let one = Scalar::one;
        let entries = [(0, 1, 2), (1, 2, 0), (2, 0, 1)]
            .into_iter()
            .flat_map(|(i, j, k)| [(i, j, k, one()), (j, i, k, -one())]);
        StructureConstants::from_entries(3, entries).expect("indices below 3")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.c[(i * self.dim + j) * self.dim + k]
    }

    /// Nonzero constants as 0-based `(i, j, k)` in index order.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, usize, &Scalar)> {
        self.nonzero.iter().map(|&(i, j, k)| (i, j, k, self.get(i, j, k)))
    }

    pub fn basis(&self, i: usize) -> Vector {
        let mut v = vec![Scalar::zero(); self.dim];
        v[i] = Scalar::one();
        v
    }

    /// Bilinear expansion of `[x, y]`.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vector, Error> {
        check_dim(self.dim, x)?;
        check_dim(self.dim, y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    fn bracket_unchecked(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = vec![Scalar::zero(); self.dim];
        for &(i, j, k) in &self.nonzero {
            if x[i].is_zero() || y[j].is_zero() {
                continue;
            }
            out[k] += &x[i] * &y[j] * self.get(i, j, k);
        }
        out
    }
}

/// First failure of the Lie axioms on basis elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LieAxiomViolation {
    /// `c[i][j][k] != -c[j][i][k]`.
    Antisymmetry { i: usize, j: usize, k: usize },
    /// The Jacobi sum for `(e_i, e_j, e_k)` is nonzero.
    Jacobi { i: usize, j: usize, k: usize },
}

impl fmt::Display for LieAxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieAxiomViolation::Antisymmetry { i, j, k } => {
                write!(f, "antisymmetry fails at ({},{},{})", i + 1, j + 1, k + 1)
            }
            LieAxiomViolation::Jacobi { i, j, k } => write!(f, "Jacobi fails at ({},{},{})", i + 1, j + 1, k + 1),
        }
    }
}

/// Antisymmetry of every constant, then the Jacobi identity on every basis
/// triple; by trilinearity that covers all vectors.
pub fn validate_lie(sc: &StructureConstants) -> Verdict<LieAxiomViolation> {
    let n = sc.dim;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if *sc.get(i, j, k) != -sc.get(j, i, k) {
                    return Verdict::Violated(LieAxiomViolation::Antisymmetry { i, j, k });
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (x, y, z) = (sc.basis(i), sc.basis(j), sc.basis(k));
                let a = sc.bracket_unchecked(&x, &sc.bracket_unchecked(&y, &z));
                let b = sc.bracket_unchecked(&y, &sc.bracket_unchecked(&z, &x));
                let c = sc.bracket_unchecked(&z, &sc.bracket_unchecked(&x, &y));
                if (0..n).any(|t| !(&a[t] + &b[t] + &c[t]).is_zero()) {
                    return Verdict::Violated(LieAxiomViolation::Jacobi { i, j, k });
                }
            }
        }
    }
    Verdict::Holds
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Zero,
    NonZero,
    Positive,
    Negative,
}

impl Sign {
    fn test(self, v: &Scalar) -> bool {
        match self {
            Sign::Zero => v.is_zero(),
            Sign::NonZero => !v.is_zero(),
            Sign::Positive => v.is_positive(),
            Sign::Negative => v.is_negative(),
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Sign::Zero => "= 0",
            Sign::NonZero => "!= 0",
            Sign::Positive => "> 0",
            Sign::Negative => "< 0",
        }
    }
}

/// A sign condition on one coordinate (0-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoordTest {
    pub coord: usize,
    pub sign: Sign,
}

/// Coordinate names: `x, y, z` up to dimension 3, else `x1, x2, ...`.
pub fn coord_name(coord: usize, dim: usize) -> String {
    if dim <= 3 {
        ["x", "y", "z"][coord].to_string()
    } else {
        format!("x{}", coord + 1)
    }
}

/// First-match list of conjunctive sign conditions with a default grade.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipClassifier {
    dim: usize,
    cases: Vec<(Vec<CoordTest>, Grade)>,
    default: Grade,
}

impl MembershipClassifier {
    pub fn new(dim: usize, cases: Vec<(Vec<CoordTest>, Grade)>, default: Grade) -> Result<Self, Error> {
        for (tests, _) in &cases {
            if let Some(t) = tests.iter().find(|t| t.coord >= dim) {
                return Err(Error::DimensionMismatch { expected: dim, found: t.coord + 1 });
            }
        }
        Ok(MembershipClassifier { dim, cases, default })
    }

    pub fn constant(dim: usize, grade: Grade) -> Self {
        MembershipClassifier { dim, cases: Vec::new(), default: grade }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cases(&self) -> &[(Vec<CoordTest>, Grade)] {
        &self.cases
    }

    pub fn default_grade(&self) -> Grade {
        self.default
    }

    pub fn grade(&self, v: &[Scalar]) -> Result<Grade, Error> {
        check_dim(self.dim, v)?;
        Ok(self.grade_unchecked(v))
    }

    fn grade_unchecked(&self, v: &[Scalar]) -> Grade {
        self.cases
            .iter()
            .find(|(tests, _)| tests.iter().all(|t| t.sign.test(&v[t.coord])))
            .map_or(self.default, |(_, g)| *g)
    }

    /// The case list in the text form accepted by the parser.
    pub fn describe(&self) -> String {
        let mut out = String::new();
        for (tests, g) in &self.cases {
            let conds: Vec<String> = tests
                .iter()
                .map(|t| format!("{} {}", coord_name(t.coord, self.dim), t.sign.symbol()))
                .collect();
            let cond = if conds.is_empty() { "true".to_string() } else { conds.join(" and ") };
            out.push_str(&format!("{cond} -> {g}\n"));
        }
        out.push_str(&format!("default {}\n", self.default));
        out
    }
}

/// Finite vectors and scalars over which the universal conditions are
/// checked. Duplicate vectors are dropped, keeping the first occurrence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleSet {
    dim: usize,
    vectors: Vec<Vector>,
    scalars: Vec<Scalar>,
}

impl SampleSet {
    pub fn new(dim: usize, vectors: Vec<Vector>, scalars: Vec<Scalar>) -> Result<Self, Error> {
        if vectors.is_empty() {
            return Err(Error::EmptySamples);
        }
        for v in &vectors {
            check_dim(dim, v)?;
        }
        let mut seen = HashSet::new();
        let vectors: Vec<Vector> = vectors.into_iter().filter(|v| seen.insert(v.clone())).collect();
        if !vectors.iter().any(|v| v.iter().all(Zero::is_zero)) {
            return Err(Error::MissingZeroVector);
        }
        Ok(SampleSet { dim, vectors, scalars })
    }

    /// Every integer vector in `[-r, r]^dim`, lexicographically.
    pub fn grid(dim: usize, r: i64) -> Vec<Vector> {
        let side = (2 * r + 1) as usize;
        (0..side.pow(dim as u32))
            .map(|mut code| {
                let mut v = vec![Scalar::zero(); dim];
                for slot in v.iter_mut().rev() {
                    *slot = scalar((code % side) as i64 - r, 1);
                    code /= side;
                }
                v
            })
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vectors(&self) -> &[Vector] {
        &self.vectors
    }

    pub fn scalars(&self) -> &[Scalar] {
        &self.scalars
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LieCondition {
    /// `μ(x + y) >= min(μ(x), μ(y))`.
    Sum,
    /// `μ(αx) >= μ(x)`.
    Scalar,
    /// `μ([x, y]) >= min` (subalgebra) or `max` (ideal) of `μ(x), μ(y)`.
    Bracket,
}

impl LieCondition {
    /// 1-based condition index: sum (i), scalar (ii), bracket (iii).
    pub fn index(self) -> usize {
        match self {
            LieCondition::Sum => 1,
            LieCondition::Scalar => 2,
            LieCondition::Bracket => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Operand {
    Vector(Vector),
    Scalar(Scalar),
}

impl fmt::Display for Operand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Operand::Vector(v) => f.write_str(&format_vector(v)),
            Operand::Scalar(a) => write!(f, "{a}"),
        }
    }
}

/// A sampled counterexample: `lhs < rhs` for the named condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieViolation {
    pub condition: LieCondition,
    pub x: Vector,
    pub other: Operand,
    /// The vector whose grade is `lhs`: `x + y`, `αx` or `[x, y]`.
    pub value: Vector,
    pub lhs: Grade,
    pub rhs: Grade,
}

impl fmt::Display for LieViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "condition {} at x={} {}={}: mu{} = {} < {}",
            self.condition.index(),
            format_vector(&self.x),
            if matches!(self.other, Operand::Scalar(_)) { "alpha" } else { "y" },
            self.other,
            format_vector(&self.value),
            self.lhs,
            self.rhs
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum BracketBound {
    Min,
    Max,
}

fn scan(
    mu: &MembershipClassifier,
    sc: &StructureConstants,
    samples: &SampleSet,
    bound: BracketBound,
) -> Result<Verdict<LieViolation>, Error> {
    for d in [mu.dim, samples.dim] {
        if d != sc.dim {
            return Err(Error::DimensionMismatch { expected: sc.dim, found: d });
        }
    }
    let grades: Vec<Grade> = samples.vectors.iter().map(|v| mu.grade_unchecked(v)).collect();
    for (x, &mx) in samples.vectors.iter().zip(&grades) {
        for alpha in &samples.scalars {
            let ax: Vector = x.iter().map(|c| c * alpha).collect();
            let lhs = mu.grade_unchecked(&ax);
            if lhs < mx {
                return Ok(Verdict::Violated(LieViolation {
                    condition: LieCondition::Scalar,
                    x: x.clone(),
                    other: Operand::Scalar(alpha.clone()),
                    value: ax,
                    lhs,
                    rhs: mx,
                }));
            }
        }
        for (y, &my) in samples.vectors.iter().zip(&grades) {
            let violation = |condition, value: Vector, lhs, rhs| LieViolation {
                condition,
                x: x.clone(),
                other: Operand::Vector(y.clone()),
                value,
                lhs,
                rhs,
            };
            let sum: Vector = x.iter().zip(y).map(|(a, b)| a + b).collect();
            let lhs = mu.grade_unchecked(&sum);
            if lhs < mx.min(my) {
                return Ok(Verdict::Violated(violation(LieCondition::Sum, sum, lhs, mx.min(my))));
            }
            let br = sc.bracket_unchecked(x, y);
            let lhs = mu.grade_unchecked(&br);
            let rhs = match bound {
                BracketBound::Min => mx.min(my),
                BracketBound::Max => mx.max(my),
            };
            if lhs < rhs {
                return Ok(Verdict::Violated(violation(LieCondition::Bracket, br, lhs, rhs)));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Checks the subalgebra conditions on the samples. For each `x` in sample
/// order the scalar condition comes first, then for each `y` the sum and
/// bracket conditions. `Holds` only means no violation on this sample set.
pub fn is_fuzzy_lie_subalgebra(
    mu: &MembershipClassifier,
    sc: &StructureConstants,
    samples: &SampleSet,
) -> Result<Verdict<LieViolation>, Error> {
    scan(mu, sc, samples, BracketBound::Min)
}

/// As [`is_fuzzy_lie_subalgebra`] with `max` in the bracket condition.
pub fn is_fuzzy_lie_ideal(
    mu: &MembershipClassifier,
    sc: &StructureConstants,
    samples: &SampleSet,
) -> Result<Verdict<LieViolation>, Error> {
    scan(mu, sc, samples, BracketBound::Max)
}

/// Cross product on `R^3` with `μ` equal to `1` at the origin, `1/4` on the
/// rest of the z-axis and `0` elsewhere.
///
/// Samples start with `(0,0,1)`, `(1,1,1)`, `(-1,1,0)` and continue with the
/// integer grid `[-2,2]^3`; scalars are `-2, -1, 0, 1/2, 1, 2`.
pub fn z_axis_fixture() -> (StructureConstants, MembershipClassifier, SampleSet) {
    let quarter = Grade::new(1, 4).expect("1/4 is a grade");
    let zero = |coord| CoordTest { coord, sign: Sign::Zero };
    let classifier = MembershipClassifier::new(
        3,
        vec![
            (vec![zero(0), zero(1), zero(2)], Grade::ONE),
            (vec![zero(0), zero(1), CoordTest { coord: 2, sign: Sign::NonZero }], quarter),
        ],
        Grade::ZERO,
    )
    .expect("coordinates below 3");
    let mut vectors = vec![int_vector(&[0, 0, 1]), int_vector(&[1, 1, 1]), int_vector(&[-1, 1, 0])];
    vectors.extend(SampleSet::grid(3, 2));
    let scalars = vec![scalar(-2, 1), scalar(-1, 1), scalar(0, 1), scalar(1, 2), scalar(1, 1), scalar(2, 1)];
    let samples = SampleSet::new(3, vectors, scalars).expect("grid contains the origin");
    (StructureConstants::cross_product(), classifier, samples)
}
