use thiserror::Error;

use crate::grade::Grade;
use crate::groups::{GroupViolation, SubgroupViolation};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid grade: {0}")]
    InvalidGrade(String),
    #[error("grade arithmetic overflow")]
    GradeOverflow,
    #[error("carrier must have at least one element")]
    EmptyCarrier,
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("fuzzy sets live on different carriers")]
    CarrierMismatch,
    #[error("expected {expected} grades, found {found}")]
    GradeCount { expected: usize, found: usize },
    #[error("operation needs a nonempty family")]
    EmptyFamily,
    #[error("grade {grade} at `{element}` exceeds bound {bound}")]
    ExceedsBound { element: String, grade: Grade, bound: Grade },
    #[error("fuzzy point needs a positive height")]
    ZeroHeight,

    #[error("map must assign an image to all {expected} elements, got {found}")]
    MapNotTotal { expected: usize, found: usize },
    #[error("image index {0} is outside the target")]
    MapOutOfRange(usize),
    #[error("no image given for `{0}`")]
    MissingImage(String),
    #[error("source grade at `{0}` exceeds the target grade of its image")]
    NotProper(String),

    #[error("operation table is not an {order}x{order} table over the carrier")]
    TableShape { order: usize },
    #[error("not a group: {0}")]
    NotAGroup(GroupViolation),
    #[error("not a subgroup: {0}")]
    NotASubgroup(SubgroupViolation),
    #[error("action is not total or maps outside the space")]
    InvalidAction,
    #[error("action is not a group action: {0}")]
    NotAnAction(String),
    #[error("fuzzy subset is not invariant: {0}")]
    NotInvariant(String),
    #[error("relation is not an equivalence: {0}")]
    InvalidRelation(String),
    #[error("relation not preserved: g={g}, x={x}, y={y}")]
    RelationNotPreserved { g: String, x: String, y: String },

    #[error("lattice resolution must be positive")]
    InvalidLattice,
    #[error("grade {grade} at `{element}` is not a multiple of 1/{q}")]
    GradeOffLattice { element: String, grade: Grade, q: u64 },
    #[error("topologies use different lattices (1/{0} and 1/{1})")]
    LatticeMismatch(u64, u64),
    #[error("closure exceeded the cap of {cap} members")]
    ResourceCap { cap: usize },
    #[error("base member {0} is not open")]
    BaseNotOpen(String),
    #[error("map source or target does not match the topology ambients")]
    AmbientMismatch,
    #[error("topological group check needs the crisp group as ambient")]
    NotCrispAmbient,

    #[error("expected dimension {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("sample set is empty")]
    EmptySamples,
    #[error("sample set must contain the zero vector")]
    MissingZeroVector,

    #[error("charts {from} and {to} do not overlap")]
    EmptyOverlap { from: String, to: String },
    #[error("`{map}` has a component with fewer than 3 grid points")]
    GridTooSmall { map: String },
    #[error("finite-difference step fell below {min}")]
    StepUnderflow { min: f64 },
    #[error("degenerate finite-difference step")]
    DegenerateStep,
    #[error("sample {0} lies outside every chart")]
    UncoveredSample(usize),
    #[error("atlases must share their sample points")]
    SampleMismatch,
    #[error("grid point {0} lies outside the map's domain")]
    OutsideDomain(usize),
    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),
    #[error("invalid chart: {0}")]
    InvalidChart(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}
