use std::path::Path;

use fuzzylie::lie::{
    z_axis_fixture, format_vector, is_fuzzy_lie_ideal, is_fuzzy_lie_subalgebra, scalar, validate_lie,
    LieAxiomViolation, LieCondition, LieViolation, MembershipClassifier, Operand, SampleSet, StructureConstants,
};
use fuzzylie::Verdict;

use super::audit;
use crate::error::CliError;
use crate::load;
use crate::report::Report;
use crate::Options;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Subalgebra,
    Ideal,
}

const SUBALGEBRA: &str =
    "fuzzy Lie subalgebra: mu(x+y) >= min, mu(ax) >= mu(x), mu([x,y]) >= min(mu(x), mu(y)) on the samples";
const IDEAL: &str =
    "fuzzy Lie ideal: mu(x+y) >= min, mu(ax) >= mu(x), mu([x,y]) >= max(mu(x), mu(y)) on the samples";

pub fn check_lie(_o: &Options, path: &Path) -> Result<Report, CliError> {
    let sc = load::structure_constants(path)?;
    let mut r = Report::new("check-lie", "Lie algebra: c_ijk = -c_jik and the Jacobi identity on basis triples");
    r.field("DIM", sc.dim()).field("NONZERO_CONSTANTS", sc.nonzero().count());
    if let Verdict::Violated(w) = validate_lie(&sc) {
        let (kind, i, j, k) = match w {
            LieAxiomViolation::Antisymmetry { i, j, k } => ("antisymmetry", i, j, k),
            LieAxiomViolation::Jacobi { i, j, k } => ("jacobi", i, j, k),
        };
        r.fail().field("WITNESS_KIND", kind).field("WITNESS_TRIPLE", format!("{},{},{}", i + 1, j + 1, k + 1));
    }
    Ok(r)
}

/// Integer grid `[-r, r]^n` (r = 2 up to dimension 3, else 1) and scalars
/// `-2, -1, 0, 1/2, 1, 2`.
fn default_samples(dim: usize) -> Result<SampleSet, CliError> {
    let r = match dim {
        0..=3 => 2,
        4..=5 => 1,
        _ => return Err(CliError::Usage(format!("dimension {dim}: pass --samples to choose sample vectors"))),
    };
    let scalars = vec![scalar(-2, 1), scalar(-1, 1), scalar(0, 1), scalar(1, 2), scalar(1, 1), scalar(2, 1)];
    Ok(SampleSet::new(dim, SampleSet::grid(dim, r), scalars)?)
}

/// Recomputes the violated inequality from the definition.
fn confirm(w: &LieViolation, mu: &MembershipClassifier, sc: &StructureConstants, kind: Kind) -> bool {
    let grade = |v: &[fuzzylie::lie::Scalar]| mu.grade(v).ok();
    let (Some(mx), Some(lhs)) = (grade(&w.x), grade(&w.value)) else {
        return false;
    };
    let (value, rhs) = match (&w.condition, &w.other) {
        (LieCondition::Scalar, Operand::Scalar(a)) => (w.x.iter().map(|c| c * a).collect(), mx),
        (LieCondition::Sum, Operand::Vector(y)) => {
            let Some(my) = grade(y) else { return false };
            (w.x.iter().zip(y).map(|(a, b)| a + b).collect(), mx.min(my))
        }
        (LieCondition::Bracket, Operand::Vector(y)) => {
            let Some(my) = grade(y) else { return false };
            let Ok(br) = sc.bracket(&w.x, y) else { return false };
            (br, if kind == Kind::Ideal { mx.max(my) } else { mx.min(my) })
        }
        _ => return false,
    };
    value == w.value && lhs == w.lhs && rhs == w.rhs && lhs < rhs
}

fn witness_fields(r: &mut Report, prefix: &str, w: &LieViolation) {
    let key = |k: &str| format!("{prefix}{k}");
    r.field(&key("_CONDITION"), w.condition.index());
    match &w.other {
        Operand::Vector(y) => {
            r.field(&key(""), format!("{},{}", format_vector(&w.x), format_vector(y)))
                .field(&key("_X"), format_vector(&w.x))
                .field(&key("_Y"), format_vector(y));
        }
        Operand::Scalar(a) => {
            r.field(&key(""), format!("{},{a}", format_vector(&w.x)))
                .field(&key("_X"), format_vector(&w.x))
                .field(&key("_ALPHA"), a);
        }
    }
    r.field(&key("_VALUE"), format_vector(&w.value)).field(&key("_LHS"), w.lhs).field(&key("_RHS"), w.rhs);
}

pub fn check_conditions(o: &Options, constants: &Path, classifier: &Path, kind: Kind) -> Result<Report, CliError> {
    let sc = load::structure_constants(constants)?;
    let mu = load::classifier(classifier, sc.dim())?;
    let samples = match &o.samples {
        Some(p) => load::samples(p, sc.dim())?,
        None => default_samples(sc.dim())?,
    };
    let (name, provenance, verdict) = match kind {
        Kind::Subalgebra => ("check-lie-subalgebra", SUBALGEBRA, is_fuzzy_lie_subalgebra(&mu, &sc, &samples)?),
        Kind::Ideal => ("check-lie-ideal", IDEAL, is_fuzzy_lie_ideal(&mu, &sc, &samples)?),
    };
    let mut r = Report::new(name, provenance);
    r.field("DIM", sc.dim())
        .field("LIE_AXIOMS", if validate_lie(&sc).holds() { "pass" } else { "fail" })
        .field("SAMPLE_VECTORS", samples.vectors().len())
        .field("SAMPLE_SCALARS", samples.scalars().len());
    if let Verdict::Violated(w) = verdict {
        r.fail();
        witness_fields(&mut r, "WITNESS", &w);
        audit(&mut r, o.audit, || confirm(&w, &mu, &sc, kind));
    }
    Ok(r)
}

pub fn demo_example(o: &Options) -> Result<Report, CliError> {
    let (sc, mu, samples) = z_axis_fixture();
    let sub = is_fuzzy_lie_subalgebra(&mu, &sc, &samples)?;
    let ideal = is_fuzzy_lie_ideal(&mu, &sc, &samples)?;
    let mut r = Report::new(
        "demo-example-2-14",
        "cross product on R^3 with mu = 1 at 0, 1/4 on the rest of the z-axis, 0 elsewhere: subalgebra and ideal conditions",
    );
    r.field("LIE_AXIOMS", if validate_lie(&sc).holds() { "pass" } else { "fail" })
        .field("CLASSIFIER", mu.describe().trim_end())
        .field("SAMPLE_VECTORS", samples.vectors().len())
        .field("SAMPLE_SCALARS", samples.scalars().len())
        .field("SUBALGEBRA_VERDICT", super::word(&sub));
    if let Verdict::Violated(w) = &sub {
        r.fail();
        witness_fields(&mut r, "SUBALGEBRA_WITNESS", w);
    }
    r.field("IDEAL_VERDICT", super::word(&ideal));
    if let Verdict::Violated(w) = &ideal {
        r.fail();
        witness_fields(&mut r, "IDEAL_WITNESS", w);
        audit(&mut r, o.audit, || confirm(w, &mu, &sc, Kind::Ideal));
    }
    Ok(r)
}
