use std::path::Path;

use fuzzylie::groups::{is_fuzzy_subgroup, level_subgroup_oracle, FuzzySubgroupViolation};
use fuzzylie::maps::{is_fuzzy_homomorphism, ProperFunction};
use fuzzylie::sets::level_set as level;
use fuzzylie::{FuzzySet, Grade, Verdict};

use super::audit;
use crate::error::CliError;
use crate::load;
use crate::report::Report;
use crate::Options;

pub fn check_subgroup(o: &Options, group: &Path, set: &Path) -> Result<Report, CliError> {
    let g = load::group(group)?;
    let mu = load::fuzzy_set_on(set, g.carrier())?;
    let verdict = is_fuzzy_subgroup(&mu, &g)?;
    let mut r = Report::new("check-subgroup", "fuzzy subgroup: mu(xy) >= min(mu(x), mu(y)) and mu(x^-1) = mu(x)");
    r.field("ORDER", g.order());
    r.field("LEVEL_ORACLE", if level_subgroup_oracle(&mu, &g)? { "pass" } else { "fail" });
    let label = |x: usize| g.label(x).to_string();
    match &verdict {
        Verdict::Holds => {}
        Verdict::Violated(FuzzySubgroupViolation::Product { x, y, product, bound }) => {
            r.fail()
                .field("WITNESS_KIND", "product")
                .field("WITNESS_PAIR", format!("{},{}", label(*x), label(*y)))
                .field("WITNESS_PRODUCT", label(g.op(*x, *y)))
                .field("WITNESS_GRADE", product)
                .field("WITNESS_BOUND", bound);
            audit(&mut r, o.audit, || mu.at(g.op(*x, *y)) < mu.at(*x).min(mu.at(*y)));
        }
        Verdict::Violated(FuzzySubgroupViolation::Inverse { x, grade, inverse_grade }) => {
            r.fail()
                .field("WITNESS_KIND", "inverse")
                .field("WITNESS_ELEMENT", label(*x))
                .field("WITNESS_INVERSE", label(g.inverse(*x)))
                .field("WITNESS_GRADE", grade)
                .field("WITNESS_INVERSE_GRADE", inverse_grade);
            audit(&mut r, o.audit, || mu.at(g.inverse(*x)) != mu.at(*x));
        }
    }
    Ok(r)
}

pub fn check_homomorphism(o: &Options, source_group: &Path, target_group: &Path, map: &Path) -> Result<Report, CliError> {
    let g = load::group(source_group)?;
    let h = load::group(target_group)?;
    let spec = load::map_spec(map)?;
    let side = |reference: &Option<String>, group: &fuzzylie::groups::FiniteGroup| match reference {
        Some(p) => load::fuzzy_set_on(&load::resolve(map, p), group.carrier()),
        None => Ok(FuzzySet::ones(group.carrier().clone())),
    };
    let (lambda, mu) = (side(&spec.source, &g)?, side(&spec.target, &h)?);
    let indices = load::map_indices(map, &spec, g.carrier(), h.carrier())?;
    let f = ProperFunction::new(lambda, mu, indices).map_err(|e| CliError::in_file(map, e))?;
    let verdict = is_fuzzy_homomorphism(&f, &g, &h)?;
    let mut r = Report::new("check-homomorphism", "fuzzy homomorphism: F(xz, yw) = lambda(xz) whenever y = f(x), w = f(z)");
    r.field("SOURCE_ORDER", g.order()).field("TARGET_ORDER", h.order());
    if let Verdict::Violated(w) = verdict {
        let (x, z) = (w.x, w.z);
        r.fail()
            .field("WITNESS_PAIR", format!("{},{}", g.label(x), g.label(z)))
            .field("WITNESS_IMAGE", h.label(f.apply(g.op(x, z))))
            .field("WITNESS_EXPECTED", h.label(h.op(f.apply(x), f.apply(z))));
        audit(&mut r, o.audit, || f.apply(g.op(x, z)) != h.op(f.apply(x), f.apply(z)));
    }
    Ok(r)
}

pub fn level_set(_o: &Options, set: &Path, t: &str) -> Result<Report, CliError> {
    let mu = load::fuzzy_set(set)?;
    let t: Grade = t.parse().map_err(|e| CliError::Usage(format!("level t: {e}")))?;
    let members = level(&mu, t);
    let labels: Vec<&str> = members.iter().map(|&x| mu.carrier().label(x)).collect();
    let mut r = Report::new("level-set", "level subset mu_t = { x : mu(x) >= t }");
    r.field("T", t).field("SIZE", labels.len()).field("LEVEL_SET", format!("{{{}}}", labels.join(",")));
    Ok(r)
}
