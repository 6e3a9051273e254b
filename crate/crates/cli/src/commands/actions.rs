use std::path::Path;

use fuzzylie::groups::{
    check_subgroup, is_g_invariant, is_invariant_under, quotient_action, restrict_to_invariant, restrict_to_subgroup,
    verify_action, ActionViolation, FiniteAction,
};
use fuzzylie::{Error, FuzzySet, Grade, Verdict};

use super::audit;
use crate::error::CliError;
use crate::load;
use crate::report::Report;
use crate::Options;

/// Rows `g: x->y ...` joined by `; `.
fn table(action: &FiniteAction) -> String {
    let group = action.group();
    let space = action.space();
    (0..group.order())
        .map(|g| {
            let images: Vec<String> = (0..space.len())
                .map(|x| format!("{}->{}", space.label(x), space.label(action.apply(g, x))))
                .collect();
            format!("{}: {}", group.label(g), images.join(" "))
        })
        .collect::<Vec<_>>()
        .join("; ")
}

/// Fills the action-law witness; returns whether the law holds.
fn action_laws(o: &Options, r: &mut Report, action: &FiniteAction) -> bool {
    let (group, space) = (action.group(), action.space());
    match verify_action(action) {
        Verdict::Holds => true,
        Verdict::Violated(ActionViolation::Composition { g, h, x }) => {
            let left = action.apply(g, action.apply(h, x));
            let right = action.apply(group.op(g, h), x);
            r.fail()
                .field("WITNESS_KIND", "composition")
                .field("WITNESS_TRIPLE", format!("{},{},{}", group.label(g), group.label(h), space.label(x)))
                .field("WITNESS_LEFT", space.label(left))
                .field("WITNESS_RIGHT", space.label(right));
            audit(r, o.audit, || left != right);
            false
        }
        Verdict::Violated(ActionViolation::Uncovered { x }) => {
            r.fail().field("WITNESS_KIND", "surjectivity").field("WITNESS_POINT", space.label(x));
            audit(r, o.audit, || {
                (0..group.order()).all(|g| (0..space.len()).all(|y| action.apply(g, y) != x))
            });
            false
        }
    }
}

const ACTION_LAWS: &str = "fuzzy transformation group: (g, (h, x)) = (gh, x) and the action is onto the support";

pub fn check_action(o: &Options, path: &Path) -> Result<Report, CliError> {
    let action = load::action(path)?;
    let mut r = Report::new("check-action", ACTION_LAWS);
    r.field("GROUP_ORDER", action.group().order()).field("SPACE_SIZE", action.space().len());
    action_laws(o, &mut r, &action);
    Ok(r)
}

pub fn check_invariant(o: &Options, path: &Path, set: &Path, nu: Option<&Path>) -> Result<Report, CliError> {
    let action = load::action(path)?;
    let s = load::fuzzy_set_on(set, action.space())?;
    let nu = match nu {
        Some(p) => load::fuzzy_set_on(p, action.group().carrier())?,
        None => FuzzySet::ones(action.group().carrier().clone()),
    };
    let verdict = is_invariant_under(&action, &nu, &s)?;
    let mut r = Report::new("check-invariant", "invariance: the image of nu x S under the action lies below S");
    r.field("GROUP_ORDER", action.group().order()).field("SPACE_SIZE", action.space().len());
    if let Verdict::Violated(w) = verdict {
        r.fail()
            .field("WITNESS_POINT", action.space().label(w.y))
            .field("WITNESS_IMAGE_GRADE", w.image)
            .field("WITNESS_GRADE", w.grade);
        audit(&mut r, o.audit, || {
            let mut image = Grade::ZERO;
            for g in 0..action.group().order() {
                for x in 0..action.space().len() {
                    if action.apply(g, x) == w.y {
                        image = image.max(nu.at(g).min(s.at(x)));
                    }
                }
            }
            image > s.at(w.y)
        });
    }
    Ok(r)
}

fn describe_result(r: &mut Report, o: &Options, result: &FiniteAction) {
    let group = result.group();
    r.field("RESULT_GROUP", format!("{{{}}}", group.carrier().labels().join(",")))
        .field("RESULT_SPACE", result.ambient())
        .field("ACTION_TABLE", table(result));
    let mut check = Report::new("", "");
    let holds = action_laws(o, &mut check, result);
    r.field("RESULT_ACTION", if holds { "pass" } else { "fail" });
    if !holds {
        r.fail();
        for (k, v) in check.fields() {
            r.field(&format!("RESULT_{k}"), v);
        }
    }
}

pub fn restrict(o: &Options, path: &Path, subgroup: &[String], invariant: Option<&Path>) -> Result<Report, CliError> {
    let action = load::action(path)?;
    let mut r = match invariant {
        None => Report::new("restrict", "restriction of a fuzzy transformation group to a subgroup"),
        Some(_) => Report::new("restrict", "restriction of a fuzzy transformation group to an invariant subset"),
    };
    if !action_laws(o, &mut r, &action) {
        return Ok(r);
    }
    let result = match invariant {
        None => {
            let members = subgroup
                .iter()
                .map(|l| {
                    action
                        .group()
                        .carrier()
                        .position(l.trim())
                        .ok_or_else(|| CliError::Usage(format!("--subgroup: `{l}` is not a group element")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            if let Verdict::Violated(w) = check_subgroup(action.group(), &members) {
                r.fail().field("WITNESS_KIND", "subgroup").field("WITNESS", w);
                return Ok(r);
            }
            restrict_to_subgroup(&action, &members)?
        }
        Some(set) => {
            let s = load::fuzzy_set_on(set, action.space())?;
            if let Verdict::Violated(w) = is_g_invariant(&action, &s)? {
                r.fail()
                    .field("WITNESS_KIND", "invariance")
                    .field("WITNESS_POINT", action.space().label(w.y))
                    .field("WITNESS_IMAGE_GRADE", w.image)
                    .field("WITNESS_GRADE", w.grade);
                return Ok(r);
            }
            restrict_to_invariant(&action, &s)?
        }
    };
    describe_result(&mut r, o, &result);
    Ok(r)
}

pub fn quotient(o: &Options, path: &Path, relation: &Path) -> Result<Report, CliError> {
    let action = load::action(path)?;
    let rho = load::relation(relation, action.space())?;
    let mut r = Report::new("quotient", "quotient of a fuzzy transformation group by a compatible equivalence relation");
    if !action_laws(o, &mut r, &action) {
        return Ok(r);
    }
    r.field("CLASSES", (0..rho.classes().len()).map(|k| rho.class_label(k)).collect::<Vec<_>>().join(" "));
    match quotient_action(&action, &rho) {
        Ok(result) => describe_result(&mut r, o, &result),
        Err(Error::RelationNotPreserved { g, x, y }) => {
            r.fail().field("WITNESS_KIND", "relation").field("WITNESS_TRIPLE", format!("{g},{x},{y}"));
        }
        Err(e) => return Err(e.into()),
    }
    Ok(r)
}
