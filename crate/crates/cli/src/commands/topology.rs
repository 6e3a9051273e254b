use std::path::Path;

use fuzzylie::groups::{inversion_map, is_fuzzy_topological_group, multiplication_map};
use fuzzylie::maps::{preimage, ProperFunction};
use fuzzylie::sets::complement_in;
use fuzzylie::topology::{
    check_map, generate, is_hausdorff, is_t1, verify_axioms, AxiomViolation, FuzzyTopology, OpenFamily, ProductBase,
};
use fuzzylie::{Error, FuzzySet, Grade, Verdict};

use super::{audit, word};
use crate::error::CliError;
use crate::load::{self, TopologyInput};
use crate::report::Report;
use crate::Options;

fn listed(tau: &FuzzyTopology, set: &FuzzySet) -> bool {
    tau.opens().any(|u| u == *set)
}

pub fn check_topology(o: &Options, path: &Path) -> Result<Report, CliError> {
    let input = TopologyInput::load(path, o.lattice_q, None)?;
    let tau = input.literal()?;
    let mut r = Report::new(
        "check-topology",
        "fuzzy topology: contains every cut t ∩ mu and is closed under unions and finite intersections",
    );
    r.field("LATTICE_Q", tau.lattice().resolution()).field("OPENS", tau.len());
    match generate(&input.ambient, &input.generators, input.lattice, o.cap()) {
        Ok(closure) => r.field("GENERATED_SIZE", closure.len()),
        Err(Error::ResourceCap { cap }) => r.field("GENERATED_SIZE", format!("over cap {cap}")),
        Err(e) => return Err(CliError::in_file(path, e)),
    };
    if let Verdict::Violated(w) = verify_axioms(&tau) {
        let missing = match &w {
            AxiomViolation::MissingCut { t } => {
                r.fail().field("WITNESS_KIND", "cut").field("WITNESS_T", t);
                input.ambient.cut(*t)
            }
            AxiomViolation::MissingUnion { left, right } => {
                r.fail().field("WITNESS_KIND", "union").field("WITNESS_LEFT", left).field("WITNESS_RIGHT", right);
                left.union(right)?
            }
            AxiomViolation::MissingIntersection { left, right } => {
                r.fail()
                    .field("WITNESS_KIND", "intersection")
                    .field("WITNESS_LEFT", left)
                    .field("WITNESS_RIGHT", right);
                left.intersection(right)?
            }
        };
        r.field("WITNESS_MISSING", &missing);
        audit(&mut r, o.audit, || !listed(&tau, &missing));
    }
    Ok(r)
}

fn point_label(tau: &FuzzyTopology, x: usize, p: Grade) -> String {
    format!("{}_{}", tau.carrier().label(x), p)
}

pub fn check_t1(o: &Options, path: &Path) -> Result<Report, CliError> {
    let tau = TopologyInput::load(path, o.lattice_q, None)?.generated(o.cap())?;
    let mut r = Report::new("check-t1", "T1: every fuzzy point x_p with p <= mu(x) is closed");
    r.field("LATTICE_Q", tau.lattice().resolution()).field("OPENS", tau.len());
    if let Verdict::Violated((x, p)) = is_t1(&tau) {
        let ambient = tau.ambient();
        let mut point = vec![Grade::ZERO; ambient.len()];
        point[x] = p;
        let complement = complement_in(ambient, &FuzzySet::new(ambient.carrier().clone(), point)?)?;
        r.fail().field("WITNESS_POINT", point_label(&tau, x, p)).field("WITNESS_COMPLEMENT", &complement);
        audit(&mut r, o.audit, || !listed(&tau, &complement));
    }
    Ok(r)
}

pub fn check_hausdorff(o: &Options, path: &Path) -> Result<Report, CliError> {
    let tau = TopologyInput::load(path, o.lattice_q, None)?.generated(o.cap())?;
    let mut r = Report::new(
        "check-hausdorff",
        "Hausdorff: distinct fuzzy points x_p, y_q lie in opens u, v with u ∩ v = 0",
    );
    r.field("LATTICE_Q", tau.lattice().resolution()).field("OPENS", tau.len());
    if let Verdict::Violated(w) = is_hausdorff(&tau) {
        r.fail()
            .field("WITNESS_POINTS", format!("{},{}", point_label(&tau, w.x, w.p), point_label(&tau, w.y, w.q)));
        audit(&mut r, o.audit, || {
            let opens: Vec<FuzzySet> = tau.opens().collect();
            !opens.iter().filter(|u| u.at(w.x) >= w.p).any(|u| {
                opens
                    .iter()
                    .filter(|v| v.at(w.y) >= w.q)
                    .any(|v| u.intersection(v).is_ok_and(|m| m.is_zero()))
            })
        });
    }
    Ok(r)
}

pub fn check_continuity(o: &Options, map: &Path, source: &Path, target: &Path) -> Result<Report, CliError> {
    let src = TopologyInput::load(source, o.lattice_q, None)?.generated(o.cap())?;
    let tgt = TopologyInput::load(target, o.lattice_q, None)?.generated(o.cap())?;
    let spec = load::map_spec(map)?;
    for (reference, tau) in [(&spec.source, &src), (&spec.target, &tgt)] {
        if let Some(p) = reference {
            let declared = load::fuzzy_set_on(&load::resolve(map, p), tau.carrier())?;
            if declared != *tau.ambient() {
                return Err(CliError::in_file(map, Error::AmbientMismatch));
            }
        }
    }
    let indices = load::map_indices(map, &spec, src.carrier(), tgt.carrier())?;
    let f = ProperFunction::new(src.ambient().clone(), tgt.ambient().clone(), indices)
        .map_err(|e| CliError::in_file(map, e))?;
    let flags = check_map(&f, &src, &tgt)?;
    let mut r = Report::new("check-continuity", "fuzzy continuity: the preimage of every open is open");
    r.field("CONTINUOUS", word(&flags.continuous))
        .field("OPEN", word(&flags.open))
        .field("INJECTIVE", word(&flags.class.injective))
        .field("SURJECTIVE", word(&flags.class.surjective))
        .field("HOMEOMORPHISM", if flags.homeomorphism() { "pass" } else { "fail" });
    if let Verdict::Violated(open) = &flags.continuous {
        let pre = preimage(&f, open)?;
        r.fail().field("WITNESS_OPEN", open).field("WITNESS_PREIMAGE", &pre);
        audit(&mut r, o.audit, || !listed(&src, &pre));
    }
    if let Verdict::Violated(open) = &flags.open {
        r.field("OPEN_WITNESS", open);
    }
    Ok(r)
}

pub fn check_topgroup(o: &Options, group: &Path, topology: &Path) -> Result<Report, CliError> {
    let g = load::group(group)?;
    let tau = TopologyInput::load(topology, o.lattice_q, Some(g.carrier()))?.generated(o.cap())?;
    let report = is_fuzzy_topological_group(&g, &tau).map_err(|e| CliError::in_file(topology, e))?;
    let mut r = Report::new(
        "check-topgroup",
        "fuzzy topological group: multiplication G x G -> G and inversion G -> G are fuzzy continuous",
    );
    r.field("ORDER", g.order())
        .field("OPENS", tau.len())
        .field("MULTIPLICATION", word(&report.multiplication))
        .field("INVERSION", word(&report.inversion));
    if let Verdict::Violated(open) = &report.multiplication {
        r.fail().field("WITNESS_MAP", "multiplication").field("WITNESS_OPEN", open);
        audit(&mut r, o.audit, || {
            let square = ProductBase::new(&tau, &tau).expect("same topology");
            preimage(&multiplication_map(&g), open).is_ok_and(|pre| !square.is_open(&pre))
        });
    } else if let Verdict::Violated(open) = &report.inversion {
        r.fail().field("WITNESS_MAP", "inversion").field("WITNESS_OPEN", open);
        audit(&mut r, o.audit, || preimage(&inversion_map(&g), open).is_ok_and(|pre| !listed(&tau, &pre)));
    }
    Ok(r)
}
