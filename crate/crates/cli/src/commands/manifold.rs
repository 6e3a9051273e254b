use std::path::Path;

use fuzzylie::manifold::{
    check_atlas as run_atlas_check, gl_demo, normalize_cover, phi_atlas, psi_atlas,
    tabulated_atlas, transition_map, Atlas, AtlasReport, C1Report, PairOutcome, Tolerances, GL_DERIVATIVE_TOLERANCE,
};

use crate::error::CliError;
use crate::load;
use crate::report::Report;
use crate::Options;

/// Plain decimals for moderate magnitudes, scientific notation otherwise.
pub(crate) fn num(v: f64) -> String {
    if v == 0.0 || (1e-3..1e6).contains(&v.abs()) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

fn point(p: &[f64]) -> String {
    format!("({})", p.iter().map(|v| num(*v)).collect::<Vec<_>>().join(","))
}

/// Accepted transition and round-trip error at sample points.
const TRANSITION_TOLERANCE: f64 = 1e-9;

fn load_atlas(path: &Path, tol: Tolerances, normalize: bool) -> Result<Atlas, CliError> {
    let atlas = tabulated_atlas(load::chart_table(path)?, tol).map_err(|e| CliError::in_file(path, e))?;
    Ok(if normalize { normalize_cover(&atlas) } else { atlas })
}

/// Fills cover, round-trip and pair fields under `prefix` and returns the
/// witness fields of the first problem, if any.
fn atlas_fields(r: &mut Report, prefix: &str, atlas: &Atlas, report: &AtlasReport) -> Vec<(&'static str, String)> {
    let key = |k: &str| format!("{prefix}{k}");
    let checked = report.transitions.iter().filter(|p| matches!(p.outcome, PairOutcome::Checked(_))).count();
    r.field(&key("CHARTS"), atlas.charts().len())
        .field(&key("SAMPLES"), atlas.samples().len())
        .field(&key("COVER_DEFICIENCY"), num(report.cover.max_deficiency))
        .field(&key("COVER_WORST_SAMPLE"), report.cover.worst_sample)
        .field(&key("COVER_WORST_POINT"), point(&atlas.samples()[report.cover.worst_sample]))
        .field(&key("ROUND_TRIP_ERROR"), num(report.round_trip))
        .field(&key("PAIRS_CHECKED"), checked)
        .field(&key("PAIRS_EMPTY"), report.transitions.len() - checked)
        .field(&key("TRANSITIONS"), if report.transitions.iter().all(|p| p.passes()) { "pass" } else { "fail" });
    if !report.cross.is_empty() {
        r.field(&key("CROSS_PAIRS"), report.cross.len())
            .field(&key("CROSS"), if report.cross.iter().all(|p| p.passes()) { "pass" } else { "fail" });
    }
    if !report.cover.passes {
        vec![
            ("WITNESS_KIND", "cover".into()),
            ("WITNESS_SAMPLE", point(&atlas.samples()[report.cover.worst_sample])),
        ]
    } else if report.round_trip > report.round_trip_tolerance {
        vec![("WITNESS_KIND", "round-trip".into())]
    } else if let Some(p) = report.transitions.iter().chain(&report.cross).find(|p| !p.passes()) {
        let PairOutcome::Checked(c1) = &p.outcome else { unreachable!("empty pairs pass") };
        vec![
            ("WITNESS_KIND", "transition".into()),
            ("WITNESS_PAIR", format!("{} -> {}", p.from, p.to)),
            ("WITNESS", c1.verdict.witness().map(ToString::to_string).unwrap_or_default()),
        ]
    } else {
        Vec::new()
    }
}

fn add_witness(r: &mut Report, witness: Vec<(&'static str, String)>) {
    if witness.is_empty() || r.outcome == crate::Outcome::Fail {
        return;
    }
    r.fail();
    for (k, v) in witness {
        r.field(k, v);
    }
}

pub fn check_atlas(o: &Options, table: &Path, against: Option<&Path>) -> Result<Report, CliError> {
    let tol = o.tolerances()?;
    let first = load_atlas(table, tol, o.normalize_cover)?;
    let second = against.map(|p| load_atlas(p, tol, o.normalize_cover)).transpose()?;
    let report = run_atlas_check(&first, second.as_ref())?;
    let mut r = Report::new(
        "check-atlas",
        "C1 fuzzy atlas: memberships reach 1 at every sample and transitions are C1 with C1 inverses",
    );
    let witness = atlas_fields(&mut r, "", &first, &report);
    add_witness(&mut r, witness);
    Ok(r)
}

/// Largest deviation of a transition from `expected` on its grid, and of
/// its derivative from `slope` wherever a derivative was estimated.
fn compare(atlas: &Atlas, j: usize, l: usize, c1: &C1Report, expected: impl Fn(f64) -> f64, slope: impl Fn(f64) -> f64) -> Result<(f64, f64), CliError> {
    let map = transition_map(atlas, j, l)?;
    let mut value_error: f64 = 0.0;
    let mut slope_error: f64 = 0.0;
    for (k, x) in map.grid.iter().enumerate() {
        let t = x[0];
        let y = map.eval(x).map_or(f64::INFINITY, |y| y[0]);
        value_error = value_error.max((y - expected(t)).abs());
        if let Some(d) = &c1.partials[k][0] {
            let exact = slope(t);
            slope_error = slope_error.max((d[0] - exact).abs() / exact.abs().max(1.0));
        }
    }
    Ok((value_error, slope_error))
}

fn pair<'a>(report: &'a AtlasReport, from: &str, to: &str) -> Option<&'a C1Report> {
    report.transitions.iter().find(|p| p.from == from && p.to == to).and_then(|p| match &p.outcome {
        PairOutcome::Checked(c1) => Some(c1),
        PairOutcome::Empty => None,
    })
}

pub fn demo_circle(o: &Options, points: usize) -> Result<Report, CliError> {
    if points < 16 {
        return Err(CliError::Usage("--points must be at least 16".into()));
    }
    let tol = o.tolerances()?;
    let prepare = |mut atlas: Atlas| {
        atlas.tolerances = tol;
        if o.normalize_cover {
            normalize_cover(&atlas)
        } else {
            atlas
        }
    };
    let phi = prepare(phi_atlas(points));
    let psi = prepare(psi_atlas(points));
    let phi_report = run_atlas_check(&phi, Some(&psi))?;
    let psi_report = run_atlas_check(&psi, None)?;
    let mut r = Report::new(
        "demo-circle",
        "C1 fuzzy atlases on the circle: angle charts (phi) and half-circle projections (psi), compared with each other",
    );
    r.field("NORMALIZED_COVER", o.normalize_cover);
    let phi_witness = atlas_fields(&mut r, "PHI_", &phi, &phi_report);
    let psi_witness = atlas_fields(&mut r, "PSI_", &psi, &psi_report);

    let missing = |from: &str, to: &str| CliError::Usage(format!("transition {from} -> {to} has no samples"));
    let c1 = pair(&phi_report, "U", "V").ok_or_else(|| missing("U", "V"))?;
    let (phi_value, phi_slope) =
        compare(&phi, 0, 1, c1, |t| if t < 0.5 { t } else { t - 1.0 }, |_| 1.0)?;
    let c1 = pair(&psi_report, "U1", "U2").ok_or_else(|| missing("U1", "U2"))?;
    let (psi_value, psi_slope) =
        compare(&psi, 0, 1, c1, |t| (1.0 - t * t).sqrt(), |t| -t / (1.0 - t * t).sqrt())?;
    r.field("PHI_TRANSITION_ERROR", num(phi_value))
        .field("PSI_TRANSITION_ERROR", num(psi_value))
        .field("PHI_DERIVATIVE_ERROR", num(phi_slope))
        .field("PSI_DERIVATIVE_ERROR", num(psi_slope));
    add_witness(&mut r, phi_witness);
    add_witness(&mut r, psi_witness);
    if r.outcome == crate::Outcome::Pass {
        if phi_value.max(psi_value) > TRANSITION_TOLERANCE {
            r.fail().field("WITNESS_KIND", "transition-value");
        } else if phi_slope.max(psi_slope) >= GL_DERIVATIVE_TOLERANCE {
            r.fail().field("WITNESS_KIND", "transition-derivative");
        }
    }
    Ok(r)
}

pub fn demo_gl(o: &Options, dim: Option<usize>, count: usize, seed: u64) -> Result<Report, CliError> {
    let tol = o.tolerances()?;
    let dims = dim.map_or_else(|| vec![1, 2, 3], |d| vec![d]);
    let mut r = Report::new(
        "demo-gl",
        "GL(n) and O(n) as fuzzy Lie groups: smooth determinant, multiplication and inversion; O(n) a submanifold",
    );
    r.field("SAMPLES", count).field("SEED", seed);
    for n in dims {
        let g = gl_demo(n, count, seed, &tol)?;
        let key = |k: &str| format!("GL{n}_{k}");
        r.field(&key("DET_GRADIENT_ERROR"), num(g.det_gradient_error))
            .field(&key("MULTIPLICATION_ERROR"), num(g.multiplication_error))
            .field(&key("INVERSION_ERROR"), num(g.inversion_error))
            .field(&key("ORTHOGONAL_DEFECT"), num(g.orthogonal_defect))
            .field(&key("INCLUSION_RANK"), g.inclusion_rank)
            .field(&key("ORTHOGONAL_RANK"), g.orthogonal_rank)
            .field(&key("REJECTED"), g.rejected)
            .field(&key("VERDICT"), if g.passes() { "pass" } else { "fail" });
        if !g.passes() && r.outcome == crate::Outcome::Pass {
            r.fail().field("WITNESS_DIM", n);
        }
    }
    Ok(r)
}
