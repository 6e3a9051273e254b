//! Line-oriented text formats for every input structure.
//!
//! All formats share the same lexical rules: UTF-8, `#` starts a comment that
//! runs to the end of the line, blank lines are ignored. Parse errors carry
//! the 1-based line number and name the token that was expected. Formats that
//! refer to other files (maps, actions, topologies) return the referenced
//! paths unresolved; loading them is the caller's business.

use std::sync::Arc;

use num_traits::Zero;

use crate::error::Error;
use crate::grade::Grade;
use crate::groups::{EquivalenceRelation, FiniteAction, FiniteGroup, GroupCandidate};
use crate::lie::{CoordTest, MembershipClassifier, SampleSet, Scalar, Sign, StructureConstants, Vector};
use crate::manifold::TabulatedChart;
use crate::sets::{Carrier, FuzzySet};

/// Meaningful lines as `(line number, trimmed content)`.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let content = raw.split_once('#').map_or(raw, |(before, _)| before).trim();
        (!content.is_empty()).then_some((i + 1, content))
    })
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Re-tags a structural error with the line that triggered it.
fn at(line: usize) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::Parse { .. } => e,
        other => parse_err(line, other.to_string()),
    }
}

fn grade_at(line: usize, token: &str) -> Result<Grade, Error> {
    token.parse::<Grade>().map_err(|e| match e {
        Error::InvalidGrade(msg) => parse_err(line, msg),
        other => parse_err(line, other.to_string()),
    })
}

fn scalar_at(line: usize, token: &str) -> Result<Scalar, Error> {
    token
        .parse::<Scalar>()
        .map_err(|_| parse_err(line, format!("expected a rational number (integer or p/q), found `{token}`")))
}

fn float_at(line: usize, token: &str) -> Result<f64, Error> {
    token
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| parse_err(line, format!("expected a finite number, found `{token}`")))
}

/// Splits `key: value` or `key = value` when the line starts with `key`.
fn keyed<'a>(content: &'a str, key: &str) -> Option<&'a str> {
    let rest = content.strip_prefix(key)?.trim_start();
    rest.strip_prefix(':').or_else(|| rest.strip_prefix('=')).map(str::trim)
}

fn pair_lines(text: &str) -> Result<Vec<(usize, String, Grade)>, Error> {
    lines(text)
        .map(|(n, content)| {
            let tokens: Vec<&str> = content.split_whitespace().collect();
            match tokens.as_slice() {
                [element, grade] => Ok((n, element.to_string(), grade_at(n, grade)?)),
                _ => Err(parse_err(n, format!("expected `element grade`, found `{content}`"))),
            }
        })
        .collect()
}

/// A fuzzy set whose carrier is the listed elements in file order.
pub fn parse_fuzzy_set(text: &str) -> Result<FuzzySet, Error> {
    let pairs = pair_lines(text)?;
    if pairs.is_empty() {
        return Err(parse_err(1, "expected at least one `element grade` line"));
    }
    for (k, (n, element, _)) in pairs.iter().enumerate() {
        if pairs[..k].iter().any(|(_, e, _)| e == element) {
            return Err(parse_err(*n, format!("duplicate element `{element}`")));
        }
    }
    let carrier = Arc::new(Carrier::new(pairs.iter().map(|(_, e, _)| e.clone()))?);
    FuzzySet::new(carrier, pairs.into_iter().map(|(_, _, g)| g).collect())
}

/// A fuzzy set on a known carrier; unlisted elements get grade 0.
pub fn parse_fuzzy_set_on(text: &str, carrier: &Arc<Carrier>) -> Result<FuzzySet, Error> {
    fuzzy_set_from_lines(pair_lines(text)?, carrier)
}

fn fuzzy_set_from_lines(pairs: Vec<(usize, String, Grade)>, carrier: &Arc<Carrier>) -> Result<FuzzySet, Error> {
    let mut grades = vec![Grade::ZERO; carrier.len()];
    let mut seen = vec![false; carrier.len()];
    for (n, element, grade) in pairs {
        let i = carrier
            .position(&element)
            .ok_or_else(|| parse_err(n, format!("expected an element of the carrier, found `{element}`")))?;
        if std::mem::replace(&mut seen[i], true) {
            return Err(parse_err(n, format!("duplicate element `{element}`")));
        }
        grades[i] = grade;
    }
    FuzzySet::new(carrier.clone(), grades)
}

/// A crisp map `x -> y` with optional references to the source and target
/// fuzzy-set files.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapSpec {
    pub source: Option<String>,
    pub target: Option<String>,
    pub pairs: Vec<(usize, String, String)>,
}

pub fn parse_map(text: &str) -> Result<MapSpec, Error> {
    let mut spec = MapSpec { source: None, target: None, pairs: Vec::new() };
    for (n, content) in lines(text) {
        if let Some(path) = keyed(content, "source") {
            spec.source = Some(path.to_string());
        } else if let Some(path) = keyed(content, "target") {
            spec.target = Some(path.to_string());
        } else {
            spec.pairs.push(arrow(n, content)?);
        }
    }
    Ok(spec)
}

fn arrow(n: usize, content: &str) -> Result<(usize, String, String), Error> {
    let (x, y) = content
        .split_once("->")
        .ok_or_else(|| parse_err(n, format!("expected `x -> y`, found `{content}`")))?;
    let (x, y) = (x.trim(), y.trim());
    if x.is_empty() || y.is_empty() || x.contains(char::is_whitespace) || y.contains(char::is_whitespace) {
        return Err(parse_err(n, format!("expected `x -> y`, found `{content}`")));
    }
    Ok((n, x.to_string(), y.to_string()))
}

/// Resolves the `x -> y` pairs against the two carriers. Every source element
/// needs exactly one image.
pub fn map_indices(spec: &MapSpec, source: &Carrier, target: &Carrier) -> Result<Vec<usize>, Error> {
    let mut map: Vec<Option<usize>> = vec![None; source.len()];
    for (n, x, y) in &spec.pairs {
        let i = source
            .position(x)
            .ok_or_else(|| parse_err(*n, format!("expected a source element, found `{x}`")))?;
        let j = target
            .position(y)
            .ok_or_else(|| parse_err(*n, format!("expected a target element, found `{y}`")))?;
        if map[i].replace(j).is_some() {
            return Err(parse_err(*n, format!("`{x}` is mapped twice")));
        }
    }
    map.into_iter()
        .enumerate()
        .map(|(i, y)| y.ok_or_else(|| Error::MissingImage(source.label(i).to_string())))
        .collect()
}

/// `elements: e a b ...` followed by one Cayley row per element, in the same
/// order, each row listing the products `x * y` for `y` in element order.
pub fn parse_group_candidate(text: &str) -> Result<GroupCandidate, Error> {
    let mut it = lines(text);
    let (n0, header) = it.next().ok_or_else(|| parse_err(1, "expected `elements:` line"))?;
    let labels: Vec<&str> = keyed(header, "elements")
        .ok_or_else(|| parse_err(n0, format!("expected `elements:` line, found `{header}`")))?
        .split_whitespace()
        .collect();
    let carrier = Arc::new(Carrier::new(labels.iter().copied()).map_err(at(n0))?);
    let order = carrier.len();
    let mut table = Vec::with_capacity(order);
    let mut last = n0;
    for (n, content) in it {
        last = n;
        if table.len() == order {
            return Err(parse_err(n, format!("expected end of table after {order} rows, found `{content}`")));
        }
        let row: Vec<&str> = content.split_whitespace().collect();
        if row.len() != order {
            return Err(parse_err(
                n,
                format!("expected {order} entries in Cayley row, found {}", row.len()),
            ));
        }
        let row = row
            .iter()
            .map(|l| {
                carrier
                    .position(l)
                    .ok_or_else(|| parse_err(n, format!("expected a group element, found `{l}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        table.push(row);
    }
    if table.len() != order {
        return Err(parse_err(last, format!("expected {order} Cayley rows, found {}", table.len())));
    }
    GroupCandidate::from_table(carrier, table)
}

/// A group file that must describe a group.
pub fn parse_group(text: &str) -> Result<FiniteGroup, Error> {
    FiniteGroup::new(parse_group_candidate(text)?)
}

/// An action file: `group:` path, optional `space:` labels (defaults to the
/// group's elements), optional `ambient:` fuzzy-set path (defaults to grade 1
/// everywhere), then `g x -> y` lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionSpec {
    pub group: String,
    pub space: Option<Vec<String>>,
    pub ambient: Option<String>,
    pub rules: Vec<(usize, String, String, String)>,
}

pub fn parse_action(text: &str) -> Result<ActionSpec, Error> {
    let mut group = None;
    let mut space = None;
    let mut ambient = None;
    let mut rules = Vec::new();
    for (n, content) in lines(text) {
        if let Some(path) = keyed(content, "group") {
            group = Some(path.to_string());
        } else if let Some(labels) = keyed(content, "space") {
            space = Some(labels.split_whitespace().map(String::from).collect());
        } else if let Some(path) = keyed(content, "ambient") {
            ambient = Some(path.to_string());
        } else {
            let (_, lhs, y) = arrow_with_spaces(n, content)?;
            let tokens: Vec<&str> = lhs.split_whitespace().collect();
            let [g, x] = tokens.as_slice() else {
                return Err(parse_err(n, format!("expected `g x -> y`, found `{content}`")));
            };
            rules.push((n, g.to_string(), x.to_string(), y));
        }
    }
    let group = group.ok_or_else(|| parse_err(1, "expected `group:` line"))?;
    Ok(ActionSpec { group, space, ambient, rules })
}

fn arrow_with_spaces(n: usize, content: &str) -> Result<(usize, String, String), Error> {
    let (lhs, y) = content
        .split_once("->")
        .ok_or_else(|| parse_err(n, format!("expected `g x -> y`, found `{content}`")))?;
    let y = y.trim();
    if y.is_empty() || y.contains(char::is_whitespace) {
        return Err(parse_err(n, format!("expected `g x -> y`, found `{content}`")));
    }
    Ok((n, lhs.trim().to_string(), y.to_string()))
}

/// Assembles the action table; every `(g, x)` needs exactly one rule.
pub fn build_action(spec: &ActionSpec, group: FiniteGroup, ambient: FuzzySet) -> Result<FiniteAction, Error> {
    let space = ambient.carrier().clone();
    let mut table = vec![vec![None; space.len()]; group.order()];
    for (n, g, x, y) in &spec.rules {
        let gi = group
            .carrier()
            .position(g)
            .ok_or_else(|| parse_err(*n, format!("expected a group element, found `{g}`")))?;
        let xi = space
            .position(x)
            .ok_or_else(|| parse_err(*n, format!("expected a space element, found `{x}`")))?;
        let yi = space
            .position(y)
            .ok_or_else(|| parse_err(*n, format!("expected a space element, found `{y}`")))?;
        if table[gi][xi].replace(yi).is_some() {
            return Err(parse_err(*n, format!("`{g} {x}` is defined twice")));
        }
    }
    let mut rows = Vec::with_capacity(group.order());
    for (gi, row) in table.into_iter().enumerate() {
        let row = row
            .into_iter()
            .enumerate()
            .map(|(xi, y)| {
                y.ok_or_else(|| Error::MissingImage(format!("{} {}", group.label(gi), space.label(xi))))
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    FiniteAction::new(group, ambient, rows)
}

/// One class per line; elements of `space` not mentioned form singletons.
pub fn parse_relation(text: &str, space: &Arc<Carrier>) -> Result<EquivalenceRelation, Error> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut seen = vec![false; space.len()];
    for (n, content) in lines(text) {
        let mut class = Vec::new();
        for label in content.split_whitespace() {
            let x = space
                .position(label)
                .ok_or_else(|| parse_err(n, format!("expected an element of the space, found `{label}`")))?;
            if std::mem::replace(&mut seen[x], true) {
                return Err(parse_err(n, format!("`{label}` already belongs to a class")));
            }
            class.push(x);
        }
        classes.push(class);
    }
    classes.extend((0..space.len()).filter(|&x| !seen[x]).map(|x| vec![x]));
    EquivalenceRelation::new(space.clone(), classes)
}

/// Where a topology file takes its ambient fuzzy set from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AmbientSource {
    /// Path to a fuzzy-set file.
    File(String),
    /// Crisp ambient (grade 1) on the listed elements.
    Elements(Vec<String>),
}

/// Header lines `q = <int>` (optional) and `ambient = <path>` or
/// `elements = a b ...`, then generator blocks of `element grade` lines
/// separated by `---`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopologySpec {
    pub q: Option<u64>,
    pub ambient: AmbientSource,
    pub blocks: Vec<Vec<(usize, String, Grade)>>,
}

pub fn parse_topology(text: &str) -> Result<TopologySpec, Error> {
    let mut q = None;
    let mut ambient = None;
    let mut blocks: Vec<Vec<(usize, String, Grade)>> = Vec::new();
    let mut in_body = false;
    for (n, content) in lines(text) {
        if content == "---" {
            blocks.push(Vec::new());
            in_body = true;
            continue;
        }
        if !in_body {
            if let Some(v) = keyed(content, "q") {
                let v: u64 = v
                    .parse()
                    .ok()
                    .filter(|&v| v > 0)
                    .ok_or_else(|| parse_err(n, format!("expected a positive integer after `q =`, found `{v}`")))?;
                q = Some(v);
                continue;
            }
            if let Some(path) = keyed(content, "ambient") {
                ambient = Some(AmbientSource::File(path.to_string()));
                continue;
            }
            if let Some(labels) = keyed(content, "elements") {
                ambient = Some(AmbientSource::Elements(labels.split_whitespace().map(String::from).collect()));
                continue;
            }
            return Err(parse_err(n, format!("expected `q =`, `ambient =`, `elements =` or `---`, found `{content}`")));
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let [element, grade] = tokens.as_slice() else {
            return Err(parse_err(n, format!("expected `element grade` or `---`, found `{content}`")));
        };
        blocks
            .last_mut()
            .expect("a block is open")
            .push((n, element.to_string(), grade_at(n, grade)?));
    }
    let ambient = ambient.ok_or_else(|| parse_err(1, "expected `ambient =` or `elements =` line"))?;
    Ok(TopologySpec { q, ambient, blocks })
}

/// The generator blocks as fuzzy sets on the ambient carrier.
pub fn topology_generators(spec: &TopologySpec, carrier: &Arc<Carrier>) -> Result<Vec<FuzzySet>, Error> {
    spec.blocks
        .iter()
        .map(|block| fuzzy_set_from_lines(block.clone(), carrier))
        .collect()
}

/// `dim n` then `i j k value` lines with 1-based indices meaning
/// `[e_i, e_j] = ... + value e_k + ...`.
pub fn parse_structure_constants(text: &str) -> Result<StructureConstants, Error> {
    let mut it = lines(text);
    let (n0, header) = it.next().ok_or_else(|| parse_err(1, "expected `dim n` line"))?;
    let dim = header
        .strip_prefix("dim")
        .map(str::trim)
        .and_then(|d| d.parse::<usize>().ok())
        .filter(|&d| d > 0)
        .ok_or_else(|| parse_err(n0, format!("expected `dim n` with n >= 1, found `{header}`")))?;
    let mut entries = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (n, content) in it {
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let [i, j, k, value] = tokens.as_slice() else {
            return Err(parse_err(n, format!("expected `i j k value`, found `{content}`")));
        };
        let index = |t: &str| {
            t.parse::<usize>()
                .ok()
                .filter(|&v| (1..=dim).contains(&v))
                .map(|v| v - 1)
                .ok_or_else(|| parse_err(n, format!("expected an index in 1..={dim}, found `{t}`")))
        };
        let (i, j, k) = (index(i)?, index(j)?, index(k)?);
        if !seen.insert((i, j, k)) {
            return Err(parse_err(n, format!("entry {} {} {} given twice", i + 1, j + 1, k + 1)));
        }
        entries.push((i, j, k, scalar_at(n, value)?));
    }
    StructureConstants::from_entries(dim, entries)
}

fn coord_index(token: &str, dim: usize) -> Option<usize> {
    if dim <= 3 {
        if let Some(c) = ["x", "y", "z"][..dim].iter().position(|&name| name == token) {
            return Some(c);
        }
    }
    token
        .strip_prefix('x')
        .and_then(|d| d.parse::<usize>().ok())
        .filter(|&c| (1..=dim).contains(&c))
        .map(|c| c - 1)
}

fn coord_test(n: usize, atom: &str, dim: usize) -> Result<CoordTest, Error> {
    let expected = || {
        parse_err(
            n,
            format!("expected `coord = 0`, `coord != 0`, `coord > 0` or `coord < 0`, found `{atom}`"),
        )
    };
    let (name, sign, zero) = [("!=", Sign::NonZero), ("=", Sign::Zero), (">", Sign::Positive), ("<", Sign::Negative)]
        .into_iter()
        .find_map(|(op, sign)| atom.split_once(op).map(|(l, r)| (l.trim(), sign, r.trim())))
        .ok_or_else(expected)?;
    if zero != "0" {
        return Err(expected());
    }
    let coord = coord_index(name, dim)
        .ok_or_else(|| parse_err(n, format!("expected a coordinate name for dimension {dim}, found `{name}`")))?;
    Ok(CoordTest { coord, sign })
}

/// Ordered `cond -> grade` cases and one `default grade` line. A condition is
/// `true` or a conjunction (`and` / `&&`) of sign tests on coordinates named
/// `x, y, z` (dimension ≤ 3) or `x1, x2, ...`.
pub fn parse_classifier(text: &str, dim: usize) -> Result<MembershipClassifier, Error> {
    let mut cases = Vec::new();
    let mut default = None;
    for (n, content) in lines(text) {
        if let Some(rest) = content.strip_prefix("default") {
            if rest.starts_with(char::is_whitespace) {
                if default.is_some() {
                    return Err(parse_err(n, "`default` given twice"));
                }
                default = Some(grade_at(n, rest.trim())?);
                continue;
            }
        }
        if default.is_some() {
            return Err(parse_err(n, format!("expected end of file after `default`, found `{content}`")));
        }
        let (cond, grade) = content
            .split_once("->")
            .ok_or_else(|| parse_err(n, format!("expected `cond -> grade` or `default grade`, found `{content}`")))?;
        let grade = grade_at(n, grade.trim())?;
        let cond = cond.trim();
        let tests = if cond == "true" {
            Vec::new()
        } else {
            cond.replace("&&", " and ")
                .split(" and ")
                .map(|atom| coord_test(n, atom.trim(), dim))
                .collect::<Result<Vec<_>, _>>()?
        };
        cases.push((tests, grade));
    }
    let default = default.ok_or_else(|| parse_err(text.lines().count().max(1), "expected `default grade` line"))?;
    MembershipClassifier::new(dim, cases, default)
}

/// `v c1 ... cn` vector lines, `s value` scalar lines, and `grid r` for every
/// integer vector with coordinates in `-r..=r`. The zero vector is required.
pub fn parse_samples(text: &str, dim: usize) -> Result<SampleSet, Error> {
    let mut vectors: Vec<Vector> = Vec::new();
    let mut scalars = Vec::new();
    for (n, content) in lines(text) {
        let mut tokens = content.split_whitespace();
        match tokens.next() {
            Some("v") => {
                let v = tokens.map(|t| scalar_at(n, t)).collect::<Result<Vector, _>>()?;
                if v.len() != dim {
                    return Err(parse_err(n, format!("expected {dim} coordinates, found {}", v.len())));
                }
                vectors.push(v);
            }
            Some("s") => {
                let rest: Vec<&str> = tokens.collect();
                let [value] = rest.as_slice() else {
                    return Err(parse_err(n, format!("expected `s value`, found `{content}`")));
                };
                scalars.push(scalar_at(n, value)?);
            }
            Some("grid") => {
                let r = tokens
                    .next()
                    .and_then(|t| t.parse::<i64>().ok())
                    .filter(|&r| (0..=10).contains(&r))
                    .ok_or_else(|| parse_err(n, format!("expected `grid r` with r in 0..=10, found `{content}`")))?;
                vectors.extend(SampleSet::grid(dim, r));
            }
            _ => return Err(parse_err(n, format!("expected `v`, `s` or `grid` line, found `{content}`"))),
        }
    }
    if !vectors.iter().any(|v| v.iter().all(Zero::is_zero)) {
        return Err(parse_err(1, "expected a zero vector among the samples"));
    }
    SampleSet::new(dim, vectors, scalars)
}

/// `chart <label>` starts a chart; `seams t1 t2 ...` (optional) lists
/// parameter values where the chart map may fail to be smooth; every other
/// line is `param x1 ... xm membership`.
pub fn parse_chart_table(text: &str) -> Result<Vec<TabulatedChart>, Error> {
    struct Pending {
        line: usize,
        label: String,
        seams: Vec<f64>,
        rows: Vec<(f64, Vec<f64>, f64)>,
    }
    let finish = |p: Pending| TabulatedChart::new(p.label, p.rows, p.seams).map_err(at(p.line));
    let mut charts = Vec::new();
    let mut current: Option<Pending> = None;
    for (n, content) in lines(text) {
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens[0] {
            "chart" => {
                let [_, label] = tokens.as_slice() else {
                    return Err(parse_err(n, format!("expected `chart <label>`, found `{content}`")));
                };
                if let Some(p) = current.take() {
                    charts.push(finish(p)?);
                }
                current = Some(Pending { line: n, label: label.to_string(), seams: Vec::new(), rows: Vec::new() });
            }
            "seams" => {
                let p = current
                    .as_mut()
                    .ok_or_else(|| parse_err(n, "expected `chart <label>` before `seams`"))?;
                p.seams = tokens[1..].iter().map(|t| float_at(n, t)).collect::<Result<_, _>>()?;
            }
            _ => {
                let p = current
                    .as_mut()
                    .ok_or_else(|| parse_err(n, "expected `chart <label>` before table rows"))?;
                if tokens.len() < 3 {
                    return Err(parse_err(n, format!("expected `param x1 ... xm membership`, found `{content}`")));
                }
                let values = tokens.iter().map(|t| float_at(n, t)).collect::<Result<Vec<_>, _>>()?;
                let width = p.rows.first().map(|r| r.1.len());
                if width.is_some_and(|w| w != values.len() - 2) {
                    return Err(parse_err(
                        n,
                        format!("expected {} point coordinates, found {}", width.unwrap(), values.len() - 2),
                    ));
                }
                let membership = values[values.len() - 1];
                if !(0.0..=1.0).contains(&membership) {
                    return Err(parse_err(n, format!("membership {membership} outside [0,1]")));
                }
                p.rows.push((values[0], values[1..values.len() - 1].to_vec(), membership));
            }
        }
    }
    if let Some(p) = current.take() {
        charts.push(finish(p)?);
    }
    if charts.is_empty() {
        return Err(parse_err(1, "expected `chart <label>`"));
    }
    Ok(charts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{validate_group, verify_action};
    use crate::lie::{format_vector, is_fuzzy_lie_subalgebra, validate_lie};

    const Z4: &str = "\
# cyclic group of order 4
elements: 0 1 2 3
0 1 2 3
1 2 3 0
2 3 0 1   # row for 2
3 0 1 2
";

    #[test]
    fn group_file_parses_into_a_group() {
        let candidate = parse_group_candidate(Z4).unwrap();
        assert!(validate_group(&candidate).holds());
        let g = parse_group(Z4).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.inverse(1), 3);
    }

    #[test]
    fn short_cayley_row_reports_its_line() {
        let truncated = Z4.replace("1 2 3 0", "1 2 3");
        let err = parse_group(&truncated).unwrap_err();
        assert_eq!(
            err,
            Error::Parse { line: 4, message: "expected 4 entries in Cayley row, found 3".into() }
        );
    }

    #[test]
    fn missing_row_and_unknown_entry() {
        let missing: String = Z4.lines().take(5).map(|l| format!("{l}\n")).collect();
        assert!(matches!(parse_group(&missing), Err(Error::Parse { line: 5, .. })));
        let unknown = Z4.replace("3 0 1 2", "3 0 1 9");
        let err = parse_group(&unknown).unwrap_err();
        assert!(err.to_string().contains("line 6") && err.to_string().contains("`9`"), "{err}");
    }

    #[test]
    fn non_group_table_is_rejected() {
        let broken = Z4.replace("2 3 0 1", "2 3 1 1");
        assert!(matches!(parse_group(&broken), Err(Error::NotAGroup(_))));
    }

    #[test]
    fn fuzzy_set_grades_are_exact() {
        let mu = parse_fuzzy_set("a 1/2\nb 0.25 # decimal\n\nc 1\n").unwrap();
        assert_eq!(mu.grade("b").unwrap(), Grade::new(1, 4).unwrap());
        assert_eq!(mu.carrier().labels(), ["a", "b", "c"]);
    }

    #[test]
    fn grade_above_one_is_rejected() {
        let err = parse_fuzzy_set("a 1/2\nb 5/4\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!(err.to_string().contains("grade outside [0,1]"), "{err}");
    }

    #[test]
    fn duplicate_element_is_a_parse_error() {
        let err = parse_fuzzy_set("a 1\nb 0\na 0\n").unwrap_err();
        assert_eq!(err, Error::Parse { line: 3, message: "duplicate element `a`".into() });
    }

    #[test]
    fn fuzzy_set_on_carrier_fills_zeros() {
        let carrier = Arc::new(Carrier::numbered(3).unwrap());
        let mu = parse_fuzzy_set_on("1 1/3\n", &carrier).unwrap();
        assert_eq!(mu.grades(), [Grade::ZERO, Grade::new(1, 3).unwrap(), Grade::ZERO]);
        assert!(matches!(parse_fuzzy_set_on("7 1\n", &carrier), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn map_file() {
        let spec = parse_map("source = a.fz\ntarget: b.fz\nx -> p\ny->q\n").unwrap();
        assert_eq!(spec.source.as_deref(), Some("a.fz"));
        assert_eq!(spec.target.as_deref(), Some("b.fz"));
        let src = Carrier::new(["x", "y"]).unwrap();
        let tgt = Carrier::new(["p", "q", "r"]).unwrap();
        assert_eq!(map_indices(&spec, &src, &tgt).unwrap(), [0, 1]);
        let partial = parse_map("x -> p\n").unwrap();
        assert_eq!(map_indices(&partial, &src, &tgt).unwrap_err(), Error::MissingImage("y".into()));
        assert!(matches!(parse_map("x p\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn action_file_builds_translation() {
        let mut text = String::from("group: z2.grp\n");
        for (g, x, y) in [("0", "0", "0"), ("0", "1", "1"), ("1", "0", "1"), ("1", "1", "0")] {
            text.push_str(&format!("{g} {x} -> {y}\n"));
        }
        let spec = parse_action(&text).unwrap();
        assert_eq!(spec.group, "z2.grp");
        let group = parse_group("elements: 0 1\n0 1\n1 0\n").unwrap();
        let ambient = FuzzySet::ones(group.carrier().clone());
        let action = build_action(&spec, group, ambient).unwrap();
        assert!(verify_action(&action).holds());
    }

    #[test]
    fn action_needs_every_rule() {
        let spec = parse_action("group: g\n0 0 -> 0\n").unwrap();
        let group = parse_group("elements: 0 1\n0 1\n1 0\n").unwrap();
        let ambient = FuzzySet::ones(group.carrier().clone());
        assert_eq!(build_action(&spec, group, ambient).unwrap_err(), Error::MissingImage("0 1".into()));
        assert!(matches!(parse_action("0 0 -> 0\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn relation_fills_singletons() {
        let space = Arc::new(Carrier::numbered(4).unwrap());
        let rho = parse_relation("0 2\n", &space).unwrap();
        assert_eq!(rho.classes(), [vec![0, 2], vec![1], vec![3]]);
        assert!(matches!(parse_relation("0 2\n2 3\n", &space), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn topology_file() {
        let text = "q = 4\nelements = a b\n---\na 1/2\n---\nb 1\na 1/4\n";
        let spec = parse_topology(text).unwrap();
        assert_eq!(spec.q, Some(4));
        assert_eq!(spec.ambient, AmbientSource::Elements(vec!["a".into(), "b".into()]));
        let carrier = Arc::new(Carrier::new(["a", "b"]).unwrap());
        let gens = topology_generators(&spec, &carrier).unwrap();
        assert_eq!(gens.len(), 2);
        assert_eq!(gens[1].grade("a").unwrap(), Grade::new(1, 4).unwrap());
        assert!(matches!(parse_topology("q = 0\nelements = a\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_topology("---\na 1\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn cross_product_constants() {
        let text = "dim 3\n2 3 1 1\n3 2 1 -1\n3 1 2 1\n1 3 2 -1\n1 2 3 1\n2 1 3 -1\n";
        let sc = parse_structure_constants(text).unwrap();
        assert_eq!(sc, StructureConstants::cross_product());
        assert!(validate_lie(&sc).holds());
        let err = parse_structure_constants("dim 2\n1 2 3 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn classifier_round_trips_through_describe() {
        let (_, mu, _) = crate::lie::z_axis_fixture();
        let again = parse_classifier(&mu.describe(), 3).unwrap();
        assert_eq!(again, mu);
        let alt = parse_classifier("x = 0 && y = 0 -> 1\ntrue -> 1/2\ndefault 0\n", 3).unwrap();
        assert_eq!(alt.cases().len(), 2);
        assert!(matches!(parse_classifier("w = 0 -> 1\ndefault 0\n", 3), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_classifier("x = 1 -> 1\ndefault 0\n", 3), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_classifier("x = 0 -> 1\n", 3), Err(Error::Parse { .. })));
    }

    #[test]
    fn samples_file() {
        let samples = parse_samples("grid 1\nv 1/2 0 0\ns -1\ns 3/2\n", 3).unwrap();
        assert_eq!(samples.vectors().len(), 28);
        assert_eq!(format_vector(&samples.vectors()[27]), "(1/2,0,0)");
        assert!(matches!(parse_samples("v 1 0\n", 3), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_samples("v 1 0 0\n", 3), Err(Error::Parse { .. })));
        let (sc, mu, _) = crate::lie::z_axis_fixture();
        assert!(is_fuzzy_lie_subalgebra(&mu, &sc, &samples).unwrap().holds());
    }

    #[test]
    fn chart_table() {
        let mut text = String::from("chart A\nseams 0 1\n");
        for k in 0..=10 {
            let t = k as f64 / 10.0;
            text.push_str(&format!("{t} {t} {} 1\n", t * t));
        }
        let charts = parse_chart_table(&text).unwrap();
        assert_eq!(charts.len(), 1);
        assert_eq!(charts[0].points().len(), 11);
        assert!(matches!(parse_chart_table("0 0 0 1\n"), Err(Error::Parse { line: 1, .. })));
        let err = parse_chart_table("chart A\n0 0 1\n1 1 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");
        assert!(matches!(parse_chart_table("chart A\n0 0 0 1\n1 0 1\n"), Err(Error::Parse { line: 3, .. })));
    }
}
