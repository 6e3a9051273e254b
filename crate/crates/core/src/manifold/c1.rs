//! Sampled check that a numeric map is a C¹ diffeomorphism on a grid.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::Error;
use crate::manifold::Tolerances;
use crate::verdict::Verdict;

/// A partial map `R^d → R^d` evaluated on a finite grid. `None` means the
/// argument is outside the domain.
pub type PointMap<'a> = Box<dyn Fn(&[f64]) -> Option<Vec<f64>> + 'a>;

/// A numeric map together with the grid it is checked on.
pub struct SampledMap<'a> {
    pub label: String,
    pub grid: Vec<Vec<f64>>,
    /// Per input axis, coordinates where the domain is cut.
    pub seams: Vec<Vec<f64>>,
    pub map: PointMap<'a>,
    /// The inverse and the seams of its domain, if known.
    pub inverse: Option<(PointMap<'a>, Vec<Vec<f64>>)>,
}

impl<'a> SampledMap<'a> {
    pub fn new(label: impl Into<String>, grid: Vec<Vec<f64>>, map: PointMap<'a>) -> Self {
        let dim = grid.first().map_or(0, Vec::len);
        SampledMap { label: label.into(), grid, seams: vec![Vec::new(); dim], map, inverse: None }
    }

    pub fn with_seams(mut self, seams: Vec<Vec<f64>>) -> Self {
        self.seams = seams;
        self
    }

    pub fn with_inverse(mut self, inverse: PointMap<'a>, seams: Vec<Vec<f64>>) -> Self {
        self.inverse = Some((inverse, seams));
        self
    }

    pub fn eval(&self, x: &[f64]) -> Option<Vec<f64>> {
        (self.map)(x)
    }

    /// Images of the grid points; fails on the first point outside the domain.
    pub fn values(&self) -> Result<Vec<Vec<f64>>, Error> {
        self.grid
            .iter()
            .enumerate()
            .map(|(i, x)| self.eval(x).ok_or(Error::OutsideDomain(i)))
            .collect()
    }
}

/// The first failed condition, with grid indices into the checked map.
#[derive(Debug, Clone, PartialEq)]
pub enum C1Failure {
    /// Two grid points with images closer than the injectivity tolerance.
    NotInjective { first: usize, second: usize },
    /// Finite differences did not settle under step halving.
    Unstable { point: usize, axis: usize, discrepancy: f64 },
    /// The derivative jumps between two adjacent grid points.
    DerivativeJump { point: usize, next: usize, axis: usize, jump: f64 },
    /// The inverse is required but was not supplied.
    MissingInverse,
    /// The inverse failed; indices refer to the inverse's grid, which is the
    /// image of the forward grid in the same order.
    Inverse(Box<C1Failure>),
}

impl fmt::Display for C1Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            C1Failure::NotInjective { first, second } => write!(f, "not injective: points {first} and {second}"),
            C1Failure::Unstable { point, axis, discrepancy } => {
                write!(f, "derivative unstable at point {point} axis {axis} (discrepancy {discrepancy:.3e})")
            }
            C1Failure::DerivativeJump { point, next, axis, jump } => {
                write!(f, "derivative jumps by {jump:.3e} between points {point} and {next} along axis {axis}")
            }
            C1Failure::MissingInverse => f.write_str("no inverse supplied"),
            C1Failure::Inverse(inner) => write!(f, "inverse: {inner}"),
        }
    }
}

/// Diagnostics of a C¹ check.
#[derive(Debug, Clone, PartialEq)]
pub struct C1Report {
    pub verdict: Verdict<C1Failure>,
    /// `partials[point][axis]`: extrapolated derivative along `axis`, or
    /// `None` where the stencil does not fit.
    pub partials: Vec<Vec<Option<Vec<f64>>>>,
    /// `edge_distance[point][axis]`: distance to the end of the point's
    /// connected component along `axis`.
    pub edge_distance: Vec<Vec<f64>>,
    /// Largest relative change of the derivative between steps `h/2` and `h/4`.
    pub max_discrepancy: f64,
    pub inverse: Option<Box<C1Report>>,
}

impl C1Report {
    pub fn passes(&self) -> bool {
        self.verdict.holds()
    }
}

/// Checks (a) injectivity on the grid, (b) stability of central differences
/// under step halving, (c) continuity of every partial derivative between
/// adjacent grid points away from seams, and (d) the same for the inverse.
pub fn check_c1_diffeo(map: &SampledMap<'_>, tol: &Tolerances) -> Result<C1Report, Error> {
    let mut report = check_one_way(map, tol)?;
    if !report.verdict.holds() {
        return Ok(report);
    }
    match &map.inverse {
        None => report.verdict = Verdict::Violated(C1Failure::MissingInverse),
        Some((inv, seams)) => {
            let grid = map.values()?;
            let back = SampledMap {
                label: format!("{} inverse", map.label),
                grid,
                seams: seams.clone(),
                map: Box::new(|y| inv(y)),
                inverse: None,
            };
            let inner = check_one_way(&back, tol)?;
            if let Verdict::Violated(w) = &inner.verdict {
                report.verdict = Verdict::Violated(C1Failure::Inverse(Box::new(w.clone())));
            }
            report.max_discrepancy = report.max_discrepancy.max(inner.max_discrepancy);
            report.inverse = Some(Box::new(inner));
        }
    }
    Ok(report)
}

fn check_one_way(map: &SampledMap<'_>, tol: &Tolerances) -> Result<C1Report, Error> {
    if tol.h_start / 4.0 < tol.h_min {
        return Err(Error::StepUnderflow { min: tol.h_min });
    }
    let n = map.grid.len();
    let d = map.grid.first().map_or(0, Vec::len);
    if n == 0 || d == 0 {
        return Err(Error::GridTooSmall { map: map.label.clone() });
    }
    if map.grid.iter().any(|x| x.len() != d) || map.seams.len() != d {
        return Err(Error::DimensionMismatch { expected: d, found: map.seams.len() });
    }
    let values = map.values()?;
    if let Some((first, second)) = first_collision(&values, tol.eps_inv) {
        return Ok(empty_report(n, d, C1Failure::NotInjective { first, second }));
    }

    let layout = Layout::new(map, d)?;
    let mut partials = vec![vec![None; d]; n];
    let mut max_discrepancy: f64 = 0.0;
    let mut first_failure: Option<C1Failure> = None;
    for (i, x) in map.grid.iter().enumerate() {
        #[allow(clippy::needless_range_loop)]
        for axis in 0..d {
            let edge = layout.edge_distance[i][axis];
            let h = tol.h_start.min(edge / 4.0);
            if h / 4.0 < tol.h_min {
                continue;
            }
            let Some(ds) = [h, h / 2.0, h / 4.0]
                .iter()
                .map(|&s| central(map, x, axis, s))
                .collect::<Option<Vec<_>>>()
            else {
                continue;
            };
            let mut worst: f64 = 0.0;
            let mut settled = true;
            for ((a, b), c) in ds[0].iter().zip(&ds[1]).zip(&ds[2]) {
                let e1 = (a - b).abs();
                let e2 = (b - c).abs();
                let scale = c.abs().max(1.0);
                worst = worst.max(e2 / scale);
                if e2 > tol.eps_deriv * scale && e2 > e1 / 2.0 {
                    settled = false;
                }
            }
            max_discrepancy = max_discrepancy.max(worst);
            if !settled && first_failure.is_none() {
                first_failure = Some(C1Failure::Unstable { point: i, axis, discrepancy: worst });
            }
            let rich = ds[2].iter().zip(&ds[1]).map(|(a, b)| (4.0 * a - b) / 3.0).collect();
            partials[i][axis] = Some(rich);
        }
    }
    if let Some(w) = first_failure {
        return Ok(C1Report {
            verdict: Verdict::Violated(w),
            partials,
            edge_distance: layout.edge_distance,
            max_discrepancy,
            inverse: None,
        });
    }

    for &(i, j, axis) in &layout.cells {
        for b in 0..d {
            if partials[i][b].is_none() || partials[j][b].is_none() {
                continue;
            }
            if let Some(jump) = kink(map, &map.grid[i], &map.grid[j], b, tol) {
                return Ok(C1Report {
                    verdict: Verdict::Violated(C1Failure::DerivativeJump { point: i, next: j, axis, jump }),
                    partials,
                    edge_distance: layout.edge_distance,
                    max_discrepancy,
                    inverse: None,
                });
            }
        }
    }
    Ok(C1Report {
        verdict: Verdict::Holds,
        partials,
        edge_distance: layout.edge_distance,
        max_discrepancy,
        inverse: None,
    })
}

fn empty_report(n: usize, d: usize, failure: C1Failure) -> C1Report {
    C1Report {
        verdict: Verdict::Violated(failure),
        partials: vec![vec![None; d]; n],
        edge_distance: vec![vec![0.0; d]; n],
        max_discrepancy: 0.0,
        inverse: None,
    }
}

/// First pair (by smaller index, then larger) of images within `eps` in
/// the max norm.
fn first_collision(values: &[Vec<f64>], eps: f64) -> Option<(usize, usize)> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a][0].total_cmp(&values[b][0]));
    let mut best: Option<(usize, usize)> = None;
    for (k, &a) in order.iter().enumerate() {
        for &b in &order[k + 1..] {
            if values[b][0] - values[a][0] > eps {
                break;
            }
            let close = values[a].iter().zip(&values[b]).all(|(u, v)| (u - v).abs() <= eps);
            if close {
                let pair = (a.min(b), a.max(b));
                if best.is_none_or(|w| pair < w) {
                    best = Some(pair);
                }
            }
        }
    }
    best
}

fn shifted(x: &[f64], axis: usize, s: f64) -> Vec<f64> {
    let mut y = x.to_vec();
    y[axis] += s;
    y
}

fn central(map: &SampledMap<'_>, x: &[f64], axis: usize, h: f64) -> Option<Vec<f64>> {
    let plus = map.eval(&shifted(x, axis, h))?;
    let minus = map.eval(&shifted(x, axis, -h))?;
    Some(plus.iter().zip(&minus).map(|(p, m)| (p - m) / (2.0 * h)).collect())
}

fn lerp(a: &[f64], b: &[f64], s: f64) -> Vec<f64> {
    a.iter().zip(b).map(|(u, v)| u + s * (v - u)).collect()
}

/// Derivatives along `axis` at 9 equally spaced points from `a` to `b`,
/// with a step much finer than the spacing.
fn refined(map: &SampledMap<'_>, a: &[f64], b: &[f64], axis: usize, tol: &Tolerances) -> Option<Vec<Vec<f64>>> {
    let width = a.iter().zip(b).map(|(u, v)| (u - v).abs()).fold(0.0, f64::max);
    let h = (width / 128.0).max(tol.h_min);
    (0..=8).map(|k| central(map, &lerp(a, b, k as f64 / 8.0), axis, h)).collect()
}

fn jumps(ds: &[Vec<f64>]) -> Vec<f64> {
    ds.windows(2)
        .map(|w| w[0].iter().zip(&w[1]).map(|(u, v)| (u - v).abs()).fold(0.0, f64::max))
        .collect()
}

/// Returns the size of a derivative jump inside the cell `[a, b]`, if any.
///
/// The cell is cut into 8 pieces and the piece with the largest change of
/// the derivative is cut again. A continuous derivative changes about 8
/// times less on the finer piece; a jump stays the same size.
fn kink(map: &SampledMap<'_>, a: &[f64], b: &[f64], axis: usize, tol: &Tolerances) -> Option<f64> {
    let coarse = refined(map, a, b, axis, tol)?;
    let js = jumps(&coarse);
    let (k, &big) = js.iter().enumerate().max_by(|x, y| x.1.total_cmp(y.1)).expect("8 pieces");
    let scale = coarse.iter().flatten().fold(1.0_f64, |m, v| m.max(v.abs()));
    if big <= tol.eps_deriv * scale {
        return None;
    }
    let lo = lerp(a, b, k as f64 / 8.0);
    let hi = lerp(a, b, (k + 1) as f64 / 8.0);
    let fine = refined(map, &lo, &hi, axis, tol)?;
    let small = jumps(&fine).into_iter().fold(0.0, f64::max);
    (small > big / 2.0).then_some(small)
}

/// Grid structure: coordinate lines along each axis, connected components
/// and adjacent cells. Grid points lying on a seam belong to no component.
struct Layout {
    edge_distance: Vec<Vec<f64>>,
    /// `(i, j, axis)`: `j` follows `i` along `axis` in the same component.
    cells: Vec<(usize, usize, usize)>,
}

impl Layout {
    fn new(map: &SampledMap<'_>, d: usize) -> Result<Self, Error> {
        let n = map.grid.len();
        let mut edge_distance = vec![vec![0.0; d]; n];
        let mut cells = Vec::new();
        for axis in 0..d {
            // points sharing every other coordinate form a line
            let mut lines: HashMap<Vec<u64>, Vec<usize>> = HashMap::new();
            for (i, x) in map.grid.iter().enumerate() {
                let key = x
                    .iter()
                    .enumerate()
                    .filter(|&(a, _)| a != axis)
                    .map(|(_, v)| v.to_bits())
                    .collect();
                lines.entry(key).or_default().push(i);
            }
            let mut keys: Vec<&Vec<u64>> = lines.keys().collect();
            keys.sort();
            for key in keys {
                let mut line = lines[key].clone();
                line.sort_by(|&a, &b| map.grid[a][axis].total_cmp(&map.grid[b][axis]).then(a.cmp(&b)));
                line.dedup_by(|a, b| map.grid[*a][axis].partial_cmp(&map.grid[*b][axis]) == Some(Ordering::Equal));
                let on_seam = |i: usize| map.seams[axis].contains(&map.grid[i][axis]);
                let mut start = 0;
                for k in 1..=line.len() {
                    let cut = k == line.len() || on_seam(line[k]) || on_seam(line[k - 1]) || {
                        let (p, q) = (&map.grid[line[k - 1]], &map.grid[line[k]]);
                        let (lo, hi) = (p[axis], q[axis]);
                        map.seams[axis].iter().any(|&s| lo < s && s < hi) || map.eval(&lerp(p, q, 0.5)).is_none()
                    };
                    if !cut {
                        continue;
                    }
                    let comp = &line[start..k];
                    start = k;
                    if comp.len() == 1 && on_seam(comp[0]) {
                        continue;
                    }
                    if comp.len() < 3 {
                        // off tensor grids, lines in some directions are too
                        // short to differentiate along; only 1-d grids must
                        // be long enough everywhere
                        if d == 1 {
                            return Err(Error::GridTooSmall { map: map.label.clone() });
                        }
                        continue;
                    }
                    let lo = map.grid[comp[0]][axis];
                    let hi = map.grid[comp[comp.len() - 1]][axis];
                    for &i in comp {
                        let v = map.grid[i][axis];
                        edge_distance[i][axis] = (v - lo).min(hi - v);
                    }
                    cells.extend(comp.windows(2).map(|w| (w[0], w[1], axis)));
                }
            }
        }
        cells.sort_unstable();
        Ok(Layout { edge_distance, cells })
    }
}
