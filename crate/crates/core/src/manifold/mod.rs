//! Sampled fuzzy manifolds: charts with float memberships, atlas checks,
//! product atlases, rank checks and the general linear group demo.

mod c1;
mod circle;
mod gl;
mod rank;
mod table;

use std::fmt;
use std::sync::Arc;

pub use c1::*;
pub use circle::*;
pub use gl::*;
pub use rank::*;
pub use table::*;

use crate::error::Error;
use crate::verdict::Verdict;

/// Numeric tolerances. All are configurable by name; see [`Tolerances::set`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Injectivity and chart round-trip tolerance.
    pub eps_inv: f64,
    /// Relative tolerance for derivative stability.
    pub eps_deriv: f64,
    /// First finite-difference step; two halvings follow.
    pub h_start: f64,
    /// Smallest step allowed.
    pub h_min: f64,
    /// Singular values below `rank_rel * σ_max` count as zero.
    pub rank_rel: f64,
    /// Largest accepted cover deficiency `1 - sup_j μ_j(x)`.
    pub cover: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { eps_inv: 1e-9, eps_deriv: 1e-6, h_start: 1e-3, h_min: 1e-7, rank_rel: 1e-6, cover: 0.0 }
    }
}

impl Tolerances {
    pub const NAMES: [&'static str; 6] = ["eps_inv", "eps_deriv", "h_start", "h_min", "rank_rel", "cover"];

    pub fn set(&mut self, name: &str, value: f64) -> Result<(), Error> {
        if !value.is_finite() || value < 0.0 {
            return Err(Error::InvalidTolerance(format!("{name}={value}")));
        }
        let slot = match name {
            "eps_inv" => &mut self.eps_inv,
            "eps_deriv" => &mut self.eps_deriv,
            "h_start" => &mut self.h_start,
            "h_min" => &mut self.h_min,
            "rank_rel" => &mut self.rank_rel,
            "cover" => &mut self.cover,
            _ => return Err(Error::InvalidTolerance(format!("unknown tolerance `{name}`"))),
        };
        *slot = value;
        Ok(())
    }
}

/// A fuzzy chart on a sampled manifold embedded in `R^m`.
pub trait Chart: Send + Sync {
    fn label(&self) -> &str;
    /// Coordinate dimension.
    fn dim(&self) -> usize;
    /// Membership grade in `[0, 1]`; the support is where it is positive.
    fn membership(&self, p: &[f64]) -> f64;
    /// Coordinates of a support point.
    fn coord(&self, p: &[f64]) -> Option<Vec<f64>>;
    /// The point with the given coordinates, if they are in the chart image.
    fn coord_inverse(&self, c: &[f64]) -> Option<Vec<f64>>;
    /// Per coordinate axis, values where the chart image is cut.
    fn seams(&self) -> Vec<Vec<f64>> {
        vec![Vec::new(); self.dim()]
    }
}

pub type ChartRef = Arc<dyn Chart>;

/// Charts sharing one list of sample points.
#[derive(Clone)]
pub struct Atlas {
    charts: Vec<ChartRef>,
    samples: Vec<Vec<f64>>,
    pub tolerances: Tolerances,
}

impl fmt::Debug for Atlas {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<&str> = self.charts.iter().map(|c| c.label()).collect();
        f.debug_struct("Atlas").field("charts", &labels).field("samples", &self.samples.len()).finish()
    }
}

impl Atlas {
    /// Every sample must lie in the support of some chart.
    pub fn new(charts: Vec<ChartRef>, samples: Vec<Vec<f64>>, tolerances: Tolerances) -> Result<Self, Error> {
        if let Some(i) = samples.iter().position(|p| charts.iter().all(|c| c.membership(p) <= 0.0)) {
            return Err(Error::UncoveredSample(i));
        }
        Ok(Atlas { charts, samples, tolerances })
    }

    pub fn charts(&self) -> &[ChartRef] {
        &self.charts
    }

    pub fn samples(&self) -> &[Vec<f64>] {
        &self.samples
    }

    fn sup_membership(&self, p: &[f64]) -> f64 {
        self.charts.iter().map(|c| c.membership(p)).fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoverReport {
    /// `max_x (1 - sup_j μ_j(x))`.
    pub max_deficiency: f64,
    /// First sample attaining the maximum.
    pub worst_sample: usize,
    pub passes: bool,
}

/// Reports how far `sup_j μ_j` falls short of `1`; never adjusts the atlas.
pub fn check_cover_condition(atlas: &Atlas) -> CoverReport {
    let mut max_deficiency = f64::NEG_INFINITY;
    let mut worst_sample = 0;
    for (i, p) in atlas.samples.iter().enumerate() {
        let def = 1.0 - atlas.sup_membership(p);
        if def > max_deficiency {
            max_deficiency = def;
            worst_sample = i;
        }
    }
    CoverReport { max_deficiency, worst_sample, passes: max_deficiency <= atlas.tolerances.cover }
}

struct Normalized {
    inner: ChartRef,
    all: Vec<ChartRef>,
}

impl Chart for Normalized {
    fn label(&self) -> &str {
        self.inner.label()
    }
    fn dim(&self) -> usize {
        self.inner.dim()
    }
    fn membership(&self, p: &[f64]) -> f64 {
        let m = self.inner.membership(p);
        if m <= 0.0 {
            return 0.0;
        }
        m / self.all.iter().map(|c| c.membership(p)).fold(0.0, f64::max)
    }
    fn coord(&self, p: &[f64]) -> Option<Vec<f64>> {
        self.inner.coord(p)
    }
    fn coord_inverse(&self, c: &[f64]) -> Option<Vec<f64>> {
        self.inner.coord_inverse(c)
    }
    fn seams(&self) -> Vec<Vec<f64>> {
        self.inner.seams()
    }
}

/// Divides every membership by the pointwise supremum, so the supremum
/// becomes `1` wherever some chart applies. Supports are unchanged.
pub fn normalize_cover(atlas: &Atlas) -> Atlas {
    let charts = atlas
        .charts
        .iter()
        .map(|c| Arc::new(Normalized { inner: c.clone(), all: atlas.charts.clone() }) as ChartRef)
        .collect();
    Atlas { charts, samples: atlas.samples.clone(), tolerances: atlas.tolerances }
}

fn in_support(chart: &dyn Chart, p: &[f64]) -> bool {
    chart.membership(p) > 0.0
}

fn chart_to_chart<'a>(from: &'a ChartRef, to: &'a ChartRef) -> PointMap<'a> {
    Box::new(move |c| {
        let p = from.coord_inverse(c)?;
        (in_support(from.as_ref(), &p) && in_support(to.as_ref(), &p)).then(|| to.coord(&p)).flatten()
    })
}

/// `φ_to ∘ φ_from⁻¹` on the chart-`from` coordinates of the shared samples
/// in both supports, with its inverse attached.
pub fn transition_between<'a>(from: &'a ChartRef, to: &'a ChartRef, samples: &[Vec<f64>]) -> Result<SampledMap<'a>, Error> {
    let grid: Vec<Vec<f64>> = samples
        .iter()
        .filter(|p| in_support(from.as_ref(), p) && in_support(to.as_ref(), p))
        .filter_map(|p| from.coord(p))
        .collect();
    if grid.is_empty() {
        return Err(Error::EmptyOverlap { from: from.label().to_string(), to: to.label().to_string() });
    }
    Ok(SampledMap {
        label: format!("{} -> {}", from.label(), to.label()),
        grid,
        seams: from.seams(),
        map: chart_to_chart(from, to),
        inverse: Some((chart_to_chart(to, from), to.seams())),
    })
}

/// The transition from chart `j` to chart `l` of one atlas.
pub fn transition_map(atlas: &Atlas, j: usize, l: usize) -> Result<SampledMap<'_>, Error> {
    transition_between(&atlas.charts[j], &atlas.charts[l], &atlas.samples)
}

#[derive(Debug, Clone, PartialEq)]
pub enum PairOutcome {
    /// The supports do not meet on the samples.
    Empty,
    Checked(C1Report),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairReport {
    pub from: String,
    pub to: String,
    pub outcome: PairOutcome,
}

impl PairReport {
    pub fn passes(&self) -> bool {
        match &self.outcome {
            PairOutcome::Empty => true,
            PairOutcome::Checked(r) => r.passes(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AtlasReport {
    pub cover: CoverReport,
    /// Largest `|φ(φ⁻¹(φ(p))) - φ(p)|` over charts and support samples.
    pub round_trip: f64,
    /// Ordered pairs within the first atlas, `j = l` included.
    pub transitions: Vec<PairReport>,
    /// Pairs from the first atlas into the second, when one is given.
    pub cross: Vec<PairReport>,
    pub round_trip_tolerance: f64,
}

impl AtlasReport {
    pub fn transitions_pass(&self) -> bool {
        self.transitions.iter().chain(&self.cross).all(PairReport::passes)
    }

    pub fn passes(&self) -> bool {
        self.cover.passes && self.round_trip <= self.round_trip_tolerance && self.transitions_pass()
    }
}

fn check_pair(from: &ChartRef, to: &ChartRef, samples: &[Vec<f64>], tol: &Tolerances) -> Result<PairReport, Error> {
    let outcome = match transition_between(from, to, samples) {
        Err(Error::EmptyOverlap { .. }) => PairOutcome::Empty,
        Err(e) => return Err(e),
        Ok(map) => PairOutcome::Checked(check_c1_diffeo(&map, tol)?),
    };
    Ok(PairReport { from: from.label().to_string(), to: to.label().to_string(), outcome })
}

fn round_trip(atlas: &Atlas) -> f64 {
    let mut worst: f64 = 0.0;
    for chart in &atlas.charts {
        for p in atlas.samples.iter().filter(|p| in_support(chart.as_ref(), p)) {
            let err = chart
                .coord(p)
                .and_then(|c| chart.coord_inverse(&c).and_then(|q| chart.coord(&q)).map(|back| (c, back)))
                .map_or(f64::INFINITY, |(c, back)| c.iter().zip(&back).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max));
            worst = worst.max(err);
        }
    }
    worst
}

/// Cover condition, chart round trips and every transition of `first`; with
/// `second`, also every transition from a chart of `first` to one of
/// `second`. Tolerances come from `first`.
pub fn check_atlas(first: &Atlas, second: Option<&Atlas>) -> Result<AtlasReport, Error> {
    let tol = first.tolerances;
    let mut transitions = Vec::new();
    for from in &first.charts {
        for to in &first.charts {
            transitions.push(check_pair(from, to, &first.samples, &tol)?);
        }
    }
    let mut cross = Vec::new();
    if let Some(second) = second {
        if second.samples != first.samples {
            return Err(Error::SampleMismatch);
        }
        for from in &first.charts {
            for to in &second.charts {
                cross.push(check_pair(from, to, &first.samples, &tol)?);
            }
        }
    }
    Ok(AtlasReport {
        cover: check_cover_condition(first),
        round_trip: round_trip(first),
        transitions,
        cross,
        round_trip_tolerance: tol.eps_inv,
    })
}

struct ProductChart {
    label: String,
    left: ChartRef,
    right: ChartRef,
    /// Ambient dimension of the left factor's points.
    split: usize,
}

impl Chart for ProductChart {
    fn label(&self) -> &str {
        &self.label
    }
    fn dim(&self) -> usize {
        self.left.dim() + self.right.dim()
    }
    fn membership(&self, p: &[f64]) -> f64 {
        self.left.membership(&p[..self.split]).min(self.right.membership(&p[self.split..]))
    }
    fn coord(&self, p: &[f64]) -> Option<Vec<f64>> {
        let mut c = self.left.coord(&p[..self.split])?;
        c.extend(self.right.coord(&p[self.split..])?);
        Some(c)
    }
    fn coord_inverse(&self, c: &[f64]) -> Option<Vec<f64>> {
        let k = self.left.dim();
        let mut p = self.left.coord_inverse(&c[..k])?;
        p.extend(self.right.coord_inverse(&c[k..])?);
        Some(p)
    }
    fn seams(&self) -> Vec<Vec<f64>> {
        let mut s = self.left.seams();
        s.extend(self.right.seams());
        s
    }
}

/// Charts `A × B` with membership `min(μ_A, μ_B)` and paired coordinates,
/// sampled on all pairs of samples.
pub fn product_atlas(x: &Atlas, y: &Atlas) -> Atlas {
    let split = x.samples.first().map_or(0, Vec::len);
    let mut charts: Vec<ChartRef> = Vec::new();
    for a in &x.charts {
        for b in &y.charts {
            charts.push(Arc::new(ProductChart {
                label: format!("{}x{}", a.label(), b.label()),
                left: a.clone(),
                right: b.clone(),
                split,
            }));
        }
    }
    let samples = x
        .samples
        .iter()
        .flat_map(|p| y.samples.iter().map(move |q| p.iter().chain(q).copied().collect()))
        .collect();
    Atlas { charts, samples, tolerances: x.tolerances }
}

/// Convenience: the first failing pair of a report, if any.
pub fn first_failing_pair(report: &AtlasReport) -> Verdict<(String, String)> {
    Verdict::from_violation(
        report
            .transitions
            .iter()
            .chain(&report.cross)
            .find(|p| !p.passes())
            .map(|p| (p.from.clone(), p.to.clone())),
    )
}
