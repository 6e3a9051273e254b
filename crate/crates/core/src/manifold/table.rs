//! Charts given by tables of `(parameter, point, membership)` rows.
//!
//! The inverse coordinate map is a cubic spline through the rows;
//! the coordinate map projects a point onto that curve. Memberships are
//! interpolated linearly in the parameter.

use std::sync::Arc;

use crate::error::Error;
use crate::manifold::{Atlas, Chart, ChartRef, Tolerances};

/// Points farther than this from a chart's curve (relative to `1 + |p|`)
/// are outside the chart.
pub const ON_CURVE_TOLERANCE: f64 = 1e-6;

/// Cubic spline through `(xs[i], ys[i])`, clamped at both ends to the slope
/// of the interpolating polynomial through the nearest (up to four) knots.
/// Unlike natural end conditions this keeps the error small near the ends.
#[derive(Debug, Clone, PartialEq)]
pub struct CubicSpline {
    xs: Vec<f64>,
    ys: Vec<f64>,
    /// Second derivatives at the knots.
    m: Vec<f64>,
}

/// Derivative at `xs[at]` of the polynomial through all given points.
fn lagrange_slope(xs: &[f64], ys: &[f64], at: usize) -> f64 {
    let x = xs[at];
    let mut slope = 0.0;
    for j in 0..xs.len() {
        let denom: f64 = (0..xs.len()).filter(|&k| k != j).map(|k| xs[j] - xs[k]).product();
        let deriv = if j == at {
            (0..xs.len()).filter(|&k| k != j).map(|k| 1.0 / (x - xs[k])).sum::<f64>() * denom
        } else {
            (0..xs.len()).filter(|&k| k != j && k != at).map(|k| x - xs[k]).product()
        };
        slope += ys[j] * deriv / denom;
    }
    slope
}

impl CubicSpline {
    /// `xs` must be strictly increasing with at least two knots.
    pub fn interpolate(xs: Vec<f64>, ys: Vec<f64>) -> CubicSpline {
        let n = xs.len();
        let k = n.min(4);
        let s0 = lagrange_slope(&xs[..k], &ys[..k], 0);
        let s1 = lagrange_slope(&xs[n - k..], &ys[n - k..], k - 1);
        let h: Vec<f64> = xs.windows(2).map(|w| w[1] - w[0]).collect();
        let secant = |i: usize| (ys[i + 1] - ys[i]) / h[i];
        // tridiagonal system: sub[i] m[i-1] + diag[i] m[i] + sup[i] m[i+1] = rhs[i]
        let mut sub = vec![0.0; n];
        let mut diag = vec![0.0; n];
        let mut sup = vec![0.0; n];
        let mut rhs = vec![0.0; n];
        diag[0] = 2.0 * h[0];
        sup[0] = h[0];
        rhs[0] = 6.0 * (secant(0) - s0);
        for i in 1..n - 1 {
            sub[i] = h[i - 1];
            diag[i] = 2.0 * (h[i - 1] + h[i]);
            sup[i] = h[i];
            rhs[i] = 6.0 * (secant(i) - secant(i - 1));
        }
        sub[n - 1] = h[n - 2];
        diag[n - 1] = 2.0 * h[n - 2];
        rhs[n - 1] = 6.0 * (s1 - secant(n - 2));
        for i in 1..n {
            let w = sub[i] / diag[i - 1];
            diag[i] -= w * sup[i - 1];
            rhs[i] -= w * rhs[i - 1];
        }
        let mut m = vec![0.0; n];
        m[n - 1] = rhs[n - 1] / diag[n - 1];
        for i in (0..n - 1).rev() {
            m[i] = (rhs[i] - sup[i] * m[i + 1]) / diag[i];
        }
        CubicSpline { xs, ys, m }
    }

    fn interval(&self, x: f64) -> usize {
        let k = self.xs.partition_point(|&v| v <= x);
        k.clamp(1, self.xs.len() - 1) - 1
    }

    /// Value and first derivative at `x`.
    pub fn eval(&self, x: f64) -> (f64, f64) {
        let i = self.interval(x);
        let (x0, x1) = (self.xs[i], self.xs[i + 1]);
        let h = x1 - x0;
        let (a, b) = ((x1 - x) / h, (x - x0) / h);
        let (m0, m1) = (self.m[i], self.m[i + 1]);
        let value = a * self.ys[i] + b * self.ys[i + 1] + ((a * a * a - a) * m0 + (b * b * b - b) * m1) * h * h / 6.0;
        let slope = (self.ys[i + 1] - self.ys[i]) / h - (3.0 * a * a - 1.0) * h * m0 / 6.0 + (3.0 * b * b - 1.0) * h * m1 / 6.0;
        (value, slope)
    }
}

/// A one-parameter chart read from a table.
#[derive(Debug, Clone)]
pub struct TabulatedChart {
    label: String,
    params: Vec<f64>,
    points: Vec<Vec<f64>>,
    memberships: Vec<f64>,
    seams: Vec<f64>,
    curve: Vec<CubicSpline>,
}

impl TabulatedChart {
    /// Rows are `(parameter, point, membership)`; they are sorted by
    /// parameter, which must not repeat.
    pub fn new(label: impl Into<String>, mut rows: Vec<(f64, Vec<f64>, f64)>, seams: Vec<f64>) -> Result<Self, Error> {
        let label = label.into();
        let bad = |msg: String| Error::InvalidChart(format!("{label}: {msg}"));
        if rows.len() < 3 {
            return Err(bad("needs at least 3 rows".into()));
        }
        let m = rows[0].1.len();
        if m == 0 || rows.iter().any(|r| r.1.len() != m) {
            return Err(bad("rows have different point dimensions".into()));
        }
        if let Some(r) = rows.iter().find(|r| !(0.0..=1.0).contains(&r.2)) {
            return Err(bad(format!("membership {} outside [0,1]", r.2)));
        }
        if rows.iter().any(|r| !r.0.is_finite() || r.1.iter().any(|v| !v.is_finite())) {
            return Err(bad("non-finite value".into()));
        }
        rows.sort_by(|a, b| a.0.total_cmp(&b.0));
        if rows.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(bad("repeated parameter".into()));
        }
        let params: Vec<f64> = rows.iter().map(|r| r.0).collect();
        let curve = (0..m)
            .map(|k| CubicSpline::interpolate(params.clone(), rows.iter().map(|r| r.1[k]).collect()))
            .collect();
        let memberships = rows.iter().map(|r| r.2).collect();
        let points = rows.into_iter().map(|r| r.1).collect();
        Ok(TabulatedChart { label, params, points, memberships, seams, curve })
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    fn domain(&self) -> (f64, f64) {
        (self.params[0], self.params[self.params.len() - 1])
    }

    fn at(&self, c: f64) -> (Vec<f64>, Vec<f64>) {
        self.curve.iter().map(|s| s.eval(c)).unzip()
    }

    fn membership_at(&self, c: f64) -> f64 {
        let k = self.params.partition_point(|&v| v <= c).clamp(1, self.params.len() - 1) - 1;
        let s = (c - self.params[k]) / (self.params[k + 1] - self.params[k]);
        self.memberships[k] + s * (self.memberships[k + 1] - self.memberships[k])
    }

    /// Parameter of the curve point nearest to `p`, if within tolerance.
    fn project(&self, p: &[f64]) -> Option<f64> {
        if p.len() != self.points[0].len() {
            return None;
        }
        let dist2 = |q: &[f64]| q.iter().zip(p).map(|(a, b)| (a - b) * (a - b)).sum::<f64>();
        let nearest = (0..self.points.len())
            .min_by(|&a, &b| dist2(&self.points[a]).total_cmp(&dist2(&self.points[b])))
            .expect("at least 3 rows");
        let lo = self.params[nearest.saturating_sub(1)];
        let hi = self.params[(nearest + 1).min(self.params.len() - 1)];
        let mut c = self.params[nearest];
        for _ in 0..50 {
            let (q, dq) = self.at(c);
            let g: f64 = q.iter().zip(p).zip(&dq).map(|((a, b), d)| (a - b) * d).sum();
            let gg: f64 = dq.iter().map(|d| d * d).sum();
            if gg == 0.0 {
                break;
            }
            let next = (c - g / gg).clamp(lo, hi);
            if (next - c).abs() <= 1e-15 * (1.0 + c.abs()) {
                c = next;
                break;
            }
            c = next;
        }
        let (q, _) = self.at(c);
        let scale = 1.0 + p.iter().map(|v| v * v).sum::<f64>().sqrt();
        (dist2(&q).sqrt() <= ON_CURVE_TOLERANCE * scale).then_some(c)
    }
}

impl Chart for TabulatedChart {
    fn label(&self) -> &str {
        &self.label
    }

    fn dim(&self) -> usize {
        1
    }

    fn membership(&self, p: &[f64]) -> f64 {
        self.project(p).map_or(0.0, |c| self.membership_at(c))
    }

    fn coord(&self, p: &[f64]) -> Option<Vec<f64>> {
        self.project(p).map(|c| vec![c])
    }

    fn coord_inverse(&self, c: &[f64]) -> Option<Vec<f64>> {
        let (lo, hi) = self.domain();
        (lo <= c[0] && c[0] <= hi).then(|| self.at(c[0]).0)
    }

    fn seams(&self) -> Vec<Vec<f64>> {
        vec![self.seams.clone()]
    }
}

/// An atlas whose samples are all table points in order, dropping points
/// within `eps_inv` (max norm) of an earlier one.
pub fn tabulated_atlas(charts: Vec<TabulatedChart>, tolerances: Tolerances) -> Result<Atlas, Error> {
    let eps = tolerances.eps_inv;
    let mut samples: Vec<Vec<f64>> = Vec::new();
    for c in &charts {
        for p in &c.points {
            let repeat = samples
                .iter()
                .any(|q| q.iter().zip(p).all(|(a, b)| (a - b).abs() <= eps));
            if !repeat {
                samples.push(p.clone());
            }
        }
    }
    let charts = charts.into_iter().map(|c| Arc::new(c) as ChartRef).collect();
    Atlas::new(charts, samples, tolerances)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifold::{check_atlas, circle_point, check_cover_condition};

    #[test]
    fn spline_is_accurate_up_to_the_ends() {
        let xs: Vec<f64> = (0..20).map(|i| i as f64 / 19.0).collect();
        let ys = xs.iter().map(|x| x.sin()).collect();
        let s = CubicSpline::interpolate(xs, ys);
        for x in [0.0, 0.01, 0.33, 0.5, 0.77, 0.99, 1.0] {
            let (v, d) = s.eval(x);
            assert!((v - f64::sin(x)).abs() < 1e-6, "{x} {v}");
            assert!((d - f64::cos(x)).abs() < 1e-4, "{x} {d}");
        }
    }

    fn arc(label: &str, from: f64, to: f64, n: usize, grade: f64) -> TabulatedChart {
        let rows = (0..n)
            .map(|k| {
                let t = from + (to - from) * k as f64 / (n - 1) as f64;
                (t, circle_point(t), grade)
            })
            .collect();
        TabulatedChart::new(label, rows, vec![]).unwrap()
    }

    #[test]
    fn spline_reproduces_cubics() {
        let xs = vec![0.0, 0.3, 0.5, 1.1, 1.6];
        let f = |x: f64| x * x * x - 2.0 * x + 1.0;
        let s = CubicSpline::interpolate(xs.clone(), xs.iter().map(|&x| f(x)).collect());
        for x in [0.0, 0.2, 0.7, 1.6] {
            assert!((s.eval(x).0 - f(x)).abs() < 1e-12);
        }
    }

    #[test]
    fn table_rejects_bad_rows() {
        let p = vec![0.0, 1.0];
        assert!(TabulatedChart::new("a", vec![(0.0, p.clone(), 1.0)], vec![]).is_err());
        let rows = vec![(0.0, p.clone(), 1.0), (0.0, p.clone(), 1.0), (1.0, p.clone(), 1.0)];
        assert!(TabulatedChart::new("a", rows, vec![]).is_err());
        let rows = vec![(0.0, p.clone(), 1.5), (0.5, p.clone(), 1.0), (1.0, p, 1.0)];
        assert!(TabulatedChart::new("a", rows, vec![]).is_err());
    }

    #[test]
    fn two_overlapping_arcs() {
        let a = arc("A", 0.0, 0.6, 400, 1.0);
        let b = arc("B", 0.4, 0.95, 400, 1.0);
        assert!(a.membership(&circle_point(0.3)) > 0.0);
        assert_eq!(a.membership(&circle_point(0.8)), 0.0);
        let c = a.coord(&circle_point(0.25)).unwrap()[0];
        assert!((c - 0.25).abs() < 1e-6);

        let atlas = tabulated_atlas(vec![a, b], Tolerances::default()).unwrap();
        assert_eq!(check_cover_condition(&atlas).max_deficiency, 0.0);
        let r = check_atlas(&atlas, None).unwrap();
        assert!(r.transitions_pass(), "{:?}", r.transitions.iter().find(|p| !p.passes()));
    }
}
