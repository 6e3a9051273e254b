//! The unit circle `z1² + z2² = 1` with an angle atlas and a projection atlas.
//!
//! Points are `(sin 2πt, cos 2πt)` for `t ∈ [0, 1)`, so `t = 0` is `(0, 1)`.

use std::f64::consts::TAU;
use std::sync::Arc;

use crate::manifold::{Atlas, Chart, ChartRef, Tolerances};

/// Default number of samples per chart.
pub const DEFAULT_CIRCLE_SAMPLES: usize = 1024;

/// Rounding noise below this is replaced by `+0.0`, so that points such as
/// `t = 1/2` land exactly on the axes.
const SNAP: f64 = 1e-15;

fn snap(v: f64) -> f64 {
    if v.abs() < SNAP {
        0.0
    } else {
        v
    }
}

pub fn circle_point(t: f64) -> Vec<f64> {
    vec![snap((TAU * t).sin()), snap((TAU * t).cos())]
}

/// `t_k = k/n` for `k < n`.
pub fn circle_samples(n: usize) -> Vec<Vec<f64>> {
    (0..n).map(|k| circle_point(k as f64 / n as f64)).collect()
}

fn angle(p: &[f64]) -> f64 {
    p[0].atan2(p[1]) / TAU
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Kind {
    /// Angle in `(0, 1)`; misses `(0, 1)`.
    AngleFromTop,
    /// Angle in `(-1/2, 1/2)`; misses `(0, -1)`.
    AngleFromBottom,
    /// Half-circle `sign * z_side > 0` with the other coordinate as chart.
    Half { side: usize, sign: f64 },
}

#[derive(Debug, Clone)]
struct CircleChart {
    label: String,
    kind: Kind,
    grade: f64,
}

impl CircleChart {
    fn coordinate(&self, p: &[f64]) -> Option<f64> {
        match self.kind {
            Kind::AngleFromTop => {
                let a = angle(p);
                let u = if a < 0.0 { a + 1.0 } else { a };
                (u > 0.0 && u < 1.0).then_some(u)
            }
            Kind::AngleFromBottom => {
                let a = angle(p);
                (a > -0.5 && a < 0.5).then_some(a)
            }
            Kind::Half { side, sign } => (sign * p[side] > 0.0).then(|| p[1 - side]),
        }
    }
}

impl Chart for CircleChart {
    fn label(&self) -> &str {
        &self.label
    }

    fn dim(&self) -> usize {
        1
    }

    fn membership(&self, p: &[f64]) -> f64 {
        if self.coordinate(p).is_some() {
            self.grade
        } else {
            0.0
        }
    }

    fn coord(&self, p: &[f64]) -> Option<Vec<f64>> {
        self.coordinate(p).map(|c| vec![c])
    }

    fn coord_inverse(&self, c: &[f64]) -> Option<Vec<f64>> {
        let c = c[0];
        match self.kind {
            Kind::AngleFromTop => (c > 0.0 && c < 1.0).then(|| circle_point(c)),
            Kind::AngleFromBottom => (c > -0.5 && c < 0.5).then(|| circle_point(c)),
            Kind::Half { side, sign } => (c > -1.0 && c < 1.0).then(|| {
                let mut p = vec![0.0; 2];
                p[side] = sign * (1.0 - c * c).sqrt();
                p[1 - side] = c;
                p
            }),
        }
    }

    fn seams(&self) -> Vec<Vec<f64>> {
        match self.kind {
            Kind::AngleFromTop => vec![vec![0.0, 0.5, 1.0]],
            Kind::AngleFromBottom => vec![vec![-0.5, 0.0, 0.5]],
            Kind::Half { .. } => vec![vec![]],
        }
    }
}

fn chart(label: &str, kind: Kind, grade: f64) -> ChartRef {
    Arc::new(CircleChart { label: label.to_string(), kind, grade })
}

/// Angle charts: `U` misses `(0,1)` and has membership `1`, `V` misses
/// `(0,-1)` and has membership `1/2`. Seams sit where the two angle
/// conventions disagree.
pub fn phi_atlas(samples: usize) -> Atlas {
    let charts = vec![chart("U", Kind::AngleFromTop, 1.0), chart("V", Kind::AngleFromBottom, 0.5)];
    Atlas::new(charts, circle_samples(samples), Tolerances::default()).expect("U and V cover the circle")
}

/// Four half-circles with membership `1/4`: `U1` (`z1 > 0`) and `U3`
/// (`z1 < 0`) use `z2` as coordinate, `U2` (`z2 > 0`) and `U4` (`z2 < 0`)
/// use `z1`.
pub fn psi_atlas(samples: usize) -> Atlas {
    let q = 0.25;
    let charts = vec![
        chart("U1", Kind::Half { side: 0, sign: 1.0 }, q),
        chart("U2", Kind::Half { side: 1, sign: 1.0 }, q),
        chart("U3", Kind::Half { side: 0, sign: -1.0 }, q),
        chart("U4", Kind::Half { side: 1, sign: -1.0 }, q),
    ];
    Atlas::new(charts, circle_samples(samples), Tolerances::default()).expect("half-circles cover the circle")
}
