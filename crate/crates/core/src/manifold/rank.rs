//! Finite-difference Jacobians and their numerical rank.

use nalgebra::DMatrix;

use crate::error::Error;
use crate::manifold::Tolerances;
use crate::verdict::Verdict;

/// Central-difference Jacobian of `f` at `x`; rows are outputs.
pub fn jacobian(f: &dyn Fn(&[f64]) -> Vec<f64>, x: &[f64], h: f64) -> Result<DMatrix<f64>, Error> {
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::DegenerateStep);
    }
    let m = f(x).len();
    let mut jac = DMatrix::zeros(m, x.len());
    let mut y = x.to_vec();
    for a in 0..x.len() {
        y[a] = x[a] + h;
        let plus = f(&y);
        y[a] = x[a] - h;
        let minus = f(&y);
        y[a] = x[a];
        if plus.len() != m || minus.len() != m {
            return Err(Error::DimensionMismatch { expected: m, found: plus.len().min(minus.len()) });
        }
        for r in 0..m {
            jac[(r, a)] = (plus[r] - minus[r]) / (2.0 * h);
        }
    }
    Ok(jac)
}

/// Number of singular values above `rank_rel` times the largest one.
pub fn matrix_rank(m: &DMatrix<f64>, rank_rel: f64) -> usize {
    if m.is_empty() {
        return 0;
    }
    let sv = m.clone().svd(false, false).singular_values;
    let top = sv.iter().copied().fold(0.0, f64::max);
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rank_rel * top).count()
}

pub fn numeric_rank(f: &dyn Fn(&[f64]) -> Vec<f64>, x: &[f64], h: f64, tol: &Tolerances) -> Result<usize, Error> {
    Ok(matrix_rank(&jacobian(f, x, h)?, tol.rank_rel))
}

/// Full column rank at every point; the witness is `(point index, rank)`.
pub fn check_immersion(
    f: &dyn Fn(&[f64]) -> Vec<f64>,
    points: &[Vec<f64>],
    h: f64,
    tol: &Tolerances,
) -> Result<Verdict<(usize, usize)>, Error> {
    for (i, x) in points.iter().enumerate() {
        let r = numeric_rank(f, x, h, tol)?;
        if r < x.len() {
            return Ok(Verdict::Violated((i, r)));
        }
    }
    Ok(Verdict::Holds)
}
