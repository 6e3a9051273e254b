//! Numeric checks on `GL(n, R)`: differentiability of the determinant,
//! smoothness of multiplication and inversion, and `O(n)` as a subgroup.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::manifold::rank::{jacobian, matrix_rank};
use crate::manifold::Tolerances;

/// Relative error accepted for derivative comparisons.
pub const GL_DERIVATIVE_TOLERANCE: f64 = 1e-4;
/// Accepted `‖QᵀQ - I‖` for orthogonal samples.
pub const ORTHOGONALITY_TOLERANCE: f64 = 1e-9;
/// Samples with `|det| < MIN_DET` are redrawn.
pub const MIN_DET: f64 = 0.1;

#[derive(Debug, Clone, PartialEq)]
pub struct GlReport {
    pub n: usize,
    pub samples: usize,
    /// Draws rejected for a small determinant.
    pub rejected: usize,
    /// Max relative error of the finite-difference determinant gradient
    /// against the cofactor matrix.
    pub det_gradient_error: f64,
    pub multiplication_error: f64,
    pub inversion_error: f64,
    /// Largest `‖QᵀQ - I‖` over orthogonalized samples, their products and
    /// inverses.
    pub orthogonal_defect: f64,
    /// Rank of the inclusion `GL(n) → R^{n²}`; should be `n²`.
    pub inclusion_rank: usize,
    /// Rank of the Cayley parametrization of `O(n)` near the identity;
    /// should be `n(n-1)/2`.
    pub orthogonal_rank: usize,
}

impl GlReport {
    pub fn passes(&self) -> bool {
        let n = self.n;
        self.det_gradient_error < GL_DERIVATIVE_TOLERANCE
            && self.multiplication_error < GL_DERIVATIVE_TOLERANCE
            && self.inversion_error < GL_DERIVATIVE_TOLERANCE
            && self.orthogonal_defect <= ORTHOGONALITY_TOLERANCE
            && self.inclusion_rank == n * n
            && self.orthogonal_rank == n * (n - 1) / 2
    }
}

fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0, |a, v| a.max(v.abs()))
}

fn relative(approx: &DMatrix<f64>, exact: &DMatrix<f64>) -> f64 {
    max_abs(&(approx - exact)) / max_abs(exact).max(f64::MIN_POSITIVE)
}

/// Cofactors `(-1)^{i+j} det(minor_ij)`, computed from minors.
pub fn cofactor_matrix(a: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    if n == 1 {
        return DMatrix::from_element(1, 1, 1.0);
    }
    DMatrix::from_fn(n, n, |i, j| {
        let minor = a.clone().remove_row(i).remove_column(j);
        let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
        sign * minor.determinant()
    })
}

/// Central differences of `det` in each entry.
pub fn det_gradient(a: &DMatrix<f64>, h: f64) -> DMatrix<f64> {
    let n = a.nrows();
    DMatrix::from_fn(n, n, |i, j| {
        let mut p = a.clone();
        let mut m = a.clone();
        p[(i, j)] += h;
        m[(i, j)] -= h;
        (p.determinant() - m.determinant()) / (2.0 * h)
    })
}

fn random_matrix(n: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    DMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..=1.0))
}

fn inverse(a: &DMatrix<f64>) -> DMatrix<f64> {
    a.clone().try_inverse().expect("samples have |det| >= MIN_DET")
}

/// Richardson-extrapolated central difference of `f(s)` at `s = 0`.
fn directional(f: impl Fn(f64) -> DMatrix<f64>, h: f64) -> DMatrix<f64> {
    let d = |s: f64| (f(s) - f(-s)) / (2.0 * s);
    (d(h / 4.0) * 4.0 - d(h / 2.0)) / 3.0
}

fn orthogonal_defect(q: &DMatrix<f64>) -> f64 {
    max_abs(&(q.transpose() * q - DMatrix::identity(q.nrows(), q.nrows())))
}

/// `S ↦ (I - S)(I + S)⁻¹` with `S` skew-symmetric, from its upper entries.
fn cayley(n: usize, params: &[f64]) -> Vec<f64> {
    let mut s = DMatrix::zeros(n, n);
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            s[(i, j)] = params[k];
            s[(j, i)] = -params[k];
            k += 1;
        }
    }
    let id = DMatrix::<f64>::identity(n, n);
    let q = (&id - &s) * inverse(&(&id + &s));
    q.iter().copied().collect()
}

/// Samples `count` matrices with entries uniform in `[-1, 1]` (redrawing
/// when `|det| < 0.1`) from a seeded generator and runs every check.
pub fn gl_demo(n: usize, count: usize, seed: u64, tol: &Tolerances) -> Result<GlReport, Error> {
    if !(1..=4).contains(&n) {
        return Err(Error::DimensionMismatch { expected: 4, found: n });
    }
    if count == 0 {
        return Err(Error::EmptySamples);
    }
    let h = tol.h_start;
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::DegenerateStep);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rejected = 0;
    let mut samples = Vec::with_capacity(count);
    while samples.len() < count {
        let a = random_matrix(n, &mut rng);
        if a.determinant().abs() < MIN_DET {
            rejected += 1;
        } else {
            samples.push(a);
        }
    }

    let mut det_gradient_error: f64 = 0.0;
    let mut multiplication_error: f64 = 0.0;
    let mut inversion_error: f64 = 0.0;
    let mut orth: f64 = 0.0;
    for (k, a) in samples.iter().enumerate() {
        det_gradient_error = det_gradient_error.max(relative(&det_gradient(a, h), &cofactor_matrix(a)));

        let b = &samples[(k + 1) % count];
        let e = random_matrix(n, &mut rng);
        let f = random_matrix(n, &mut rng);
        let fd = directional(|s| (a + &e * s) * (b + &f * s), h);
        multiplication_error = multiplication_error.max(relative(&fd, &(&e * b + a * &f)));

        let ai = inverse(a);
        let fd = directional(|s| inverse(&(a + &e * s)), h);
        inversion_error = inversion_error.max(relative(&fd, &(-(&ai * &e * &ai))));

        let q = a.clone().qr().q();
        let q2 = b.clone().qr().q();
        for m in [&q, &(&q * &q2), &inverse(&q)] {
            orth = orth.max(orthogonal_defect(m));
        }
    }

    let flat = |x: &[f64]| x.to_vec();
    let a0: Vec<f64> = samples[0].iter().copied().collect();
    let inclusion_rank = matrix_rank(&jacobian(&flat, &a0, h)?, tol.rank_rel);
    let k = n * (n - 1) / 2;
    let orthogonal_rank = if k == 0 {
        0
    } else {
        let params: Vec<f64> = (0..k).map(|_| rng.random_range(-0.5..=0.5)).collect();
        matrix_rank(&jacobian(&|p: &[f64]| cayley(n, p), &params, h)?, tol.rank_rel)
    };

    Ok(GlReport {
        n,
        samples: count,
        rejected,
        det_gradient_error,
        multiplication_error,
        inversion_error,
        orthogonal_defect: orth,
        inclusion_rank,
        orthogonal_rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_by_one_gradient_is_exactly_one() {
        let a = DMatrix::from_element(1, 1, 0.37);
        assert_eq!(cofactor_matrix(&a)[(0, 0)], 1.0);
        assert!((det_gradient(&a, 1e-3)[(0, 0)] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn identity_gradient_is_the_identity() {
        let id = DMatrix::<f64>::identity(2, 2);
        assert_eq!(cofactor_matrix(&id), id);
        assert!(relative(&det_gradient(&id, 1e-3), &id) < 1e-12);
    }

    #[test]
    fn cofactors_of_a_3x3() {
        let a = DMatrix::from_row_slice(3, 3, &[2.0, 0.0, 1.0, 1.0, 3.0, 0.0, 0.0, 1.0, 4.0]);
        // adjugate transposed: cofactor (0,0) = 3*4 - 0*1 = 12, (0,1) = -(1*4 - 0) = -4, (0,2) = 1
        let c = cofactor_matrix(&a);
        assert_eq!((c[(0, 0)], c[(0, 1)], c[(0, 2)]), (12.0, -4.0, 1.0));
        // expansion along the first row gives the determinant
        assert!((2.0 * 12.0 + 1.0 * 1.0 - a.determinant()).abs() < 1e-12);
    }

    #[test]
    fn demo_passes_for_small_dimensions() {
        for n in 1..=3 {
            let r = gl_demo(n, 20, 7, &Tolerances::default()).unwrap();
            assert!(r.passes(), "{r:?}");
        }
    }

    #[test]
    fn demo_is_reproducible() {
        let t = Tolerances::default();
        assert_eq!(gl_demo(3, 5, 42, &t).unwrap(), gl_demo(3, 5, 42, &t).unwrap());
        assert!(gl_demo(5, 5, 42, &t).is_err());
    }
}
