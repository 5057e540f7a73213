//! The strip function `F(z) = Tr(e^{zb}·a·e^{(1−z)b}·c)` on `0 ≤ Re z ≤ 1`.
//!
//! For Hermitian `b = V·diag(λ)·V*` every point is evaluated through the
//! spectral calculus of `b`:
//! `F(z) = Σ_{j,k} e^{zλ_j} (V*aV)_{jk} e^{(1−z)λ_k} (V*cV)_{kj}`.
//!
//! The imaginary direction is sampled on a finite grid. `F` is almost
//! periodic in `y`, so a truncated grid gives a verification sample, not a
//! proof.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::{
    c64, eig_hermitian, ensure_finite, ensure_hermitian, ensure_same_shape, ensure_square, ensure_unit_interval,
    op_norm, rank_of_values, singular_values, Matrix,
};
use crate::rearrangement::{profile_max, submajorizes_default, SingularProfile, SubmajorizationVerdict};
use crate::tol;

#[derive(Debug, Clone)]
pub struct StripGrid {
    pub thetas: Vec<f64>,
    pub imag_values: Vec<f64>,
    /// `values[i][j] = F(thetas[i] + i·imag_values[j])`.
    pub values: Vec<Vec<Complex64>>,
    /// Rank of the support projection of `c`.
    pub support_rank: usize,
    /// `t·‖a‖·e^{2‖b‖}` with `t = support_rank`.
    pub bound_constant: f64,
}

impl StripGrid {
    pub fn max_abs(&self) -> f64 {
        self.values.iter().flatten().fold(0.0, |m, z| m.max(z.norm()))
    }

    /// Whether every sampled `|F|` stays within `bound_constant` (plus a
    /// rounding allowance of `RTOL·(1 + bound)`).
    pub fn bound_check(&self) -> BoundCheck {
        let max_abs = self.max_abs();
        let tolerance = tol::RTOL * (1.0 + self.bound_constant);
        BoundCheck { holds: max_abs <= self.bound_constant + tolerance, max_abs, bound: self.bound_constant }
    }

    /// Rows of `(theta, y, re, im, abs)`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("theta,y,re,im,abs\n");
        for (theta, row) in self.thetas.iter().zip(&self.values) {
            for (y, z) in self.imag_values.iter().zip(row) {
                out.push_str(&format!("{theta},{y},{},{},{}\n", z.re, z.im, z.norm()));
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundCheck {
    pub holds: bool,
    pub max_abs: f64,
    pub bound: f64,
}

/// `lo, lo + step, …` up to `hi` inclusive (within rounding).
pub fn linear_grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let count = ((hi - lo) / step + 1e-9).floor() as usize;
    (0..=count).map(|i| lo + step * i as f64).collect()
}

/// Symmetric imaginary grid `−ymax..=ymax` at `ystep`.
pub fn imag_grid(ymax: f64, ystep: f64) -> Vec<f64> {
    linear_grid(-ymax, ymax, ystep)
}

pub fn strip_evaluate(a: &Matrix, b: &Matrix, c: &Matrix, thetas: &[f64], imag_values: &[f64]) -> Result<StripGrid> {
    ensure_finite(a)?;
    ensure_finite(c)?;
    ensure_square(a)?;
    ensure_same_shape(a, b)?;
    ensure_same_shape(a, c)?;
    ensure_hermitian(b)?;
    if thetas.iter().chain(imag_values).any(|x| !x.is_finite()) {
        return Err(Error::Invalid("grid coordinates must be finite".into()));
    }

    let eig = eig_hermitian(b)?;
    let v = &eig.vectors;
    let a_rot = v.adjoint() * a * v;
    let c_rot = v.adjoint() * c * v;
    let n = a.nrows();
    let lambda = &eig.eigenvalues;

    let eval = |z: Complex64| -> Complex64 {
        let left: Vec<Complex64> = lambda.iter().map(|&l| (z * l).exp()).collect();
        let right: Vec<Complex64> = lambda.iter().map(|&l| ((c64(1.0, 0.0) - z) * l).exp()).collect();
        let mut acc = c64(0.0, 0.0);
        for j in 0..n {
            for k in 0..n {
                acc += left[j] * a_rot[(j, k)] * right[k] * c_rot[(k, j)];
            }
        }
        acc
    };

    let values: Vec<Vec<Complex64>> = thetas
        .par_iter()
        .map(|&theta| imag_values.iter().map(|&y| eval(c64(theta, y))).collect())
        .collect();

    let support_rank = rank_of_values(&singular_values(c)?);
    let bound_constant = support_rank as f64 * op_norm(a)? * (2.0 * eig.spectral_radius()).exp();
    Ok(StripGrid {
        thetas: thetas.to_vec(),
        imag_values: imag_values.to_vec(),
        values,
        support_rank,
        bound_constant,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThreeLinesReport {
    pub holds: bool,
    pub interior_max: f64,
    pub boundary_max: f64,
    pub tolerance: f64,
}

/// Interior maximum of `|F|` against the maximum on the lines `Re z = 0`
/// and `Re z = 1`, with tolerance `THREE_LINES_REL·(1 + boundary_max)`.
pub fn three_lines_check(grid: &StripGrid) -> Result<ThreeLinesReport> {
    let has = |t: f64| grid.thetas.contains(&t);
    if !has(0.0) || !has(1.0) {
        return Err(Error::Invalid("grid needs both boundary columns theta = 0 and theta = 1".into()));
    }
    let mut interior_max = 0.0f64;
    let mut boundary_max = 0.0f64;
    for (&theta, row) in grid.thetas.iter().zip(&grid.values) {
        let row_max = row.iter().fold(0.0f64, |m, z| m.max(z.norm()));
        if theta == 0.0 || theta == 1.0 {
            boundary_max = boundary_max.max(row_max);
        } else if theta > 0.0 && theta < 1.0 {
            interior_max = interior_max.max(row_max);
        }
    }
    let tolerance = tol::THREE_LINES_REL * (1.0 + boundary_max);
    Ok(ThreeLinesReport { holds: interior_max <= boundary_max + tolerance, interior_max, boundary_max, tolerance })
}

struct ExpPair {
    theta_side: Matrix,
    rest_side: Matrix,
    full: Matrix,
}

fn exp_pair(b: &Matrix, theta: f64) -> Result<ExpPair> {
    let eig = eig_hermitian(b)?;
    Ok(ExpPair {
        theta_side: eig.exp_scaled(c64(theta, 0.0)),
        rest_side: eig.exp_scaled(c64(1.0 - theta, 0.0)),
        full: eig.exp_scaled(c64(1.0, 0.0)),
    })
}

/// `e^{θb}·a·e^{(1−θ)b} ≺≺ a·e^b` for Hermitian `a`, `b`.
pub fn boundary_submajorization_bound(a: &Matrix, b: &Matrix, theta: f64) -> Result<SubmajorizationVerdict> {
    ensure_hermitian(a)?;
    ensure_same_shape(a, b)?;
    ensure_unit_interval("theta", theta)?;
    let e = exp_pair(b, theta)?;
    let left = SingularProfile::of_matrix(&(&e.theta_side * a * &e.rest_side))?;
    let right = SingularProfile::of_matrix(&(a * &e.full))?;
    Ok(submajorizes_default(&left, &right))
}

/// `e^{θb}·a·e^{(1−θ)b} ≺≺ max{μ(a·e^b), μ(e^b·a)}` for arbitrary `a`.
pub fn boundary_submajorization_bound_general(a: &Matrix, b: &Matrix, theta: f64) -> Result<SubmajorizationVerdict> {
    ensure_finite(a)?;
    ensure_square(a)?;
    ensure_same_shape(a, b)?;
    ensure_unit_interval("theta", theta)?;
    let e = exp_pair(b, theta)?;
    let left = SingularProfile::of_matrix(&(&e.theta_side * a * &e.rest_side))?;
    let right = profile_max(
        &SingularProfile::of_matrix(&(a * &e.full))?,
        &SingularProfile::of_matrix(&(&e.full * a))?,
    );
    Ok(submajorizes_default(&left, &right))
}
