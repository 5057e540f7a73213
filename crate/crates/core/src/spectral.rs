//! Eigenvalue multisets of products and trace identities for the standard
//! trace.
//!
//! Eigenvalues of general (non-normal) matrices come from a complex Schur
//! decomposition. They can be badly conditioned near defective matrices,
//! so multisets are compared with a tolerance and an optimal matching
//! fallback rather than by sorting alone.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::{ensure_finite, ensure_same_shape, ensure_square, op_norm, trace, Matrix, PsdSpectrum};

/// Eigenvalues with algebraic multiplicity, by non-increasing modulus
/// (ties: argument, then input order).
#[derive(Debug, Clone, PartialEq)]
pub struct EigenvalueMultiset {
    pub values: Vec<Complex64>,
}

impl EigenvalueMultiset {
    pub fn from_unordered(mut values: Vec<Complex64>) -> Self {
        // stable sort keeps input order on exact ties
        values.sort_by(|x, y| y.norm().total_cmp(&x.norm()).then(x.arg().total_cmp(&y.arg())));
        Self { values }
    }

    pub fn sum(&self) -> Complex64 {
        self.values.iter().sum()
    }

    pub fn to_pairs(&self) -> Vec<[f64; 2]> {
        self.values.iter().map(|z| [z.re, z.im]).collect()
    }
}

pub fn eigenvalues_ordered(a: &Matrix) -> Result<EigenvalueMultiset> {
    ensure_finite(a)?;
    let n = ensure_square(a)?;
    if n == 0 {
        return Ok(EigenvalueMultiset { values: Vec::new() });
    }
    let schur = nalgebra::Schur::try_new(a.clone(), f64::EPSILON, 0)
        .ok_or_else(|| Error::Decomposition("Schur iteration did not converge".into()))?;
    let (_, t) = schur.unpack();
    Ok(EigenvalueMultiset::from_unordered(t.diagonal().iter().copied().collect()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MatchMethod {
    Greedy,
    Bottleneck,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatchReport {
    pub holds: bool,
    pub max_mismatch: f64,
    pub tolerance: f64,
    /// `(i, j)`: left value `i` paired with right value `j`.
    pub pairs: Vec<(usize, usize)>,
    pub method: MatchMethod,
}

fn dist(x: Complex64, y: Complex64) -> f64 {
    (x - y).norm()
}

fn greedy_match(x: &[Complex64], y: &[Complex64]) -> (Vec<(usize, usize)>, f64) {
    let mut used = vec![false; y.len()];
    let mut pairs = Vec::with_capacity(x.len());
    let mut worst = 0.0f64;
    for (i, &xi) in x.iter().enumerate() {
        let best = (0..y.len()).filter(|&j| !used[j]).min_by(|&j, &k| dist(xi, y[j]).total_cmp(&dist(xi, y[k])));
        let j = best.expect("equal lengths");
        used[j] = true;
        worst = worst.max(dist(xi, y[j]));
        pairs.push((i, j));
    }
    (pairs, worst)
}

/// Perfect matching using only edges of length `≤ threshold`, if one exists
/// (Kuhn's augmenting paths).
fn matching_within(d: &[Vec<f64>], threshold: f64) -> Option<Vec<usize>> {
    let n = d.len();
    let mut owner: Vec<Option<usize>> = vec![None; n];

    fn augment(i: usize, d: &[Vec<f64>], threshold: f64, seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for j in 0..d.len() {
            if d[i][j] <= threshold && !seen[j] {
                seen[j] = true;
                if owner[j].is_none_or(|k| augment(k, d, threshold, seen, owner)) {
                    owner[j] = Some(i);
                    return true;
                }
            }
        }
        false
    }

    for i in 0..n {
        let mut seen = vec![false; n];
        if !augment(i, d, threshold, &mut seen, &mut owner) {
            return None;
        }
    }
    let mut assignment = vec![0; n];
    for (j, o) in owner.iter().enumerate() {
        assignment[o.expect("perfect matching")] = j;
    }
    Some(assignment)
}

/// Min-max (bottleneck) matching between two equal-size multisets.
fn bottleneck_match(x: &[Complex64], y: &[Complex64]) -> (Vec<(usize, usize)>, f64) {
    let d: Vec<Vec<f64>> = x.iter().map(|&xi| y.iter().map(|&yj| dist(xi, yj)).collect()).collect();
    let mut candidates: Vec<f64> = d.iter().flatten().copied().collect();
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();
    let (mut lo, mut hi) = (0, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if matching_within(&d, candidates[mid]).is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let assignment = matching_within(&d, candidates[lo]).expect("largest threshold always matches");
    (assignment.into_iter().enumerate().collect(), candidates[lo])
}

/// Greedy nearest-neighbour pairing in modulus order; if that leaves a pair
/// further apart than `tol`, the optimal min-max matching decides.
pub fn match_multisets(x: &EigenvalueMultiset, y: &EigenvalueMultiset, tol: f64) -> Result<MatchReport> {
    if x.values.len() != y.values.len() {
        return Err(Error::ShapeMismatch(format!("{} vs {} eigenvalues", x.values.len(), y.values.len())));
    }
    if x.values.is_empty() {
        return Ok(MatchReport {
            holds: true,
            max_mismatch: 0.0,
            tolerance: tol,
            pairs: Vec::new(),
            method: MatchMethod::Greedy,
        });
    }
    let (pairs, worst) = greedy_match(&x.values, &y.values);
    if worst <= tol {
        return Ok(MatchReport { holds: true, max_mismatch: worst, tolerance: tol, pairs, method: MatchMethod::Greedy });
    }
    let (pairs, worst) = bottleneck_match(&x.values, &y.values);
    Ok(MatchReport { holds: worst <= tol, max_mismatch: worst, tolerance: tol, pairs, method: MatchMethod::Bottleneck })
}

/// `1e−8·(1 + ‖a‖‖b‖)`.
pub fn default_spectral_tolerance(a: &Matrix, b: &Matrix) -> Result<f64> {
    Ok(1e-8 * (1.0 + op_norm(a)? * op_norm(b)?))
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectralMatch {
    #[serde(serialize_with = "pairs")]
    pub lambda_ab: EigenvalueMultiset,
    #[serde(serialize_with = "pairs")]
    pub lambda_ba: EigenvalueMultiset,
    pub report: MatchReport,
}

fn pairs<S: serde::Serializer>(m: &EigenvalueMultiset, s: S) -> std::result::Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&m.to_pairs(), s)
}

/// `Λ(ab)` against `Λ(ba)`.
pub fn lambda_ab_equals_ba(a: &Matrix, b: &Matrix, tol: f64) -> Result<SpectralMatch> {
    ensure_square(a)?;
    ensure_same_shape(a, b)?;
    let lambda_ab = eigenvalues_ordered(&(a * b))?;
    let lambda_ba = eigenvalues_ordered(&(b * a))?;
    let report = match_multisets(&lambda_ab, &lambda_ba, tol)?;
    Ok(SpectralMatch { lambda_ab, lambda_ba, report })
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceIdentity {
    pub holds: bool,
    /// `|Tr(ab) − Tr(ba)|` and `|Tr(ab) − Tr(b^{1−θ}ab^θ)|`.
    pub deviations: [f64; 2],
    pub tolerance: f64,
    pub trace_ab: [f64; 2],
}

/// `Tr(ab) = Tr(ba) = Tr(b^{1−θ}·a·b^θ)` for PSD `b`, tolerance
/// `1e−10·(1 + |Tr(ab)|)`.
pub fn trace_theta_identity(a: &Matrix, b: &Matrix, theta: f64) -> Result<TraceIdentity> {
    ensure_finite(a)?;
    ensure_square(a)?;
    ensure_same_shape(a, b)?;
    crate::kernel::ensure_unit_interval("theta", theta)?;
    let spectrum = PsdSpectrum::new(b)?;
    let t_ab = trace(&(a * b));
    let t_ba = trace(&(b * a));
    let t_mid = trace(&(spectrum.power(1.0 - theta)? * a * spectrum.power(theta)?));
    let deviations = [(t_ab - t_ba).norm(), (t_ab - t_mid).norm()];
    let tolerance = 1e-10 * (1.0 + t_ab.norm());
    Ok(TraceIdentity {
        holds: deviations.iter().all(|&d| d <= tolerance),
        deviations,
        tolerance,
        trace_ab: [t_ab.re, t_ab.im],
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct InterpolatedMatch {
    pub holds: bool,
    pub max_mismatch: f64,
    pub ab_vs_ba: MatchReport,
    pub ab_vs_interpolated: MatchReport,
}

/// `Λ(ab) = Λ(ba) = Λ(b^{1−θ}·a·b^θ)` for PSD `b`.
pub fn lambda_interpolated(a: &Matrix, b: &Matrix, theta: f64, tol: f64) -> Result<InterpolatedMatch> {
    ensure_finite(a)?;
    ensure_square(a)?;
    ensure_same_shape(a, b)?;
    crate::kernel::ensure_unit_interval("theta", theta)?;
    let spectrum = PsdSpectrum::new(b)?;
    let ab = eigenvalues_ordered(&(a * b))?;
    let ba = eigenvalues_ordered(&(b * a))?;
    let mid = eigenvalues_ordered(&(spectrum.power(1.0 - theta)? * a * spectrum.power(theta)?))?;
    let ab_vs_ba = match_multisets(&ab, &ba, tol)?;
    let ab_vs_interpolated = match_multisets(&ab, &mid, tol)?;
    Ok(InterpolatedMatch {
        holds: ab_vs_ba.holds && ab_vs_interpolated.holds,
        max_mismatch: ab_vs_ba.max_mismatch.max(ab_vs_interpolated.max_mismatch),
        ab_vs_ba,
        ab_vs_interpolated,
    })
}
