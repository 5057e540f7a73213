//! Ky Fan sums as a supremum over contractions with small support.
//!
//! For a matrix `a` and an integer `k`,
//!
//! ```text
//! Σ_{i<k} sᵢ(a) = max { |Tr(a·c)| : ‖c‖ ≤ 1, rank s(c) ≤ k }
//! ```
//!
//! The maximum is attained at `c = p·v*`, where `a = v|a|` is the polar
//! decomposition and `p` the spectral projection of `|a|` onto its top `k`
//! singular directions. In SVD coordinates `a = U·S·V*` this is
//! `c = V_k·U_k*`.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::{c64, rank_of_values, singular_values, svd, trace, Matrix};
use crate::random::{haar_unitary, rng_from_seed};
use crate::rearrangement::{ky_fan, SingularProfile};

#[derive(Debug, Clone)]
pub struct ContractionCertificate {
    /// `cols × rows`, so that `a·c` is square.
    pub c: Matrix,
    pub support_rank: usize,
    /// `|Tr(a·c)|`.
    pub attained: f64,
}

impl ContractionCertificate {
    /// Operator norm of `c`.
    pub fn norm(&self) -> Result<f64> {
        crate::kernel::op_norm(&self.c)
    }
}

/// JSON shape emitted by `certify`.
#[derive(Debug, Clone, Serialize)]
pub struct CertificateReport {
    pub c: crate::io::MatrixFile,
    pub support_rank: usize,
    pub attained: f64,
    pub ky_fan_reference: f64,
}

fn check_k(a: &Matrix, k: usize) -> Result<()> {
    let limit = a.nrows().min(a.ncols());
    if k > limit {
        Err(Error::out_of_range("k", format!("{k} exceeds min(rows, cols) = {limit}")))
    } else {
        Ok(())
    }
}

pub fn optimal_contraction(a: &Matrix, k: usize) -> Result<ContractionCertificate> {
    check_k(a, k)?;
    let dec = svd(a)?;
    let c = if k == 0 {
        Matrix::zeros(a.ncols(), a.nrows())
    } else {
        dec.v.columns(0, k) * dec.u.columns(0, k).adjoint()
    };
    let support_rank = rank_of_values(&singular_values(&c)?);
    let attained = trace(&(a * &c)).norm();
    Ok(ContractionCertificate { c, support_rank, attained })
}

/// `u·diag(s)·v*` with Haar `u`, `v` and `s` uniform in `[0, 1]` on the
/// first `k` coordinates, zero elsewhere. Shape `cols × rows` of `a`.
pub fn random_contraction<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, k: usize) -> Matrix {
    let u = haar_unitary(rng, cols);
    let v = haar_unitary(rng, rows);
    let mut d = Matrix::zeros(cols, rows);
    for i in 0..k.min(rows).min(cols) {
        d[(i, i)] = c64(rng.random::<f64>(), 0.0);
    }
    u * d * v.adjoint()
}

/// `|Tr(a·c)|` for each of `samples` seeded random contractions of
/// support rank `≤ k`.
pub fn random_contraction_values(a: &Matrix, k: usize, samples: usize, seed: u64) -> Result<Vec<f64>> {
    check_k(a, k)?;
    crate::kernel::ensure_finite(a)?;
    let mut rng = rng_from_seed(seed);
    Ok((0..samples)
        .map(|_| trace(&(a * random_contraction(&mut rng, a.nrows(), a.ncols(), k))).norm())
        .collect())
}

/// Largest `|Tr(a·c)|` over the sampled contractions.
pub fn random_contraction_bound(a: &Matrix, k: usize, samples: usize, seed: u64) -> Result<f64> {
    if samples == 0 {
        return Err(Error::out_of_range("samples", "at least one sample is required"));
    }
    Ok(random_contraction_values(a, k, samples, seed)?.into_iter().fold(0.0, f64::max))
}

/// Supremum side of the duality: best value among the optimal certificate
/// and `samples` random contractions.
pub fn ky_fan_via_duality(a: &Matrix, k: usize, samples: usize, seed: u64) -> Result<f64> {
    let best = optimal_contraction(a, k)?.attained;
    if samples == 0 {
        return Ok(best);
    }
    Ok(best.max(random_contraction_bound(a, k, samples, seed)?))
}

pub fn certificate_report(a: &Matrix, k: usize) -> Result<CertificateReport> {
    let cert = optimal_contraction(a, k)?;
    let reference = ky_fan(&SingularProfile::of_matrix(a)?, k as f64)?;
    Ok(CertificateReport {
        c: crate::io::MatrixFile::from_matrix(&cert.c),
        support_rank: cert.support_rank,
        attained: cert.attained,
        ky_fan_reference: reference,
    })
}
