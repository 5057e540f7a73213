//! Dense complex linear algebra: SVD, Hermitian eigendecomposition, the
//! matrix exponential, PSD fractional powers and the polar decomposition.
//!
//! Decompositions are backed by `nalgebra`; the exponential is computed
//! here, with two independent routes (Padé scaling-and-squaring and the
//! spectral route for Hermitian input).

use nalgebra::{DMatrix, SymmetricEigen, SVD};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tol;

/// Dense complex matrix, the operator model used throughout the crate.
pub type Matrix = DMatrix<Complex64>;

pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Builds a matrix from real entries given row by row.
pub fn real_matrix(rows: usize, cols: usize, entries: &[f64]) -> Matrix {
    assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
    Matrix::from_fn(rows, cols, |i, j| c64(entries[i * cols + j], 0.0))
}

pub fn real_diag(values: &[f64]) -> Matrix {
    let n = values.len();
    Matrix::from_fn(n, n, |i, j| if i == j { c64(values[i], 0.0) } else { c64(0.0, 0.0) })
}

pub fn identity(n: usize) -> Matrix {
    Matrix::identity(n, n)
}

pub fn trace(a: &Matrix) -> Complex64 {
    a.diagonal().iter().sum()
}

pub fn frobenius(a: &Matrix) -> f64 {
    a.norm()
}

pub fn ensure_finite(a: &Matrix) -> Result<()> {
    if a.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}

pub fn ensure_square(a: &Matrix) -> Result<usize> {
    if a.nrows() == a.ncols() {
        Ok(a.nrows())
    } else {
        Err(Error::NotSquare { rows: a.nrows(), cols: a.ncols() })
    }
}

pub fn ensure_same_shape(a: &Matrix, b: &Matrix) -> Result<()> {
    if a.shape() == b.shape() {
        Ok(())
    } else {
        Err(Error::ShapeMismatch(format!(
            "{}x{} vs {}x{}",
            a.nrows(),
            a.ncols(),
            b.nrows(),
            b.ncols()
        )))
    }
}

/// `‖a − a*‖_F`.
pub fn hermitian_deviation(a: &Matrix) -> f64 {
    (a - a.adjoint()).norm()
}

pub fn hermitian_tolerance(a: &Matrix) -> f64 {
    tol::HERMITIAN_REL * (1.0 + a.norm())
}

pub fn is_hermitian(a: &Matrix) -> bool {
    a.is_square() && hermitian_deviation(a) <= hermitian_tolerance(a)
}

/// Square, finite and Hermitian within [`hermitian_tolerance`].
pub fn ensure_hermitian(a: &Matrix) -> Result<usize> {
    ensure_finite(a)?;
    let n = ensure_square(a)?;
    let deviation = hermitian_deviation(a);
    let tolerance = hermitian_tolerance(a);
    if deviation <= tolerance {
        Ok(n)
    } else {
        Err(Error::NotHermitian { deviation, tolerance })
    }
}

pub(crate) fn ensure_unit_interval(name: &'static str, x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::out_of_range(name, format!("{x} not in [0, 1]")))
    }
}

/// Thin singular value decomposition `a = u · diag(s) · v*`.
#[derive(Debug, Clone)]
pub struct SvdResult {
    /// `rows × r` with orthonormal columns, `r = min(rows, cols)`.
    pub u: Matrix,
    /// Non-increasing, non-negative.
    pub singular_values: Vec<f64>,
    /// `cols × r` with orthonormal columns.
    pub v: Matrix,
}

impl SvdResult {
    /// Number of singular values above `RANK_REL · s_max`.
    pub fn rank(&self) -> usize {
        rank_of_values(&self.singular_values)
    }

    pub fn reconstruct(&self) -> Matrix {
        let mut us = self.u.clone();
        for (j, s) in self.singular_values.iter().enumerate() {
            us.column_mut(j).scale_mut(*s);
        }
        us * self.v.adjoint()
    }
}

/// Rank under the shared singular-value threshold. Expects sorted input.
pub fn rank_of_values(values: &[f64]) -> usize {
    let Some(&smax) = values.first() else { return 0 };
    if smax == 0.0 {
        return 0;
    }
    let cut = tol::RANK_REL * smax;
    values.iter().take_while(|&&s| s > cut).count()
}

pub fn svd(a: &Matrix) -> Result<SvdResult> {
    ensure_finite(a)?;
    let r = a.nrows().min(a.ncols());
    if r == 0 {
        return Ok(SvdResult {
            u: Matrix::zeros(a.nrows(), 0),
            singular_values: Vec::new(),
            v: Matrix::zeros(a.ncols(), 0),
        });
    }
    let dec = SVD::try_new(a.clone(), true, true, f64::EPSILON, 0)
        .ok_or_else(|| Error::Decomposition("SVD did not converge".into()))?;
    let (Some(u), Some(v_t)) = (dec.u, dec.v_t) else {
        return Err(Error::Decomposition("SVD returned no singular vectors".into()));
    };
    let mut order: Vec<usize> = (0..r).collect();
    order.sort_by(|&i, &j| dec.singular_values[j].total_cmp(&dec.singular_values[i]));
    let v_full = v_t.adjoint();
    let u_sorted = Matrix::from_fn(a.nrows(), r, |i, j| u[(i, order[j])]);
    let v_sorted = Matrix::from_fn(a.ncols(), r, |i, j| v_full[(i, order[j])]);
    let singular_values = order.iter().map(|&k| dec.singular_values[k].max(0.0)).collect();
    Ok(SvdResult { u: u_sorted, singular_values, v: v_sorted })
}

/// Singular values only, sorted non-increasing.
pub fn singular_values(a: &Matrix) -> Result<Vec<f64>> {
    ensure_finite(a)?;
    if a.is_empty() {
        return Ok(Vec::new());
    }
    let dec = SVD::try_new(a.clone(), false, false, f64::EPSILON, 0)
        .ok_or_else(|| Error::Decomposition("SVD did not converge".into()))?;
    let mut s: Vec<f64> = dec.singular_values.iter().map(|s| s.max(0.0)).collect();
    s.sort_by(|x, y| y.total_cmp(x));
    Ok(s)
}

/// Operator (spectral) norm.
pub fn op_norm(a: &Matrix) -> Result<f64> {
    Ok(singular_values(a)?.first().copied().unwrap_or(0.0))
}

/// Spectral data of a Hermitian matrix, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct EigResult {
    pub eigenvalues: Vec<f64>,
    pub vectors: Matrix,
}

impl EigResult {
    /// Functional calculus: `vectors · diag(f(λ)) · vectors*`.
    pub fn apply(&self, f: impl Fn(f64) -> Complex64) -> Matrix {
        let mut scaled = self.vectors.clone();
        for (j, &lambda) in self.eigenvalues.iter().enumerate() {
            let w = f(lambda);
            for z in scaled.column_mut(j).iter_mut() {
                *z *= w;
            }
        }
        scaled * self.vectors.adjoint()
    }

    /// `e^{z·a}` for a complex scalar `z`.
    pub fn exp_scaled(&self, z: Complex64) -> Matrix {
        self.apply(|lambda| (z * lambda).exp())
    }

    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues.iter().fold(0.0, |m, l| m.max(l.abs()))
    }
}

pub fn eig_hermitian(a: &Matrix) -> Result<EigResult> {
    let n = ensure_hermitian(a)?;
    if n == 0 {
        return Ok(EigResult { eigenvalues: Vec::new(), vectors: Matrix::zeros(0, 0) });
    }
    let dec = SymmetricEigen::try_new(a.clone(), f64::EPSILON, 0)
        .ok_or_else(|| Error::Decomposition("Hermitian eigensolver did not converge".into()))?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| dec.eigenvalues[i].total_cmp(&dec.eigenvalues[j]));
    let eigenvalues = order.iter().map(|&k| dec.eigenvalues[k]).collect();
    let vectors = Matrix::from_fn(n, n, |i, j| dec.eigenvectors[(i, order[j])]);
    Ok(EigResult { eigenvalues, vectors })
}

/// Matrix exponential. Hermitian input takes the spectral route, everything
/// else goes through [`expm_pade`].
pub fn matrix_exp(a: &Matrix) -> Result<Matrix> {
    ensure_finite(a)?;
    ensure_square(a)?;
    if is_hermitian(a) {
        expm_hermitian(a)
    } else {
        expm_pade(a)
    }
}

pub fn expm_hermitian(a: &Matrix) -> Result<Matrix> {
    Ok(eig_hermitian(a)?.exp_scaled(c64(1.0, 0.0)))
}

const PADE3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const PADE5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const PADE7: [f64; 8] = [17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0];
const PADE9: [f64; 10] = [
    17643225600.0,
    8821612800.0,
    2075673600.0,
    302702400.0,
    30270240.0,
    2162160.0,
    110880.0,
    3960.0,
    90.0,
    1.0,
];
const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];
// Largest 1-norms for which each Padé degree reaches unit roundoff.
const THETA: [(usize, f64); 4] = [
    (3, 1.495585217958292e-2),
    (5, 2.539398330063230e-1),
    (7, 9.504178996162932e-1),
    (9, 2.097847961257068e0),
];
const THETA13: f64 = 5.371920351148152;

fn one_norm(a: &Matrix) -> f64 {
    a.column_iter().map(|c| c.iter().map(|z| z.norm()).sum::<f64>()).fold(0.0, f64::max)
}

fn pade_solve(u: Matrix, v: Matrix) -> Result<Matrix> {
    let p = &v + &u;
    let q = v - u;
    q.lu()
        .solve(&p)
        .ok_or_else(|| Error::Decomposition("singular Padé denominator".into()))
}

/// Scaling-and-squaring with Padé approximants of degree 3..13.
pub fn expm_pade(a: &Matrix) -> Result<Matrix> {
    ensure_finite(a)?;
    let n = ensure_square(a)?;
    let id = identity(n);
    let norm = one_norm(a);

    for (degree, theta) in THETA {
        if norm <= theta {
            let coeffs: &[f64] = match degree {
                3 => &PADE3,
                5 => &PADE5,
                7 => &PADE7,
                _ => &PADE9,
            };
            let a2 = a * a;
            let mut power = id.clone();
            let mut u = &id * c64(coeffs[1], 0.0);
            let mut v = &id * c64(coeffs[0], 0.0);
            for k in 1..=degree / 2 {
                power = &power * &a2;
                u += &power * c64(coeffs[2 * k + 1], 0.0);
                v += &power * c64(coeffs[2 * k], 0.0);
            }
            return pade_solve(a * u, v);
        }
    }

    let s = if norm > THETA13 { (norm / THETA13).log2().ceil() as i32 } else { 0 };
    let scaled = a * c64(0.5f64.powi(s), 0.0);
    let b = &PADE13;
    let a2 = &scaled * &scaled;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let r = |x: f64| c64(x, 0.0);
    let u_inner = &a6 * (&a6 * r(b[13]) + &a4 * r(b[11]) + &a2 * r(b[9]))
        + &a6 * r(b[7])
        + &a4 * r(b[5])
        + &a2 * r(b[3])
        + &id * r(b[1]);
    let u = &scaled * u_inner;
    let v = &a6 * (&a6 * r(b[12]) + &a4 * r(b[10]) + &a2 * r(b[8]))
        + &a6 * r(b[6])
        + &a4 * r(b[4])
        + &a2 * r(b[2])
        + &id * r(b[0]);
    let mut result = pade_solve(u, v)?;
    for _ in 0..s {
        result = &result * &result;
    }
    Ok(result)
}

/// Validated spectral data of a PSD matrix; negative eigenvalues within
/// the PSD tolerance are clamped to zero.
#[derive(Debug, Clone)]
pub struct PsdSpectrum {
    eig: EigResult,
}

impl PsdSpectrum {
    pub fn new(b: &Matrix) -> Result<Self> {
        let mut eig = eig_hermitian(b)?;
        let tolerance = tol::PSD_REL * (1.0 + b.norm());
        if let Some(&min) = eig.eigenvalues.first() {
            if min < -tolerance {
                return Err(Error::NotPsd { eigenvalue: min, tolerance });
            }
        }
        for lambda in eig.eigenvalues.iter_mut() {
            *lambda = lambda.max(0.0);
        }
        Ok(Self { eig })
    }

    /// `b^θ` for `θ ∈ [0, 1]`; `b^0` is the identity.
    pub fn power(&self, theta: f64) -> Result<Matrix> {
        ensure_unit_interval("theta", theta)?;
        Ok(self.eig.apply(|lambda| c64(lambda.powf(theta), 0.0)))
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eig.eigenvalues
    }

    pub fn spectral(&self) -> &EigResult {
        &self.eig
    }
}

pub fn psd_power(b: &Matrix, theta: f64) -> Result<Matrix> {
    ensure_unit_interval("theta", theta)?;
    PsdSpectrum::new(b)?.power(theta)
}

/// Polar decomposition `a = u · |a|` with `u` a partial isometry whose
/// initial space is the range of `|a|`.
#[derive(Debug, Clone)]
pub struct Polar {
    pub partial_isometry: Matrix,
    pub modulus: Matrix,
}

pub fn polar(a: &Matrix) -> Result<Polar> {
    let n = ensure_square(a)?;
    let dec = svd(a)?;
    let r = dec.rank();
    let u_r = dec.u.columns(0, r);
    let v_r = dec.v.columns(0, r);
    let partial_isometry = if r == 0 { Matrix::zeros(n, n) } else { u_r * v_r.adjoint() };
    let mut vs = dec.v.clone();
    for (j, s) in dec.singular_values.iter().enumerate() {
        vs.column_mut(j).scale_mut(*s);
    }
    let modulus = vs * dec.v.adjoint();
    Ok(Polar { partial_isometry, modulus })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &Matrix, b: &Matrix, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    fn nilpotent() -> Matrix {
        real_matrix(2, 2, &[0.0, 1.0, 0.0, 0.0])
    }

    #[test]
    fn svd_examples() {
        assert_eq!(svd(&identity(2)).unwrap().singular_values, vec![1.0, 1.0]);
        let s = svd(&nilpotent()).unwrap().singular_values;
        assert!((s[0] - 1.0).abs() < 1e-15 && s[1].abs() < 1e-15);
        let s = svd(&real_diag(&[3.0, -1.0, 2.0])).unwrap().singular_values;
        for (x, y) in s.iter().zip([3.0, 2.0, 1.0]) {
            assert!((x - y).abs() < 1e-14);
        }
    }

    #[test]
    fn svd_rectangular_reconstructs() {
        let a = Matrix::from_fn(3, 5, |i, j| c64((i * 5 + j) as f64 * 0.3 - 1.0, (i as f64) - 0.5 * j as f64));
        let d = svd(&a).unwrap();
        assert_eq!(d.singular_values.len(), 3);
        assert!(close(&d.reconstruct(), &a, 1e-12));
        assert!(close(&(d.u.adjoint() * &d.u), &identity(3), 1e-12));
        assert!(close(&(d.v.adjoint() * &d.v), &identity(3), 1e-12));
    }

    #[test]
    fn svd_rejects_nan() {
        let mut a = identity(2);
        a[(0, 1)] = c64(f64::NAN, 0.0);
        assert_eq!(svd(&a).unwrap_err(), Error::NonFinite);
    }

    #[test]
    fn eig_examples() {
        let e = eig_hermitian(&real_diag(&[2.0, -1.0])).unwrap();
        assert_eq!(e.eigenvalues, vec![-1.0, 2.0]);
        let e = eig_hermitian(&real_matrix(2, 2, &[0.0, 1.0, 1.0, 0.0])).unwrap();
        assert!((e.eigenvalues[0] + 1.0).abs() < 1e-14 && (e.eigenvalues[1] - 1.0).abs() < 1e-14);
        let e = eig_hermitian(&Matrix::zeros(3, 3)).unwrap();
        assert!(e.eigenvalues.iter().all(|&l| l == 0.0));
    }

    #[test]
    fn eig_rejects_bad_input() {
        assert!(matches!(eig_hermitian(&nilpotent()), Err(Error::NotHermitian { .. })));
        assert!(matches!(eig_hermitian(&Matrix::zeros(2, 3)), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn exp_examples() {
        assert!(close(&matrix_exp(&Matrix::zeros(3, 3)).unwrap(), &identity(3), 1e-15));
        let e = matrix_exp(&real_diag(&[0.5, -2.0])).unwrap();
        assert!(close(&e, &real_diag(&[0.5f64.exp(), (-2.0f64).exp()]), 1e-14));
        let e = matrix_exp(&nilpotent()).unwrap();
        assert!(close(&e, &(identity(2) + nilpotent()), 1e-15));
        assert!(matches!(matrix_exp(&Matrix::zeros(2, 1)), Err(Error::NotSquare { .. })));
    }

    /// Truncated power series, independent of both exponential routes.
    fn taylor_exp(a: &Matrix, terms: usize) -> Matrix {
        let n = a.nrows();
        let mut term = identity(n);
        let mut sum = identity(n);
        for k in 1..terms {
            term = &term * a * c64(1.0 / k as f64, 0.0);
            sum += &term;
        }
        sum
    }

    #[test]
    fn pade_matches_power_series_at_every_degree() {
        let base = Matrix::from_fn(4, 4, |i, j| c64(((i + 3 * j) % 5) as f64 - 2.0, ((2 * i + j) % 3) as f64 - 1.0));
        let base_norm = one_norm(&base);
        for target in [0.01, 0.2, 0.9, 2.0, 5.0, 9.0] {
            let a = &base * c64(target / base_norm, 0.0);
            let reference = taylor_exp(&a, 80);
            let got = expm_pade(&a).unwrap();
            assert!(
                (&got - &reference).norm() <= 1e-12 * reference.norm(),
                "norm {target}: {}",
                (&got - &reference).norm()
            );
        }
    }

    #[test]
    fn psd_power_examples() {
        let r = psd_power(&real_diag(&[4.0, 9.0]), 0.5).unwrap();
        assert!(close(&r, &real_diag(&[2.0, 3.0]), 1e-14));
        let b = real_matrix(2, 2, &[2.0, 1.0, 1.0, 2.0]);
        assert!(close(&psd_power(&b, 1.0).unwrap(), &b, 1e-13));
        assert!(close(&psd_power(&identity(3), 0.3).unwrap(), &identity(3), 1e-14));
        assert!(matches!(psd_power(&real_diag(&[1.0, -0.5]), 0.5), Err(Error::NotPsd { .. })));
        assert!(matches!(psd_power(&identity(2), 1.5), Err(Error::OutOfRange { .. })));
        // tiny negative rounding is clamped
        assert!(psd_power(&real_diag(&[1.0, -1e-14]), 0.5).is_ok());
    }

    #[test]
    fn polar_examples() {
        let p = polar(&nilpotent()).unwrap();
        assert!(close(&p.modulus, &real_diag(&[0.0, 1.0]), 1e-14));
        assert!(close(&(&p.partial_isometry * &p.modulus), &nilpotent(), 1e-14));
        // u maps e2 to e1
        assert!((p.partial_isometry[(0, 1)] - c64(1.0, 0.0)).norm() < 1e-14);
        assert!(p.partial_isometry[(1, 0)].norm() < 1e-14);

        let psd = real_diag(&[2.0, 0.0, 1.0]);
        let p = polar(&psd).unwrap();
        assert!(close(&p.modulus, &psd, 1e-14));
        assert!(close(&p.partial_isometry, &real_diag(&[1.0, 0.0, 1.0]), 1e-14));

        let theta = 0.7f64;
        let unitary = Matrix::from_row_slice(
            2,
            2,
            &[c64(theta.cos(), 0.0), c64(0.0, theta.sin()), c64(0.0, theta.sin()), c64(theta.cos(), 0.0)],
        );
        let p = polar(&unitary).unwrap();
        assert!(close(&p.partial_isometry, &unitary, 1e-14));
        assert!(close(&p.modulus, &identity(2), 1e-14));
    }

    #[test]
    fn rank_threshold() {
        assert_eq!(rank_of_values(&[1.0, 1e-12, 1e-14]), 2);
        assert_eq!(rank_of_values(&[0.0, 0.0]), 0);
        assert_eq!(rank_of_values(&[]), 0);
    }
}
