//! One check per operator inequality, each returning an
//! [`InequalityVerdict`] with a signed margin.
//!
//! Submajorization checks report `margin = sup_t (K_left − K_right)(t)`;
//! norm checks report `margin = lhs − rhs`. In both cases
//! `holds ⇔ margin ≤ tolerance`.
//!
//! Conventions at finite dimension:
//! * the integrability hypothesis `ab ∈ L₁ + L∞` is automatic and not
//!   checked;
//! * `θ ∈ {0, 1}` is accepted and evaluated literally (`b⁰ = 1`), with the
//!   verdict flagged as a boundary case;
//! * Hermitian and PSD inputs are validated, never symmetrized.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::{
    c64, eig_hermitian, ensure_finite, ensure_hermitian, ensure_same_shape, ensure_square, ensure_unit_interval,
    expm_hermitian, Matrix, PsdSpectrum,
};
use crate::random::{digest, hermitian_with, psd_with, rng_from_seed};
use crate::rearrangement::{
    profile_direct_sum, profile_max, schatten_power_sum, sigma2, submajorizes, submajorizes_default,
    symmetric_norm, NormSpec, SingularProfile, SubmajorizationVerdict,
};
use crate::tol;

/// Relative tolerance for norm inequalities between non-exponential
/// products: `NORM_REL · max(1, rhs)`.
pub const NORM_REL: f64 = 1e-9;

/// A secondary identity or inequality checked alongside the main one.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuxCheck {
    pub name: String,
    pub holds: bool,
    pub margin: f64,
    pub tolerance: f64,
}

impl AuxCheck {
    pub fn new(name: &str, margin: f64, tolerance: f64) -> Self {
        Self { name: name.to_string(), holds: margin <= tolerance, margin, tolerance }
    }

    pub fn from_submajorization(name: &str, v: &SubmajorizationVerdict) -> Self {
        Self::new(name, v.margin, v.tolerance_used)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityVerdict {
    pub name: String,
    pub holds: bool,
    pub margin: f64,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst_t: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub norm: Option<NormSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<f64>,
    /// `θ ∈ {0, 1}`, where the statement is checked literally.
    pub boundary_case: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub auxiliary: Vec<AuxCheck>,
    pub inputs_digest: String,
}

impl InequalityVerdict {
    pub fn submajorization(name: &str, v: &SubmajorizationVerdict, theta: Option<f64>, digest: &str) -> Self {
        Self {
            name: name.to_string(),
            holds: v.holds,
            margin: v.margin,
            tolerance: v.tolerance_used,
            worst_t: Some(v.worst_t),
            theta,
            norm: None,
            lhs: None,
            rhs: None,
            boundary_case: theta.is_some_and(is_boundary),
            auxiliary: Vec::new(),
            inputs_digest: digest.to_string(),
        }
    }

    pub fn norm_inequality(name: &str, lhs: f64, rhs: f64, tolerance: f64, theta: Option<f64>, digest: &str) -> Self {
        let margin = lhs - rhs;
        Self {
            name: name.to_string(),
            holds: margin <= tolerance,
            margin,
            tolerance,
            worst_t: None,
            theta,
            norm: None,
            lhs: Some(lhs),
            rhs: Some(rhs),
            boundary_case: theta.is_some_and(is_boundary),
            auxiliary: Vec::new(),
            inputs_digest: digest.to_string(),
        }
    }

    /// A plain `margin ≤ tolerance` measurement.
    pub fn measured(name: &str, margin: f64, tolerance: f64, digest: &str) -> Self {
        let mut v = Self::norm_inequality(name, 0.0, 0.0, tolerance, None, digest);
        v.margin = margin;
        v.holds = margin <= tolerance;
        v.lhs = None;
        v.rhs = None;
        v
    }

    pub fn with_theta(mut self, theta: f64) -> Self {
        self.theta = Some(theta);
        self.boundary_case = is_boundary(theta);
        self
    }

    pub fn with_norm(mut self, spec: NormSpec) -> Self {
        self.norm = Some(spec);
        self
    }

    pub fn with_aux(mut self, aux: Vec<AuxCheck>) -> Self {
        self.auxiliary = aux;
        self
    }

    /// Main inequality and every auxiliary check.
    pub fn all_hold(&self) -> bool {
        self.holds && self.auxiliary.iter().all(|a| a.holds)
    }
}

/// `[[tl, tr], [bl, br]]` from four `n×n` blocks.
fn block2(tl: &Matrix, tr: &Matrix, bl: &Matrix, br: &Matrix) -> Matrix {
    let n = tl.nrows();
    let mut m = Matrix::zeros(2 * n, 2 * n);
    m.view_mut((0, 0), (n, n)).copy_from(tl);
    m.view_mut((0, n), (n, n)).copy_from(tr);
    m.view_mut((n, 0), (n, n)).copy_from(bl);
    m.view_mut((n, n), (n, n)).copy_from(br);
    m
}

fn is_boundary(theta: f64) -> bool {
    theta == 0.0 || theta == 1.0
}

fn profile(a: &Matrix) -> Result<SingularProfile> {
    SingularProfile::of_matrix(a)
}

fn norm_tolerance(rhs: f64) -> f64 {
    NORM_REL * rhs.max(1.0)
}

fn check_thetas(thetas: &[f64]) -> Result<()> {
    thetas.iter().try_for_each(|&t| ensure_unit_interval("theta", t))
}

fn square_pair(a: &Matrix, b: &Matrix) -> Result<()> {
    ensure_finite(a)?;
    ensure_square(a)?;
    ensure_same_shape(a, b)
}

/// `b^θ·a·b^{1−θ} ≺≺ a·b` for Hermitian `a` and PSD `b`, over a θ grid.
pub fn bik_theorem_selfadjoint_grid(a: &Matrix, b: &Matrix, thetas: &[f64]) -> Result<Vec<InequalityVerdict>> {
    ensure_hermitian(a)?;
    square_pair(a, b)?;
    check_thetas(thetas)?;
    let spectrum = PsdSpectrum::new(b)?;
    let right = profile(&(a * b))?;
    let tag = digest(&[a, b]);
    thetas
        .iter()
        .map(|&theta| {
            let left = profile(&(spectrum.power(theta)? * a * spectrum.power(1.0 - theta)?))?;
            let v = submajorizes_default(&left, &right);
            Ok(InequalityVerdict::submajorization("bik_theorem_selfadjoint", &v, Some(theta), &tag))
        })
        .collect()
}

pub fn bik_theorem_selfadjoint(a: &Matrix, b: &Matrix, theta: f64) -> Result<InequalityVerdict> {
    Ok(bik_theorem_selfadjoint_grid(a, b, &[theta])?.remove(0))
}

/// `b^θ·a·b^{1−θ} ≺≺ max{μ(ab), μ(ba)}` for arbitrary `a` and PSD `b`.
pub fn bik_theorem_general_grid(a: &Matrix, b: &Matrix, thetas: &[f64]) -> Result<Vec<InequalityVerdict>> {
    square_pair(a, b)?;
    check_thetas(thetas)?;
    let spectrum = PsdSpectrum::new(b)?;
    let right = profile_max(&profile(&(a * b))?, &profile(&(b * a))?);
    let tag = digest(&[a, b]);
    thetas
        .iter()
        .map(|&theta| {
            let left = profile(&(spectrum.power(theta)? * a * spectrum.power(1.0 - theta)?))?;
            let v = submajorizes_default(&left, &right);
            Ok(InequalityVerdict::submajorization("bik_theorem_general", &v, Some(theta), &tag))
        })
        .collect()
}

pub fn bik_theorem_general(a: &Matrix, b: &Matrix, theta: f64) -> Result<InequalityVerdict> {
    Ok(bik_theorem_general_grid(a, b, &[theta])?.remove(0))
}

/// The 2×2 example `a = e₁₂`, `b = diag(λ, μ)` where
/// `e^{θb}·a·e^{(1−θ)b} ≺≺ a·e^b` fails for `λ > μ`.
#[derive(Debug, Clone, Serialize)]
pub struct CounterexampleTr {
    pub lambda: f64,
    pub mu: f64,
    pub theta: f64,
    pub left_profile: SingularProfile,
    pub right_profile: SingularProfile,
    /// `e^{θλ + (1−θ)μ}`.
    pub expected_left_leading: f64,
    /// `e^{μ}`.
    pub expected_right_leading: f64,
    pub expected_margin: f64,
    /// Computed profiles equal `[expected, 0]` within `RTOL`.
    pub profiles_match: bool,
    pub verdict: InequalityVerdict,
}

impl CounterexampleTr {
    /// The example reproduces: profiles as predicted and the
    /// submajorization fails with the predicted margin (or holds with
    /// margin 0 at `θ = 0`).
    pub fn reproduced(&self) -> bool {
        let margin_ok =
            (self.verdict.margin - self.expected_margin).abs() <= tol::RTOL * (1.0 + self.expected_margin.abs());
        let polarity_ok = if self.theta > 0.0 { !self.verdict.holds } else { self.verdict.holds };
        self.profiles_match && margin_ok && polarity_ok
    }
}

pub fn counterexample_tr(lambda: f64, mu: f64, theta: f64) -> Result<CounterexampleTr> {
    if !(lambda > mu) {
        return Err(Error::out_of_range("lambda", format!("need lambda > mu, got {lambda} <= {mu}")));
    }
    ensure_unit_interval("theta", theta)?;
    let a = crate::kernel::real_matrix(2, 2, &[0.0, 1.0, 0.0, 0.0]);
    let b = crate::kernel::real_diag(&[lambda, mu]);
    let exp_theta = expm_hermitian(&(&b * c64(theta, 0.0)))?;
    let exp_rest = expm_hermitian(&(&b * c64(1.0 - theta, 0.0)))?;
    let exp_full = expm_hermitian(&b)?;
    let left_profile = profile(&(exp_theta * &a * exp_rest))?;
    let right_profile = profile(&(&a * exp_full))?;

    let expected_left_leading = (theta * lambda + (1.0 - theta) * mu).exp();
    let expected_right_leading = mu.exp();
    let expected_margin = expected_left_leading - expected_right_leading;
    let matches = |p: &SingularProfile, lead: f64| {
        let scale = tol::RTOL * (1.0 + lead);
        p.len() == 2 && (p.values()[0] - lead).abs() <= scale && p.values()[1] <= scale
    };
    let profiles_match =
        matches(&left_profile, expected_left_leading) && matches(&right_profile, expected_right_leading);
    let v = submajorizes_default(&left_profile, &right_profile);
    let tag = digest(&[&a, &b]);
    let verdict = InequalityVerdict::submajorization("counterexample_tr", &v, Some(theta), &tag);
    Ok(CounterexampleTr {
        lambda,
        mu,
        theta,
        left_profile,
        right_profile,
        expected_left_leading,
        expected_right_leading,
        expected_margin,
        profiles_match,
        verdict,
    })
}

/// A pair `(a, b)` with a singular value of `b^{1/2}ab^{1/2}` above the
/// matching singular value of `ab`.
#[derive(Debug, Clone)]
pub struct PointwiseWitness {
    pub a: Matrix,
    pub b: Matrix,
    pub index: usize,
    pub excess: f64,
    pub left_values: Vec<f64>,
    pub right_values: Vec<f64>,
    /// Submajorization `b^{1/2}ab^{1/2} ≺≺ ab` on the same pair.
    pub submajorization: InequalityVerdict,
}

#[derive(Debug, Clone)]
pub struct PointwiseSearch {
    pub found: bool,
    pub trials_used: usize,
    pub witness: Option<PointwiseWitness>,
}

/// Compares `μ(b^{1/2}ab^{1/2})` with `μ(ab)` entry by entry. Returns the
/// witness data whenever some entry exceeds its partner by more than
/// `RTOL·max(1, ‖ab‖)`.
pub fn check_pointwise(a: &Matrix, b: &Matrix) -> Result<Option<PointwiseWitness>> {
    let spectrum = PsdSpectrum::new(b)?;
    let half = spectrum.power(0.5)?;
    let left = profile(&(&half * a * &half))?;
    let right = profile(&(a * b))?;
    let threshold = tol::RTOL * right.padded(0).max(1.0);
    let worst = left
        .values()
        .iter()
        .zip(right.values())
        .map(|(l, r)| l - r)
        .enumerate()
        .max_by(|x, y| x.1.total_cmp(&y.1));
    match worst {
        Some((index, excess)) if excess > threshold => Ok(Some(PointwiseWitness {
            a: a.clone(),
            b: b.clone(),
            index,
            excess,
            left_values: left.values().to_vec(),
            right_values: right.values().to_vec(),
            submajorization: bik_theorem_selfadjoint(a, b, 0.5)?,
        })),
        _ => Ok(None),
    }
}

/// Random search over 2×2 Hermitian `a` and PSD `b`.
pub fn counterexample_pointwise_search(seed: u64, trials: usize) -> Result<PointwiseSearch> {
    if trials == 0 {
        return Err(Error::out_of_range("trials", "at least one trial is required"));
    }
    let mut rng = rng_from_seed(seed);
    for trial in 0..trials {
        let a = hermitian_with(&mut rng, 2, 2.0);
        let b = psd_with(&mut rng, 2, false);
        if let Some(witness) = check_pointwise(&a, &b)? {
            return Ok(PointwiseSearch { found: true, trials_used: trial + 1, witness: Some(witness) });
        }
    }
    Ok(PointwiseSearch { found: false, trials_used: trials, witness: None })
}

fn validate_triple(a: &Matrix, b0: &Matrix, b1: &Matrix) -> Result<(PsdSpectrum, PsdSpectrum)> {
    square_pair(a, b0)?;
    ensure_same_shape(a, b1)?;
    Ok((PsdSpectrum::new(b0)?, PsdSpectrum::new(b1)?))
}

/// Largest entrywise gap between two profiles, padded with zeros.
fn profile_gap(p: &SingularProfile, q: &SingularProfile) -> f64 {
    (0..p.len().max(q.len())).map(|i| (p.padded(i) - q.padded(i)).abs()).fold(0.0, f64::max)
}

fn identity_tolerance(p: &SingularProfile) -> f64 {
    tol::RTOL * (1.0 + p.padded(0))
}

/// `b₁^θ·a·b₀^{1−θ} ≺≺ max{μ(ab₀), μ(b₁a)}`, with the 2n×2n block
/// identities `μ(𝐚𝐛) = μ(ab₀) ⊕ 0` and `μ(𝐛𝐚) = μ(b₁a) ⊕ 0` for
/// `𝐚 = [[0, 0], [a, 0]]`, `𝐛 = diag(b₀, b₁)`.
pub fn block_corollary_i(a: &Matrix, b0: &Matrix, b1: &Matrix, theta: f64) -> Result<InequalityVerdict> {
    ensure_unit_interval("theta", theta)?;
    let (s0, s1) = validate_triple(a, b0, b1)?;
    let n = a.nrows();
    let zero = Matrix::zeros(n, n);
    let big_a = block2(&zero, &zero, a, &zero);
    let big_b = block2(b0, &zero, &zero, b1);

    let ab0 = profile(&(a * b0))?;
    let b1a = profile(&(b1 * a))?;
    let zeros = SingularProfile::zeros(n);
    let gap_ab = profile_gap(&profile(&(&big_a * &big_b))?, &profile_direct_sum(&ab0, &zeros));
    let gap_ba = profile_gap(&profile(&(&big_b * &big_a))?, &profile_direct_sum(&b1a, &zeros));

    let left = profile(&(s1.power(theta)? * a * s0.power(1.0 - theta)?))?;
    let v = submajorizes_default(&left, &profile_max(&ab0, &b1a));
    Ok(InequalityVerdict::submajorization("block_corollary_i", &v, Some(theta), &digest(&[a, b0, b1])).with_aux(
        vec![
            AuxCheck::new("block_profile_ab", gap_ab, identity_tolerance(&ab0)),
            AuxCheck::new("block_profile_ba", gap_ba, identity_tolerance(&b1a)),
        ],
    ))
}

/// `μ(b₀^θ a b₁^{1−θ}) ⊕ μ(b₁^θ a* b₀^{1−θ}) ≺≺ μ(ab₁) ⊕ μ(b₀a)`.
///
/// Auxiliary checks: the left side equals the profile of
/// `𝐛^θ 𝐚 𝐛^{1−θ}` for the self-adjoint block `𝐚 = [[0, a], [a*, 0]]`; and,
/// for Hermitian `a` at `θ = 1/2`, `σ₂(μ(b₀^{1/2} a b₁^{1/2})) ≺≺ μ(ab₁) ⊕ μ(ab₀)`.
pub fn block_corollary_ii(a: &Matrix, b0: &Matrix, b1: &Matrix, theta: f64) -> Result<InequalityVerdict> {
    ensure_unit_interval("theta", theta)?;
    let (s0, s1) = validate_triple(a, b0, b1)?;
    let n = a.nrows();
    let a_star = a.adjoint();

    let upper = profile(&(s0.power(theta)? * a * s1.power(1.0 - theta)?))?;
    let lower = profile(&(s1.power(theta)? * &a_star * s0.power(1.0 - theta)?))?;
    let left = profile_direct_sum(&upper, &lower);
    let ab1 = profile(&(a * b1))?;
    let b0a = profile(&(b0 * a))?;
    let right = profile_direct_sum(&ab1, &b0a);
    let v = submajorizes_default(&left, &right);

    let zero = Matrix::zeros(n, n);
    let big_a = block2(&zero, a, &a_star, &zero);
    // powers of diag(b₀, b₁) are taken blockwise
    let power = |t: f64| -> Result<Matrix> { Ok(block2(&s0.power(t)?, &zero, &zero, &s1.power(t)?)) };
    let block_left = profile(&(power(theta)? * &big_a * power(1.0 - theta)?))?;
    let mut aux = vec![AuxCheck::new("block_profile_left", profile_gap(&block_left, &left), identity_tolerance(&left))];

    if theta == 0.5 && crate::kernel::is_hermitian(a) {
        let doubled = sigma2(&upper);
        let ab0 = profile(&(a * b0))?;
        let sv = submajorizes_default(&doubled, &profile_direct_sum(&ab1, &ab0));
        aux.push(AuxCheck::from_submajorization("sigma2_half", &sv));
    }
    Ok(InequalityVerdict::submajorization("block_corollary_ii", &v, Some(theta), &digest(&[a, b0, b1])).with_aux(aux))
}

/// `‖b₀^θ a b₁^{1−θ}‖ ≤ ‖b₀a‖^θ ‖ab₁‖^{1−θ}` for each norm in `specs`,
/// with the partial-sum form
/// `K_mid(k) ≤ K_{b₀a}(k)^θ · K_{ab₁}(k)^{1−θ}` at every breakpoint as an
/// auxiliary check.
pub fn holder_norm_interpolation_multi(
    a: &Matrix,
    b0: &Matrix,
    b1: &Matrix,
    theta: f64,
    specs: &[NormSpec],
) -> Result<Vec<InequalityVerdict>> {
    ensure_unit_interval("theta", theta)?;
    specs.iter().try_for_each(NormSpec::validate)?;
    let (s0, s1) = validate_triple(a, b0, b1)?;
    let mid = profile(&(s0.power(theta)? * a * s1.power(1.0 - theta)?))?;
    let b0a = profile(&(b0 * a))?;
    let ab1 = profile(&(a * b1))?;

    let (k_mid, k0, k1) = (mid.ky_fan_function(), b0a.ky_fan_function(), ab1.ky_fan_function());
    let mut partial_margin = f64::NEG_INFINITY;
    let mut partial_scale = 1.0f64;
    for k in 1..=a.nrows() {
        let bound = k0.at_breakpoint(k).powf(theta) * k1.at_breakpoint(k).powf(1.0 - theta);
        partial_margin = partial_margin.max(k_mid.at_breakpoint(k) - bound);
        partial_scale = partial_scale.max(bound);
    }
    let aux = AuxCheck::new("partial_sums", partial_margin, NORM_REL * partial_scale);
    let tag = digest(&[a, b0, b1]);

    specs
        .iter()
        .map(|&spec| {
            let lhs = symmetric_norm(&mid, spec)?;
            let rhs = symmetric_norm(&b0a, spec)?.powf(theta) * symmetric_norm(&ab1, spec)?.powf(1.0 - theta);
            Ok(InequalityVerdict::norm_inequality(
                "holder_norm_interpolation",
                lhs,
                rhs,
                norm_tolerance(rhs),
                Some(theta),
                &tag,
            )
            .with_norm(spec)
            .with_aux(vec![aux.clone()]))
        })
        .collect()
}

pub fn holder_norm_interpolation(
    a: &Matrix,
    b0: &Matrix,
    b1: &Matrix,
    theta: f64,
    spec: NormSpec,
) -> Result<InequalityVerdict> {
    Ok(holder_norm_interpolation_multi(a, b0, b1, theta, &[spec])?.remove(0))
}

/// `2‖b₀^{1/2} a b₁^{1/2}‖_p^p ≤ ‖ab₁‖_p^p + ‖b₀a‖_p^p` for Hermitian `a`.
pub fn schatten_half_power(a: &Matrix, b0: &Matrix, b1: &Matrix, p: f64) -> Result<InequalityVerdict> {
    ensure_hermitian(a)?;
    if !(p >= 1.0) || p.is_infinite() {
        return Err(Error::out_of_range("p", format!("{p} not in [1, ∞)")));
    }
    let (s0, s1) = validate_triple(a, b0, b1)?;
    let mid = profile(&(s0.power(0.5)? * a * s1.power(0.5)?))?;
    let lhs = 2.0 * schatten_power_sum(&mid, p)?;
    let rhs = schatten_power_sum(&profile(&(a * b1))?, p)? + schatten_power_sum(&profile(&(b0 * a))?, p)?;
    Ok(
        InequalityVerdict::norm_inequality("schatten_half_power", lhs, rhs, norm_tolerance(rhs), None, &digest(&[a, b0, b1]))
            .with_norm(NormSpec::Schatten(p)),
    )
}

/// `‖e^{θb}e^a e^{(1−θ)b}‖ ≤ ‖e^a e^b‖` in each norm of `specs`, with the
/// submajorization `e^{θb}e^a e^{(1−θ)b} ≺≺ e^a e^b` as auxiliary check.
pub fn golden_thompson_symmetric_multi(
    a: &Matrix,
    b: &Matrix,
    theta: f64,
    specs: &[NormSpec],
) -> Result<Vec<InequalityVerdict>> {
    ensure_hermitian(a)?;
    ensure_hermitian(b)?;
    ensure_same_shape(a, b)?;
    ensure_unit_interval("theta", theta)?;
    specs.iter().try_for_each(NormSpec::validate)?;
    let exp_a = expm_hermitian(a)?;
    let eig_b = eig_hermitian(b)?;
    let left = profile(&(eig_b.exp_scaled(c64(theta, 0.0)) * &exp_a * eig_b.exp_scaled(c64(1.0 - theta, 0.0))))?;
    let right = profile(&(&exp_a * eig_b.exp_scaled(c64(1.0, 0.0))))?;
    let sub = submajorizes_default(&left, &right);
    let aux = AuxCheck::from_submajorization("submajorization", &sub);
    let tag = digest(&[a, b]);
    specs
        .iter()
        .map(|&spec| {
            let lhs = symmetric_norm(&left, spec)?;
            let rhs = symmetric_norm(&right, spec)?;
            Ok(InequalityVerdict::norm_inequality(
                "golden_thompson_symmetric",
                lhs,
                rhs,
                tol::EXP_NORM_REL * rhs.max(1.0),
                Some(theta),
                &tag,
            )
            .with_norm(spec)
            .with_aux(vec![aux.clone()]))
        })
        .collect()
}

pub fn golden_thompson_symmetric(a: &Matrix, b: &Matrix, theta: f64, spec: NormSpec) -> Result<InequalityVerdict> {
    Ok(golden_thompson_symmetric_multi(a, b, theta, &[spec])?.remove(0))
}

/// `‖e^{a+b}‖_p ≤ ‖e^a e^b‖_p` for Hermitian `a`, `b` and `p ∈ [1, ∞]`
/// (`p = ∞` is the operator norm).
pub fn golden_thompson_exp_sum_multi(a: &Matrix, b: &Matrix, ps: &[f64]) -> Result<Vec<InequalityVerdict>> {
    ensure_hermitian(a)?;
    ensure_hermitian(b)?;
    ensure_same_shape(a, b)?;
    let specs: Vec<NormSpec> = ps.iter().map(|&p| NormSpec::Schatten(p)).collect();
    specs.iter().try_for_each(NormSpec::validate)?;
    let sum = profile(&expm_hermitian(&(a + b))?)?;
    let product = profile(&(expm_hermitian(a)? * expm_hermitian(b)?))?;
    let tag = digest(&[a, b]);
    specs
        .iter()
        .map(|&spec| {
            let lhs = symmetric_norm(&sum, spec)?;
            let rhs = symmetric_norm(&product, spec)?;
            Ok(InequalityVerdict::norm_inequality(
                "golden_thompson_exp_sum",
                lhs,
                rhs,
                tol::EXP_NORM_REL * rhs.max(1.0),
                None,
                &tag,
            )
            .with_norm(spec))
        })
        .collect()
}

pub fn golden_thompson_exp_sum(a: &Matrix, b: &Matrix, p: f64) -> Result<InequalityVerdict> {
    Ok(golden_thompson_exp_sum_multi(a, b, &[p])?.remove(0))
}

/// `left ≺≺ right` between arbitrary matrices, default tolerance.
pub fn matrix_submajorization(left: &Matrix, right: &Matrix, tol: Option<f64>) -> Result<SubmajorizationVerdict> {
    let (l, r) = (profile(left)?, profile(right)?);
    Ok(match tol {
        Some(t) => submajorizes(&l, &r, t),
        None => submajorizes_default(&l, &r),
    })
}
