//! Singular-value profiles as step functions, their Ky Fan partial-sum
//! functions, submajorization and symmetric norms.
//!
//! A profile `μ = (μ₀ ≥ μ₁ ≥ … ≥ μ_{n−1} ≥ 0)` is read as the step function
//! `μ(t) = μ_⌊t⌋` on `[0, n)` and zero afterwards. Its Ky Fan function
//! `K(t) = ∫₀ᵗ μ(s) ds` is concave, piecewise linear, with breakpoints at the
//! integers.
//!
//! # Checking `left ≺≺ right` exactly
//!
//! `K_left − K_right` is linear on every interval `[k, k+1]` and constant on
//! `[n, ∞)`, where `n` is the longer length. A linear function attains its
//! maximum over an interval at an endpoint, so
//! `sup_{t>0} (K_left − K_right)(t)` is the maximum over `k = 1..=n`
//! (approached as `t → 0⁺` when every breakpoint difference is negative).
//! No grid search is needed.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{singular_values, Matrix};
use crate::tol;

/// Non-increasing sequence of non-negative reals.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SingularProfile {
    values: Vec<f64>,
}

impl SingularProfile {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::Invalid("profile values must be finite and non-negative".into()));
        }
        if values.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid("profile values must be non-increasing".into()));
        }
        Ok(Self { values })
    }

    /// Sorts non-negative values into a profile.
    pub fn from_unsorted(mut values: Vec<f64>) -> Result<Self> {
        values.sort_by(|a, b| b.total_cmp(a));
        Self::new(values)
    }

    pub fn zeros(n: usize) -> Self {
        Self { values: vec![0.0; n] }
    }

    /// Singular values of `a`.
    pub fn of_matrix(a: &Matrix) -> Result<Self> {
        Ok(Self { values: singular_values(a)? })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `μ(t)`.
    pub fn at(&self, t: f64) -> f64 {
        if t < 0.0 {
            return 0.0;
        }
        self.values.get(t.floor() as usize).copied().unwrap_or(0.0)
    }

    /// Value at index `i`, zero beyond the support.
    pub fn padded(&self, i: usize) -> f64 {
        self.values.get(i).copied().unwrap_or(0.0)
    }

    pub fn ky_fan_function(&self) -> KyFanFunction {
        let mut partial_sums = Vec::with_capacity(self.values.len() + 1);
        let mut acc = 0.0;
        partial_sums.push(acc);
        for v in &self.values {
            acc += v;
            partial_sums.push(acc);
        }
        KyFanFunction { partial_sums, values: self.values.clone() }
    }
}

/// Same as [`SingularProfile::of_matrix`].
pub fn profile_of(a: &Matrix) -> Result<SingularProfile> {
    SingularProfile::of_matrix(a)
}

/// `t ↦ ∫₀ᵗ μ(s) ds`, stored as its values at the integer breakpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct KyFanFunction {
    partial_sums: Vec<f64>,
    values: Vec<f64>,
}

impl KyFanFunction {
    /// Partial sums at `0..=n`; `partial_sums()[0] == 0`.
    pub fn partial_sums(&self) -> &[f64] {
        &self.partial_sums
    }

    /// `K(k)` at an integer, constant beyond the support.
    pub fn at_breakpoint(&self, k: usize) -> f64 {
        let last = self.partial_sums.len() - 1;
        self.partial_sums[k.min(last)]
    }

    pub fn total(&self) -> f64 {
        *self.partial_sums.last().expect("partial sums start with 0")
    }

    /// Exact value at real `t ≥ 0`; at integers this is the stored
    /// partial sum, bit for bit.
    pub fn eval(&self, t: f64) -> f64 {
        let k = t.floor() as usize;
        if k >= self.values.len() {
            return self.total();
        }
        let frac = t - k as f64;
        if frac == 0.0 {
            self.partial_sums[k]
        } else {
            self.partial_sums[k] + frac * self.values[k]
        }
    }
}

pub fn ky_fan(p: &SingularProfile, t: f64) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::out_of_range("t", format!("{t} is negative")));
    }
    Ok(p.ky_fan_function().eval(t))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SubmajorizationVerdict {
    pub holds: bool,
    /// Breakpoint attaining the margin (first one on ties).
    pub worst_t: f64,
    /// `sup_{t>0} K_left(t) − K_right(t)`.
    pub margin: f64,
    pub tolerance_used: f64,
}

/// Verdict on `left ≺≺ right` with `holds ⇔ margin ≤ tol`.
pub fn submajorizes(left: &SingularProfile, right: &SingularProfile, tol: f64) -> SubmajorizationVerdict {
    let tol = tol.max(0.0);
    let n = left.len().max(right.len());
    let kl = left.ky_fan_function();
    let kr = right.ky_fan_function();
    let mut margin = if n == 0 { 0.0 } else { f64::NEG_INFINITY };
    let mut worst = 0usize;
    for k in 1..=n {
        let diff = kl.at_breakpoint(k) - kr.at_breakpoint(k);
        if diff > margin {
            margin = diff;
            worst = k;
        }
    }
    SubmajorizationVerdict { holds: margin <= tol, worst_t: worst as f64, margin, tolerance_used: tol }
}

/// `SUBMAJ_REL · max(1, K_right(n))`, the tolerance for matrix-derived
/// comparisons.
pub fn default_tolerance(right: &SingularProfile) -> f64 {
    tol::SUBMAJ_REL * right.ky_fan_function().total().max(1.0)
}

pub fn submajorizes_default(left: &SingularProfile, right: &SingularProfile) -> SubmajorizationVerdict {
    submajorizes(left, right, default_tolerance(right))
}

fn pointwise(p: &SingularProfile, q: &SingularProfile, f: impl Fn(f64, f64) -> f64) -> SingularProfile {
    let n = p.len().max(q.len());
    SingularProfile { values: (0..n).map(|i| f(p.padded(i), q.padded(i))).collect() }
}

pub fn profile_max(p: &SingularProfile, q: &SingularProfile) -> SingularProfile {
    pointwise(p, q, f64::max)
}

pub fn profile_product(p: &SingularProfile, q: &SingularProfile) -> SingularProfile {
    pointwise(p, q, |x, y| x * y)
}

/// Profile of a block-diagonal direct sum.
pub fn profile_direct_sum(p: &SingularProfile, q: &SingularProfile) -> SingularProfile {
    let mut values = Vec::with_capacity(p.len() + q.len());
    let (mut i, mut j) = (0, 0);
    while i < p.len() || j < q.len() {
        if j >= q.len() || (i < p.len() && p.values[i] >= q.values[j]) {
            values.push(p.values[i]);
            i += 1;
        } else {
            values.push(q.values[j]);
            j += 1;
        }
    }
    SingularProfile { values }
}

/// `(a₀, a₁, …) ↦ (a₀, a₀, a₁, a₁, …)`.
pub fn sigma2(p: &SingularProfile) -> SingularProfile {
    SingularProfile { values: p.values.iter().flat_map(|&v| [v, v]).collect() }
}

/// Fully symmetric norms evaluated on profiles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NormSpec {
    /// `(Σ μᵢᵖ)^{1/p}`, `p ≥ 1`; `p = ∞` is the operator norm.
    Schatten(f64),
    /// Sum of the `k` largest values.
    KyFan(usize),
    Operator,
}

impl NormSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            NormSpec::Schatten(p) if !(p >= 1.0) => Err(Error::out_of_range("p", format!("{p} < 1"))),
            NormSpec::KyFan(0) => Err(Error::out_of_range("k", "ky_fan(k) needs k ≥ 1")),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for NormSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormSpec::Schatten(p) if p.is_infinite() => write!(f, "schatten(inf)"),
            NormSpec::Schatten(p) => write!(f, "schatten({p})"),
            NormSpec::KyFan(k) => write!(f, "ky_fan({k})"),
            NormSpec::Operator => write!(f, "operator"),
        }
    }
}

impl FromStr for NormSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Invalid(format!("unrecognised norm `{s}`"));
        if s == "operator" || s == "op" {
            return Ok(NormSpec::Operator);
        }
        let (name, arg) = s.strip_suffix(')').and_then(|r| r.split_once('(')).ok_or_else(bad)?;
        let spec = match name {
            "schatten" => NormSpec::Schatten(parse_p(arg).ok_or_else(bad)?),
            "ky_fan" => NormSpec::KyFan(arg.trim().parse().map_err(|_| bad())?),
            _ => return Err(bad()),
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Parses a Schatten exponent; `inf`/`∞` give `f64::INFINITY`.
pub fn parse_p(s: &str) -> Option<f64> {
    match s.trim() {
        "inf" | "infinity" | "∞" => Some(f64::INFINITY),
        other => other.parse().ok(),
    }
}

impl Serialize for NormSpec {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for NormSpec {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn symmetric_norm(p: &SingularProfile, spec: NormSpec) -> Result<f64> {
    spec.validate()?;
    let top = p.padded(0);
    Ok(match spec {
        NormSpec::Operator => top,
        NormSpec::Schatten(q) if q.is_infinite() => top,
        NormSpec::KyFan(k) => p.values.iter().take(k).sum(),
        NormSpec::Schatten(q) => {
            if top == 0.0 {
                0.0
            } else {
                // scaled by the leading value to keep powers in range
                let s: f64 = p.values.iter().map(|v| (v / top).powf(q)).sum();
                top * s.powf(1.0 / q)
            }
        }
    })
}

/// `Σ μᵢᵖ` for finite `p ≥ 1`.
pub fn schatten_power_sum(p: &SingularProfile, q: f64) -> Result<f64> {
    if !(q >= 1.0) || q.is_infinite() {
        return Err(Error::out_of_range("p", format!("{q} not in [1, ∞)")));
    }
    Ok(p.values.iter().map(|v| v.powf(q)).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{real_diag, real_matrix};

    fn prof(v: &[f64]) -> SingularProfile {
        SingularProfile::new(v.to_vec()).unwrap()
    }

    #[test]
    fn profile_of_examples() {
        let p = profile_of(&real_diag(&[1.0, -3.0, 2.0])).unwrap();
        for (x, y) in p.values().iter().zip([3.0, 2.0, 1.0]) {
            assert!((x - y).abs() < 1e-14);
        }
        assert!(profile_of(&Matrix::zeros(3, 3)).unwrap().values().iter().all(|&v| v == 0.0));
        let p = profile_of(&real_matrix(2, 2, &[0.0, 1.0, 0.0, 0.0])).unwrap();
        assert!((p.values()[0] - 1.0).abs() < 1e-15 && p.values()[1] < 1e-15);
    }

    #[test]
    fn rejects_invalid_profiles() {
        assert!(SingularProfile::new(vec![1.0, 2.0]).is_err());
        assert!(SingularProfile::new(vec![-1.0]).is_err());
        assert!(SingularProfile::new(vec![f64::NAN]).is_err());
    }

    #[test]
    fn ky_fan_examples() {
        let p = prof(&[3.0, 2.0, 1.0]);
        // direct Riemann sum of the step function on [0, 1.5]
        let h = 1e-4;
        let riemann: f64 = (0..15000).map(|i| p.at((i as f64 + 0.5) * h) * h).sum();
        assert!((riemann - 4.0).abs() < 1e-9);
        assert_eq!(ky_fan(&p, 1.5).unwrap(), 4.0);
        assert_eq!(ky_fan(&p, 0.0).unwrap(), 0.0);
        assert_eq!(ky_fan(&p, 10.0).unwrap(), 6.0);
        assert!(ky_fan(&p, -0.1).is_err());
    }

    #[test]
    fn submajorization_examples() {
        let v = submajorizes(&prof(&[1.0, 1.0]), &prof(&[2.0, 0.0]), 0.0);
        assert!(v.holds && v.margin <= 0.0);
        assert_eq!(v.worst_t, 2.0);
        let v = submajorizes(&prof(&[2.0, 0.0]), &prof(&[1.0, 1.0]), 0.0);
        assert!(!v.holds);
        assert_eq!((v.worst_t, v.margin), (1.0, 1.0));
        let p = prof(&[3.0, 1.0, 0.5]);
        let v = submajorizes(&p, &p, 0.0);
        assert!(v.holds && v.margin == 0.0);
    }

    #[test]
    fn submajorization_pads_shorter_profile() {
        let v = submajorizes(&prof(&[1.0, 1.0, 1.0]), &prof(&[2.0]), 1e-12);
        assert!(!v.holds);
        assert_eq!(v.worst_t, 3.0);
        assert_eq!(v.margin, 1.0);
        let empty = SingularProfile::default();
        assert!(submajorizes(&empty, &empty, 0.0).holds);
    }

    #[test]
    fn pointwise_examples() {
        assert_eq!(profile_max(&prof(&[3.0, 1.0]), &prof(&[2.0, 2.0])).values(), &[3.0, 2.0]);
        assert_eq!(profile_max(&prof(&[3.0, 1.0]), &SingularProfile::zeros(2)).values(), &[3.0, 1.0]);
        assert_eq!(profile_max(&prof(&[1.0, 0.0]), &prof(&[0.0, 0.0])).values(), &[1.0, 0.0]);
        assert_eq!(profile_product(&prof(&[3.0, 2.0]), &prof(&[1.0, 1.0])).values(), &[3.0, 2.0]);
        assert_eq!(profile_product(&prof(&[3.0, 2.0]), &SingularProfile::zeros(2)).values(), &[0.0, 0.0]);
        assert_eq!(profile_product(&prof(&[2.0, 1.0]), &prof(&[2.0, 1.0])).values(), &[4.0, 1.0]);
        assert_eq!(profile_max(&prof(&[1.0]), &prof(&[0.5, 0.5, 0.2])).values(), &[1.0, 0.5, 0.2]);
    }

    #[test]
    fn direct_sum_and_sigma2() {
        assert_eq!(profile_direct_sum(&prof(&[3.0, 1.0]), &prof(&[2.0])).values(), &[3.0, 2.0, 1.0]);
        assert_eq!(profile_direct_sum(&prof(&[3.0, 1.0]), &SingularProfile::default()).values(), &[3.0, 1.0]);
        assert_eq!(profile_direct_sum(&prof(&[1.0, 1.0]), &prof(&[1.0])).values(), &[1.0, 1.0, 1.0]);
        assert_eq!(sigma2(&prof(&[3.0, 1.0])).values(), &[3.0, 3.0, 1.0, 1.0]);
        assert!(sigma2(&SingularProfile::default()).is_empty());
        assert_eq!(sigma2(&prof(&[2.0])).values(), &[2.0, 2.0]);
    }

    #[test]
    fn norm_examples() {
        assert!((symmetric_norm(&prof(&[4.0, 3.0]), NormSpec::Schatten(2.0)).unwrap() - 5.0).abs() < 1e-15);
        assert_eq!(symmetric_norm(&prof(&[3.0, 2.0, 1.0]), NormSpec::KyFan(2)).unwrap(), 5.0);
        assert_eq!(symmetric_norm(&prof(&[3.0, 2.0, 1.0]), NormSpec::Operator).unwrap(), 3.0);
        assert_eq!(symmetric_norm(&prof(&[3.0, 2.0, 1.0]), NormSpec::Schatten(f64::INFINITY)).unwrap(), 3.0);
        assert_eq!(symmetric_norm(&SingularProfile::default(), NormSpec::Operator).unwrap(), 0.0);
        assert!(symmetric_norm(&prof(&[1.0]), NormSpec::Schatten(0.5)).is_err());
        assert!(symmetric_norm(&prof(&[1.0]), NormSpec::KyFan(0)).is_err());
    }

    #[test]
    fn norm_spec_text_form() {
        for s in ["schatten(2)", "schatten(1.5)", "schatten(inf)", "ky_fan(3)", "operator"] {
            let spec: NormSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert!("schatten(0.5)".parse::<NormSpec>().is_err());
        assert!("frobenius".parse::<NormSpec>().is_err());
    }
}
