//! Seeded verification campaigns.
//!
//! A campaign runs each configured [`Suite`] over every `(size, trial)`
//! pair. The inputs of a trial come from its own generator stream, keyed by
//! [`stream_seed`](crate::random::stream_seed)`(seed, suite, size, trial)`,
//! so trials can run in any order on any number of threads and be replayed
//! one at a time from their descriptor `suite/seed=S/n=N/trial=T`.

mod campaign;
mod report;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub use campaign::{replay, run_campaign, run_trial};
pub use report::{CampaignReport, Summary, SuiteSummary, TrialReport, VerdictRecord, SCHEMA_VERSION};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    BikTheoremSelfadjoint,
    BikTheoremGeneral,
    CounterexampleTr,
    CounterexamplePointwiseSearch,
    BlockCorollaryI,
    BlockCorollaryIi,
    HolderNormInterpolation,
    SchattenHalfPower,
    GoldenThompsonSymmetric,
    GoldenThompsonExpSum,
    KyFanDuality,
    ThreeLines,
    BoundarySubmajorization,
    SpectralIdentity,
}

impl Suite {
    pub const ALL: [Suite; 14] = [
        Suite::BikTheoremSelfadjoint,
        Suite::BikTheoremGeneral,
        Suite::CounterexampleTr,
        Suite::CounterexamplePointwiseSearch,
        Suite::BlockCorollaryI,
        Suite::BlockCorollaryIi,
        Suite::HolderNormInterpolation,
        Suite::SchattenHalfPower,
        Suite::GoldenThompsonSymmetric,
        Suite::GoldenThompsonExpSum,
        Suite::KyFanDuality,
        Suite::ThreeLines,
        Suite::BoundarySubmajorization,
        Suite::SpectralIdentity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::BikTheoremSelfadjoint => "bik_theorem_selfadjoint",
            Suite::BikTheoremGeneral => "bik_theorem_general",
            Suite::CounterexampleTr => "counterexample_tr",
            Suite::CounterexamplePointwiseSearch => "counterexample_pointwise_search",
            Suite::BlockCorollaryI => "block_corollary_i",
            Suite::BlockCorollaryIi => "block_corollary_ii",
            Suite::HolderNormInterpolation => "holder_norm_interpolation",
            Suite::SchattenHalfPower => "schatten_half_power",
            Suite::GoldenThompsonSymmetric => "golden_thompson_symmetric",
            Suite::GoldenThompsonExpSum => "golden_thompson_exp_sum",
            Suite::KyFanDuality => "ky_fan_duality",
            Suite::ThreeLines => "three_lines",
            Suite::BoundarySubmajorization => "boundary_submajorization",
            Suite::SpectralIdentity => "spectral_identity",
        }
    }

    /// Suites whose inputs are fixed 2×2 examples; they run once per
    /// campaign at `n = 2` instead of once per configured size.
    pub fn size_independent(self) -> bool {
        matches!(self, Suite::CounterexampleTr | Suite::CounterexamplePointwiseSearch)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

/// Absolute tolerances that replace the built-in relative ones for a
/// family of checks. A replaced verdict is re-judged as
/// `margin ≤ override`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ToleranceOverrides {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub submajorization: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub norm: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectral: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub three_lines: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CampaignConfig {
    pub seed: u64,
    pub sizes: Vec<usize>,
    pub trials_per_size: usize,
    pub theta_grid: Vec<f64>,
    /// Schatten exponents; `∞` is written `"inf"` in JSON.
    #[serde(serialize_with = "ser_p_grid", deserialize_with = "de_p_grid")]
    pub p_grid: Vec<f64>,
    pub tolerances: ToleranceOverrides,
    pub suites: Vec<String>,
    /// Worker threads; `None` uses the global rayon pool.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threads: Option<usize>,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            sizes: vec![2, 3, 4, 8, 16],
            trials_per_size: 200,
            theta_grid: (1..=9).map(|i| i as f64 / 10.0).collect(),
            p_grid: vec![1.0, 1.5, 2.0, 3.0, f64::INFINITY],
            tolerances: ToleranceOverrides::default(),
            suites: Suite::ALL.iter().map(|s| s.name().to_string()).collect(),
            threads: None,
        }
    }
}

impl CampaignConfig {
    pub fn with_suites(mut self, suites: &[Suite]) -> Self {
        self.suites = suites.iter().map(|s| s.name().to_string()).collect();
        self
    }

    /// Checks the config invariants and resolves the suite names.
    pub fn validate(&self) -> Result<Vec<Suite>> {
        let suites = self.suites.iter().map(|s| s.parse()).collect::<Result<Vec<Suite>>>()?;
        if self.sizes.contains(&0) {
            return Err(Error::Invalid("sizes must all be at least 1".into()));
        }
        if self.trials_per_size == 0 {
            return Err(Error::Invalid("trials_per_size must be at least 1".into()));
        }
        if let Some(t) = self.theta_grid.iter().find(|t| !(0.0..=1.0).contains(*t)) {
            return Err(Error::Invalid(format!("theta {t} outside [0, 1]")));
        }
        if let Some(p) = self.p_grid.iter().find(|p| !(**p >= 1.0)) {
            return Err(Error::Invalid(format!("p {p} below 1")));
        }
        if self.threads == Some(0) {
            return Err(Error::Invalid("threads must be at least 1".into()));
        }
        let overrides = &self.tolerances;
        for t in [overrides.submajorization, overrides.norm, overrides.spectral, overrides.three_lines].into_iter().flatten() {
            if !(t >= 0.0) || t.is_infinite() {
                return Err(Error::Invalid(format!("tolerance override {t} must be finite and non-negative")));
            }
        }
        Ok(suites)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Invalid(format!("campaign config: {e}")))
    }
}

fn ser_p_grid<S: Serializer>(grid: &[f64], s: S) -> std::result::Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    #[serde(untagged)]
    enum P {
        Finite(f64),
        Marker(&'static str),
    }
    let items: Vec<P> = grid.iter().map(|&p| if p.is_infinite() { P::Marker("inf") } else { P::Finite(p) }).collect();
    items.serialize(s)
}

fn de_p_grid<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<f64>, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum P {
        Finite(f64),
        Marker(String),
    }
    Vec::<P>::deserialize(d)?
        .into_iter()
        .map(|p| match p {
            P::Finite(x) => Ok(x),
            P::Marker(s) => crate::rearrangement::parse_p(&s)
                .ok_or_else(|| serde::de::Error::custom(format!("invalid p `{s}`"))),
        })
        .collect()
}

/// Parsed `suite/seed=S/n=N/trial=T`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialDescriptor {
    pub suite: Suite,
    pub seed: u64,
    pub size: usize,
    pub trial: usize,
}

impl fmt::Display for TrialDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/seed={}/n={}/trial={}", self.suite, self.seed, self.size, self.trial)
    }
}

impl FromStr for TrialDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Invalid(format!("malformed trial descriptor `{s}`"));
        let mut parts = s.split('/');
        let suite: Suite = parts.next().ok_or_else(bad)?.parse()?;
        let mut field = |key: &str| -> Result<u64> {
            parts
                .next()
                .and_then(|p| p.strip_prefix(key))
                .and_then(|p| p.strip_prefix('='))
                .and_then(|v| v.parse().ok())
                .ok_or_else(bad)
        };
        let seed = field("seed")?;
        let size = field("n")? as usize;
        let trial = field("trial")? as usize;
        if parts.next().is_some() || size == 0 {
            return Err(bad());
        }
        Ok(Self { suite, seed, size, trial })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!(matches!("nope".parse::<Suite>(), Err(Error::UnknownSuite(_))));
    }

    #[test]
    fn descriptor_round_trip() {
        let d = TrialDescriptor { suite: Suite::ThreeLines, seed: 42, size: 8, trial: 17 };
        let text = d.to_string();
        assert_eq!(text, "three_lines/seed=42/n=8/trial=17");
        assert_eq!(text.parse::<TrialDescriptor>().unwrap(), d);
        for bad in ["three_lines", "three_lines/seed=1/n=2", "x/seed=1/n=2/trial=0", "three_lines/seed=1/n=0/trial=0"] {
            assert!(bad.parse::<TrialDescriptor>().is_err(), "{bad}");
        }
    }

    #[test]
    fn config_json_round_trip() {
        let config = CampaignConfig::default();
        let text = serde_json::to_string(&config).unwrap();
        assert!(text.contains("\"inf\""));
        assert_eq!(CampaignConfig::from_json(&text).unwrap(), config);
        let partial = CampaignConfig::from_json(r#"{"seed": 5, "p_grid": [1, "∞"]}"#).unwrap();
        assert_eq!(partial.seed, 5);
        assert_eq!(partial.p_grid, vec![1.0, f64::INFINITY]);
        assert_eq!(partial.sizes, CampaignConfig::default().sizes);
        assert!(CampaignConfig::from_json(r#"{"unknown": 1}"#).is_err());
    }

    #[test]
    fn config_validation() {
        assert_eq!(CampaignConfig::default().validate().unwrap().len(), Suite::ALL.len());
        let bad = [
            CampaignConfig { sizes: vec![0], ..Default::default() },
            CampaignConfig { trials_per_size: 0, ..Default::default() },
            CampaignConfig { theta_grid: vec![1.5], ..Default::default() },
            CampaignConfig { p_grid: vec![0.5], ..Default::default() },
            CampaignConfig { suites: vec!["bogus".into()], ..Default::default() },
        ];
        for c in bad {
            assert!(c.validate().is_err(), "{c:?}");
        }
    }
}
