use std::collections::BTreeMap;

use serde::Serialize;

use super::{CampaignConfig, Suite};
use crate::inequalities::InequalityVerdict;

pub const SCHEMA_VERSION: u32 = 1;

/// One verdict inside a trial, with its expected polarity.
///
/// `expected_violation` marks checks built to fail (the counterexamples);
/// such a record passes when the inequality does not hold.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerdictRecord {
    #[serde(flatten)]
    pub verdict: InequalityVerdict,
    pub expected_violation: bool,
    pub passed: bool,
}

impl VerdictRecord {
    pub fn expect_hold(verdict: InequalityVerdict) -> Self {
        let passed = verdict.all_hold();
        Self { verdict, expected_violation: false, passed }
    }

    pub fn expect_violation(verdict: InequalityVerdict) -> Self {
        let passed = !verdict.holds;
        Self { verdict, expected_violation: true, passed }
    }

    /// Expected polarity chosen per record.
    pub fn expecting(verdict: InequalityVerdict, violation: bool) -> Self {
        if violation {
            Self::expect_violation(verdict)
        } else {
            Self::expect_hold(verdict)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialReport {
    pub descriptor: String,
    pub suite: String,
    pub seed: u64,
    pub size: usize,
    pub trial: usize,
    pub generators: Vec<String>,
    pub verdicts: Vec<VerdictRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

impl TrialReport {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteSummary {
    pub suite: String,
    pub trials: usize,
    pub verdicts: usize,
    /// Records that did not come out as expected.
    pub violations: usize,
    /// Records built to fail that did fail.
    pub expected_failures: usize,
    /// Largest margin among records expected to hold.
    pub worst_margin: Option<f64>,
    pub worst_descriptor: Option<String>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub suites: Vec<SuiteSummary>,
    pub total_verdicts: usize,
    pub violations: usize,
    pub expected_failures: usize,
    pub worst_margin: Option<f64>,
    pub worst_descriptor: Option<String>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CampaignReport {
    pub schema_version: u32,
    pub config: CampaignConfig,
    pub summary: Summary,
    pub trials: Vec<TrialReport>,
}

fn worse(current: &mut Option<(f64, String)>, margin: f64, descriptor: &str) {
    if current.as_ref().is_none_or(|(m, _)| margin > *m || m.is_nan()) {
        *current = Some((margin, descriptor.to_string()));
    }
}

pub(crate) fn summarize(suites: &[Suite], trials: &[TrialReport]) -> Summary {
    let mut by_suite: BTreeMap<&str, Vec<&TrialReport>> = suites.iter().map(|s| (s.name(), Vec::new())).collect();
    for t in trials {
        by_suite.entry(t.suite.as_str()).or_default().push(t);
    }
    let mut global: Option<(f64, String)> = None;
    let mut rows = Vec::new();
    for suite in suites {
        let reports = &by_suite[suite.name()];
        let mut worst: Option<(f64, String)> = None;
        let (mut verdicts, mut violations, mut expected_failures) = (0, 0, 0);
        for t in reports {
            for r in &t.verdicts {
                verdicts += 1;
                if !r.passed {
                    violations += 1;
                }
                if r.expected_violation {
                    expected_failures += usize::from(r.passed);
                } else {
                    worse(&mut worst, r.verdict.margin, &t.descriptor);
                }
            }
        }
        if let Some((m, d)) = &worst {
            worse(&mut global, *m, d);
        }
        rows.push(SuiteSummary {
            suite: suite.name().to_string(),
            trials: reports.len(),
            verdicts,
            violations,
            expected_failures,
            worst_margin: worst.as_ref().map(|w| w.0),
            worst_descriptor: worst.map(|w| w.1),
            passed: violations == 0,
        });
    }
    Summary {
        total_verdicts: rows.iter().map(|r| r.verdicts).sum(),
        violations: rows.iter().map(|r| r.violations).sum(),
        expected_failures: rows.iter().map(|r| r.expected_failures).sum(),
        passed: rows.iter().all(|r| r.passed),
        worst_margin: global.as_ref().map(|w| w.0),
        worst_descriptor: global.map(|w| w.1),
        suites: rows,
    }
}

impl CampaignReport {
    pub fn passed(&self) -> bool {
        self.summary.passed
    }

    /// Pretty JSON. With `include_timing = false` the wall-time fields are
    /// dropped, so two runs of one config give identical text.
    pub fn to_json(&self, include_timing: bool) -> String {
        let text = if include_timing {
            serde_json::to_string_pretty(self)
        } else {
            let mut stripped = self.clone();
            stripped.config.threads = None;
            stripped.trials.iter_mut().for_each(|t| t.wall_time_ms = None);
            serde_json::to_string_pretty(&stripped)
        };
        text.expect("report serializes")
    }

    /// One row per verdict.
    pub fn to_csv(&self) -> String {
        let mut out =
            String::from("descriptor,name,theta,norm,holds,margin,tolerance,expected_violation,passed\n");
        for t in &self.trials {
            for r in &t.verdicts {
                let v = &r.verdict;
                out.push_str(&format!(
                    "{},{},{},{},{},{:e},{:e},{},{}\n",
                    t.descriptor,
                    v.name,
                    v.theta.map(|x| x.to_string()).unwrap_or_default(),
                    v.norm.map(|n| n.to_string()).unwrap_or_default(),
                    v.holds,
                    v.margin,
                    v.tolerance,
                    r.expected_violation,
                    r.passed,
                ));
            }
        }
        out
    }

    /// Human-readable per-suite lines.
    pub fn summary_text(&self) -> String {
        let mut out = String::new();
        for s in &self.summary.suites {
            let worst = s.worst_margin.map(|m| format!("{m:.3e}")).unwrap_or_else(|| "-".into());
            out.push_str(&format!(
                "{:<34} {} trials={} verdicts={} violations={} expected_failures={} worst_margin={}\n",
                s.suite,
                if s.passed { "PASS" } else { "FAIL" },
                s.trials,
                s.verdicts,
                s.violations,
                s.expected_failures,
                worst
            ));
        }
        out
    }
}
