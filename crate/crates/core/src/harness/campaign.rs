use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;

use super::report::{summarize, CampaignReport, TrialReport, VerdictRecord, SCHEMA_VERSION};
use super::{CampaignConfig, Suite, ToleranceOverrides, TrialDescriptor};
use crate::duality::{optimal_contraction, random_contraction_values};
use crate::error::{Error, Result};
use crate::inequalities::{self as ineq, AuxCheck, InequalityVerdict};
use crate::interpolation::{
    boundary_submajorization_bound, boundary_submajorization_bound_general, imag_grid, strip_evaluate,
    three_lines_check,
};
use crate::kernel::{c64, identity, Matrix};
use crate::random::{digest, ginibre, hermitian_with, psd_with, rng_from_seed, stream_seed, TrialRng};
use crate::rearrangement::{ky_fan, NormSpec, SingularProfile, SubmajorizationVerdict};
use crate::spectral::{default_spectral_tolerance, lambda_ab_equals_ba, trace_theta_identity};

/// Random contractions drawn per `k` in the duality suite.
const DUALITY_SAMPLES: usize = 8;
/// Trial budget of the pointwise search.
const POINTWISE_BUDGET: usize = 10_000;
/// Norm cap for Hermitian inputs of the exponential suites.
const EXP_CAP: f64 = 2.0;
/// Norm cap for other Hermitian inputs.
const HERMITIAN_CAP: f64 = 4.0;
/// Imaginary extent and step of the strip grid.
const STRIP_YMAX: f64 = 8.0;
const STRIP_YSTEP: f64 = 0.25;

#[derive(Clone, Copy)]
enum Family {
    Submajorization,
    Norm,
    Spectral,
    ThreeLines,
}

struct Trial<'a> {
    config: &'a CampaignConfig,
    descriptor: TrialDescriptor,
    rng: TrialRng,
    labels: Vec<String>,
    records: Vec<VerdictRecord>,
}

impl Trial<'_> {
    fn n(&self) -> usize {
        self.descriptor.size
    }

    fn ginibre(&mut self, name: &str) -> Matrix {
        self.labels.push(format!("{name}=ginibre"));
        let n = self.n();
        ginibre(&mut self.rng, n, n)
    }

    fn hermitian(&mut self, name: &str, cap: f64) -> Matrix {
        self.labels.push(format!("{name}=hermitian(cap={cap})"));
        let n = self.n();
        hermitian_with(&mut self.rng, n, cap)
    }

    /// PSD input cycling through the generator mix by `slot`: singular,
    /// generic, generic, near-identity.
    fn psd(&mut self, name: &str, slot: usize) -> Matrix {
        let n = self.n();
        match slot % 4 {
            0 => {
                self.labels.push(format!("{name}=psd_singular"));
                psd_with(&mut self.rng, n, true)
            }
            3 => {
                self.labels.push(format!("{name}=psd_near_identity"));
                let h = hermitian_with(&mut self.rng, n, 1.0);
                identity(n) + h * c64(1e-6, 0.0)
            }
            _ => {
                self.labels.push(format!("{name}=psd"));
                psd_with(&mut self.rng, n, false)
            }
        }
    }

    fn override_for(&self, family: Family) -> Option<f64> {
        let t: &ToleranceOverrides = &self.config.tolerances;
        match family {
            Family::Submajorization => t.submajorization,
            Family::Norm => t.norm,
            Family::Spectral => t.spectral,
            Family::ThreeLines => t.three_lines,
        }
    }

    fn push(&mut self, mut verdict: InequalityVerdict, family: Family, expect_violation: bool) {
        if let Some(tol) = self.override_for(family) {
            verdict.tolerance = tol;
            verdict.holds = verdict.margin <= tol;
        }
        self.records.push(VerdictRecord::expecting(verdict, expect_violation));
    }

    fn hold(&mut self, verdict: InequalityVerdict, family: Family) {
        self.push(verdict, family, false);
    }

    fn hold_all(&mut self, verdicts: Vec<InequalityVerdict>, family: Family) {
        verdicts.into_iter().for_each(|v| self.hold(v, family));
    }

    fn thetas(&self) -> &[f64] {
        &self.config.theta_grid
    }

    /// Schatten norms over the p grid, then every Ky Fan norm up to `n`.
    fn norm_specs(&self) -> Vec<NormSpec> {
        let mut specs: Vec<NormSpec> = self.config.p_grid.iter().map(|&p| NormSpec::Schatten(p)).collect();
        specs.extend((1..=self.n()).map(NormSpec::KyFan));
        specs
    }
}

fn submaj_verdict(name: &str, v: &SubmajorizationVerdict, theta: f64, tag: &str) -> InequalityVerdict {
    InequalityVerdict::submajorization(name, v, Some(theta), tag)
}

fn run_suite(t: &mut Trial) -> Result<()> {
    let n = t.n();
    let trial = t.descriptor.trial;
    match t.descriptor.suite {
        Suite::BikTheoremSelfadjoint => {
            let a = t.hermitian("a", HERMITIAN_CAP);
            let b = t.psd("b", trial);
            let vs = ineq::bik_theorem_selfadjoint_grid(&a, &b, t.thetas())?;
            t.hold_all(vs, Family::Submajorization);
        }
        Suite::BikTheoremGeneral => {
            let a = t.ginibre("a");
            let b = t.psd("b", trial);
            let vs = ineq::bik_theorem_general_grid(&a, &b, t.thetas())?;
            t.hold_all(vs, Family::Submajorization);
        }
        Suite::CounterexampleTr => {
            let mu = t.rng.random_range(-2.0..2.0);
            let lambda = mu + t.rng.random_range(0.1..3.0);
            t.labels.push(format!("lambda={lambda}"));
            t.labels.push(format!("mu={mu}"));
            for theta in t.config.theta_grid.clone() {
                let r = ineq::counterexample_tr(lambda, mu, theta)?;
                let gap = (r.verdict.margin - r.expected_margin).abs();
                let mut verdict = r.verdict.clone();
                verdict.auxiliary.push(AuxCheck::new(
                    "closed_form_profiles",
                    if r.profiles_match { gap } else { f64::INFINITY },
                    crate::tol::RTOL * (1.0 + r.expected_margin.abs()),
                ));
                // At theta = 0 both sides coincide and the check holds.
                t.push(verdict, Family::Submajorization, theta > 0.0);
            }
        }
        Suite::CounterexamplePointwiseSearch => {
            let seed = t.rng.random::<u64>();
            t.labels.push(format!("search_seed={seed}"));
            let search = ineq::counterexample_pointwise_search(seed, POINTWISE_BUDGET)?;
            t.labels.push(format!("trials_used={}", search.trials_used));
            match search.witness {
                Some(w) => {
                    let tag = digest(&[&w.a, &w.b]);
                    let tol = crate::tol::RTOL * w.right_values[0].max(1.0);
                    let pointwise = InequalityVerdict::measured("pointwise_singular_values", w.excess, tol, &tag);
                    t.push(pointwise, Family::Submajorization, true);
                    t.hold(w.submajorization, Family::Submajorization);
                }
                None => {
                    let missing = InequalityVerdict::measured("pointwise_singular_values", 0.0, 0.0, "");
                    t.push(missing, Family::Submajorization, true);
                }
            }
        }
        Suite::BlockCorollaryI => {
            let a = t.ginibre("a");
            let b0 = t.psd("b0", trial);
            let b1 = t.psd("b1", trial + 1);
            for theta in t.config.theta_grid.clone() {
                let v = ineq::block_corollary_i(&a, &b0, &b1, theta)?;
                t.hold(v, Family::Submajorization);
            }
        }
        Suite::BlockCorollaryIi => {
            let a = if trial.is_multiple_of(2) { t.hermitian("a", HERMITIAN_CAP) } else { t.ginibre("a") };
            let b0 = t.psd("b0", trial);
            let b1 = t.psd("b1", trial + 1);
            let mut thetas = t.config.theta_grid.clone();
            // the sigma2 check only exists at theta = 1/2
            if !thetas.contains(&0.5) {
                thetas.push(0.5);
            }
            for theta in thetas {
                let v = ineq::block_corollary_ii(&a, &b0, &b1, theta)?;
                t.hold(v, Family::Submajorization);
            }
        }
        Suite::HolderNormInterpolation => {
            let a = t.ginibre("a");
            let b0 = t.psd("b0", trial);
            let b1 = t.psd("b1", trial + 1);
            let specs = t.norm_specs();
            for theta in t.config.theta_grid.clone() {
                let vs = ineq::holder_norm_interpolation_multi(&a, &b0, &b1, theta, &specs)?;
                t.hold_all(vs, Family::Norm);
            }
        }
        Suite::SchattenHalfPower => {
            let a = t.hermitian("a", HERMITIAN_CAP);
            let b0 = t.psd("b0", trial);
            let b1 = t.psd("b1", trial + 1);
            for p in t.config.p_grid.clone().into_iter().filter(|p| p.is_finite()) {
                let v = ineq::schatten_half_power(&a, &b0, &b1, p)?;
                t.hold(v, Family::Norm);
            }
        }
        Suite::GoldenThompsonSymmetric => {
            let a = t.hermitian("a", EXP_CAP);
            let b = t.hermitian("b", EXP_CAP);
            let specs = t.norm_specs();
            for theta in t.config.theta_grid.clone() {
                let vs = ineq::golden_thompson_symmetric_multi(&a, &b, theta, &specs)?;
                t.hold_all(vs, Family::Norm);
            }
        }
        Suite::GoldenThompsonExpSum => {
            let a = t.hermitian("a", EXP_CAP);
            let b = t.hermitian("b", EXP_CAP);
            let vs = ineq::golden_thompson_exp_sum_multi(&a, &b, &t.config.p_grid)?;
            t.hold_all(vs, Family::Norm);
        }
        Suite::KyFanDuality => {
            let a = t.ginibre("a");
            let profile = SingularProfile::of_matrix(&a)?;
            let tag = digest(&[&a]);
            for k in 0..=n {
                let value = ky_fan(&profile, k as f64)?;
                let tolerance = 1e-10 * (1.0 + value);
                let certificate = optimal_contraction(&a, k)?;
                let sample_seed = t.rng.random::<u64>();
                let sampled = random_contraction_values(&a, k, DUALITY_SAMPLES, sample_seed)?;
                let best_random = sampled.iter().copied().fold(0.0, f64::max);
                let supremum = certificate.attained.max(best_random);
                let v = InequalityVerdict::measured("ky_fan_duality", (supremum - value).abs(), tolerance, &tag)
                    .with_norm(NormSpec::KyFan(k))
                    .with_aux(vec![
                        AuxCheck::new("random_below_ky_fan", best_random - value, tolerance),
                        AuxCheck::new("certificate_rank", certificate.support_rank.saturating_sub(k) as f64, 0.0),
                    ]);
                t.hold(v, Family::Norm);
            }
        }
        Suite::ThreeLines => {
            let a = t.ginibre("a");
            let b = t.hermitian("b", 1.0);
            let k = t.rng.random_range(1..=n);
            t.labels.push(format!("c=random_contraction(k={k})"));
            let c = crate::duality::random_contraction(&mut t.rng, n, n, k);
            let mut thetas = vec![0.0];
            thetas.extend(t.config.theta_grid.iter().copied().filter(|&x| x > 0.0 && x < 1.0));
            thetas.push(1.0);
            let grid = strip_evaluate(&a, &b, &c, &thetas, &imag_grid(STRIP_YMAX, STRIP_YSTEP))?;
            let report = three_lines_check(&grid)?;
            let bound = grid.bound_check();
            let tag = digest(&[&a, &b, &c]);
            let three = InequalityVerdict::measured(
                "three_lines",
                report.interior_max - report.boundary_max,
                report.tolerance,
                &tag,
            );
            t.hold(three, Family::ThreeLines);
            let bound_tol = crate::tol::RTOL * (1.0 + bound.bound);
            let strip_bound = InequalityVerdict::measured("strip_bound", bound.max_abs - bound.bound, bound_tol, &tag);
            t.hold(strip_bound, Family::Norm);
        }
        Suite::BoundarySubmajorization => {
            let a = t.hermitian("a", HERMITIAN_CAP);
            let g = t.ginibre("g");
            let b = t.hermitian("b", EXP_CAP);
            let (tag, tag_general) = (digest(&[&a, &b]), digest(&[&g, &b]));
            for theta in t.config.theta_grid.clone() {
                let v = boundary_submajorization_bound(&a, &b, theta)?;
                t.hold(submaj_verdict("boundary_submajorization", &v, theta, &tag), Family::Submajorization);
                let v = boundary_submajorization_bound_general(&g, &b, theta)?;
                t.hold(submaj_verdict("boundary_submajorization_general", &v, theta, &tag_general), Family::Submajorization);
            }
        }
        Suite::SpectralIdentity => {
            let a = t.ginibre("a");
            let b = t.psd("b", trial);
            let tag = digest(&[&a, &b]);
            let tol = default_spectral_tolerance(&a, &b)?;
            let m = lambda_ab_equals_ba(&a, &b, tol)?;
            let v = InequalityVerdict::measured("lambda_ab_ba", m.report.max_mismatch, m.report.tolerance, &tag);
            t.hold(v, Family::Spectral);
            for theta in t.config.theta_grid.clone() {
                let tr = trace_theta_identity(&a, &b, theta)?;
                let margin = tr.deviations[0].max(tr.deviations[1]);
                let v = InequalityVerdict::measured("trace_theta_identity", margin, tr.tolerance, &tag).with_theta(theta);
                t.hold(v, Family::Spectral);
            }
        }
    }
    Ok(())
}

/// Runs one trial from its descriptor, using the grids of `config`.
pub fn run_trial(config: &CampaignConfig, descriptor: TrialDescriptor) -> Result<TrialReport> {
    let start = Instant::now();
    let key = stream_seed(descriptor.seed, descriptor.suite.name(), descriptor.size, descriptor.trial);
    let mut trial =
        Trial { config, descriptor, rng: rng_from_seed(key), labels: Vec::new(), records: Vec::new() };
    run_suite(&mut trial)?;
    Ok(TrialReport {
        descriptor: descriptor.to_string(),
        suite: descriptor.suite.name().to_string(),
        seed: descriptor.seed,
        size: descriptor.size,
        trial: descriptor.trial,
        generators: trial.labels,
        verdicts: trial.records,
        wall_time_ms: Some(start.elapsed().as_secs_f64() * 1e3),
    })
}

fn descriptors(config: &CampaignConfig, suites: &[Suite]) -> Vec<TrialDescriptor> {
    let mut out = Vec::new();
    for &suite in suites {
        let sizes: Vec<usize> = if suite.size_independent() { vec![2] } else { config.sizes.clone() };
        // the pointwise search spends its whole budget inside one trial
        let trials = if suite == Suite::CounterexamplePointwiseSearch { 1 } else { config.trials_per_size };
        for &size in &sizes {
            for trial in 0..trials {
                out.push(TrialDescriptor { suite, seed: config.seed, size, trial });
            }
        }
    }
    out
}

/// Runs every configured suite. Unknown suites and invalid grids are
/// rejected before any trial starts. Trials run in parallel; the report
/// is sorted by descriptor.
pub fn run_campaign(config: &CampaignConfig) -> Result<CampaignReport> {
    let suites = config.validate()?;
    let mut suites_sorted = suites.clone();
    suites_sorted.sort_by_key(|s| s.name());
    suites_sorted.dedup();
    let jobs = descriptors(config, &suites_sorted);
    let run = || jobs.par_iter().map(|&d| run_trial(config, d)).collect::<Result<Vec<_>>>();
    let mut trials = match config.threads {
        Some(threads) => rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::Invalid(format!("thread pool: {e}")))?
            .install(run)?,
        None => run()?,
    };
    trials.sort_by(|x, y| x.descriptor.cmp(&y.descriptor));
    let summary = summarize(&suites_sorted, &trials);
    Ok(CampaignReport { schema_version: SCHEMA_VERSION, config: config.clone(), summary, trials })
}

/// Re-runs the trial named by `descriptor` as a single-trial report.
pub fn replay(config: &CampaignConfig, descriptor: &str) -> Result<CampaignReport> {
    config.validate()?;
    let d: TrialDescriptor = descriptor.parse()?;
    let trials = vec![run_trial(config, d)?];
    let mut shown = config.clone();
    shown.seed = d.seed;
    shown.suites = vec![d.suite.name().to_string()];
    let summary = summarize(&[d.suite], &trials);
    Ok(CampaignReport { schema_version: SCHEMA_VERSION, config: shown, summary, trials })
}
