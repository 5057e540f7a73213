use submaj::harness::{replay, run_campaign, CampaignConfig, Suite, ToleranceOverrides};
use submaj::Error;

fn small(suites: &[Suite]) -> CampaignConfig {
    CampaignConfig { sizes: vec![2, 3, 5], trials_per_size: 6, ..Default::default() }.with_suites(suites)
}

#[test]
fn empty_suite_list_gives_empty_passing_report() {
    let report = run_campaign(&small(&[])).unwrap();
    assert!(report.trials.is_empty());
    assert!(report.passed());
    assert_eq!(report.summary.total_verdicts, 0);
}

#[test]
fn unknown_suite_is_rejected_up_front() {
    let mut config = small(&[Suite::BikTheoremGeneral]);
    config.suites.push("no_such_suite".into());
    assert!(matches!(run_campaign(&config), Err(Error::UnknownSuite(s)) if s == "no_such_suite"));
}

#[test]
fn counterexample_suite_reports_expected_failures() {
    let report = run_campaign(&small(&[Suite::CounterexampleTr])).unwrap();
    let s = &report.summary.suites[0];
    assert!(s.passed);
    assert_eq!(s.violations, 0);
    // size independent: one n = 2 trial per trial index, one verdict per theta
    assert_eq!(s.trials, 6);
    assert_eq!(s.expected_failures, 6 * 9);
    for t in &report.trials {
        assert_eq!(t.size, 2);
        assert!(t.verdicts.iter().all(|r| r.expected_violation && !r.verdict.holds && r.passed));
    }
}

#[test]
fn counterexample_at_theta_zero_is_expected_to_hold() {
    let mut config = small(&[Suite::CounterexampleTr]);
    config.theta_grid = vec![0.0, 0.5];
    let report = run_campaign(&config).unwrap();
    assert!(report.passed());
    for t in &report.trials {
        assert!(!t.verdicts[0].expected_violation && t.verdicts[0].verdict.holds);
        assert!(t.verdicts[1].expected_violation && !t.verdicts[1].verdict.holds);
    }
}

#[test]
fn pointwise_search_passes_with_witness() {
    let report = run_campaign(&small(&[Suite::CounterexamplePointwiseSearch])).unwrap();
    assert!(report.passed());
    let t = &report.trials[0];
    assert_eq!(t.verdicts.len(), 2);
    assert!(t.verdicts[0].expected_violation && !t.verdicts[0].verdict.holds);
    assert!(!t.verdicts[1].expected_violation && t.verdicts[1].verdict.holds);
}

#[test]
fn every_suite_passes_a_small_campaign() {
    let report = run_campaign(&small(&Suite::ALL)).unwrap();
    assert!(report.passed(), "{}", report.summary_text());
    assert_eq!(report.summary.suites.len(), Suite::ALL.len());
    for t in &report.trials {
        for r in &t.verdicts {
            assert_eq!(r.verdict.holds, r.verdict.margin <= r.verdict.tolerance, "{}", t.descriptor);
        }
    }
}

#[test]
fn reports_are_sorted_and_thread_independent() {
    let mut config = small(&Suite::ALL);
    config.threads = Some(1);
    let one = run_campaign(&config).unwrap();
    config.threads = Some(3);
    let three = run_campaign(&config).unwrap();
    assert_eq!(one.to_json(false), three.to_json(false));
    let names: Vec<&str> = one.trials.iter().map(|t| t.descriptor.as_str()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    assert!(!one.to_json(false).contains("wall_time_ms"));
    assert!(one.to_json(true).contains("wall_time_ms"));
    assert!(one.to_json(false).contains("\"schema_version\": 1"));
}

#[test]
fn replay_reproduces_a_trial() {
    let config = small(&[Suite::BikTheoremGeneral, Suite::SpectralIdentity]);
    let report = run_campaign(&config).unwrap();
    for t in report.trials.iter().step_by(5) {
        let again = replay(&config, &t.descriptor).unwrap();
        assert_eq!(again.trials.len(), 1);
        let mut r = again.trials[0].clone();
        r.wall_time_ms = t.wall_time_ms;
        assert_eq!(&r, t);
    }
    assert!(replay(&config, "bik_theorem_general/seed=x").is_err());
}

#[test]
fn seeds_change_inputs() {
    let a = run_campaign(&small(&[Suite::BikTheoremSelfadjoint])).unwrap();
    let mut other = small(&[Suite::BikTheoremSelfadjoint]);
    other.seed = 1;
    let b = run_campaign(&other).unwrap();
    assert_ne!(a.trials[0].verdicts[0].verdict.inputs_digest, b.trials[0].verdicts[0].verdict.inputs_digest);
}

#[test]
fn tolerance_override_rejudges_verdicts() {
    let mut config = small(&[Suite::BikTheoremSelfadjoint]);
    // a negative margin tolerance would be invalid; zero keeps every strict inequality passing
    config.tolerances = ToleranceOverrides { submajorization: Some(0.0), ..Default::default() };
    let report = run_campaign(&config).unwrap();
    for t in &report.trials {
        for r in &t.verdicts {
            assert_eq!(r.verdict.tolerance, 0.0);
            assert_eq!(r.verdict.holds, r.verdict.margin <= 0.0);
        }
    }
    config.tolerances.norm = Some(-1.0);
    assert!(run_campaign(&config).is_err());
}

#[test]
fn csv_has_one_row_per_verdict() {
    let report = run_campaign(&small(&[Suite::SchattenHalfPower])).unwrap();
    let csv = report.to_csv();
    assert_eq!(csv.lines().count(), 1 + report.summary.total_verdicts);
    assert!(csv.starts_with("descriptor,name,theta,norm,holds,margin"));
}
