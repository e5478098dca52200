//! Property suites beyond the acceptance gate: structural lemmas on random
//! instances, oracle/data agreement, statistical calibration of the engine,
//! and simulation-harness self-checks.

mod support;

use std::collections::BTreeMap;

use proptest::prelude::*;

use ucheck::engine::{
    evaluate_conditions, exogenous_falsification, negative_control_check, pearl_stability_test,
    run_test, FalsificationVerdict, StabilityVerdict, TestConfig, TestVerdict,
};
use ucheck::graph::{
    classify_biasing_paths, is_valid_backdoor_set, random_assumption_dag, certification_oracle, Dag,
    OracleVerdict, PathForm,
};
use ucheck::sim::{generate_replicate, replicate_outcomes, run_scenarios, ScenarioSpec};
use ucheck::stats::{fit_ols, standardize, Dataset, RngStream};

/// Enumerates simple paths between two nodes over the skeleton; test-side
/// reimplementation kept independent of the library's path machinery.
fn simple_paths(dag: &Dag, s: usize, t: usize) -> Vec<Vec<usize>> {
    fn walk(
        dag: &Dag,
        t: usize,
        path: &mut Vec<usize>,
        on_path: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let v = *path.last().unwrap();
        if v == t {
            out.push(path.clone());
            return;
        }
        let mut neighbors: Vec<usize> = dag.parents_of(v).to_vec();
        neighbors.extend_from_slice(dag.children_of(v));
        for w in neighbors {
            if !on_path[w] {
                on_path[w] = true;
                path.push(w);
                walk(dag, t, path, on_path, out);
                path.pop();
                on_path[w] = false;
            }
        }
    }
    let mut out = Vec::new();
    let mut on_path = vec![false; dag.n()];
    on_path[s] = true;
    walk(dag, t, &mut vec![s], &mut on_path, &mut out);
    out
}

fn descendants_include(dag: &Dag, from: usize, targets: &[usize]) -> bool {
    let mut stack = vec![from];
    let mut seen = vec![false; dag.n()];
    seen[from] = true;
    while let Some(v) = stack.pop() {
        if targets.contains(&v) {
            return true;
        }
        for &c in dag.children_of(v) {
            if !seen[c] {
                seen[c] = true;
                stack.push(c);
            }
        }
    }
    false
}

/// Standard blocking rules, reimplemented for the tests.
fn path_open(dag: &Dag, path: &[usize], z: &[usize]) -> bool {
    for w in path.windows(3) {
        let (prev, v, next) = (w[0], w[1], w[2]);
        let collider = dag.has_edge(prev, v) && dag.has_edge(next, v);
        if collider {
            if !descendants_include(dag, v, z) {
                return false;
            }
        } else if z.contains(&v) {
            return false;
        }
    }
    true
}

#[test]
fn open_exposure_hooks_point_into_the_exposure() {
    // Dependence of an eligible covariate on the exposure can only travel
    // along paths whose terminal edge enters the exposure.
    let mut checked = 0usize;
    for i in 0..1000u64 {
        let mut rng = RngStream::new(11_000, i);
        let inst = random_assumption_dag(&mut rng, 4, 2, 0.3).unwrap();
        let cands: Vec<&str> = inst.candidates.iter().map(String::as_str).collect();
        let oracle = certification_oracle(&inst.dag, "X", "Y", &cands).unwrap();
        let x = inst.dag.node_id("X").unwrap();
        for e in &oracle.eligible {
            let z = inst.dag.node_id(&e.name).unwrap();
            let reduced: Vec<usize> = e
                .reduced_set
                .iter()
                .map(|n| inst.dag.node_id(n).unwrap())
                .collect();
            for path in simple_paths(&inst.dag, z, x) {
                if path_open(&inst.dag, &path, &reduced) {
                    checked += 1;
                    let last_interior = path[path.len() - 2];
                    assert!(
                        inst.dag.has_edge(last_interior, x),
                        "open hook leaves the exposure: {path:?} in\n{}",
                        inst.dag
                    );
                }
            }
        }
    }
    assert!(checked > 1000, "too few open hooks exercised: {checked}");
}

#[test]
fn conditioned_exposure_is_always_a_collider_on_open_paths() {
    let mut checked = 0usize;
    for i in 0..1000u64 {
        let mut rng = RngStream::new(12_000, i);
        let inst = random_assumption_dag(&mut rng, 4, 2, 0.3).unwrap();
        let x = inst.dag.node_id("X").unwrap();
        let y = inst.dag.node_id("Y").unwrap();
        let cands: Vec<usize> = inst
            .candidates
            .iter()
            .map(|n| inst.dag.node_id(n).unwrap())
            .collect();
        for (j, &z) in cands.iter().enumerate() {
            let mut cond: Vec<usize> = cands
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != j)
                .map(|(_, &v)| v)
                .collect();
            cond.push(x);
            for path in simple_paths(&inst.dag, z, y) {
                if let Some(pos) = path.iter().position(|&v| v == x) {
                    if pos > 0 && pos + 1 < path.len() && path_open(&inst.dag, &path, &cond) {
                        checked += 1;
                        assert!(
                            inst.dag.has_edge(path[pos - 1], x)
                                && inst.dag.has_edge(path[pos + 1], x),
                            "exposure open as a non-collider on {path:?}"
                        );
                    }
                }
            }
        }
    }
    assert!(checked > 100, "too few paths exercised: {checked}");
}

#[test]
fn biasing_paths_classify_for_every_eligible_covariate() {
    let mut records_seen = 0usize;
    for i in 0..2000u64 {
        let mut rng = RngStream::new(13_000, i);
        let inst = random_assumption_dag(&mut rng, 4, 2, 0.3).unwrap();
        let cands: Vec<&str> = inst.candidates.iter().map(String::as_str).collect();
        let oracle = certification_oracle(&inst.dag, "X", "Y", &cands).unwrap();
        for e in &oracle.eligible {
            let reduced: Vec<&str> = e.reduced_set.iter().map(String::as_str).collect();
            let records =
                classify_biasing_paths(&inst.dag, "X", "Y", &e.name, &reduced).unwrap();
            for r in &records {
                records_seen += 1;
                assert_ne!(
                    r.form,
                    PathForm::Unclassified,
                    "unclassified open path {:?} for {} in\n{}",
                    r.nodes,
                    e.name,
                    inst.dag
                );
            }
        }
    }
    assert!(records_seen > 1000, "too few records: {records_seen}");
}

#[test]
fn certified_sets_really_satisfy_the_backdoor_criterion() {
    let mut confirmed = 0usize;
    for i in 0..2000u64 {
        let mut rng = RngStream::new(14_000, i);
        let inst = random_assumption_dag(&mut rng, 4, 2, 0.35).unwrap();
        let cands: Vec<&str> = inst.candidates.iter().map(String::as_str).collect();
        let oracle = certification_oracle(&inst.dag, "X", "Y", &cands).unwrap();
        if oracle.verdict != OracleVerdict::ValidConfirmed {
            continue;
        }
        confirmed += 1;
        assert!(is_valid_backdoor_set(&inst.dag, "X", "Y", &cands).unwrap());
        for e in oracle.eligible.iter().filter(|e| e.is_witness) {
            let reduced: Vec<&str> = e.reduced_set.iter().map(String::as_str).collect();
            assert!(
                is_valid_backdoor_set(&inst.dag, "X", "Y", &reduced).unwrap(),
                "witness {} left an invalid reduced set in\n{}",
                e.name,
                inst.dag
            );
        }
    }
    assert!(confirmed > 200, "too few certified instances: {confirmed}");
}

#[test]
fn data_verdicts_track_the_oracle_on_strong_linear_systems() {
    let mut matches = 0usize;
    let total = 500u64;
    for i in 0..total {
        let mut rng = RngStream::new(5005, i);
        let inst = random_assumption_dag(&mut rng, 3, 1, 0.5).unwrap();
        let cands: Vec<&str> = inst.candidates.iter().map(String::as_str).collect();
        let oracle = certification_oracle(&inst.dag, "X", "Y", &cands).unwrap();
        let data = support::simulate_linear_sem(&inst.dag, &mut rng, 50_000, 0.3);
        let report = run_test(&data, "X", "Y", &cands, &TestConfig::default()).unwrap();
        let agreed = matches!(
            (oracle.verdict, report.verdict),
            (OracleVerdict::ValidConfirmed, TestVerdict::ValidAdjustmentSet)
                | (OracleVerdict::InvalidOrMinimal, TestVerdict::InvalidOrMinimal)
                | (OracleVerdict::NoEligibleCovariate, TestVerdict::NoEligibleCovariate)
        );
        if agreed {
            matches += 1;
        }
    }
    let rate = matches as f64 / total as f64;
    assert!(
        rate >= 0.95,
        "oracle/data agreement {rate:.3} below 0.95 ({matches}/{total})"
    );
}

#[test]
fn condition_two_is_calibrated_under_the_null() {
    // A = {confounder, redundant exposure cause}: the redundant covariate is
    // eligible and truly separated from the outcome, so its outcome p-value
    // rejects at the nominal rate.
    let n = 5_000;
    let mut rejections = 0usize;
    let mut eligible = 0usize;
    let reps = 2_000u64;
    for i in 0..reps {
        let mut rng = RngStream::new(15_000, i);
        let c: Vec<f64> = (0..n).map(|_| rng.standard_normal()).collect();
        let r: Vec<f64> = (0..n).map(|_| rng.standard_normal()).collect();
        let x: Vec<f64> = (0..n)
            .map(|j| 0.6 * c[j] + 0.6 * r[j] + rng.standard_normal())
            .collect();
        let y: Vec<f64> = (0..n)
            .map(|j| 0.4 * x[j] + 0.6 * c[j] + rng.standard_normal())
            .collect();
        let data = Dataset::new(vec![
            ("x".into(), x),
            ("y".into(), y),
            ("c".into(), c),
            ("r".into(), r),
        ])
        .unwrap();
        let report = run_test(&data, "x", "y", &["c", "r"], &TestConfig::default()).unwrap();
        let rec = report
            .records
            .iter()
            .find(|rec| rec.covariate == "r")
            .unwrap();
        if rec.eligible {
            eligible += 1;
            if rec.p_outcome < 0.05 {
                rejections += 1;
            }
        }
    }
    let rate = rejections as f64 / eligible as f64;
    assert!(
        (0.03..=0.07).contains(&rate),
        "type-I rate of condition (ii) is {rate:.4} over {eligible} eligible replicates"
    );
}

#[test]
fn minimal_confounder_systems_yield_invalid_or_minimal() {
    // Table-style frequency: the three-confounder design at n = 20,000
    // almost always leaves every covariate outcome-associated.
    let spec = ScenarioSpec::new(2, 20_000, 1, 0);
    let mut hits = 0usize;
    let reps = 200u64;
    for i in 0..reps {
        let mut rng = RngStream::new(16_000, i);
        let (data, _) = generate_replicate(&spec, &mut rng).unwrap();
        let report =
            run_test(&data, "x", "y", &["z1", "z2", "z3"], &TestConfig::default()).unwrap();
        if report.verdict == TestVerdict::InvalidOrMinimal {
            hits += 1;
        }
    }
    assert!(
        hits as f64 / reps as f64 >= 0.90,
        "InvalidOrMinimal in only {hits}/{reps} replicates"
    );
}

#[test]
fn redundant_cause_systems_certify_validity() {
    // Linear system on the no-confounder fixture with strong effects: the
    // redundant covariate Z certifies {Z, C} in nearly every replicate.
    let dag = support::fixture_a_without_confounder();
    let mut hits = 0usize;
    let reps = 200u64;
    for i in 0..reps {
        let mut rng = RngStream::new(17_000, i);
        let data = support::simulate_linear_sem(&dag, &mut rng, 20_000, 0.5);
        let report = run_test(&data, "X", "Y", &["Z", "C"], &TestConfig::default()).unwrap();
        if report.verdict == TestVerdict::ValidAdjustmentSet
            && report.witnesses.contains(&"Z".to_string())
        {
            hits += 1;
        }
    }
    assert!(
        hits as f64 / reps as f64 >= 0.90,
        "certification with witness Z in only {hits}/{reps} replicates"
    );
}

#[test]
fn unconnected_covariates_leave_the_test_silent_at_the_nominal_rate() {
    let n = 2_000;
    let mut silent = 0usize;
    let reps = 600u64;
    for i in 0..reps {
        let mut rng = RngStream::new(18_000, i);
        let cols: Vec<Vec<f64>> = (0..5)
            .map(|_| (0..n).map(|_| rng.standard_normal()).collect())
            .collect();
        let x = cols[3].clone();
        let y: Vec<f64> = (0..n)
            .map(|j| 0.4 * x[j] + rng.standard_normal())
            .collect();
        let data = Dataset::new(vec![
            ("a".into(), cols[0].clone()),
            ("b".into(), cols[1].clone()),
            ("c".into(), cols[2].clone()),
            ("x".into(), x),
            ("y".into(), y),
        ])
        .unwrap();
        let report = run_test(&data, "x", "y", &["a", "b", "c"], &TestConfig::default()).unwrap();
        if report.verdict == TestVerdict::NoEligibleCovariate {
            silent += 1;
        }
    }
    let rate = silent as f64 / reps as f64;
    let nominal = 0.95_f64.powi(3);
    assert!(
        (rate - nominal).abs() < 0.05,
        "silence rate {rate:.3} vs nominal {nominal:.3}"
    );
}

#[test]
fn exogenous_falsification_detects_and_respects_the_null() {
    let n = 20_000;
    let reps = 200u64;
    let mut invalid_hits = 0usize;
    for i in 0..reps {
        let mut rng = RngStream::new(19_000, i);
        let z: Vec<f64> = (0..n).map(|_| rng.standard_normal()).collect();
        let u: Vec<f64> = (0..n).map(|_| rng.standard_normal()).collect();
        let x: Vec<f64> = (0..n)
            .map(|j| 0.6 * z[j] + 0.6 * u[j] + rng.standard_normal())
            .collect();
        let y: Vec<f64> = (0..n)
            .map(|j| 0.6 * u[j] + rng.standard_normal())
            .collect();
        let data = Dataset::new(vec![
            ("x".into(), x),
            ("y".into(), y),
            ("z".into(), z),
        ])
        .unwrap();
        let report =
            exogenous_falsification(&data, "x", "y", "z", &[], &TestConfig::default()).unwrap();
        if report.verdict == FalsificationVerdict::AdjustmentSetInvalid {
            invalid_hits += 1;
        }
    }
    assert!(
        invalid_hits as f64 / reps as f64 >= 0.90,
        "falsification fired in only {invalid_hits}/{reps} confounded replicates"
    );

    // with the confounder removed, the test is a type-I draw at alpha_indep
    let reps = 400u64;
    let mut not_falsified = 0usize;
    for i in 0..reps {
        let mut rng = RngStream::new(20_000, i);
        let z: Vec<f64> = (0..n).map(|_| rng.standard_normal()).collect();
        let x: Vec<f64> = (0..n)
            .map(|j| 0.6 * z[j] + rng.standard_normal())
            .collect();
        let y: Vec<f64> = (0..n)
            .map(|j| 0.4 * x[j] + rng.standard_normal())
            .collect();
        let data = Dataset::new(vec![
            ("x".into(), x),
            ("y".into(), y),
            ("z".into(), z),
        ])
        .unwrap();
        let report =
            exogenous_falsification(&data, "x", "y", "z", &[], &TestConfig::default()).unwrap();
        if report.verdict == FalsificationVerdict::NotFalsified {
            not_falsified += 1;
        }
    }
    let rate = not_falsified as f64 / reps as f64;
    assert!(
        (0.92..=0.98).contains(&rate),
        "NotFalsified rate {rate:.3} away from the nominal 0.95"
    );
}

#[test]
fn stability_test_flags_confounded_instruments_routinely() {
    let n = 20_000;
    let reps = 200u64;
    let mut hits = 0usize;
    for i in 0..reps {
        let mut rng = RngStream::new(21_000, i);
        let m: Vec<f64> = (0..n).map(|_| rng.standard_normal()).collect();
        let u: Vec<f64> = (0..n).map(|_| rng.standard_normal()).collect();
        let x: Vec<f64> = (0..n)
            .map(|j| 0.6 * m[j] + 0.6 * u[j] + rng.standard_normal())
            .collect();
        let y: Vec<f64> = (0..n)
            .map(|j| 0.6 * u[j] + rng.standard_normal())
            .collect();
        let data = Dataset::new(vec![
            ("x".into(), x),
            ("y".into(), y),
            ("m".into(), m),
        ])
        .unwrap();
        let report =
            pearl_stability_test(&data, "x", "y", "m", &TestConfig::default(), true).unwrap();
        if report.verdict == StabilityVerdict::NotStablyUnconfounded {
            hits += 1;
        }
    }
    assert!(
        hits as f64 / reps as f64 >= 0.90,
        "stability test fired in only {hits}/{reps} replicates"
    );
}

#[test]
fn negative_control_contrast_shrinks_under_adjustment() {
    let n = 10_000;
    let reps = 200u64;
    let mut shrunk = 0usize;
    for i in 0..reps {
        let mut rng = RngStream::new(22_000, i);
        let a: Vec<f64> = (0..n).map(|_| rng.standard_normal()).collect();
        let x: Vec<f64> = (0..n)
            .map(|j| 0.7 * a[j] + rng.standard_normal())
            .collect();
        let nco: Vec<f64> = (0..n)
            .map(|j| 0.7 * a[j] + rng.standard_normal())
            .collect();
        let data = Dataset::new(vec![
            ("x".into(), x),
            ("nco".into(), nco),
            ("a".into(), a),
        ])
        .unwrap();
        let report =
            negative_control_check(&data, "x", "nco", &["a"], &TestConfig::default()).unwrap();
        if report.adjusted.coefficient.abs() < report.unadjusted.coefficient.abs() {
            shrunk += 1;
        }
    }
    assert!(
        shrunk as f64 / reps as f64 >= 0.90,
        "adjustment shrank the contrast in only {shrunk}/{reps} replicates"
    );
}

#[test]
fn negative_control_intervals_cover_zero_under_the_null() {
    // a control outcome unrelated to anything: both contrasts are null and
    // the intervals cover zero at the confidence level
    let n = 2_000;
    let reps = 300u64;
    let mut covered_unadj = 0usize;
    let mut covered_adj = 0usize;
    for i in 0..reps {
        let mut rng = RngStream::new(23_000, i);
        let a: Vec<f64> = (0..n).map(|_| rng.standard_normal()).collect();
        let x: Vec<f64> = (0..n)
            .map(|j| 0.5 * a[j] + rng.standard_normal())
            .collect();
        let nco: Vec<f64> = (0..n).map(|_| rng.standard_normal()).collect();
        let data = Dataset::new(vec![
            ("x".into(), x),
            ("nco".into(), nco),
            ("a".into(), a),
        ])
        .unwrap();
        let report =
            negative_control_check(&data, "x", "nco", &["a"], &TestConfig::default()).unwrap();
        if report.unadjusted.ci_lower <= 0.0 && report.unadjusted.ci_upper >= 0.0 {
            covered_unadj += 1;
        }
        if report.adjusted.ci_lower <= 0.0 && report.adjusted.ci_upper >= 0.0 {
            covered_adj += 1;
        }
    }
    for covered in [covered_unadj, covered_adj] {
        let rate = covered as f64 / reps as f64;
        assert!(
            (0.90..=0.99).contains(&rate),
            "null coverage {rate:.3} away from the nominal 0.95"
        );
    }
}

#[test]
fn stored_replicates_survive_post_hoc_reverification() {
    // regenerate a 1% sample of a run and confirm the acceptance gate and
    // the stored p-values
    let spec = ScenarioSpec::new(1, 1_000, 400, 31);
    let table = run_scenarios(&spec).unwrap();
    let total: usize = table.strata.iter().map(|s| s.stratum_size).sum();
    assert_eq!(total, spec.n_iter);
    let outcomes = replicate_outcomes(&spec, 0..spec.n_iter as u64).unwrap();
    for (i, outcome) in outcomes.iter().enumerate().step_by(100) {
        assert!(outcome
            .p_exposure_models
            .iter()
            .flatten()
            .all(|&p| p < spec.alpha));
        let mut rng = RngStream::new(spec.seed, i as u64);
        let (data, regenerated) = generate_replicate(&spec, &mut rng).unwrap();
        assert_eq!(outcome, &regenerated);
        // re-fit the full exposure model from the regenerated data
        let z1 = data.column("z1").unwrap();
        let z2 = data.column("z2").unwrap();
        let z3 = data.column("z3").unwrap();
        let design: [(&str, &[f64]); 3] = [("z1", z1), ("z2", z2), ("z3", z3)];
        let fit = fit_ols(&design, data.column("x").unwrap(), true).unwrap();
        for (name, &stored) in ["z1", "z2", "z3"]
            .iter()
            .zip(outcome.p_exposure_models[2].iter())
        {
            assert!((fit.p_value(name).unwrap() - stored).abs() < 1e-12);
        }
    }
}

proptest! {
    #[test]
    fn standardize_is_affine_invariant_and_idempotent(
        raw in proptest::collection::vec(-1e3_f64..1e3, 5..40),
        scale in 0.05_f64..20.0,
        shift in -100.0_f64..100.0,
    ) {
        prop_assume!(ucheck::stats::sample_sd(&raw) > 1e-9);
        let base = standardize(&raw).unwrap();
        let moved: Vec<f64> = raw.iter().map(|v| scale * v + shift).collect();
        let same = standardize(&moved).unwrap();
        for (a, b) in base.iter().zip(&same) {
            prop_assert!((a - b).abs() < 1e-9);
        }
        let twice = standardize(&base).unwrap();
        for (a, b) in base.iter().zip(&twice) {
            prop_assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn widening_the_independence_threshold_only_retracts_certification(
        ps in proptest::collection::vec((0.0_f64..1.0, 0.0_f64..1.0), 1..6),
        alpha_lo in 0.01_f64..0.5,
        bump in 0.01_f64..0.4,
    ) {
        let p_x: BTreeMap<String, f64> =
            ps.iter().enumerate().map(|(i, (px, _))| (format!("v{i}"), *px)).collect();
        let p_y: BTreeMap<String, f64> =
            ps.iter().enumerate().map(|(i, (_, py))| (format!("v{i}"), *py)).collect();
        let loose = TestConfig { alpha_dep: 0.05, alpha_indep: alpha_lo, ci_level: 0.95 };
        let strict = TestConfig { alpha_indep: (alpha_lo + bump).min(0.99), ..loose };
        let (v1, w1) = evaluate_conditions(&p_x, &p_y, &loose).unwrap();
        let (v2, w2) = evaluate_conditions(&p_x, &p_y, &strict).unwrap();
        // witnesses can only drop out
        prop_assert!(w2.iter().all(|w| w1.contains(w)));
        // the only verdict flip is certification -> inconclusive
        if v1 != v2 {
            prop_assert_eq!(v1, TestVerdict::ValidAdjustmentSet);
            prop_assert_eq!(v2, TestVerdict::InvalidOrMinimal);
        }
    }

    #[test]
    fn raising_the_dependence_threshold_only_grows_eligibility(
        ps in proptest::collection::vec((0.0_f64..1.0, 0.0_f64..1.0), 1..6),
        alpha_lo in 0.01_f64..0.5,
        bump in 0.01_f64..0.4,
    ) {
        let p_x: BTreeMap<String, f64> =
            ps.iter().enumerate().map(|(i, (px, _))| (format!("v{i}"), *px)).collect();
        let p_y: BTreeMap<String, f64> =
            ps.iter().enumerate().map(|(i, (_, py))| (format!("v{i}"), *py)).collect();
        let narrow = TestConfig { alpha_dep: alpha_lo, alpha_indep: 0.05, ci_level: 0.95 };
        let wide = TestConfig { alpha_dep: (alpha_lo + bump).min(0.99), ..narrow };
        let eligible = |cfg: &TestConfig| -> Vec<String> {
            p_x.iter()
                .filter(|(_, &p)| p < cfg.alpha_dep)
                .map(|(k, _)| k.clone())
                .collect()
        };
        let e1 = eligible(&narrow);
        let e2 = eligible(&wide);
        prop_assert!(e1.iter().all(|e| e2.contains(e)));
        // and witnesses under the narrow threshold survive the wide one
        let (_, w1) = evaluate_conditions(&p_x, &p_y, &narrow).unwrap();
        let (_, w2) = evaluate_conditions(&p_x, &p_y, &wide).unwrap();
        prop_assert!(w1.iter().all(|w| w2.contains(w)));
    }
}
