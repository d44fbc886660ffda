//! End-to-end behavior of the falsification sweep: config parsing,
//! violation replay, prefix stability of the sample stream, and error
//! handling for degenerate configs.

use hhverify_core::{evaluate_bound, sweep, Error, Ranges, Status, SweepSpec, TestFunction};

#[test]
fn minimal_config_parses_with_defaults() {
    let spec: SweepSpec = serde_json::from_str(r#"{"theorem_id":"thm3.1","samples":4}"#).unwrap();
    assert_eq!(spec.theorem_id, "thm3.1");
    assert_eq!(spec.samples, 4);
    assert_eq!(spec.seed, 0);
    assert_eq!(spec.n_set, vec![2]);
    assert!(!spec.check_hypothesis);
    assert!(!spec.fn_set.is_empty());
    let report = sweep(&spec).unwrap();
    assert_eq!(report.rows.len(), 4);
}

#[test]
fn unknown_config_keys_are_rejected() {
    let err = serde_json::from_str::<SweepSpec>(r#"{"theorem_id":"thm3.1","surprise":1}"#)
        .unwrap_err()
        .to_string();
    assert!(err.contains("surprise"), "unhelpful error: {err}");
}

#[test]
fn ranges_parse_as_two_element_arrays() {
    let spec: SweepSpec = serde_json::from_str(
        r#"{
            "theorem_id": "thm1.2",
            "samples": 8,
            "fn_set": ["power:2"],
            "ranges": {"a": [0.0, 1.0], "b": [2.0, 4.0], "lambda": [0.8, 1.0]}
        }"#,
    )
    .unwrap();
    assert_eq!(spec.ranges.a, Some([0.0, 1.0]));
    assert_eq!(spec.ranges.lambda, Some([0.8, 1.0]));
    assert_eq!(spec.ranges.p, None);
}

// Every reported violation must replay to the same margin when its
// parameters are re-evaluated from scratch.
#[test]
fn violations_replay_exactly() {
    let mut spec = SweepSpec::new("thm1.2", 256, 11);
    spec.fn_set = vec!["power:2".into(), "exp".into()];
    spec.ranges = Ranges {
        a: Some([0.1, 1.0]),
        b: Some([2.0, 4.0]),
        lambda: Some([0.8, 1.0]),
        ..Ranges::default()
    };
    let report = sweep(&spec).unwrap();
    assert!(
        !report.violations.is_empty(),
        "expected the high-weight region to produce violations"
    );
    for v in &report.violations {
        let f: TestFunction = v.fn_spec.parse().unwrap();
        let params = v.params();
        let again = evaluate_bound(v.theorem_id, &f, &params, report.tol, None).unwrap();
        assert_eq!(again.status, Status::Violated, "index {}", v.index);
        assert!(
            (again.margin - v.margin).abs() <= 1e-12 * (1.0 + v.margin.abs()),
            "index {}: recorded {} replayed {}",
            v.index,
            v.margin,
            again.margin
        );
    }
}

// Growing the sample count only appends: the first k samples, and hence
// any violations among them, are unchanged.
#[test]
fn violation_indices_are_prefix_stable() {
    let mut small = SweepSpec::new("thm1.2", 64, 11);
    small.fn_set = vec!["power:2".into()];
    small.ranges = Ranges {
        a: Some([0.1, 1.0]),
        b: Some([2.0, 4.0]),
        lambda: Some([0.8, 1.0]),
        ..Ranges::default()
    };
    let mut large = small.clone();
    large.samples = 192;

    let small_report = sweep(&small).unwrap();
    let large_report = sweep(&large).unwrap();
    let small_indices: Vec<u64> = small_report.violations.iter().map(|v| v.index).collect();
    let large_prefix: Vec<u64> = large_report
        .violations
        .iter()
        .map(|v| v.index)
        .filter(|&i| i < 64)
        .collect();
    assert_eq!(small_indices, large_prefix);
}

#[test]
fn empty_fn_set_is_rejected() {
    let mut spec = SweepSpec::new("thm3.1", 4, 0);
    spec.fn_set.clear();
    let err = sweep(&spec).unwrap_err();
    assert!(matches!(err, Error::Param(_)), "got {err:?}");
}

#[test]
fn zero_samples_is_rejected() {
    let spec = SweepSpec::new("thm3.1", 0, 0);
    assert!(matches!(sweep(&spec), Err(Error::EmptySweep)));
}

// A hypothesis-checked sweep never counts hypothesis failures as
// violations, and every confirmed violation carries the confirm grid.
#[test]
fn hypothesis_failures_are_not_violations() {
    let mut spec = SweepSpec::new("thm3.1", 128, 3);
    spec.check_hypothesis = true;
    // power:2.5 has a concave |f''|, so its hypothesis fails everywhere.
    spec.fn_set = vec!["power:2.5".into(), "power:4".into()];
    let report = sweep(&spec).unwrap();
    assert!(report.checked < report.samples - report.errors);
    assert!(report.checked > 0);
    assert_eq!(report.violations.len(), 0);
    for row in &report.rows {
        if let Some(outcome) = &row.outcome {
            if !outcome.hypothesis_ok {
                assert_eq!(outcome.status, Status::HypFail);
            }
        }
    }
}
