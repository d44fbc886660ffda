//! Property tests for the structural invariants the library relies on:
//! derivative correctness against finite differences, quadrature
//! additivity, scale homogeneity of the bounds, degenerations between
//! bound families, and the classical mean inequalities.

use hhverify_core::{
    check_alpha_m_convex, check_hypothesis, consistency_check, evaluate_bound, gamma,
    identity_residual, integrate, kernel_moment, mean, BoundParams, ConsistencyPair, DevParams,
    Hypothesis, MeanKind, Status, TestFunction, TheoremId, Variant,
};
use proptest::prelude::*;

fn catalog_fn() -> impl Strategy<Value = TestFunction> {
    let n = TestFunction::catalog().len();
    (0..n).prop_map(|i| TestFunction::catalog()[i].clone())
}

/// Relative-or-absolute closeness with a shared scale floor.
fn close(x: f64, y: f64, tol: f64) -> bool {
    (x - y).abs() <= tol * (1.0 + x.abs().max(y.abs()))
}

proptest! {
    // Every closed-form derivative must agree with a central difference
    // of the previous order.
    #[test]
    fn derivative_matches_finite_difference(
        f in catalog_fn(),
        k in 1u32..=4,
        x in 0.5f64..3.0,
    ) {
        let h = 1e-5;
        let exact = f.deriv(k, x).unwrap();
        let approx = (f.deriv(k - 1, x + h).unwrap() - f.deriv(k - 1, x - h).unwrap()) / (2.0 * h);
        prop_assert!(
            close(exact, approx, 1e-6),
            "k={k} x={x} exact={exact} approx={approx}"
        );
    }

    // Scaling the function scales every derivative linearly.
    #[test]
    fn scaled_derivatives_are_linear(
        f in catalog_fn(),
        c in -3.0f64..3.0,
        k in 0u32..=5,
        x in 0.5f64..3.0,
    ) {
        let scaled = TestFunction::scaled(c, f.clone());
        let direct = c * f.deriv(k, x).unwrap();
        let via = scaled.deriv(k, x).unwrap();
        prop_assert!(close(direct, via, 1e-14), "direct={direct} via={via}");
    }

    #[test]
    fn gamma_satisfies_recurrence(x in 0.5f64..48.5) {
        let lhs = gamma(x + 1.0).unwrap();
        let rhs = x * gamma(x).unwrap();
        prop_assert!(
            (lhs - rhs).abs() <= 1e-11 * rhs.abs(),
            "x={x} lhs={lhs} rhs={rhs}"
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // Splitting the interval anywhere must not change the integral.
    #[test]
    fn quadrature_is_additive(
        f in catalog_fn(),
        lo in 0.25f64..1.0,
        len1 in 0.1f64..2.0,
        len2 in 0.1f64..2.0,
    ) {
        let mid = lo + len1;
        let hi = mid + len2;
        let g = |x: f64| f.eval(x);
        let whole = integrate(g, lo, hi, 1e-12).unwrap().value;
        let left = integrate(g, lo, mid, 1e-12).unwrap().value;
        let right = integrate(g, mid, hi, 1e-12).unwrap().value;
        prop_assert!(
            close(whole, left + right, 1e-10),
            "whole={whole} split={}", left + right
        );
    }

    // The closed-form kernel moment equals the integral it stands for.
    #[test]
    fn kernel_moment_matches_quadrature(n in 1u32..=10) {
        let nf = n as f64;
        let direct = integrate(
            |t| Ok(t.powi(n as i32 - 1) * (nf - 2.0 * t)),
            0.0,
            1.0,
            1e-13,
        )
        .unwrap()
        .value;
        let closed = kernel_moment(n).unwrap();
        prop_assert!(close(direct, closed, 1e-11), "direct={direct} closed={closed}");
    }

    // The integral identity holds for any smooth function, order, and
    // admissible (a, m, b).
    #[test]
    fn identity_residual_vanishes(
        which in 0usize..2,
        n in 1u32..=5,
        a in 0.3f64..1.5,
        m in 0.5f64..1.0,
        delta in 0.1f64..2.0,
    ) {
        let f = if which == 0 {
            TestFunction::Exponential
        } else {
            TestFunction::power(4.0)
        };
        let b = a / m + delta;
        let params = DevParams {
            quad_tol: 1e-12,
            ..DevParams::new(a, b, m, n)
        };
        let residual = identity_residual(&f, &params).unwrap();
        prop_assert!(residual <= 1e-9, "n={n} a={a} m={m} b={b} residual={residual}");
    }

    // Every bound is homogeneous of degree one in the function.
    #[test]
    fn bounds_scale_linearly_with_the_function(
        c in 0.25f64..4.0,
        p in 1.0f64..4.0,
        alpha in 0.2f64..1.0,
    ) {
        let base = TestFunction::power(4.0);
        let scaled = TestFunction::scaled(c, base.clone());
        for id in [TheoremId::Thm31, TheoremId::Thm13] {
            let mut params = BoundParams::new(1.0, 2.0);
            params.alpha = alpha;
            params.p = Some(p);
            if id == TheoremId::Thm31 {
                params.n = Some(2);
            }
            let plain = evaluate_bound(id, &base, &params, 1e-8, None).unwrap();
            let big = evaluate_bound(id, &scaled, &params, 1e-8, None).unwrap();
            prop_assert!(close(big.lhs, c * plain.lhs, 1e-9), "{id} lhs");
            prop_assert!(close(big.rhs, c * plain.rhs, 1e-9), "{id} rhs");
        }
    }

    // At p = 1 the power-mean route and the direct route coincide, for
    // every order.
    #[test]
    fn p_one_bounds_degenerate_identically(
        n in 2u32..=6,
        alpha in 0.2f64..1.0,
        m in 0.5f64..1.0,
    ) {
        let f = TestFunction::Exponential;
        let mut params = BoundParams::new(0.5, 4.0);
        params.m = m;
        params.alpha = alpha;
        params.p = Some(1.0);
        params.n = Some(n);
        let one = evaluate_bound(TheoremId::Thm31, &f, &params, 1e-8, None).unwrap();
        let other = evaluate_bound(TheoremId::Thm33, &f, &params, 1e-8, None).unwrap();
        prop_assert!(
            (one.rhs - other.rhs).abs() <= 1e-12 * one.rhs.abs(),
            "n={n} rhs {} vs {}", one.rhs, other.rhs
        );
    }

    // The second-order specialization must agree with its parent for all
    // admissible parameters, not just the defaults.
    #[test]
    fn second_order_specializations_match(
        alpha in 0.1f64..1.0,
        m in 0.4f64..1.0,
        p in 1.0f64..5.0,
    ) {
        let f = TestFunction::power(4.0);
        let out = consistency_check(
            ConsistencyPair::Thm31VsThm13, &f, 1.0, 3.0, m, alpha, p,
        ).unwrap();
        prop_assert!(out.matched, "rel_diff={}", out.rel_diff);

        let trap = consistency_check(
            ConsistencyPair::CorKVsThm33, &f, 1.0, 2.5, 1.0, 1.0, p,
        ).unwrap();
        prop_assert!(trap.matched, "rel_diff={}", trap.rel_diff);
    }

    // Literal and derived right sides agree for the consequences that
    // restate their parent exactly.
    #[test]
    fn faithful_consequences_match_their_parents(
        a in 0.5f64..2.0,
        delta in 0.2f64..2.0,
        r in 1.5f64..4.0,
        p in 1.1f64..4.0,
    ) {
        let b = a + delta;
        for (prop, needs_r, strict_p) in [(1u8, true, true), (2, true, false), (4, false, true)] {
            let mut params = BoundParams::new(a, b);
            params.p = Some(p);
            params.r = needs_r.then_some(r);
            params.variant = Variant::Literal;
            let f = TestFunction::power(2.0);
            let id = TheoremId::Prop(prop);
            let literal = evaluate_bound(id, &f, &params, 1e-8, None).unwrap();
            params.variant = Variant::Derived;
            let derived = evaluate_bound(id, &f, &params, 1e-8, None).unwrap();
            prop_assert!(
                close(literal.rhs, derived.rhs, 1e-10),
                "prop{prop} literal={} derived={}", literal.rhs, derived.rhs
            );
            prop_assert!(literal.status != Status::HypFail);
            let _ = strict_p;
        }
    }

    // |12 x^2|^p is convex and vanishes at zero, so it stays in the class
    // for every weight m; positive scaling cannot change the outcome.
    #[test]
    fn convex_hypothesis_passes_and_scales(
        c in 0.1f64..5.0,
        p in 1.0f64..3.0,
        m in 0.5f64..1.0,
    ) {
        let hyp = Hypothesis {
            a: 0.5,
            b: 2.0,
            m,
            alpha: 1.0,
            p,
            n: 2,
            check_domain: None,
        };
        let plain = check_hypothesis(&TestFunction::power(4.0), &hyp, 24, 1e-9).unwrap();
        prop_assert!(plain.passed, "violation={}", plain.max_violation);
        let scaled = TestFunction::scaled(c, TestFunction::power(4.0));
        let same = check_hypothesis(&scaled, &hyp, 24, 1e-9).unwrap();
        prop_assert!(same.passed, "c={c} violation={}", same.max_violation);
    }

    // Nonpositive constants satisfy the definitional inequality for every
    // (alpha, m); positive constants fail it as soon as m < 1. For
    // alpha < 1 the fractional weight exceeds the argument weight, so any
    // strictly increasing function is rejected on near-diagonal pairs.
    #[test]
    fn scan_classifies_edge_cases(
        level in 0.1f64..5.0,
        alpha in 0.05f64..=1.0,
        m in 0.05f64..=1.0,
    ) {
        let ok = check_alpha_m_convex(|_| Ok(-level), alpha, m, (0.2, 2.0), 16, 1e-9).unwrap();
        prop_assert!(ok.passed, "violation={}", ok.max_violation);
        if m < 0.95 {
            let bad = check_alpha_m_convex(|_| Ok(level), alpha, m, (0.2, 2.0), 16, 1e-9).unwrap();
            prop_assert!(!bad.passed, "constant {level} passed with m={m}");
        }
        if alpha < 0.9 {
            let inc = check_alpha_m_convex(Ok, alpha, 1.0, (0.2, 2.0), 16, 1e-9).unwrap();
            prop_assert!(!inc.passed, "identity passed with alpha={alpha}");
        }
    }
}

proptest! {
    // Means are symmetric, homogeneous of degree one, and strictly
    // ordered H < G < L < I < A for distinct arguments.
    #[test]
    fn means_are_symmetric_and_homogeneous(
        x in 0.05f64..20.0,
        y in 0.05f64..20.0,
        c in 0.1f64..10.0,
    ) {
        for kind in [
            MeanKind::Arithmetic,
            MeanKind::Geometric,
            MeanKind::Harmonic,
            MeanKind::Logarithmic,
            MeanKind::Identric,
            MeanKind::GeneralizedLog,
        ] {
            let r = (kind == MeanKind::GeneralizedLog).then_some(2.0);
            let fwd = mean(kind, x, y, r).unwrap();
            let rev = mean(kind, y, x, r).unwrap();
            prop_assert_eq!(fwd, rev, "{} not symmetric", kind);
            let scaled = mean(kind, c * x, c * y, r).unwrap();
            prop_assert!(
                close(scaled, c * fwd, 1e-13),
                "{} not homogeneous: {} vs {}", kind, scaled, c * fwd
            );
        }
    }

    #[test]
    fn means_are_strictly_ordered(x in 0.05f64..20.0, gap in 0.01f64..5.0) {
        let y = x + gap;
        let h = mean(MeanKind::Harmonic, x, y, None).unwrap();
        let g = mean(MeanKind::Geometric, x, y, None).unwrap();
        let l = mean(MeanKind::Logarithmic, x, y, None).unwrap();
        let i = mean(MeanKind::Identric, x, y, None).unwrap();
        let a = mean(MeanKind::Arithmetic, x, y, None).unwrap();
        prop_assert!(h < g && g < l && l < i && i < a, "{h} {g} {l} {i} {a}");
    }
}
