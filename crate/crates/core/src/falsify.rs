//! Deterministic parameter-space sweeps that hunt for violated bound
//! instances and for the tightest margins among holding ones.
//!
//! Points come from a Halton sequence with a seeded Cranley-Patterson
//! rotation, so a sweep is reproducible from (seed, index) alone and
//! extending the sample count keeps every earlier point unchanged.
//! Points that fall outside a theorem's feasible region are replaced by
//! seeded pseudorandom retries; a configuration whose region is (almost)
//! empty fails with [`Error::InfeasibleRanges`] instead of spinning.

use crate::bounds::{
    evaluate_bound, BoundOutcome, BoundParams, HypOptions, Status, TheoremId, Variant,
    DEFAULT_STATUS_TOL,
};
use crate::convexity;
use crate::funclib::TestFunction;
use crate::{require, Error, Result};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Feasibility retries per sample index before giving up.
const REJECTION_CAP: u32 = 10_000;

/// Hypothesis grid used during the sweep; cheap enough to run per row.
const SCAN_GRID: u32 = 32;
/// Finer grid used to confirm a candidate violation before recording it.
const CONFIRM_GRID: u32 = 64;

/// One prime base per sampled dimension, in this fixed order:
/// function, n, a, b, m, alpha, p, lambda, r.
const BASES: [u64; 9] = [2, 3, 5, 7, 11, 13, 17, 19, 23];
const DIMS: usize = BASES.len();

/// Half-open parameter ranges for the sweep, all optional; a missing
/// range falls back to a theorem-appropriate default. Ranges for
/// parameters the chosen theorem does not take must stay unset.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Ranges {
    #[serde(default)]
    pub a: Option<[f64; 2]>,
    #[serde(default)]
    pub b: Option<[f64; 2]>,
    #[serde(default)]
    pub m: Option<[f64; 2]>,
    #[serde(default)]
    pub alpha: Option<[f64; 2]>,
    #[serde(default)]
    pub p: Option<[f64; 2]>,
    #[serde(default)]
    pub lambda: Option<[f64; 2]>,
    #[serde(default)]
    pub r: Option<[f64; 2]>,
}

/// Full description of one sweep; deserializable from a JSON config.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    /// Which bound to sweep, e.g. "thm3.1" or "prop4".
    pub theorem_id: String,
    /// Function specs to draw from; defaults to the built-in catalog.
    #[serde(default = "default_fn_set")]
    pub fn_set: Vec<String>,
    #[serde(default)]
    pub ranges: Ranges,
    /// Derivative orders to draw from; only the n-th order bounds accept
    /// anything other than the default [2].
    #[serde(default = "default_n_set")]
    pub n_set: Vec<u32>,
    pub samples: u64,
    #[serde(default)]
    pub seed: u64,
    /// Margin tolerance: margin < -tol counts as a violation.
    #[serde(default = "default_tol")]
    pub tol: f64,
    /// Verify the convexity hypothesis per row instead of assuming it.
    #[serde(default)]
    pub check_hypothesis: bool,
    /// "literal" or "derived"; only the prop checks accept this.
    #[serde(default)]
    pub variant: Option<String>,
}

fn default_fn_set() -> Vec<String> {
    TestFunction::catalog().iter().map(|f| f.to_string()).collect()
}

fn default_n_set() -> Vec<u32> {
    vec![2]
}

fn default_tol() -> f64 {
    DEFAULT_STATUS_TOL
}

impl SweepSpec {
    pub fn new(theorem_id: &str, samples: u64, seed: u64) -> Self {
        SweepSpec {
            theorem_id: theorem_id.to_string(),
            fn_set: default_fn_set(),
            ranges: Ranges::default(),
            n_set: default_n_set(),
            samples,
            seed,
            tol: default_tol(),
            check_hypothesis: false,
            variant: None,
        }
    }
}

/// One evaluated sample. Exactly one of `outcome` and `error` is set.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub index: u64,
    pub fn_spec: Option<String>,
    pub outcome: Option<BoundOutcome>,
    pub error: Option<String>,
}

/// A confirmed violation, carrying everything needed to replay it.
#[derive(Debug, Clone, PartialEq)]
pub struct ViolationRecord {
    pub index: u64,
    pub seed: u64,
    pub theorem_id: TheoremId,
    pub fn_spec: String,
    pub a: f64,
    pub b: f64,
    pub m: f64,
    pub alpha: f64,
    pub p: Option<f64>,
    pub n: Option<u32>,
    pub lambda: Option<f64>,
    pub r: Option<f64>,
    pub variant: Variant,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    /// Grid the hypothesis was confirmed on, when it was checked at all.
    pub hypothesis_grid: Option<u32>,
}

impl ViolationRecord {
    /// Rebuilds the exact parameter set, for independent re-evaluation.
    pub fn params(&self) -> BoundParams {
        let mut params = BoundParams::new(self.a, self.b);
        params.m = self.m;
        params.alpha = self.alpha;
        params.p = self.p;
        params.n = self.n;
        params.lambda = self.lambda;
        params.r = self.r;
        params.variant = self.variant;
        params
    }
}

/// Everything a sweep produced, rows in sample order.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub theorem_id: String,
    pub seed: u64,
    pub tol: f64,
    pub samples: u64,
    pub rows: Vec<SweepRow>,
    pub violations: Vec<ViolationRecord>,
    /// Rows that failed to evaluate.
    pub errors: u64,
    /// Rows whose bound was actually tested (hypothesis passed or assumed).
    pub checked: u64,
    /// Smallest margin over the checked rows, violations included.
    pub min_margin: Option<f64>,
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn stream(seed: u64, tags: [u64; 3]) -> u64 {
    let mut h = splitmix(seed);
    for t in tags {
        h = splitmix(h ^ t);
    }
    h
}

/// Top 53 bits as a uniform draw in [0, 1).
fn unit(bits: u64) -> f64 {
    (bits >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Radical inverse of `i` in the given base.
fn van_der_corput(mut i: u64, base: u64) -> f64 {
    let mut value = 0.0;
    let mut denom = 1.0;
    while i > 0 {
        denom *= base as f64;
        value += (i % base) as f64 / denom;
        i /= base;
    }
    value
}

/// The unit point for (index, attempt). Attempt 0 is the rotated Halton
/// point; later attempts are independent seeded uniforms, so rejection
/// never disturbs the points of other indices.
fn unit_point(seed: u64, index: u64, attempt: u32) -> [f64; DIMS] {
    let mut u = [0.0; DIMS];
    for (d, slot) in u.iter_mut().enumerate() {
        *slot = if attempt == 0 {
            let shift = unit(stream(seed, [0x00C0_FFEE, d as u64, 0]));
            (van_der_corput(index, BASES[d]) + shift).fract()
        } else {
            unit(stream(seed, [index, attempt as u64, d as u64]))
        };
    }
    u
}

fn pick(u: f64, len: usize) -> usize {
    ((u * len as f64) as usize).min(len - 1)
}

fn lerp(range: [f64; 2], u: f64) -> f64 {
    range[0] + u * (range[1] - range[0])
}

/// How a theorem constrains its exponent parameter.
enum ExponentRule {
    StrictlyAboveOne,
    AtLeastOne,
    NotTaken,
}

fn exponent_rule(id: TheoremId) -> ExponentRule {
    match id {
        TheoremId::Thm11
        | TheoremId::Thm32
        | TheoremId::CorE
        | TheoremId::Prop(1)
        | TheoremId::Prop(4) => ExponentRule::StrictlyAboveOne,
        TheoremId::Thm13
        | TheoremId::Thm31
        | TheoremId::Thm33
        | TheoremId::CorK
        | TheoremId::Prop(2)
        | TheoremId::Prop(5) => ExponentRule::AtLeastOne,
        TheoremId::Hh | TheoremId::Thm12 | TheoremId::Prop(_) => ExponentRule::NotTaken,
    }
}

struct Resolved {
    id: TheoremId,
    fns: Vec<TestFunction>,
    n_set: Vec<u32>,
    a: [f64; 2],
    b: [f64; 2],
    m: [f64; 2],
    alpha: [f64; 2],
    p: Option<[f64; 2]>,
    lambda: Option<[f64; 2]>,
    r: Option<[f64; 2]>,
    variant: Variant,
    seed: u64,
    tol: f64,
    check_hypothesis: bool,
}

fn checked_range(name: &str, range: [f64; 2], lo: f64, hi: f64) -> Result<[f64; 2]> {
    require(
        range[0].is_finite() && range[1].is_finite() && range[0] <= range[1],
        || format!("range for {name} must be finite with lo <= hi, got {range:?}"),
    )?;
    require(range[0] >= lo && range[1] <= hi, || {
        format!("range for {name} must lie within [{lo}, {hi}], got {range:?}")
    })?;
    Ok(range)
}

fn resolve(spec: &SweepSpec) -> Result<Resolved> {
    let id: TheoremId = spec.theorem_id.parse()?;
    if spec.samples == 0 {
        return Err(Error::EmptySweep);
    }
    require(spec.tol.is_finite() && spec.tol >= 0.0, || {
        format!("sweep tol must be finite and >= 0, got {}", spec.tol)
    })?;

    require(!spec.fn_set.is_empty(), || "fn_set must not be empty".into())?;
    let fns = spec
        .fn_set
        .iter()
        .map(|s| s.parse::<TestFunction>())
        .collect::<Result<Vec<_>>>()?;

    let variant = match &spec.variant {
        Some(s) => {
            require(matches!(id, TheoremId::Prop(_)), || {
                format!("variant applies only to prop checks, not {id}")
            })?;
            s.parse::<Variant>()?
        }
        None => Variant::Literal,
    };

    let inf = f64::INFINITY;
    let a = checked_range("a", spec.ranges.a.unwrap_or([0.5, 2.0]), -inf, inf)?;
    let b = checked_range("b", spec.ranges.b.unwrap_or([1.0, 3.0]), -inf, inf)?;
    let m = checked_range("m", spec.ranges.m.unwrap_or([1.0, 1.0]), 0.0, 1.0)?;
    require(m[0] > 0.0, || format!("range for m must stay above 0, got {m:?}"))?;
    let alpha = checked_range("alpha", spec.ranges.alpha.unwrap_or([1.0, 1.0]), 0.0, 1.0)?;
    require(alpha[0] > 0.0, || {
        format!("range for alpha must stay above 0, got {alpha:?}")
    })?;

    // Bounds stated only at m = alpha = 1 reject any wider range up
    // front rather than producing a full sweep of parameter errors.
    let unit_only = matches!(
        id,
        TheoremId::Hh | TheoremId::Thm12 | TheoremId::CorE | TheoremId::CorK | TheoremId::Prop(_)
    );
    if unit_only {
        require(m == [1.0, 1.0] && alpha == [1.0, 1.0], || {
            format!("{id} is stated for m = alpha = 1; leave those ranges unset")
        })?;
    }

    let p = match exponent_rule(id) {
        ExponentRule::StrictlyAboveOne => {
            let range = checked_range("p", spec.ranges.p.unwrap_or([2.0, 2.0]), -inf, inf)?;
            require(range[0] > 1.0, || {
                format!("{id} needs exponents strictly above 1, got {range:?}")
            })?;
            Some(range)
        }
        ExponentRule::AtLeastOne => {
            let range = checked_range("p", spec.ranges.p.unwrap_or([1.0, 1.0]), -inf, inf)?;
            require(range[0] >= 1.0, || {
                format!("{id} needs exponents >= 1, got {range:?}")
            })?;
            Some(range)
        }
        ExponentRule::NotTaken => {
            require(spec.ranges.p.is_none(), || {
                format!("{id} does not take an exponent range")
            })?;
            None
        }
    };

    let lambda = if id == TheoremId::Thm12 {
        Some(checked_range(
            "lambda",
            spec.ranges.lambda.unwrap_or([0.0, 1.0]),
            0.0,
            1.0,
        )?)
    } else {
        require(spec.ranges.lambda.is_none(), || {
            format!("{id} does not take a lambda range")
        })?;
        None
    };

    let r = match id {
        TheoremId::Prop(1) | TheoremId::Prop(2) | TheoremId::Prop(3) => Some(checked_range(
            "r",
            spec.ranges.r.unwrap_or([2.0, 2.0]),
            -inf,
            inf,
        )?),
        TheoremId::Prop(5) => match variant {
            Variant::Literal => Some(checked_range(
                "r",
                spec.ranges.r.unwrap_or([2.0, 2.0]),
                -inf,
                inf,
            )?),
            Variant::Derived => match spec.ranges.r {
                Some(range) => Some(checked_range("r", range, -inf, inf)?),
                None => None,
            },
        },
        _ => {
            require(spec.ranges.r.is_none(), || {
                format!("{id} does not take an order range")
            })?;
            None
        }
    };

    let nth_order = matches!(id, TheoremId::Thm31 | TheoremId::Thm32 | TheoremId::Thm33);
    if nth_order {
        require(!spec.n_set.is_empty(), || "n_set must not be empty".into())?;
        require(spec.n_set.iter().all(|&n| n >= 2), || {
            format!("{id} needs n >= 2, got {:?}", spec.n_set)
        })?;
    } else {
        require(spec.n_set == [2], || {
            format!("only the n-th order bounds take n_set, not {id}")
        })?;
    }

    Ok(Resolved {
        id,
        fns,
        n_set: spec.n_set.clone(),
        a,
        b,
        m,
        alpha,
        p,
        lambda,
        r,
        variant,
        seed: spec.seed,
        tol: spec.tol,
        check_hypothesis: spec.check_hypothesis,
    })
}

fn build_row(ctx: &Resolved, index: u64) -> Result<SweepRow> {
    for attempt in 0..=REJECTION_CAP {
        let u = unit_point(ctx.seed, index, attempt);
        let f = &ctx.fns[pick(u[0], ctx.fns.len())];
        let n = ctx.n_set[pick(u[1], ctx.n_set.len())];
        let a = lerp(ctx.a, u[2]);
        let b = lerp(ctx.b, u[3]);
        let m = lerp(ctx.m, u[4]);
        let alpha = lerp(ctx.alpha, u[5]);

        let feasible = match ctx.id {
            TheoremId::Thm12 => a < b && a > f.domain_lo(),
            _ => 0.0 < a && a < m * b,
        };
        if !feasible {
            continue;
        }

        let mut params = BoundParams::new(a, b);
        params.m = m;
        params.alpha = alpha;
        params.variant = ctx.variant;
        if let Some(range) = ctx.p {
            params.p = Some(lerp(range, u[6]));
        }
        if let Some(range) = ctx.lambda {
            params.lambda = Some(lerp(range, u[7]));
        }
        if let Some(range) = ctx.r {
            params.r = Some(lerp(range, u[8]));
        }
        if matches!(
            ctx.id,
            TheoremId::Thm31 | TheoremId::Thm32 | TheoremId::Thm33
        ) {
            params.n = Some(n);
        }

        let scan = HypOptions {
            grid: SCAN_GRID,
            tol: convexity::DEFAULT_TOL,
        };
        let confirm = HypOptions {
            grid: CONFIRM_GRID,
            tol: convexity::DEFAULT_TOL,
        };
        let hyp = ctx.check_hypothesis.then_some(&scan);
        let result = evaluate_bound(ctx.id, f, &params, ctx.tol, hyp).and_then(|outcome| {
            // A violation whose hypothesis only passed the coarse scan
            // gets one confirmation pass on the finer grid; the confirmed
            // evaluation is what lands in the report.
            if ctx.check_hypothesis && outcome.status == Status::Violated {
                evaluate_bound(ctx.id, f, &params, ctx.tol, Some(&confirm))
            } else {
                Ok(outcome)
            }
        });
        return Ok(match result {
            Ok(outcome) => SweepRow {
                index,
                fn_spec: Some(outcome.fn_spec.clone()),
                outcome: Some(outcome),
                error: None,
            },
            Err(e) => SweepRow {
                index,
                fn_spec: Some(f.to_string()),
                outcome: None,
                error: Some(e.to_string()),
            },
        });
    }
    Err(Error::InfeasibleRanges {
        attempts: REJECTION_CAP,
    })
}

/// Runs the sweep described by `spec`. Rows are returned in sample order
/// regardless of how many threads evaluate them.
pub fn sweep(spec: &SweepSpec) -> Result<SweepReport> {
    let ctx = resolve(spec)?;
    let rows = (0..spec.samples)
        .into_par_iter()
        .map(|index| build_row(&ctx, index))
        .collect::<Result<Vec<_>>>()?;

    let mut violations = Vec::new();
    let mut errors = 0u64;
    let mut checked = 0u64;
    let mut min_margin: Option<f64> = None;
    for row in &rows {
        match &row.outcome {
            Some(outcome) => {
                if outcome.hypothesis_ok {
                    checked += 1;
                    min_margin =
                        Some(min_margin.map_or(outcome.margin, |v| v.min(outcome.margin)));
                    if outcome.status == Status::Violated {
                        violations.push(ViolationRecord {
                            index: row.index,
                            seed: spec.seed,
                            theorem_id: outcome.theorem_id,
                            fn_spec: outcome.fn_spec.clone(),
                            a: outcome.a,
                            b: outcome.b,
                            m: outcome.m,
                            alpha: outcome.alpha,
                            p: outcome.p,
                            n: outcome.n,
                            lambda: outcome.lambda,
                            r: outcome.r,
                            variant: outcome.variant,
                            lhs: outcome.lhs,
                            rhs: outcome.rhs,
                            margin: outcome.margin,
                            hypothesis_grid: ctx.check_hypothesis.then_some(CONFIRM_GRID),
                        });
                    }
                }
            }
            None => errors += 1,
        }
    }

    Ok(SweepReport {
        theorem_id: spec.theorem_id.clone(),
        seed: spec.seed,
        tol: spec.tol,
        samples: spec.samples,
        rows,
        violations,
        errors,
        checked,
        min_margin,
    })
}

/// Runs the sweep and returns the tightest nonnegative margin among rows
/// whose hypothesis passed or was assumed, i.e. the closest a holding
/// instance came to equality. Errors with [`Error::EmptySweep`] when no
/// row qualifies.
pub fn min_margin(spec: &SweepSpec) -> Result<f64> {
    let report = sweep(spec)?;
    report
        .rows
        .iter()
        .filter_map(|row| row.outcome.as_ref())
        .filter(|o| o.hypothesis_ok && o.margin >= 0.0)
        .map(|o| o.margin)
        .min_by(f64::total_cmp)
        .ok_or(Error::EmptySweep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn margins(report: &SweepReport) -> Vec<f64> {
        report
            .rows
            .iter()
            .map(|r| r.outcome.as_ref().map_or(f64::NAN, |o| o.margin))
            .collect()
    }

    #[test]
    fn sweep_is_deterministic() {
        let mut spec = SweepSpec::new("thm3.1", 48, 7);
        spec.check_hypothesis = true;
        let first = sweep(&spec).unwrap();
        let second = sweep(&spec).unwrap();
        assert_eq!(first.rows.len(), 48);
        for (x, y) in margins(&first).iter().zip(margins(&second).iter()) {
            assert_eq!(x.to_bits(), y.to_bits());
        }
        assert_eq!(first.checked, second.checked);
        assert_eq!(first.violations.len(), second.violations.len());
    }

    #[test]
    fn sample_count_extension_preserves_prefix() {
        let short = sweep(&SweepSpec::new("thm3.1", 24, 11)).unwrap();
        let long = sweep(&SweepSpec::new("thm3.1", 48, 11)).unwrap();
        for (x, y) in margins(&short).iter().zip(margins(&long).iter()) {
            assert_eq!(x.to_bits(), y.to_bits());
        }
    }

    #[test]
    fn seed_changes_the_points() {
        let one = sweep(&SweepSpec::new("thm3.1", 8, 1)).unwrap();
        let two = sweep(&SweepSpec::new("thm3.1", 8, 2)).unwrap();
        assert_ne!(margins(&one), margins(&two));
    }

    #[test]
    fn infeasible_ranges_are_rejected() {
        let mut spec = SweepSpec::new("thm3.1", 4, 0);
        spec.ranges.a = Some([5.0, 6.0]);
        spec.ranges.b = Some([1.0, 2.0]);
        match sweep(&spec) {
            Err(Error::InfeasibleRanges { attempts }) => assert_eq!(attempts, REJECTION_CAP),
            other => panic!("expected InfeasibleRanges, got {other:?}"),
        }
    }

    #[test]
    fn config_validation_fails_fast() {
        // Exponent range must respect the strict bound of thm3.2.
        let mut spec = SweepSpec::new("thm3.2", 4, 0);
        spec.ranges.p = Some([1.0, 2.0]);
        assert!(matches!(sweep(&spec), Err(Error::Param(_))));
        // Lambda only belongs to the lambda-weighted bound.
        let mut spec = SweepSpec::new("thm3.1", 4, 0);
        spec.ranges.lambda = Some([0.0, 1.0]);
        assert!(sweep(&spec).is_err());
        // Order r only belongs to the prop checks.
        let mut spec = SweepSpec::new("thm3.1", 4, 0);
        spec.ranges.r = Some([2.0, 2.0]);
        assert!(sweep(&spec).is_err());
        // Variants only belong to the prop checks.
        let mut spec = SweepSpec::new("thm3.1", 4, 0);
        spec.variant = Some("literal".into());
        assert!(sweep(&spec).is_err());
        // Second-order bounds refuse a widened n_set.
        let mut spec = SweepSpec::new("thm1.3", 4, 0);
        spec.n_set = vec![3];
        assert!(sweep(&spec).is_err());
        // Unknown ids and zero-sample sweeps.
        assert!(sweep(&SweepSpec::new("thm7.7", 4, 0)).is_err());
        assert!(matches!(
            sweep(&SweepSpec::new("thm3.1", 0, 0)),
            Err(Error::EmptySweep)
        ));
    }

    #[test]
    fn pinned_violation_is_recorded_and_replays() {
        let mut spec = SweepSpec::new("thm1.2", 5, 9);
        spec.fn_set = vec!["power:2".into()];
        spec.ranges.a = Some([0.0, 0.0]);
        spec.ranges.b = Some([4.0, 4.0]);
        spec.ranges.lambda = Some([1.0, 1.0]);
        let report = sweep(&spec).unwrap();
        assert_eq!(report.violations.len(), 5);
        for record in &report.violations {
            assert_eq!(record.theorem_id, TheoremId::Thm12);
            assert!((record.lhs - 40.0 / 3.0).abs() < 1e-9);
            assert!((record.rhs - 8.0 / 3.0).abs() < 1e-9);
            // Replaying the record reproduces the evaluation.
            let f: TestFunction = record.fn_spec.parse().unwrap();
            let again =
                evaluate_bound(record.theorem_id, &f, &record.params(), spec.tol, None).unwrap();
            assert!((again.margin - record.margin).abs() <= 1e-12);
            assert_eq!(again.status, Status::Violated);
        }
        assert!(report.min_margin.unwrap() < 0.0);
        assert!(matches!(min_margin(&spec), Err(Error::EmptySweep)));
    }

    #[test]
    fn literal_prop_display_is_flagged() {
        let mut spec = SweepSpec::new("prop3", 3, 0);
        spec.ranges.a = Some([1.0, 1.0]);
        spec.ranges.b = Some([2.0, 2.0]);
        let report = sweep(&spec).unwrap();
        assert_eq!(report.violations.len(), 3);
        // The derived form of the same display holds with margin zero.
        spec.variant = Some("derived".into());
        let derived = sweep(&spec).unwrap();
        assert!(derived.violations.is_empty());
        assert!(derived.min_margin.unwrap().abs() < 1e-10);
    }

    #[test]
    fn hypothesis_failures_are_not_violations() {
        let mut spec = SweepSpec::new("hh", 4, 0);
        spec.fn_set = vec!["scaled:-1:power:2".into()];
        spec.ranges.a = Some([1.0, 1.0]);
        spec.ranges.b = Some([3.0, 3.0]);
        spec.check_hypothesis = true;
        let report = sweep(&spec).unwrap();
        assert_eq!(report.checked, 0);
        assert!(report.violations.is_empty());
        assert!(report
            .rows
            .iter()
            .all(|r| r.outcome.as_ref().unwrap().status == Status::HypFail));
        // With the hypothesis assumed instead, the same rows are honest
        // violations of the chain.
        spec.check_hypothesis = false;
        let report = sweep(&spec).unwrap();
        assert_eq!(report.violations.len(), 4);
        assert_eq!(
            report.violations[0].hypothesis_grid, None,
            "unchecked hypothesis must not claim a grid"
        );
    }

    #[test]
    fn min_margin_reports_tightest_holding_row() {
        // Functions whose |f''| really is convex, so every row holds.
        let mut spec = SweepSpec::new("thm3.1", 32, 3);
        spec.fn_set = vec![
            "power:4".into(),
            "reciprocal".into(),
            "neglog".into(),
            "exp".into(),
        ];
        let report = sweep(&spec).unwrap();
        assert!(report.violations.is_empty());
        let tightest = min_margin(&spec).unwrap();
        assert!(tightest >= 0.0);
        let direct = report
            .rows
            .iter()
            .filter_map(|r| r.outcome.as_ref())
            .map(|o| o.margin)
            .fold(f64::INFINITY, f64::min);
        assert_eq!(tightest.to_bits(), direct.to_bits());
    }

    #[test]
    fn halton_points_are_well_formed() {
        assert_eq!(van_der_corput(0, 2), 0.0);
        assert_eq!(van_der_corput(1, 2), 0.5);
        assert_eq!(van_der_corput(2, 2), 0.25);
        assert_eq!(van_der_corput(3, 2), 0.75);
        assert_eq!(van_der_corput(1, 3), 1.0 / 3.0);
        for index in 0..50 {
            for attempt in [0, 1, 5] {
                for v in unit_point(42, index, attempt) {
                    assert!((0.0..1.0).contains(&v), "out of range: {v}");
                }
            }
        }
        // pick never indexes past the end, even at u -> 1.
        assert_eq!(pick(0.999_999_999, 3), 2);
        assert_eq!(pick(0.0, 3), 0);
    }
}
