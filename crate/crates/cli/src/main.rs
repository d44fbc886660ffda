//! Command line front end for the bound verification toolkit.
//!
//! Every subcommand prints machine-readable rows to stdout (CSV by
//! default, JSON with --format json) with floating point values rendered
//! at full round-trip precision. Exit code 0 means every check held,
//! 1 means at least one violation / failed check, 2 means the invocation
//! or configuration was invalid.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hhverify_core::{
    check_alpha_m_convex, check_hypothesis, consistency_check, evaluate_bound, lemma_rhs, mean,
    recurrence_sides, sweep, trapezoid_deviation, BoundOutcome, BoundParams, ConsistencyOutcome,
    ConsistencyPair, DevParams, Error, Hypothesis, HypOptions, MeanKind, SweepSpec, TestFunction,
    TheoremId, Variant,
};

const BOUND_HEADER: &str =
    "theorem_id,fn,a,b,m,alpha,p,n,lambda,r,lhs,rhs,margin,hypothesis_ok,status";
const CONSISTENCY_HEADER: &str = "pair,fn,a,b,m,alpha,p,value_a,value_b,rel_diff,matched";
const MEANS_HEADER: &str = "kind,a,b,r,value";

#[derive(Parser)]
#[command(
    name = "hhverify",
    version,
    about = "Numerically verify integral identities and derivative-based bounds"
)]
struct Cli {
    /// Output format for the rows printed to stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Tolerance for margins/residuals. Overrides the HHVERIFY_TOL
    /// environment variable and the per-command default.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Worker threads for parallel sweeps (0 or omitted: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check the n-th order trapezoid identity: the weighted endpoint
    /// deviation against its kernel-integral form.
    Identity(IdentityArgs),
    /// Evaluate one bound instance: left side, right side, margin.
    Bound(BoundArgs),
    /// Scan a convexity hypothesis on a grid.
    Convexity(ConvexityArgs),
    /// Evaluate classical means of two positive numbers.
    Means(MeansArgs),
    /// Cross-check a specialized bound against its parent formula.
    Consistency(ConsistencyArgs),
    /// Run a seeded falsification sweep from a JSON config.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct IdentityArgs {
    /// Test function spec, e.g. power:4, reciprocal, neglog, exp,
    /// poly:1,0,-2, scaled:0.5:power:3
    #[arg(long = "fn")]
    fn_spec: String,
    /// Left endpoint of the interval [a, m*b].
    #[arg(long)]
    a: f64,
    /// Unscaled right endpoint; the interval runs to m*b.
    #[arg(long)]
    b: f64,
    /// Weight of the scaled endpoint m*b.
    #[arg(long, default_value_t = 1.0)]
    m: f64,
    /// Derivative order of the identity.
    #[arg(long)]
    n: u32,
    /// Also check the order-lowering recurrence (requires n >= 4).
    #[arg(long)]
    recurrence: bool,
}

#[derive(Args)]
struct BoundArgs {
    /// Bound id: hh, thm1.1, thm1.2, thm1.3, thm3.1, thm3.2, thm3.3,
    /// cor_e, cor_k, prop1..prop6.
    #[arg(long)]
    theorem: String,
    /// Test function spec; ignored by the prop checks, required otherwise.
    #[arg(long = "fn")]
    fn_spec: Option<String>,
    /// Left endpoint of the interval [a, m*b].
    #[arg(long)]
    a: f64,
    /// Unscaled right endpoint; the interval runs to m*b.
    #[arg(long)]
    b: f64,
    /// Convexity class weight scaling the right endpoint.
    #[arg(long, default_value_t = 1.0)]
    m: f64,
    /// Convexity class exponent on the interpolation weight.
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    /// Exponent of the bound, in the letter its statement uses; accepts
    /// rationals like 4/3.
    #[arg(long, value_parser = parse_ratio)]
    p: Option<f64>,
    /// Derivative order for the n-th order bounds.
    #[arg(long)]
    n: Option<u32>,
    /// Weight for the lambda-weighted bound.
    #[arg(long)]
    lambda: Option<f64>,
    /// Mean order for the prop checks that take one.
    #[arg(long)]
    r: Option<f64>,
    /// Which right side to use for prop checks: literal or derived.
    #[arg(long, default_value = "literal")]
    variant: String,
    /// Verify the convexity hypothesis on a grid instead of assuming it.
    #[arg(long)]
    check_hypothesis: bool,
    /// Grid size for the hypothesis scan.
    #[arg(long, default_value_t = 64)]
    grid: u32,
}

#[derive(Args)]
struct ConvexityArgs {
    /// Test function spec.
    #[arg(long = "fn")]
    fn_spec: String,
    /// Left endpoint of the theorem interval.
    #[arg(long)]
    a: f64,
    /// Unscaled right endpoint of the theorem interval.
    #[arg(long)]
    b: f64,
    /// Convexity class weight scaling the right endpoint.
    #[arg(long, default_value_t = 1.0)]
    m: f64,
    /// Convexity class exponent on the interpolation weight.
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    /// Power applied to |f^(n)|; accepts rationals like 4/3.
    #[arg(long, value_parser = parse_ratio, default_value = "1")]
    p: f64,
    /// Derivative order whose magnitude-power is checked.
    #[arg(long, default_value_t = 2)]
    n: u32,
    /// Check f itself instead of |f^(n)|^p.
    #[arg(long)]
    raw: bool,
    /// Override the lower end of the check domain.
    #[arg(long)]
    domain_lo: Option<f64>,
    /// Override the upper end of the check domain.
    #[arg(long)]
    domain_hi: Option<f64>,
    /// Grid size for the scan.
    #[arg(long, default_value_t = 64)]
    grid: u32,
}

#[derive(Args)]
struct MeansArgs {
    /// First argument; must be positive.
    #[arg(long)]
    a: f64,
    /// Second argument; must be positive.
    #[arg(long)]
    b: f64,
    /// Order for the generalized logarithmic mean.
    #[arg(long)]
    r: Option<f64>,
    /// Single mean to evaluate: A, G, H, I, L, or Lr. Default: all
    /// applicable ones.
    #[arg(long)]
    kind: Option<String>,
}

#[derive(Args)]
struct ConsistencyArgs {
    /// Pair id: thm31_vs_thm13, cor_e_vs_thm32, cor_k_vs_thm33.
    #[arg(long)]
    pair: String,
    /// Test function spec.
    #[arg(long = "fn")]
    fn_spec: String,
    /// Left endpoint of the interval [a, m*b].
    #[arg(long)]
    a: f64,
    /// Unscaled right endpoint; the interval runs to m*b.
    #[arg(long)]
    b: f64,
    /// Convexity class weight scaling the right endpoint.
    #[arg(long, default_value_t = 1.0)]
    m: f64,
    /// Convexity class exponent on the interpolation weight.
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    /// Exponent of the parent bound; accepts rationals like 4/3.
    #[arg(long, value_parser = parse_ratio)]
    p: f64,
}

#[derive(Args)]
struct SweepArgs {
    /// Path to a JSON sweep config.
    #[arg(long)]
    config: String,
    /// Override the sample count from the config.
    #[arg(long)]
    samples: Option<u64>,
    /// Override the seed from the config.
    #[arg(long)]
    seed: Option<u64>,
    /// Print only the summary, not the per-sample rows.
    #[arg(long)]
    summary_only: bool,
}

fn parse_ratio(s: &str) -> Result<f64, String> {
    let v = if let Some((num, den)) = s.split_once('/') {
        let n: f64 = num.trim().parse().map_err(|e| format!("bad numerator: {e}"))?;
        let d: f64 = den.trim().parse().map_err(|e| format!("bad denominator: {e}"))?;
        if d == 0.0 {
            return Err("denominator is zero".into());
        }
        n / d
    } else {
        s.trim().parse().map_err(|e| format!("{e}"))?
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("value is not finite: {s}"))
    }
}

/// Full-precision float rendering; round-trips through parse exactly.
fn fmt_f(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv_opt_f(x: Option<f64>) -> String {
    x.map(fmt_f).unwrap_or_default()
}

fn json_f(x: f64) -> String {
    if x.is_finite() {
        fmt_f(x)
    } else {
        "null".to_string()
    }
}

fn json_opt_f(x: Option<f64>) -> String {
    x.map(json_f).unwrap_or_else(|| "null".to_string())
}

fn json_str(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// One output row in the shared bound/identity/sweep schema.
struct Row {
    theorem_id: String,
    fn_spec: String,
    a: Option<f64>,
    b: Option<f64>,
    m: Option<f64>,
    alpha: Option<f64>,
    p: Option<f64>,
    n: Option<u32>,
    lambda: Option<f64>,
    r: Option<f64>,
    lhs: Option<f64>,
    rhs: Option<f64>,
    margin: Option<f64>,
    hypothesis_ok: Option<bool>,
    status: String,
}

impl Row {
    fn from_outcome(o: &BoundOutcome) -> Self {
        Row {
            theorem_id: o.theorem_id.to_string(),
            fn_spec: o.fn_spec.clone(),
            a: Some(o.a),
            b: Some(o.b),
            m: Some(o.m),
            alpha: Some(o.alpha),
            p: o.p,
            n: o.n,
            lambda: o.lambda,
            r: o.r,
            lhs: Some(o.lhs),
            rhs: Some(o.rhs),
            margin: Some(o.margin),
            hypothesis_ok: Some(o.hypothesis_ok),
            status: o.status.to_string(),
        }
    }

    fn to_csv(&self) -> String {
        [
            csv_field(&self.theorem_id),
            csv_field(&self.fn_spec),
            csv_opt_f(self.a),
            csv_opt_f(self.b),
            csv_opt_f(self.m),
            csv_opt_f(self.alpha),
            csv_opt_f(self.p),
            self.n.map(|n| n.to_string()).unwrap_or_default(),
            csv_opt_f(self.lambda),
            csv_opt_f(self.r),
            csv_opt_f(self.lhs),
            csv_opt_f(self.rhs),
            csv_opt_f(self.margin),
            self.hypothesis_ok
                .map(|b| b.to_string())
                .unwrap_or_default(),
            self.status.clone(),
        ]
        .join(",")
    }

    fn to_json(&self) -> String {
        format!(
            "{{\"theorem_id\":{},\"fn\":{},\"a\":{},\"b\":{},\"m\":{},\"alpha\":{},\"p\":{},\"n\":{},\"lambda\":{},\"r\":{},\"lhs\":{},\"rhs\":{},\"margin\":{},\"hypothesis_ok\":{},\"status\":{}}}",
            json_str(&self.theorem_id),
            json_str(&self.fn_spec),
            json_opt_f(self.a),
            json_opt_f(self.b),
            json_opt_f(self.m),
            json_opt_f(self.alpha),
            json_opt_f(self.p),
            self.n.map(|n| n.to_string()).unwrap_or_else(|| "null".into()),
            json_opt_f(self.lambda),
            json_opt_f(self.r),
            json_opt_f(self.lhs),
            json_opt_f(self.rhs),
            json_opt_f(self.margin),
            self.hypothesis_ok
                .map(|b| b.to_string())
                .unwrap_or_else(|| "null".into()),
            json_str(&self.status),
        )
    }
}

fn summary_of(rows: &[Row], failures: u64) -> (u64, Option<f64>) {
    let checked = rows.iter().filter(|r| r.status != "ERROR").count() as u64;
    let min_margin = rows
        .iter()
        .filter(|r| r.hypothesis_ok != Some(false))
        .filter_map(|r| r.margin)
        .min_by(f64::total_cmp);
    let _ = failures;
    (checked, min_margin)
}

fn print_rows(format: Format, seed: Option<u64>, tol: f64, rows: &[Row], failures: u64) {
    match format {
        Format::Csv => {
            println!("{BOUND_HEADER}");
            for row in rows {
                println!("{}", row.to_csv());
            }
        }
        Format::Json => {
            let (checked, min_margin) = summary_of(rows, failures);
            let body: Vec<String> = rows.iter().map(Row::to_json).collect();
            println!(
                "{{\"meta\":{{\"seed\":{},\"tol\":{},\"version\":{}}},\"rows\":[{}],\"summary\":{{\"checked\":{},\"violations\":{},\"min_margin\":{}}}}}",
                seed.map(|s| s.to_string()).unwrap_or_else(|| "null".into()),
                json_f(tol),
                json_str(env!("CARGO_PKG_VERSION")),
                body.join(","),
                checked,
                failures,
                json_opt_f(min_margin),
            );
        }
    }
}

fn resolve_tol(flag: Option<f64>, default: f64) -> Result<f64, Error> {
    let chosen = match flag {
        Some(t) => Some(t),
        None => match std::env::var("HHVERIFY_TOL") {
            Ok(s) => Some(s.trim().parse::<f64>().map_err(|e| {
                Error::Param(format!("HHVERIFY_TOL is not a number ('{s}'): {e}"))
            })?),
            Err(_) => None,
        },
    };
    let tol = chosen.unwrap_or(default);
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(Error::Param(format!(
            "tolerance must be finite and >= 0, got {tol}"
        )));
    }
    Ok(tol)
}

fn run_identity(args: &IdentityArgs, format: Format, tol_flag: Option<f64>) -> Result<u64, Error> {
    let tol = resolve_tol(tol_flag, 1e-9)?;
    let f: TestFunction = args.fn_spec.parse()?;
    let params = DevParams {
        quad_tol: (tol / 10.0).max(1e-14),
        ..DevParams::new(args.a, args.b, args.m, args.n)
    };
    let mut rows = Vec::new();

    let lhs = trapezoid_deviation(&f, &params)?;
    let rhs = lemma_rhs(&f, &params)?;
    rows.push(identity_row("identity", &args.fn_spec, &params, lhs, rhs, tol));

    if args.recurrence {
        let (lhs, rhs) = recurrence_sides(&f, &params)?;
        rows.push(identity_row("recurrence", &args.fn_spec, &params, lhs, rhs, tol));
    }

    let failures = rows.iter().filter(|r| r.status == "VIOLATED").count() as u64;
    print_rows(format, None, tol, &rows, failures);
    Ok(failures)
}

fn identity_row(
    kind: &str,
    fn_spec: &str,
    params: &DevParams,
    lhs: f64,
    rhs: f64,
    tol: f64,
) -> Row {
    let residual = (lhs - rhs).abs();
    Row {
        theorem_id: kind.to_string(),
        fn_spec: fn_spec.to_string(),
        a: Some(params.a),
        b: Some(params.b),
        m: Some(params.m),
        alpha: None,
        p: None,
        n: Some(params.n),
        lambda: None,
        r: None,
        lhs: Some(lhs),
        rhs: Some(rhs),
        // Negated residual, so the usual "margin >= -tol" reading applies.
        margin: Some(-residual),
        hypothesis_ok: None,
        status: if residual <= tol { "HOLDS" } else { "VIOLATED" }.to_string(),
    }
}

fn run_bound(args: &BoundArgs, format: Format, tol_flag: Option<f64>) -> Result<u64, Error> {
    let tol = resolve_tol(tol_flag, 1e-8)?;
    let id: TheoremId = args.theorem.parse()?;
    let f = match (&args.fn_spec, matches!(id, TheoremId::Prop(_))) {
        (Some(spec), _) => spec.parse::<TestFunction>()?,
        // The prop checks fix their own underlying function.
        (None, true) => TestFunction::power(2.0),
        (None, false) => {
            return Err(Error::Param(format!("--fn is required for {id}")));
        }
    };

    let mut params = BoundParams::new(args.a, args.b);
    params.m = args.m;
    params.alpha = args.alpha;
    params.p = args.p;
    params.n = args.n;
    params.lambda = args.lambda;
    params.r = args.r;
    params.variant = args.variant.parse::<Variant>()?;

    let hyp = args.check_hypothesis.then(|| HypOptions {
        grid: args.grid,
        ..HypOptions::default()
    });
    let outcome = evaluate_bound(id, &f, &params, tol, hyp.as_ref())?;

    if let Some(check) = &outcome.hypothesis {
        if !check.passed {
            if let Some(w) = &check.witness {
                eprintln!(
                    "hypothesis failed on [{}, {}]: x={} y={} lambda={} lhs={} rhs={}",
                    fmt_f(check.domain.0),
                    fmt_f(check.domain.1),
                    fmt_f(w.x),
                    fmt_f(w.y),
                    fmt_f(w.lambda),
                    fmt_f(w.lhs),
                    fmt_f(w.rhs)
                );
            }
        }
    }

    let rows = vec![Row::from_outcome(&outcome)];
    let failures = rows.iter().filter(|r| r.status == "VIOLATED").count() as u64;
    print_rows(format, None, tol, &rows, failures);
    Ok(failures)
}

fn run_convexity(args: &ConvexityArgs, format: Format, tol_flag: Option<f64>) -> Result<u64, Error> {
    let tol = resolve_tol(tol_flag, 1e-9)?;
    let f: TestFunction = args.fn_spec.parse()?;
    let check_domain = match (args.domain_lo, args.domain_hi) {
        (Some(lo), Some(hi)) => Some((lo, hi)),
        (None, None) => None,
        _ => {
            return Err(Error::Param(
                "--domain-lo and --domain-hi must be given together".into(),
            ));
        }
    };

    let result = if args.raw {
        let domain = check_domain.unwrap_or((args.a, args.b));
        check_alpha_m_convex(|x| f.eval(x), args.alpha, args.m, domain, args.grid, tol)?
    } else {
        let hyp = Hypothesis {
            a: args.a,
            b: args.b,
            m: args.m,
            alpha: args.alpha,
            p: args.p,
            n: args.n,
            check_domain,
        };
        check_hypothesis(&f, &hyp, args.grid, tol)?
    };

    if let Some(w) = &result.witness {
        eprintln!(
            "worst point on [{}, {}]: x={} y={} lambda={} lhs={} rhs={}",
            fmt_f(result.domain.0),
            fmt_f(result.domain.1),
            fmt_f(w.x),
            fmt_f(w.y),
            fmt_f(w.lambda),
            fmt_f(w.lhs),
            fmt_f(w.rhs)
        );
    }

    let row = Row {
        theorem_id: "convexity".to_string(),
        fn_spec: args.fn_spec.clone(),
        a: Some(args.a),
        b: Some(args.b),
        m: Some(args.m),
        alpha: Some(args.alpha),
        p: (!args.raw).then_some(args.p),
        n: (!args.raw).then_some(args.n),
        lambda: None,
        r: None,
        lhs: Some(result.max_violation),
        rhs: Some(tol),
        margin: Some(tol - result.max_violation),
        hypothesis_ok: Some(result.passed),
        status: if result.passed { "HOLDS" } else { "HYP_FAIL" }.to_string(),
    };
    let failures = u64::from(!result.passed);
    print_rows(format, None, tol, &[row], failures);
    Ok(failures)
}

fn run_means(args: &MeansArgs, format: Format, tol_flag: Option<f64>) -> Result<u64, Error> {
    let tol = resolve_tol(tol_flag, 1e-8)?;
    let kinds: Vec<MeanKind> = match &args.kind {
        Some(k) => vec![k.parse::<MeanKind>()?],
        None => {
            let mut all = vec![
                MeanKind::Arithmetic,
                MeanKind::Geometric,
                MeanKind::Harmonic,
                MeanKind::Logarithmic,
                MeanKind::Identric,
            ];
            if args.r.is_some() {
                all.push(MeanKind::GeneralizedLog);
            }
            all
        }
    };

    let mut values = Vec::new();
    for kind in kinds {
        let r = if kind == MeanKind::GeneralizedLog {
            Some(args.r.ok_or_else(|| Error::Param("Lr requires --r".into()))?)
        } else {
            None
        };
        values.push((kind, r, mean(kind, args.a, args.b, r)?));
    }

    match format {
        Format::Csv => {
            println!("{MEANS_HEADER}");
            for (kind, r, value) in &values {
                println!(
                    "{},{},{},{},{}",
                    kind,
                    fmt_f(args.a),
                    fmt_f(args.b),
                    csv_opt_f(*r),
                    fmt_f(*value)
                );
            }
        }
        Format::Json => {
            let rows: Vec<String> = values
                .iter()
                .map(|(kind, r, value)| {
                    format!(
                        "{{\"kind\":{},\"a\":{},\"b\":{},\"r\":{},\"value\":{}}}",
                        json_str(&kind.to_string()),
                        json_f(args.a),
                        json_f(args.b),
                        json_opt_f(*r),
                        json_f(*value)
                    )
                })
                .collect();
            println!(
                "{{\"meta\":{{\"seed\":null,\"tol\":{},\"version\":{}}},\"rows\":[{}],\"summary\":{{\"checked\":{},\"violations\":0,\"min_margin\":null}}}}",
                json_f(tol),
                json_str(env!("CARGO_PKG_VERSION")),
                rows.join(","),
                values.len(),
            );
        }
    }
    Ok(0)
}

fn run_consistency(
    args: &ConsistencyArgs,
    format: Format,
    tol_flag: Option<f64>,
) -> Result<u64, Error> {
    let tol = resolve_tol(tol_flag, 1e-8)?;
    let pair: ConsistencyPair = args.pair.parse()?;
    let f: TestFunction = args.fn_spec.parse()?;
    let out = consistency_check(pair, &f, args.a, args.b, args.m, args.alpha, args.p)?;
    let failures = u64::from(!out.matched);
    print_consistency(format, tol, &out, failures);
    Ok(failures)
}

fn print_consistency(format: Format, tol: f64, out: &ConsistencyOutcome, failures: u64) {
    match format {
        Format::Csv => {
            println!("{CONSISTENCY_HEADER}");
            println!(
                "{},{},{},{},{},{},{},{},{},{},{}",
                out.pair,
                csv_field(&out.fn_spec),
                fmt_f(out.a),
                fmt_f(out.b),
                fmt_f(out.m),
                fmt_f(out.alpha),
                fmt_f(out.p),
                fmt_f(out.value_a),
                fmt_f(out.value_b),
                fmt_f(out.rel_diff),
                out.matched
            );
        }
        Format::Json => {
            println!(
                "{{\"meta\":{{\"seed\":null,\"tol\":{},\"version\":{}}},\"rows\":[{{\"pair\":{},\"fn\":{},\"a\":{},\"b\":{},\"m\":{},\"alpha\":{},\"p\":{},\"value_a\":{},\"value_b\":{},\"rel_diff\":{},\"matched\":{}}}],\"summary\":{{\"checked\":1,\"violations\":{},\"min_margin\":null}}}}",
                json_f(tol),
                json_str(env!("CARGO_PKG_VERSION")),
                json_str(&out.pair.to_string()),
                json_str(&out.fn_spec),
                json_f(out.a),
                json_f(out.b),
                json_f(out.m),
                json_f(out.alpha),
                json_f(out.p),
                json_f(out.value_a),
                json_f(out.value_b),
                json_f(out.rel_diff),
                out.matched,
                failures,
            );
        }
    }
}

fn run_sweep(args: &SweepArgs, format: Format, tol_flag: Option<f64>) -> Result<u64, Error> {
    let content = std::fs::read_to_string(&args.config)
        .map_err(|e| Error::Param(format!("cannot read config '{}': {e}", args.config)))?;
    let mut spec: SweepSpec = serde_json::from_str(&content)
        .map_err(|e| Error::Param(format!("invalid sweep config '{}': {e}", args.config)))?;
    if let Some(samples) = args.samples {
        spec.samples = samples;
    }
    if let Some(seed) = args.seed {
        spec.seed = seed;
    }
    if let Some(tol) = tol_flag {
        spec.tol = tol;
    } else if let Ok(s) = std::env::var("HHVERIFY_TOL") {
        spec.tol = s
            .trim()
            .parse::<f64>()
            .map_err(|e| Error::Param(format!("HHVERIFY_TOL is not a number ('{s}'): {e}")))?;
    }

    let report = sweep(&spec)?;

    let mut rows = Vec::with_capacity(report.rows.len());
    let mut printed_errors = 0;
    for sample in &report.rows {
        match &sample.outcome {
            Some(outcome) => rows.push(Row::from_outcome(outcome)),
            None => {
                if printed_errors < 5 {
                    eprintln!(
                        "sample {} failed: {}",
                        sample.index,
                        sample.error.as_deref().unwrap_or("unknown error")
                    );
                    printed_errors += 1;
                }
                rows.push(Row {
                    theorem_id: report.theorem_id.clone(),
                    fn_spec: sample.fn_spec.clone().unwrap_or_default(),
                    a: None,
                    b: None,
                    m: None,
                    alpha: None,
                    p: None,
                    n: None,
                    lambda: None,
                    r: None,
                    lhs: None,
                    rhs: None,
                    margin: None,
                    hypothesis_ok: None,
                    status: "ERROR".to_string(),
                });
            }
        }
    }
    if report.errors > 5 {
        eprintln!("... and {} more failed samples", report.errors - 5);
    }

    let failures = report.violations.len() as u64 + report.errors;
    match format {
        Format::Csv => {
            println!("{BOUND_HEADER}");
            if !args.summary_only {
                for row in &rows {
                    println!("{}", row.to_csv());
                }
            }
            eprintln!(
                "checked={} violations={} errors={} min_margin={} seed={}",
                report.checked,
                report.violations.len(),
                report.errors,
                report
                    .min_margin
                    .map(fmt_f)
                    .unwrap_or_else(|| "n/a".into()),
                report.seed
            );
        }
        Format::Json => {
            let body: Vec<String> = if args.summary_only {
                Vec::new()
            } else {
                rows.iter().map(Row::to_json).collect()
            };
            println!(
                "{{\"meta\":{{\"seed\":{},\"tol\":{},\"version\":{}}},\"rows\":[{}],\"summary\":{{\"checked\":{},\"violations\":{},\"min_margin\":{}}}}}",
                report.seed,
                json_f(report.tol),
                json_str(env!("CARGO_PKG_VERSION")),
                body.join(","),
                report.checked,
                report.violations.len(),
                json_opt_f(report.min_margin),
            );
        }
    }
    Ok(failures)
}

fn run(cli: &Cli) -> Result<u64, Error> {
    if let Some(jobs) = cli.jobs {
        if jobs > 0 {
            rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build_global()
                .map_err(|e| Error::Param(format!("cannot set up {jobs} worker threads: {e}")))?;
        }
    }
    match &cli.command {
        Command::Identity(args) => run_identity(args, cli.format, cli.tol),
        Command::Bound(args) => run_bound(args, cli.format, cli.tol),
        Command::Convexity(args) => run_convexity(args, cli.format, cli.tol),
        Command::Means(args) => run_means(args, cli.format, cli.tol),
        Command::Consistency(args) => run_consistency(args, cli.format, cli.tol),
        Command::Sweep(args) => run_sweep(args, cli.format, cli.tol),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(0) => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
