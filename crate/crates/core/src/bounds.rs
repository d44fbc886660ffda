//! Right-hand sides of the supported bounds, bound evaluation, and
//! cross-checks between specializations and the bounds they come from.
//!
//! Every bound is identified by a [`TheoremId`]. [`evaluate_bound`] computes
//! the left side from [`crate::deviations`], the right side from the
//! `rhs_*` formula, optionally verifies the convexity hypothesis, and
//! reports the margin `rhs - lhs` together with a status.

use crate::convexity::{self, check_alpha_m_convex, check_hypothesis, CheckResult, Hypothesis};
use crate::deviations::{lambda_deviation, midpoint_deviation, trapezoid_deviation, DevParams};
use crate::funclib::{factorial, TestFunction};
use crate::means;
use crate::quad::{self, integrate};
use crate::{require, Error, Result};

use std::fmt;
use std::str::FromStr;

/// Default tolerance below which a negative margin counts as a violation.
pub const DEFAULT_STATUS_TOL: f64 = 1e-8;

/// Identifier of a bound or identity family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TheoremId {
    /// The two-sided midpoint/trapezoid chain for convex f.
    Hh,
    /// Second-order midpoint bound under m-convexity of |f''|^q.
    Thm11,
    /// Second-order lambda-weighted bound under convexity of |f''|.
    Thm12,
    /// Second-order trapezoid bound under (alpha, m)-convexity of |f''|^q.
    Thm13,
    /// n-th order trapezoid bound, power-mean form.
    Thm31,
    /// n-th order trapezoid bound, split-kernel Hoelder form.
    Thm32,
    /// n-th order trapezoid bound, kernel-inside Hoelder form.
    Thm33,
    /// Thm32 specialized to n = 2, m = alpha = 1.
    CorE,
    /// Thm33 specialized to n = 2, m = alpha = 1.
    CorK,
    /// Mean-comparison consequences, numbered 1 through 6.
    Prop(u8),
}

impl TheoremId {
    pub const ALL: [TheoremId; 15] = [
        TheoremId::Hh,
        TheoremId::Thm11,
        TheoremId::Thm12,
        TheoremId::Thm13,
        TheoremId::Thm31,
        TheoremId::Thm32,
        TheoremId::Thm33,
        TheoremId::CorE,
        TheoremId::CorK,
        TheoremId::Prop(1),
        TheoremId::Prop(2),
        TheoremId::Prop(3),
        TheoremId::Prop(4),
        TheoremId::Prop(5),
        TheoremId::Prop(6),
    ];
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TheoremId::Hh => write!(f, "hh"),
            TheoremId::Thm11 => write!(f, "thm1.1"),
            TheoremId::Thm12 => write!(f, "thm1.2"),
            TheoremId::Thm13 => write!(f, "thm1.3"),
            TheoremId::Thm31 => write!(f, "thm3.1"),
            TheoremId::Thm32 => write!(f, "thm3.2"),
            TheoremId::Thm33 => write!(f, "thm3.3"),
            TheoremId::CorE => write!(f, "cor_e"),
            TheoremId::CorK => write!(f, "cor_k"),
            TheoremId::Prop(i) => write!(f, "prop{i}"),
        }
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hh" => Ok(TheoremId::Hh),
            "thm1.1" => Ok(TheoremId::Thm11),
            "thm1.2" => Ok(TheoremId::Thm12),
            "thm1.3" => Ok(TheoremId::Thm13),
            "thm3.1" => Ok(TheoremId::Thm31),
            "thm3.2" => Ok(TheoremId::Thm32),
            "thm3.3" => Ok(TheoremId::Thm33),
            "cor_e" => Ok(TheoremId::CorE),
            "cor_k" => Ok(TheoremId::CorK),
            "prop1" => Ok(TheoremId::Prop(1)),
            "prop2" => Ok(TheoremId::Prop(2)),
            "prop3" => Ok(TheoremId::Prop(3)),
            "prop4" => Ok(TheoremId::Prop(4)),
            "prop5" => Ok(TheoremId::Prop(5)),
            "prop6" => Ok(TheoremId::Prop(6)),
            other => Err(Error::Param(format!("unknown theorem id '{other}'"))),
        }
    }
}

/// Which right-hand side of a proposition to evaluate: the display as
/// printed, or the one re-derived from the parent bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Variant {
    #[default]
    Literal,
    Derived,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::Literal => write!(f, "literal"),
            Variant::Derived => write!(f, "derived"),
        }
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "literal" => Ok(Variant::Literal),
            "derived" => Ok(Variant::Derived),
            other => Err(Error::Param(format!("unknown variant '{other}'"))),
        }
    }
}

/// Verdict for one evaluated bound instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    /// margin >= -tol (and the hypothesis passed, if checked).
    Holds,
    /// margin < -tol with a passing (or unchecked) hypothesis.
    Violated,
    /// The convexity hypothesis failed, so the bound does not apply.
    HypFail,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Holds => "HOLDS",
            Status::Violated => "VIOLATED",
            Status::HypFail => "HYP_FAIL",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Grid settings for the optional hypothesis verification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypOptions {
    pub grid: u32,
    pub tol: f64,
}

impl Default for HypOptions {
    fn default() -> Self {
        HypOptions {
            grid: convexity::DEFAULT_GRID,
            tol: convexity::DEFAULT_TOL,
        }
    }
}

/// Parameters of one bound instance. Which fields are consumed depends on
/// the theorem; supplying a parameter a theorem does not take is an error.
///
/// The `p` field always carries the exponent the bound is stated in:
/// the Hoelder exponent p for thm3.1/thm3.2/thm3.3/cor_k and the
/// propositions, the exponent q of the bracket for thm1.1/thm1.3/cor_e.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundParams {
    pub a: f64,
    pub b: f64,
    pub m: f64,
    pub alpha: f64,
    pub p: Option<f64>,
    pub n: Option<u32>,
    pub lambda: Option<f64>,
    pub r: Option<f64>,
    pub variant: Variant,
    pub quad_tol: f64,
}

impl BoundParams {
    pub fn new(a: f64, b: f64) -> Self {
        BoundParams {
            a,
            b,
            m: 1.0,
            alpha: 1.0,
            p: None,
            n: None,
            lambda: None,
            r: None,
            variant: Variant::Literal,
            quad_tol: quad::DEFAULT_TOL,
        }
    }
}

/// Everything known about one evaluated bound instance.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundOutcome {
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
    /// rhs - lhs; nonnegative when the bound holds.
    pub margin: f64,
    /// True when the hypothesis passed, or was not checked / is assumed.
    pub hypothesis_ok: bool,
    /// Grid scan detail when the hypothesis was actually checked.
    pub hypothesis: Option<CheckResult>,
    /// For the two-branch lambda bound: (low branch, high branch).
    pub branches: Option<(f64, f64)>,
    pub status: Status,
}

impl BoundOutcome {
    pub(crate) fn finish(mut self, tol: f64) -> Self {
        self.margin = self.rhs - self.lhs;
        self.status = if !self.hypothesis_ok {
            Status::HypFail
        } else if self.margin < -tol {
            Status::Violated
        } else {
            Status::Holds
        };
        self
    }
}

/// Euler gamma function on (0, 50], via a 9-term Lanczos sum (g = 7).
/// Relative error stays below 1e-12 across the supported range.
pub fn gamma(x: f64) -> Result<f64> {
    const LANCZOS_G: f64 = 7.0;
    const LANCZOS_C: [f64; 9] = [
        0.99999999999980993227684700473478,
        676.520368121885098567009190444019,
        -1259.13921672240287047156078755283,
        771.3234287776530788486528258894,
        -176.61502916214059906584551354,
        12.507343278686904814458936853,
        -0.13857109526572011689554707,
        9.984369578019570859563e-6,
        1.50563273514931155834e-7,
    ];

    if !(x > 0.0 && x <= 50.0) {
        return Err(Error::Param(format!(
            "gamma is supported on (0, 50], got {x}"
        )));
    }
    // Shift small arguments up with Gamma(x) = Gamma(x + 1) / x so the
    // Lanczos sum only ever runs on x >= 0.5, where it is most accurate.
    if x < 0.5 {
        return Ok(gamma(x + 1.0)? / x);
    }

    let z = x - 1.0;
    let mut sum = LANCZOS_C[0];
    for (k, c) in LANCZOS_C.iter().enumerate().skip(1) {
        sum += c / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    Ok((2.0 * std::f64::consts::PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * sum)
}

fn validate_trapezoid_geometry(a: f64, b: f64, m: f64, alpha: f64) -> Result<()> {
    require(
        a.is_finite() && b.is_finite() && b > a && a > 0.0,
        || format!("need b > a > 0, got a={a} b={b}"),
    )?;
    require(m > 0.0 && m <= 1.0, || format!("need m in (0,1], got {m}"))?;
    require(a < m * b, || format!("need a < m*b, got a={a} m*b={}", m * b))?;
    require(alpha > 0.0 && alpha <= 1.0, || {
        format!("need alpha in (0,1], got {alpha}")
    })
}

/// Conjugate exponent: 1/p + 1/q = 1.
fn conjugate(p: f64) -> f64 {
    p / (p - 1.0)
}

/// Power-mean right side of the n-th order trapezoid bound.
/// `fa` and `fb` are |f^(n)(a)| and |f^(n)(b)|.
#[allow(clippy::too_many_arguments)]
pub fn rhs_thm31(
    fa: f64,
    fb: f64,
    a: f64,
    b: f64,
    m: f64,
    alpha: f64,
    p: f64,
    n: u32,
) -> Result<f64> {
    validate_trapezoid_geometry(a, b, m, alpha)?;
    require(n >= 2, || format!("need n >= 2, got {n}"))?;
    require(p >= 1.0 && p.is_finite(), || format!("need p >= 1, got {p}"))?;
    let nf = n as f64;
    let d = m * b - a;
    let lead = 0.5 * d.powi(n as i32) / factorial(n);
    let moment = (nf - 1.0) / (nf + 1.0);
    let c = (nf * (nf - 1.0) + alpha * (nf - 2.0)) / ((nf + alpha) * (nf + alpha + 1.0));
    let bracket = c * fa.powf(p) + m * (moment - c) * fb.powf(p);
    Ok(lead * moment.powf(1.0 - 1.0 / p) * bracket.powf(1.0 / p))
}

/// Split-kernel Hoelder right side of the n-th order trapezoid bound.
#[allow(clippy::too_many_arguments)]
pub fn rhs_thm32(
    fa: f64,
    fb: f64,
    a: f64,
    b: f64,
    m: f64,
    alpha: f64,
    p: f64,
    n: u32,
) -> Result<f64> {
    validate_trapezoid_geometry(a, b, m, alpha)?;
    require(n >= 2, || format!("need n >= 2, got {n}"))?;
    require(p > 1.0 && p.is_finite(), || format!("need p > 1, got {p}"))?;
    let q = conjugate(p);
    let nf = n as f64;
    let d = m * b - a;
    let lead = 0.5 * d.powi(n as i32) / factorial(n);
    let kern = ((nf.powf(q + 1.0) - (nf - 2.0).powf(q + 1.0)) / (2.0 * (q + 1.0))).powf(1.0 / q);
    let s = p * (nf - 1.0);
    let bracket = fa.powf(p) / (s + alpha + 1.0)
        + m * alpha * fb.powf(p) / ((s + 1.0) * (s + alpha + 1.0));
    Ok(lead * kern * bracket.powf(1.0 / p))
}

/// Kernel-inside Hoelder right side of the n-th order trapezoid bound.
#[allow(clippy::too_many_arguments)]
pub fn rhs_thm33(
    fa: f64,
    fb: f64,
    a: f64,
    b: f64,
    m: f64,
    alpha: f64,
    p: f64,
    n: u32,
) -> Result<f64> {
    validate_trapezoid_geometry(a, b, m, alpha)?;
    require(n >= 2, || format!("need n >= 2, got {n}"))?;
    require(p >= 1.0 && p.is_finite(), || format!("need p >= 1, got {p}"))?;
    let nf = n as f64;
    let d = m * b - a;
    let s = p * (nf - 1.0);
    let e_a = ((nf - 2.0) * (s + alpha) + 2.0 * (nf - 1.0))
        / ((s + alpha + 1.0) * (s + alpha + 2.0));
    let e_t = (nf - 1.0) * (p * (nf - 2.0) + 2.0) / ((s + 1.0) * (s + 2.0));
    let lead = (nf - 1.0).powf(1.0 - 1.0 / p) * 0.5 * d.powi(n as i32) / factorial(n);
    let bracket = e_a * fa.powf(p) + m * (e_t - e_a) * fb.powf(p);
    Ok(lead * bracket.powf(1.0 / p))
}

/// Gamma-ratio right side of the second-order midpoint bound.
/// `fa` is |f''(a)| and `fbm` is |f''(b/m)|.
pub fn rhs_thm11(fa: f64, fbm: f64, a: f64, b: f64, m: f64, q: f64) -> Result<f64> {
    require(a.is_finite() && b.is_finite() && a < b, || {
        format!("need a < b, got a={a} b={b}")
    })?;
    require(m > 0.0 && m <= 1.0, || format!("need m in (0,1], got {m}"))?;
    require(q > 1.0 && q.is_finite(), || format!("need q > 1, got {q}"))?;
    let p = conjugate(q);
    let ratio = gamma(1.0 + p)? / gamma(1.5 + p)?;
    let bracket = 0.5 * (fa.powf(q) + m * fbm.powf(q));
    Ok((b - a).powi(2) / 8.0 * ratio.powf(1.0 / p) * bracket.powf(1.0 / q))
}

/// Both branches of the second-order lambda-weighted bound:
/// (low branch stated for lambda <= 1/2, high branch for lambda >= 1/2).
pub fn rhs_thm12_branches(
    fa: f64,
    fb: f64,
    a: f64,
    b: f64,
    lambda: f64,
) -> Result<(f64, f64)> {
    require(a.is_finite() && b.is_finite() && a < b, || {
        format!("need a < b, got a={a} b={b}")
    })?;
    require((0.0..=1.0).contains(&lambda), || {
        format!("need lambda in [0,1], got {lambda}")
    })?;
    let w = (b - a).powi(2);
    let l = lambda;
    let ca = l.powi(4) + (1.0 + l) * (1.0 - l).powi(3) + (5.0 * l - 3.0) / 4.0;
    let cb = l.powi(4) + (2.0 - l) * l.powi(3) + (1.0 - 3.0 * l) / 4.0;
    let low = w / 24.0 * (ca * fa + cb * fb);
    let high = w / 48.0 * (3.0 * l - 1.0) * (fa + fb);
    Ok((low, high))
}

/// Power-mean right side of the second-order trapezoid bound.
pub fn rhs_thm13(fa: f64, fb: f64, a: f64, b: f64, m: f64, alpha: f64, q: f64) -> Result<f64> {
    validate_trapezoid_geometry(a, b, m, alpha)?;
    require(q >= 1.0 && q.is_finite(), || format!("need q >= 1, got {q}"))?;
    let d = m * b - a;
    let c = 1.0 / ((alpha + 2.0) * (alpha + 3.0));
    let bracket = c * fa.powf(q) + m * fb.powf(q) * (1.0 / 6.0 - c);
    Ok(d.powi(2) / 2.0 * (1.0f64 / 6.0).powf(1.0 - 1.0 / q) * bracket.powf(1.0 / q))
}

/// Right side of the split-kernel corollary at n = 2, m = alpha = 1,
/// exactly as displayed (bracket in powers of q).
pub fn rhs_cor_e(fa: f64, fb: f64, a: f64, b: f64, q: f64) -> Result<f64> {
    require(a.is_finite() && b.is_finite() && a < b, || {
        format!("need a < b, got a={a} b={b}")
    })?;
    require(q > 1.0 && q.is_finite(), || format!("need q > 1, got {q}"))?;
    let p = conjugate(q);
    let lead = (b - a).powi(2) / (2.0 * (p + 1.0).powf(1.0 / p) * (q + 2.0).powf(1.0 / q));
    let bracket = ((q + 1.0) * fa.powf(q) + fb.powf(q)) / (q + 1.0);
    Ok(lead * bracket.powf(1.0 / q))
}

/// Right side of the kernel-inside corollary at n = 2, m = alpha = 1.
pub fn rhs_cor_k(fa: f64, fb: f64, a: f64, b: f64, p: f64) -> Result<f64> {
    require(a.is_finite() && b.is_finite() && a < b, || {
        format!("need a < b, got a={a} b={b}")
    })?;
    require(p >= 1.0 && p.is_finite(), || format!("need p >= 1, got {p}"))?;
    let lead = (b - a).powi(2) / 2.0f64.powf(2.0 - 1.0 / p);
    let bracket =
        ((p + 1.0) * fa.powf(p) + 2.0 * fb.powf(p)) / ((p + 1.0) * (p + 2.0) * (p + 3.0));
    Ok(lead * bracket.powf(1.0 / p))
}

fn forbid_params(
    id: TheoremId,
    params: &BoundParams,
    p: bool,
    n: bool,
    lambda: bool,
    r: bool,
) -> Result<()> {
    if p && params.p.is_some() {
        return Err(Error::Param(format!("{id} does not take an exponent p")));
    }
    if n && params.n.is_some() && params.n != Some(2) {
        return Err(Error::Param(format!(
            "{id} is a second-order bound; n can only be 2"
        )));
    }
    if lambda && params.lambda.is_some() {
        return Err(Error::Param(format!("{id} does not take lambda")));
    }
    if r && params.r.is_some() {
        return Err(Error::Param(format!("{id} does not take r")));
    }
    Ok(())
}

fn need_p(id: TheoremId, params: &BoundParams) -> Result<f64> {
    params
        .p
        .ok_or_else(|| Error::Param(format!("{id} requires an exponent")))
}

/// Evaluates one bound instance: left side, right side, optional
/// hypothesis check, margin, and status.
///
/// `tol` is the status tolerance: margins below `-tol` count as violations.
/// `hyp` enables the convexity hypothesis scan; when `None` the hypothesis
/// is assumed to hold.
pub fn evaluate_bound(
    id: TheoremId,
    f: &TestFunction,
    params: &BoundParams,
    tol: f64,
    hyp: Option<&HypOptions>,
) -> Result<BoundOutcome> {
    require(tol >= 0.0, || format!("status tolerance must be >= 0, got {tol}"))?;
    require(params.quad_tol > 0.0, || {
        format!("quadrature tolerance must be positive, got {}", params.quad_tol)
    })?;

    let base = BoundOutcome {
        theorem_id: id,
        fn_spec: f.to_string(),
        a: params.a,
        b: params.b,
        m: params.m,
        alpha: params.alpha,
        p: params.p,
        n: params.n,
        lambda: params.lambda,
        r: params.r,
        variant: params.variant,
        lhs: f64::NAN,
        rhs: f64::NAN,
        margin: f64::NAN,
        hypothesis_ok: true,
        hypothesis: None,
        branches: None,
        status: Status::Holds,
    };

    let (a, b, m, alpha) = (params.a, params.b, params.m, params.alpha);

    match id {
        TheoremId::Hh => {
            forbid_params(id, params, true, false, true, true)?;
            require(params.n.is_none(), || "hh does not take n".to_string())?;
            require(m == 1.0 && alpha == 1.0, || {
                "hh is stated for m = alpha = 1".to_string()
            })?;
            require(a.is_finite() && b.is_finite() && a < b, || {
                format!("need a < b, got a={a} b={b}")
            })?;
            let avg = integrate(|x| f.eval(x), a, b, params.quad_tol)?.value / (b - a);
            let trap = 0.5 * (f.eval(a)? + f.eval(b)?);
            let mid = f.eval(0.5 * (a + b))?;
            // Sum of both gap magnitudes: zero margin iff the full chain
            // midpoint <= average <= trapezoid holds.
            let lhs = (trap - avg).abs() + (avg - mid).abs();
            let rhs = trap - mid;
            let mut out = base;
            out.lhs = lhs;
            out.rhs = rhs;
            if let Some(h) = hyp {
                let check =
                    check_alpha_m_convex(|x| f.eval(x), 1.0, 1.0, (a, b), h.grid, h.tol)?;
                out.hypothesis_ok = check.passed;
                out.hypothesis = Some(check);
            }
            Ok(out.finish(tol))
        }
        TheoremId::Thm11 => {
            forbid_params(id, params, false, true, true, true)?;
            let q = need_p(id, params)?;
            require(a >= 0.0, || format!("need a >= 0, got {a}"))?;
            require(m > 0.0 && m <= 1.0, || format!("need m in (0,1], got {m}"))?;
            let lhs = midpoint_deviation(f, a, b, params.quad_tol)?;
            let fa = f.deriv(2, a)?.abs();
            let fbm = f.deriv(2, b / m)?.abs();
            let rhs = rhs_thm11(fa, fbm, a, b, m, q)?;
            let mut out = base;
            out.n = Some(2);
            out.lhs = lhs;
            out.rhs = rhs;
            if let Some(h) = hyp {
                let g = |x: f64| Ok(f.deriv(2, x)?.abs().powf(q));
                let check = check_alpha_m_convex(g, 1.0, m, (a, b), h.grid, h.tol)?;
                out.hypothesis_ok = check.passed;
                out.hypothesis = Some(check);
            }
            Ok(out.finish(tol))
        }
        TheoremId::Thm12 => {
            forbid_params(id, params, true, true, false, true)?;
            require(m == 1.0 && alpha == 1.0, || {
                "thm1.2 is stated for m = alpha = 1".to_string()
            })?;
            let lambda = params
                .lambda
                .ok_or_else(|| Error::Param("thm1.2 requires lambda".into()))?;
            let lhs = lambda_deviation(f, a, b, lambda, params.quad_tol)?;
            let fa = f.deriv(2, a)?.abs();
            let fb = f.deriv(2, b)?.abs();
            let branches = rhs_thm12_branches(fa, fb, a, b, lambda)?;
            // The branch whose stated lambda-interval contains lambda
            // governs; exactly at 1/2, the low branch (listed first) does.
            let rhs = if lambda <= 0.5 { branches.0 } else { branches.1 };
            let mut out = base;
            out.n = Some(2);
            out.lhs = lhs;
            out.rhs = rhs;
            out.branches = Some(branches);
            if let Some(h) = hyp {
                let g = |x: f64| Ok(f.deriv(2, x)?.abs());
                let check = check_alpha_m_convex(g, 1.0, 1.0, (a, b), h.grid, h.tol)?;
                out.hypothesis_ok = check.passed;
                out.hypothesis = Some(check);
            }
            Ok(out.finish(tol))
        }
        TheoremId::Thm13 => {
            forbid_params(id, params, false, true, true, true)?;
            let q = need_p(id, params)?;
            let dev = DevParams {
                a,
                b,
                m,
                n: 2,
                quad_tol: params.quad_tol,
            };
            let lhs = trapezoid_deviation(f, &dev)?.abs();
            let fa = f.deriv(2, a)?.abs();
            let fb = f.deriv(2, b)?.abs();
            let rhs = rhs_thm13(fa, fb, a, b, m, alpha, q)?;
            let mut out = base;
            out.n = Some(2);
            out.lhs = lhs;
            out.rhs = rhs;
            if let Some(h) = hyp {
                let hypothesis = Hypothesis {
                    a,
                    b,
                    m,
                    alpha,
                    p: q,
                    n: 2,
                    check_domain: None,
                };
                let check = check_hypothesis(f, &hypothesis, h.grid, h.tol)?;
                out.hypothesis_ok = check.passed;
                out.hypothesis = Some(check);
            }
            Ok(out.finish(tol))
        }
        TheoremId::Thm31 | TheoremId::Thm32 | TheoremId::Thm33 => {
            forbid_params(id, params, false, false, true, true)?;
            let p = need_p(id, params)?;
            let n = params
                .n
                .ok_or_else(|| Error::Param(format!("{id} requires n")))?;
            let dev = DevParams {
                a,
                b,
                m,
                n,
                quad_tol: params.quad_tol,
            };
            let lhs = trapezoid_deviation(f, &dev)?.abs();
            let fa = f.deriv(n, a)?.abs();
            let fb = f.deriv(n, b)?.abs();
            let rhs = match id {
                TheoremId::Thm31 => rhs_thm31(fa, fb, a, b, m, alpha, p, n)?,
                TheoremId::Thm32 => rhs_thm32(fa, fb, a, b, m, alpha, p, n)?,
                _ => rhs_thm33(fa, fb, a, b, m, alpha, p, n)?,
            };
            let mut out = base;
            out.lhs = lhs;
            out.rhs = rhs;
            if let Some(h) = hyp {
                let hypothesis = Hypothesis {
                    a,
                    b,
                    m,
                    alpha,
                    p,
                    n,
                    check_domain: None,
                };
                let check = check_hypothesis(f, &hypothesis, h.grid, h.tol)?;
                out.hypothesis_ok = check.passed;
                out.hypothesis = Some(check);
            }
            Ok(out.finish(tol))
        }
        TheoremId::CorE | TheoremId::CorK => {
            forbid_params(id, params, false, true, true, true)?;
            let p = need_p(id, params)?;
            require(m == 1.0 && alpha == 1.0, || {
                format!("{id} is stated for m = alpha = 1")
            })?;
            let dev = DevParams {
                a,
                b,
                m: 1.0,
                n: 2,
                quad_tol: params.quad_tol,
            };
            let lhs = trapezoid_deviation(f, &dev)?.abs();
            let fa = f.deriv(2, a)?.abs();
            let fb = f.deriv(2, b)?.abs();
            // For cor_e the supplied exponent is the display's q; the
            // inherited hypothesis exponent is its conjugate.
            let (rhs, hyp_p) = match id {
                TheoremId::CorE => (rhs_cor_e(fa, fb, a, b, p)?, conjugate(p)),
                _ => (rhs_cor_k(fa, fb, a, b, p)?, p),
            };
            let mut out = base;
            out.n = Some(2);
            out.lhs = lhs;
            out.rhs = rhs;
            if let Some(h) = hyp {
                let hypothesis = Hypothesis {
                    a,
                    b,
                    m: 1.0,
                    alpha: 1.0,
                    p: hyp_p,
                    n: 2,
                    check_domain: None,
                };
                let check = check_hypothesis(f, &hypothesis, h.grid, h.tol)?;
                out.hypothesis_ok = check.passed;
                out.hypothesis = Some(check);
            }
            Ok(out.finish(tol))
        }
        TheoremId::Prop(i) => means::prop_check(i, params, tol),
    }
}

/// Pairs of formulas that must (or notably fail to) agree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConsistencyPair {
    /// thm3.1 at n = 2 against the second-order power-mean bound.
    Thm31VsThm13,
    /// thm3.2 at n = 2, m = alpha = 1 against the printed cor_e display
    /// with the q of the display identified with the parent's q.
    CorEVsThm32,
    /// thm3.3 at n = 2, m = alpha = 1 against the printed cor_k display.
    CorKVsThm33,
}

impl fmt::Display for ConsistencyPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConsistencyPair::Thm31VsThm13 => write!(f, "thm31_vs_thm13"),
            ConsistencyPair::CorEVsThm32 => write!(f, "cor_e_vs_thm32"),
            ConsistencyPair::CorKVsThm33 => write!(f, "cor_k_vs_thm33"),
        }
    }
}

impl FromStr for ConsistencyPair {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "thm31_vs_thm13" => Ok(ConsistencyPair::Thm31VsThm13),
            "cor_e_vs_thm32" => Ok(ConsistencyPair::CorEVsThm32),
            "cor_k_vs_thm33" => Ok(ConsistencyPair::CorKVsThm33),
            other => Err(Error::Param(format!("unknown consistency pair '{other}'"))),
        }
    }
}

/// Result of one specialization cross-check.
#[derive(Debug, Clone, PartialEq)]
pub struct ConsistencyOutcome {
    pub pair: ConsistencyPair,
    pub fn_spec: String,
    pub a: f64,
    pub b: f64,
    pub m: f64,
    pub alpha: f64,
    pub p: f64,
    /// The parent formula's value.
    pub value_a: f64,
    /// The specialization's value.
    pub value_b: f64,
    /// |value_a - value_b| / max(|value_a|, |value_b|); 0 when both vanish.
    pub rel_diff: f64,
    /// rel_diff <= 1e-10.
    pub matched: bool,
}

/// Evaluates both members of a consistency pair on the same instance.
///
/// `p` is the parent theorem's exponent. For `CorEVsThm32` the
/// specialization is evaluated at q = p/(p-1), mirroring how its statement
/// names the conjugate pair; the two printed formulas then agree only at
/// the self-conjugate point p = 2.
pub fn consistency_check(
    pair: ConsistencyPair,
    f: &TestFunction,
    a: f64,
    b: f64,
    m: f64,
    alpha: f64,
    p: f64,
) -> Result<ConsistencyOutcome> {
    let fa = f.deriv(2, a)?.abs();
    let fb = f.deriv(2, b)?.abs();
    let (value_a, value_b) = match pair {
        ConsistencyPair::Thm31VsThm13 => (
            rhs_thm31(fa, fb, a, b, m, alpha, p, 2)?,
            rhs_thm13(fa, fb, a, b, m, alpha, p)?,
        ),
        ConsistencyPair::CorEVsThm32 => {
            require(m == 1.0 && alpha == 1.0, || {
                "cor_e_vs_thm32 is stated for m = alpha = 1".to_string()
            })?;
            require(p > 1.0, || format!("need p > 1, got {p}"))?;
            (
                rhs_thm32(fa, fb, a, b, 1.0, 1.0, p, 2)?,
                rhs_cor_e(fa, fb, a, b, conjugate(p))?,
            )
        }
        ConsistencyPair::CorKVsThm33 => {
            require(m == 1.0 && alpha == 1.0, || {
                "cor_k_vs_thm33 is stated for m = alpha = 1".to_string()
            })?;
            (
                rhs_thm33(fa, fb, a, b, 1.0, 1.0, p, 2)?,
                rhs_cor_k(fa, fb, a, b, p)?,
            )
        }
    };
    let scale = value_a.abs().max(value_b.abs());
    let rel_diff = if scale == 0.0 {
        0.0
    } else {
        (value_a - value_b).abs() / scale
    };
    Ok(ConsistencyOutcome {
        pair,
        fn_spec: f.to_string(),
        a,
        b,
        m,
        alpha,
        p,
        value_a,
        value_b,
        rel_diff,
        matched: rel_diff <= 1e-10,
    })
}
