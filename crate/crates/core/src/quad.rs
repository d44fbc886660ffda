//! Adaptive Gauss-Kronrod quadrature on finite intervals.
//!
//! A 7-point Gauss rule embedded in a 15-point Kronrod rule supplies both a
//! value and an error estimate per segment; segments whose estimate exceeds
//! their share of the tolerance are bisected. Processing order is a fixed
//! LIFO, so results are bit-for-bit deterministic.

use crate::{Error, Result};

/// Default absolute tolerance used by the higher-level modules.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Hard cap on integrand evaluations before giving up.
pub const EVAL_BUDGET: u64 = 1 << 20;

/// Abscissae of the 15-point Kronrod rule on [-1, 1]; positive half, in
/// decreasing order, with the center last. Odd indices are the embedded
/// 7-point Gauss abscissae.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

/// Kronrod weights matching XGK.
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

/// Weights of the embedded 7-point Gauss rule; WG[j] pairs with XGK[2j+1],
/// and WG[3] with the center.
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// Result of one integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    /// Accumulated per-segment error estimate (conservative).
    pub error_estimate: f64,
    /// Integrand evaluations actually performed.
    pub evaluations: u64,
}

/// Turns the raw |Kronrod - Gauss| difference into the QUADPACK-style
/// conservative error estimate.
fn rescale_error(err: f64, result_abs: f64, result_asc: f64) -> f64 {
    let err = err.abs();
    let mut out = err;
    if result_asc != 0.0 && err != 0.0 {
        let scale = (200.0 * err / result_asc).powf(1.5);
        out = if scale < 1.0 { result_asc * scale } else { result_asc };
    }
    if result_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        let min_err = 50.0 * f64::EPSILON * result_abs;
        if min_err > out {
            out = min_err;
        }
    }
    out
}

/// One 15-point Kronrod pass over [a, b]. Returns (value, error estimate).
fn qk15<F>(g: &F, a: f64, b: f64) -> Result<(f64, f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let abs_half = half.abs();

    let fc = g(center)?;
    let mut resg = fc * WG[3];
    let mut resk = fc * WGK[7];
    let mut resabs = fc.abs() * WGK[7];
    let mut fv1 = [0.0f64; 7];
    let mut fv2 = [0.0f64; 7];

    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = g(center - dx)?;
        let f2 = g(center + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        let sum = f1 + f2;
        resk += WGK[j] * sum;
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg += WG[j / 2] * sum;
        }
    }

    let mean = resk * 0.5;
    let mut resasc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let value = resk * half;
    let err = rescale_error((resk - resg) * half, resabs * abs_half, resasc * abs_half);
    Ok((value, err, resabs * abs_half))
}

/// Integrates g over [lo, hi] to the given absolute tolerance.
///
/// Bisects adaptively; each segment must meet a tolerance proportional to
/// its share of the full interval, so the accumulated estimate stays at or
/// below `tol` (segments at floating-point resolution are accepted as-is).
/// Fails with [`Error::NoConvergence`] once [`EVAL_BUDGET`] evaluations have
/// been spent, and propagates the first integrand error encountered.
pub fn integrate<F>(g: F, lo: f64, hi: f64, tol: f64) -> Result<QuadResult>
where
    F: Fn(f64) -> Result<f64>,
{
    if !lo.is_finite() || !hi.is_finite() {
        return Err(Error::Param(format!(
            "integration limits must be finite, got [{lo}, {hi}]"
        )));
    }
    if lo >= hi {
        return Err(Error::Param(format!(
            "integration limits must satisfy lo < hi, got [{lo}, {hi}]"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::Param(format!("tolerance must be positive, got {tol}")));
    }

    let total = hi - lo;
    let mut stack = vec![(lo, hi)];
    let mut value = 0.0;
    let mut err_total = 0.0;
    let mut evals: u64 = 0;

    while let Some((a, b)) = stack.pop() {
        if evals + 15 > EVAL_BUDGET {
            return Err(Error::NoConvergence {
                evaluations: evals,
                estimate: err_total,
            });
        }
        let (v, e, resabs) = qk15(&g, a, b)?;
        evals += 15;
        let local_tol = tol * ((b - a) / total);
        // An estimate at the rounding floor of its own magnitude cannot
        // shrink further by splitting; accept such segments as converged.
        let floor = 50.0 * f64::EPSILON * resabs;
        let mid = 0.5 * (a + b);
        let splittable = mid > a && mid < b;
        if e <= local_tol.max(floor) || !splittable {
            value += v;
            err_total += e;
        } else {
            // Push the right half first so the left half is integrated
            // next: strict left-to-right order.
            stack.push((mid, b));
            stack.push((a, mid));
        }
    }

    Ok(QuadResult {
        value,
        error_estimate: err_total,
        evaluations: evals,
    })
}

/// Exact value of the moment integral of the weight t^(n-1) (n - 2t) over
/// [0, 1], which equals (n - 1) / (n + 1).
pub fn kernel_moment(n: u32) -> Result<f64> {
    if n < 1 {
        return Err(Error::Param("kernel moment needs n >= 1".into()));
    }
    Ok((n as f64 - 1.0) / (n as f64 + 1.0))
}
