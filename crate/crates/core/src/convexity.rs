//! Grid verification of (alpha, m)-convexity.
//!
//! g is (alpha, m)-convex on a domain D when for all x, y in D and
//! lambda in (0, 1]:
//!
//! ```text
//! g(lambda x + m (1 - lambda) y) <= lambda^alpha g(x) + m (1 - lambda^alpha) g(y)
//! ```
//!
//! Classical convexity is the (1, 1) case. The check here is a dense grid
//! scan: decisive for failures (a witness is a genuine counterexample up to
//! the tolerance), supporting evidence for passes.

use crate::funclib::TestFunction;
use crate::{Error, Result};

/// Default number of grid points per axis.
pub const DEFAULT_GRID: u32 = 64;

/// Default violation tolerance (absolute).
pub const DEFAULT_TOL: f64 = 1e-9;

/// Rounding allowance per scanned triple, relative to the magnitude of
/// the two compared sides. Both sides are a handful of f64 operations,
/// so a deficit below this carries no information about convexity; on
/// large function values an absolute tolerance alone would flag noise.
const SCAN_NOISE: f64 = 256.0 * f64::EPSILON;

/// The convexity hypothesis attached to a bound: which derivative order,
/// which power, which (alpha, m), and where to check it.
#[derive(Debug, Clone, PartialEq)]
pub struct Hypothesis {
    pub a: f64,
    pub b: f64,
    pub m: f64,
    pub alpha: f64,
    /// The power applied to |f^(n)|; 1 checks plain |f^(n)|.
    pub p: f64,
    /// Derivative order; 0 checks f itself.
    pub n: u32,
    /// Explicit check domain; None picks the default for (m, function).
    pub check_domain: Option<(f64, f64)>,
}

impl Hypothesis {
    pub fn validate(&self) -> Result<()> {
        let ok = self.a.is_finite()
            && self.b.is_finite()
            && self.m > 0.0
            && self.m <= 1.0
            && self.alpha > 0.0
            && self.alpha <= 1.0
            && self.p >= 1.0
            && self.p.is_finite();
        if !ok {
            return Err(Error::Param(format!(
                "hypothesis needs finite a, b, m in (0,1], alpha in (0,1], p >= 1; \
                 got a={} b={} m={} alpha={} p={}",
                self.a, self.b, self.m, self.alpha, self.p
            )));
        }
        // The default check domain runs up to m*b, which only makes sense
        // when a sits strictly below it. An explicit domain lifts that
        // restriction.
        if self.check_domain.is_none() && !(self.a < self.m * self.b) {
            return Err(Error::Param(format!(
                "hypothesis needs a < m*b, got a={} m*b={}",
                self.a,
                self.m * self.b
            )));
        }
        if let Some((lo, hi)) = self.check_domain {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::Param(format!(
                    "explicit check domain must be finite with lo < hi, got [{lo}, {hi}]"
                )));
            }
        }
        Ok(())
    }

    /// Domain the convexity scan runs on when none is given explicitly:
    /// [a, b] when m = 1; (0, m b] approached from 1e-6 (or a, whichever is
    /// smaller) when m < 1 and the function blows up at 0; [0, m b]
    /// otherwise.
    pub fn domain_for(&self, f: &TestFunction) -> (f64, f64) {
        if let Some(d) = self.check_domain {
            return d;
        }
        if self.m == 1.0 {
            (self.a, self.b)
        } else if f.singular_at_zero() {
            (self.a.min(1e-6), self.m * self.b)
        } else {
            (0.0, self.m * self.b)
        }
    }
}

/// Worst grid point found by a scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Witness {
    pub x: f64,
    pub y: f64,
    pub lambda: f64,
    /// g at the mixed point.
    pub lhs: f64,
    /// The convex-combination bound at that point.
    pub rhs: f64,
}

/// Outcome of a convexity scan.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    /// True when no grid point violates the inequality by more than tol.
    pub passed: bool,
    /// Largest value of g(mix) - bound over the grid; negative slack counts.
    pub max_violation: f64,
    /// The grid point attaining max_violation.
    pub witness: Option<Witness>,
    pub grid: u32,
    pub domain: (f64, f64),
}

/// Scans an inclusive grid of (x, y, lambda) triples for violations of
/// (alpha, m)-convexity of g on `domain`.
///
/// x and y run over `grid` evenly spaced points including both endpoints;
/// lambda runs over {1/grid, 2/grid, ..., 1}. Fails fast on the first
/// domain error from g.
pub fn check_alpha_m_convex<G>(
    g: G,
    alpha: f64,
    m: f64,
    domain: (f64, f64),
    grid: u32,
    tol: f64,
) -> Result<CheckResult>
where
    G: Fn(f64) -> Result<f64>,
{
    let (lo, hi) = domain;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::Param(format!(
            "check domain must be finite with lo < hi, got [{lo}, {hi}]"
        )));
    }
    if !(m > 0.0 && m <= 1.0 && alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::Param(format!(
            "need m in (0,1] and alpha in (0,1], got m={m} alpha={alpha}"
        )));
    }
    if grid < 8 {
        return Err(Error::Param(format!("grid must be at least 8, got {grid}")));
    }
    if !(tol >= 0.0) {
        return Err(Error::Param(format!("tolerance must be >= 0, got {tol}")));
    }

    let n = grid as usize;
    let step = (hi - lo) / (grid as f64 - 1.0);
    let xs: Vec<f64> = (0..n).map(|i| lo + step * i as f64).collect();
    let gx: Vec<f64> = xs.iter().map(|&x| g(x)).collect::<Result<_>>()?;

    let lams: Vec<f64> = (1..=n).map(|j| j as f64 / grid as f64).collect();
    let lam_pow: Vec<f64> = lams.iter().map(|&l| l.powf(alpha)).collect();

    // Points are ranked by their deficit minus the local rounding
    // allowance, so a genuinely violating point outranks louder noise at
    // larger magnitudes; the reported numbers stay raw.
    let mut worst_excess = f64::NEG_INFINITY;
    let mut max_violation = f64::NEG_INFINITY;
    let mut witness = None;
    for (i, &x) in xs.iter().enumerate() {
        for (j, &y) in xs.iter().enumerate() {
            for (k, &lam) in lams.iter().enumerate() {
                let mix = lam * x + m * (1.0 - lam) * y;
                let lhs = g(mix)?;
                let rhs = lam_pow[k] * gx[i] + m * (1.0 - lam_pow[k]) * gx[j];
                let v = lhs - rhs;
                let noise = SCAN_NOISE * lhs.abs().max(rhs.abs()).max(1.0);
                if v - noise > worst_excess {
                    worst_excess = v - noise;
                    max_violation = v;
                    witness = Some(Witness {
                        x,
                        y,
                        lambda: lam,
                        lhs,
                        rhs,
                    });
                }
            }
        }
    }

    Ok(CheckResult {
        passed: worst_excess <= tol,
        max_violation,
        witness,
        grid,
        domain,
    })
}

/// Checks the hypothesis g = |f^(n)|^p for (alpha, m)-convexity on the
/// hypothesis' check domain.
pub fn check_hypothesis(
    f: &TestFunction,
    hyp: &Hypothesis,
    grid: u32,
    tol: f64,
) -> Result<CheckResult> {
    hyp.validate()?;
    let domain = hyp.domain_for(f);
    let n = hyp.n;
    let p = hyp.p;
    let g = move |x: f64| -> Result<f64> {
        let d = f.deriv(n, x)?.abs();
        Ok(if p == 1.0 { d } else { d.powf(p) })
    };
    check_alpha_m_convex(g, hyp.alpha, hyp.m, domain, grid, tol)
}
