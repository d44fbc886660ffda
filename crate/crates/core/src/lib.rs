//! Numerical verification of Hermite-Hadamard-type integral identities and
//! bounds for functions whose higher-order derivatives satisfy an
//! (alpha, m)-convexity hypothesis.
//!
//! The crate evaluates both sides of every supported identity and bound on a
//! catalog of test functions with closed-form derivatives, checks the
//! convexity hypotheses those bounds assume, cross-checks specializations
//! against the bounds they degenerate from, and sweeps parameter space
//! looking for counterexamples.
//!
//! Modules build on each other from the bottom up:
//!
//! * [`funclib`]: test functions with exact derivatives of every order
//! * [`quad`]: adaptive Gauss-Kronrod quadrature
//! * [`convexity`]: grid verification of (alpha, m)-convexity
//! * [`deviations`]: left-hand sides (trapezoid, midpoint, weighted gaps)
//! * [`bounds`]: right-hand sides, bound evaluation, cross-checks
//! * [`means`]: classical means and the mean-comparison checks
//! * [`falsify`]: seeded quasi-random parameter sweeps

// Pinned reference constants keep their full tabulated digits even where
// f64 cannot distinguish the tail.
#![allow(clippy::excessive_precision)]
// Validation uses !(a < b) style comparisons on purpose: they treat NaN
// as out of range instead of silently letting it through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod convexity;
pub mod deviations;
pub mod falsify;
pub mod funclib;
pub mod means;
pub mod quad;

pub use bounds::{
    consistency_check, evaluate_bound, gamma, BoundOutcome, BoundParams, ConsistencyOutcome,
    ConsistencyPair, HypOptions, Status, TheoremId, Variant,
};
pub use convexity::{check_alpha_m_convex, check_hypothesis, CheckResult, Hypothesis, Witness};
pub use deviations::{
    identity_residual, lambda_deviation, lemma_rhs, midpoint_deviation, recurrence_residual,
    recurrence_sides, trapezoid_deviation, DevParams,
};
pub use falsify::{min_margin, sweep, Ranges, SweepReport, SweepRow, SweepSpec, ViolationRecord};
pub use funclib::TestFunction;
pub use means::{mean, prop_check, MeanKind};
pub use quad::{integrate, kernel_moment, QuadResult};

/// Errors shared by every module in the crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A function was evaluated outside its domain.
    #[error("domain error: {what} at x = {x}")]
    Domain { what: &'static str, x: f64 },

    /// A parameter failed validation before any numerics ran.
    #[error("parameter error: {0}")]
    Param(String),

    /// Adaptive quadrature exhausted its evaluation budget.
    #[error("quadrature did not converge after {evaluations} evaluations (error estimate {estimate:e})")]
    NoConvergence { evaluations: u64, estimate: f64 },

    /// A sweep finished without a single hypothesis-passing sample.
    #[error("sweep produced no hypothesis-passing sample to report on")]
    EmptySweep,

    /// Rejection sampling could not find a feasible parameter tuple.
    #[error("parameter ranges admit no feasible tuple (gave up after {attempts} attempts)")]
    InfeasibleRanges { attempts: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Param(msg()))
    }
}
