//! Left-hand sides: the gaps the bounds control.
//!
//! The central object is the n-th order trapezoid deviation
//!
//! ```text
//! D_n(f) = (f(a) + f(mb)) / 2
//!        - 1/(mb - a) * int_a^{mb} f
//!        - 1/2 * sum_{k=2}^{n-1} (k-1) (mb - a)^k / (k+1)! * f^(k)(a)
//! ```
//!
//! (empty sum for n = 1, 2), which equals the weighted remainder integral
//!
//! ```text
//! R_n(f) = 1/2 * (mb - a)^n / n! * int_0^1 t^(n-1) (n - 2t) f^(n)(t a + m (1-t) b) dt
//! ```
//!
//! for every f with an absolutely continuous (n-1)-th derivative.
//! [`identity_residual`] measures |D_n - R_n|; the bounds in
//! [`crate::bounds`] control |D_n|. Midpoint and lambda-weighted gaps for
//! the second-order bounds live here too.

use crate::funclib::{factorial, TestFunction};
use crate::quad::{self, integrate};
use crate::{Error, Result};

/// Common parameter block for the deviation functions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DevParams {
    pub a: f64,
    pub b: f64,
    pub m: f64,
    /// Derivative order of the remainder form.
    pub n: u32,
    /// Absolute tolerance handed to the quadrature.
    pub quad_tol: f64,
}

impl DevParams {
    pub fn new(a: f64, b: f64, m: f64, n: u32) -> Self {
        DevParams {
            a,
            b,
            m,
            n,
            quad_tol: quad::DEFAULT_TOL,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.a.is_finite() && self.b.is_finite() && self.m > 0.0 && self.m <= 1.0) {
            return Err(Error::Param(format!(
                "need finite a, b and m in (0,1]; got a={} b={} m={}",
                self.a, self.b, self.m
            )));
        }
        if !(self.a > 0.0 && self.a < self.m * self.b) {
            return Err(Error::Param(format!(
                "need 0 < a < m*b; got a={} m*b={}",
                self.a,
                self.m * self.b
            )));
        }
        if self.n < 1 {
            return Err(Error::Param("need n >= 1".into()));
        }
        if !(self.quad_tol > 0.0) {
            return Err(Error::Param(format!(
                "quadrature tolerance must be positive, got {}",
                self.quad_tol
            )));
        }
        Ok(())
    }
}

/// Signed n-th order trapezoid deviation D_n(f) over [a, mb].
pub fn trapezoid_deviation(f: &TestFunction, p: &DevParams) -> Result<f64> {
    p.validate()?;
    let (a, mb) = (p.a, p.m * p.b);
    let trap = 0.5 * (f.eval(a)? + f.eval(mb)?);
    let avg = integrate(|x| f.eval(x), a, mb, p.quad_tol)?.value / (mb - a);

    // sum_{k=2}^{n-1} (k-1) (mb-a)^k / (k+1)! * f^(k)(a)
    let mut corr = 0.0;
    for k in 2..p.n {
        let kf = k as f64;
        corr += (kf - 1.0) * (mb - a).powi(k as i32) / factorial(k + 1) * f.deriv(k, a)?;
    }
    Ok(trap - avg - 0.5 * corr)
}

/// Signed weighted remainder integral R_n(f); the other side of the
/// identity.
pub fn lemma_rhs(f: &TestFunction, p: &DevParams) -> Result<f64> {
    p.validate()?;
    let (a, b, m) = (p.a, p.b, p.m);
    let n = p.n;
    let nf = n as f64;
    let g = |t: f64| -> Result<f64> {
        let x = t * a + m * (1.0 - t) * b;
        Ok(t.powi(n as i32 - 1) * (nf - 2.0 * t) * f.deriv(n, x)?)
    };
    let integral = integrate(g, 0.0, 1.0, p.quad_tol)?.value;
    Ok(0.5 * (m * b - a).powi(n as i32) / factorial(n) * integral)
}

/// |D_n(f) - R_n(f)|: how far the two sides of the identity drift apart
/// numerically. Small residuals (at quadrature accuracy) certify the
/// identity on that instance.
pub fn identity_residual(f: &TestFunction, p: &DevParams) -> Result<f64> {
    Ok((trapezoid_deviation(f, p)? - lemma_rhs(f, p)?).abs())
}

/// Both sides of the order-lowering recurrence
///
/// ```text
/// R_n(f) = -(n-2)/2 * (mb-a)^(n-1) / n! * f^(n-1)(a) + R_{n-1}(f)
/// ```
///
/// for n >= 4: returns (R_n + T_{n-1}, R_{n-1}) where T is the correction
/// term above; the two coincide whenever the recurrence holds.
pub fn recurrence_sides(f: &TestFunction, p: &DevParams) -> Result<(f64, f64)> {
    if p.n < 4 {
        return Err(Error::Param(format!(
            "recurrence is stated for n >= 4, got n = {}",
            p.n
        )));
    }
    p.validate()?;
    let s_n = lemma_rhs(f, p)?;
    let prev = DevParams { n: p.n - 1, ..*p };
    let s_prev = lemma_rhs(f, &prev)?;
    let nf = p.n as f64;
    let t = 0.5 * (nf - 2.0) * (p.m * p.b - p.a).powi(p.n as i32 - 1) / factorial(p.n)
        * f.deriv(p.n - 1, p.a)?;
    Ok((s_n + t, s_prev))
}

/// Absolute mismatch of the two [`recurrence_sides`].
pub fn recurrence_residual(f: &TestFunction, p: &DevParams) -> Result<f64> {
    let (lhs, rhs) = recurrence_sides(f, p)?;
    Ok((lhs - rhs).abs())
}

/// |f((a+b)/2) - 1/(b-a) int_a^b f|: the midpoint gap on [a, b].
pub fn midpoint_deviation(f: &TestFunction, a: f64, b: f64, quad_tol: f64) -> Result<f64> {
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::Param(format!("need a < b, got a={a} b={b}")));
    }
    if !(quad_tol > 0.0) {
        return Err(Error::Param(format!(
            "quadrature tolerance must be positive, got {quad_tol}"
        )));
    }
    let avg = integrate(|x| f.eval(x), a, b, quad_tol)?.value / (b - a);
    Ok((f.eval(0.5 * (a + b))? - avg).abs())
}

/// |(lambda - 1) f((a+b)/2) - lambda (f(a) + f(b))/2 + int_a^b f|: the
/// lambda-weighted midpoint/trapezoid combination against the raw integral
/// on [a, b].
///
/// Note the integral is deliberately not divided by (b - a): this is the
/// gap the second-order lambda bound is stated for, and the mismatch in
/// scale is visible (and falsifiable) whenever b - a differs from 1.
pub fn lambda_deviation(
    f: &TestFunction,
    a: f64,
    b: f64,
    lambda: f64,
    quad_tol: f64,
) -> Result<f64> {
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::Param(format!("need a < b, got a={a} b={b}")));
    }
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::Param(format!(
            "lambda must lie in [0, 1], got {lambda}"
        )));
    }
    if !(quad_tol > 0.0) {
        return Err(Error::Param(format!(
            "quadrature tolerance must be positive, got {quad_tol}"
        )));
    }
    let integral = integrate(|x| f.eval(x), a, b, quad_tol)?.value;
    let mid = f.eval(0.5 * (a + b))?;
    let trap = 0.5 * (f.eval(a)? + f.eval(b)?);
    Ok(((lambda - 1.0) * mid - lambda * trap + integral).abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trapezoid_deviation_quadratic_hand_value() {
        // x^2 on [0+, 2] ... use [1, 2]: (1 + 4)/2 - (8 - 1)/3 = 1/6.
        let f = TestFunction::power(2.0);
        let p = DevParams::new(1.0, 2.0, 1.0, 2);
        let d = trapezoid_deviation(&f, &p).unwrap();
        assert!((d - 1.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn identity_holds_for_low_orders_without_correction_sum() {
        // n = 1 and n = 2 share the same left side; both must match their
        // remainder integrals.
        let f = TestFunction::power(3.0);
        for n in [1, 2] {
            let p = DevParams::new(1.0, 2.0, 1.0, n);
            assert!(
                identity_residual(&f, &p).unwrap() < 1e-10,
                "identity failed at n={n}"
            );
        }
    }

    #[test]
    fn identity_holds_with_correction_sum_and_m_below_one() {
        let f = TestFunction::Exponential;
        for n in [3, 4, 5, 6] {
            let p = DevParams::new(0.5, 3.0, 0.75, n);
            assert!(
                identity_residual(&f, &p).unwrap() < 1e-10,
                "identity failed at n={n}"
            );
        }
    }

    #[test]
    fn remainder_vanishes_when_the_nth_derivative_does() {
        // Cubic at n = 4: R_4 = 0, so D_4 must be 0 too.
        let f = TestFunction::power(3.0);
        let p = DevParams::new(1.0, 2.0, 1.0, 4);
        assert!(lemma_rhs(&f, &p).unwrap().abs() < 1e-14);
        assert!(trapezoid_deviation(&f, &p).unwrap().abs() < 1e-10);
    }

    #[test]
    fn recurrence_hand_values_for_quintic() {
        // f = x^5 on [1, 2], m = 1: R_4 = 11/6, T_3 = 5/2, R_3 = 13/3.
        let f = TestFunction::power(5.0);
        let p4 = DevParams::new(1.0, 2.0, 1.0, 4);
        let p3 = DevParams::new(1.0, 2.0, 1.0, 3);
        assert!((lemma_rhs(&f, &p4).unwrap() - 11.0 / 6.0).abs() < 1e-10);
        assert!((lemma_rhs(&f, &p3).unwrap() - 13.0 / 3.0).abs() < 1e-10);
        assert!(recurrence_residual(&f, &p4).unwrap() < 1e-10);
        let p5 = DevParams::new(1.0, 2.0, 1.0, 5);
        assert!((lemma_rhs(&f, &p5).unwrap() - 1.0 / 3.0).abs() < 1e-10);
        assert!(recurrence_residual(&f, &p5).unwrap() < 1e-10);
    }

    #[test]
    fn recurrence_requires_n_at_least_4() {
        let f = TestFunction::power(5.0);
        let p = DevParams::new(1.0, 2.0, 1.0, 3);
        assert!(recurrence_residual(&f, &p).is_err());
    }

    #[test]
    fn midpoint_deviation_hand_value() {
        // x^4 on [1, 2]: |(1.5)^4 - 31/5| = 1.1375.
        let f = TestFunction::power(4.0);
        let d = midpoint_deviation(&f, 1.0, 2.0, 1e-10).unwrap();
        assert!((d - 1.1375).abs() < 1e-10);
    }

    #[test]
    fn lambda_deviation_hand_values() {
        // x^2 on [0, 2], lambda = 1: |-(0+4)/2 + 8/3| = 2/3.
        let f = TestFunction::power(2.0);
        let d = lambda_deviation(&f, 0.0, 2.0, 1.0, 1e-10).unwrap();
        assert!((d - 2.0 / 3.0).abs() < 1e-12);
        // lambda = 0 on [0, 2]: |-1 + 8/3| = 5/3.
        let d0 = lambda_deviation(&f, 0.0, 2.0, 0.0, 1e-10).unwrap();
        assert!((d0 - 5.0 / 3.0).abs() < 1e-12);
        // On a unit-length interval lambda = 0 agrees with the midpoint
        // gap, since the raw integral and the interval average coincide.
        let d0 = lambda_deviation(&f, 0.0, 1.0, 0.0, 1e-10).unwrap();
        let m = midpoint_deviation(&f, 0.0, 1.0, 1e-10).unwrap();
        assert!((d0 - m).abs() < 1e-12);
    }

    #[test]
    fn geometry_validation() {
        let f = TestFunction::power(2.0);
        // a >= m*b
        assert!(trapezoid_deviation(&f, &DevParams::new(1.0, 2.0, 0.5, 2)).is_err());
        // a <= 0
        assert!(trapezoid_deviation(&f, &DevParams::new(0.0, 2.0, 1.0, 2)).is_err());
        // m out of range
        assert!(trapezoid_deviation(&f, &DevParams::new(1.0, 2.0, 1.5, 2)).is_err());
        // n = 0
        assert!(trapezoid_deviation(&f, &DevParams::new(1.0, 2.0, 1.0, 0)).is_err());
        // reversed interval for the [a, b] forms
        assert!(midpoint_deviation(&f, 2.0, 1.0, 1e-10).is_err());
        assert!(lambda_deviation(&f, 0.0, 2.0, 1.5, 1e-10).is_err());
    }
}
