//! Catalog of test functions with closed-form derivatives of every order.
//!
//! Every consumer of a derivative in this crate goes through
//! [`TestFunction::deriv`]; finite differences appear only in tests, as an
//! independent oracle.

use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// n! as f64. Exact for n <= 22, correctly rounded well past that.
pub(crate) fn factorial(n: u32) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Product r * (r-1) * ... * (r-k+1); the coefficient picked up by
/// differentiating x^r exactly k times.
fn falling(r: f64, k: u32) -> f64 {
    (0..k).map(|j| r - j as f64).product()
}

/// A function from the built-in catalog.
///
/// Each variant carries enough structure to evaluate the function and any
/// order of derivative exactly (up to floating-point rounding), and to
/// report the left edge of its natural domain.
#[derive(Debug, Clone, PartialEq)]
pub enum TestFunction {
    /// x^r. Negative or non-integer exponents restrict the domain to x > 0.
    Power { r: f64 },
    /// 1/x on x > 0.
    Reciprocal,
    /// -ln x on x > 0.
    NegLog,
    /// e^x.
    Exponential,
    /// coeffs[0] + coeffs[1] x + ... + coeffs[d] x^d.
    Polynomial { coeffs: Vec<f64> },
    /// c * base(x); exercises linearity of everything downstream.
    Scaled { c: f64, base: Box<TestFunction> },
}

impl TestFunction {
    pub fn power(r: f64) -> Self {
        TestFunction::Power { r }
    }

    pub fn poly(coeffs: &[f64]) -> Self {
        TestFunction::Polynomial {
            coeffs: coeffs.to_vec(),
        }
    }

    pub fn scaled(c: f64, base: TestFunction) -> Self {
        TestFunction::Scaled {
            c,
            base: Box::new(base),
        }
    }

    /// Open left end of the natural domain: evaluation requires
    /// x > domain_lo(). Functions defined on the whole line report -inf.
    pub fn domain_lo(&self) -> f64 {
        match self {
            TestFunction::Power { r } => {
                if *r >= 0.0 && r.fract() == 0.0 {
                    f64::NEG_INFINITY
                } else {
                    0.0
                }
            }
            TestFunction::Reciprocal | TestFunction::NegLog => 0.0,
            TestFunction::Exponential | TestFunction::Polynomial { .. } => f64::NEG_INFINITY,
            TestFunction::Scaled { base, .. } => base.domain_lo(),
        }
    }

    /// True if the function (or some derivative) blows up at 0.
    pub fn singular_at_zero(&self) -> bool {
        self.domain_lo() == 0.0
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        self.deriv(0, x)
    }

    /// k-th derivative at x; k = 0 is the function itself.
    pub fn deriv(&self, k: u32, x: f64) -> Result<f64> {
        if x <= self.domain_lo() {
            return Err(Error::Domain {
                what: "argument at or below the domain edge",
                x,
            });
        }
        match self {
            TestFunction::Power { r } => {
                let c = falling(*r, k);
                // The coefficient vanishing means the derivative is
                // identically zero; skip forming x^(r-k), which could be
                // 0 * inf at x = 0 edge cases.
                if c == 0.0 {
                    return Ok(0.0);
                }
                let e = r - k as f64;
                if r.fract() == 0.0 && *r >= 0.0 {
                    Ok(c * x.powi(e as i32))
                } else {
                    Ok(c * x.powf(e))
                }
            }
            TestFunction::Reciprocal => {
                // d^k/dx^k (1/x) = (-1)^k k! x^-(k+1)
                let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
                Ok(sign * factorial(k) / x.powi(k as i32 + 1))
            }
            TestFunction::NegLog => {
                if k == 0 {
                    Ok(-x.ln())
                } else {
                    // d^k/dx^k (-ln x) = (-1)^k (k-1)! x^-k
                    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
                    Ok(sign * factorial(k - 1) / x.powi(k as i32))
                }
            }
            TestFunction::Exponential => Ok(x.exp()),
            TestFunction::Polynomial { coeffs } => {
                // Horner on the k-th derivative's coefficients.
                let mut acc = 0.0;
                for i in (k as usize..coeffs.len()).rev() {
                    acc = acc * x + coeffs[i] * falling(i as f64, k);
                }
                Ok(acc)
            }
            TestFunction::Scaled { c, base } => Ok(c * base.deriv(k, x)?),
        }
    }

    /// The standard catalog used by the identity suite and the sweeps.
    pub fn catalog() -> Vec<TestFunction> {
        vec![
            TestFunction::power(2.0),
            TestFunction::power(3.0),
            TestFunction::power(4.0),
            TestFunction::power(5.0),
            TestFunction::power(2.5),
            TestFunction::Reciprocal,
            TestFunction::NegLog,
            TestFunction::Exponential,
            TestFunction::poly(&[1.5, -2.0, 0.75, 1.0 / 3.0, 0.0, 0.125, -0.25, 0.0625]),
        ]
    }
}

impl fmt::Display for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TestFunction::Power { r } => write!(f, "power:{r}"),
            TestFunction::Reciprocal => write!(f, "reciprocal"),
            TestFunction::NegLog => write!(f, "neglog"),
            TestFunction::Exponential => write!(f, "exp"),
            TestFunction::Polynomial { coeffs } => {
                write!(f, "poly:")?;
                for (i, c) in coeffs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                Ok(())
            }
            TestFunction::Scaled { c, base } => write!(f, "scaled:{c}:{base}"),
        }
    }
}

impl FromStr for TestFunction {
    type Err = Error;

    /// Parses the same compact notation Display emits:
    /// `power:<r>`, `reciprocal`, `neglog`, `exp`, `poly:<c0,c1,...>`,
    /// `scaled:<c>:<spec>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: String| Error::Param(msg);
        if s == "reciprocal" {
            return Ok(TestFunction::Reciprocal);
        }
        if s == "neglog" {
            return Ok(TestFunction::NegLog);
        }
        if s == "exp" {
            return Ok(TestFunction::Exponential);
        }
        if let Some(r) = s.strip_prefix("power:") {
            let r: f64 = r
                .parse()
                .map_err(|_| bad(format!("bad power exponent in '{s}'")))?;
            if !r.is_finite() {
                return Err(bad(format!("power exponent must be finite in '{s}'")));
            }
            return Ok(TestFunction::Power { r });
        }
        if let Some(list) = s.strip_prefix("poly:") {
            let coeffs: std::result::Result<Vec<f64>, _> =
                list.split(',').map(|c| c.trim().parse::<f64>()).collect();
            let coeffs = coeffs.map_err(|_| bad(format!("bad polynomial coefficients in '{s}'")))?;
            if coeffs.is_empty() || coeffs.iter().any(|c| !c.is_finite()) {
                return Err(bad(format!("polynomial coefficients must be finite in '{s}'")));
            }
            return Ok(TestFunction::Polynomial { coeffs });
        }
        if let Some(rest) = s.strip_prefix("scaled:") {
            let (c, base) = rest
                .split_once(':')
                .ok_or_else(|| bad(format!("scaled needs 'scaled:<c>:<fn>' in '{s}'")))?;
            let c: f64 = c
                .parse()
                .map_err(|_| bad(format!("bad scale factor in '{s}'")))?;
            if !c.is_finite() {
                return Err(bad(format!("scale factor must be finite in '{s}'")));
            }
            return Ok(TestFunction::scaled(c, base.parse()?));
        }
        Err(bad(format!("unknown function spec '{s}'")))
    }
}
