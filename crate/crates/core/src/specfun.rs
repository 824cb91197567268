//! Special functions behind the closed-form eigenfunctions.
//!
//! Orders are real (the Laguerre order `Lambda + 1/2` and the polar Jacobi
//! order `m'` are irrational in general), so everything goes through
//! three-term recurrences and `ln_gamma`, never factorial tables.

use crate::error::{Error, Result};

/// Largest degree accepted by [`rodrigues_oracle`].
pub const RODRIGUES_MAX_DEGREE: usize = 12;

/// Natural log of the gamma function for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::ParameterDomain(format!(
            "ln_gamma needs a positive finite argument, got {x}"
        )));
    }
    Ok(statrs::function::gamma::ln_gamma(x))
}

/// Generalized Laguerre polynomial `L_n^{(a)}(x)`.
pub fn laguerre(n: usize, a: f64, x: f64) -> Result<f64> {
    if !(a > -1.0) {
        return Err(Error::ParameterDomain(format!(
            "Laguerre order must exceed -1, got {a}"
        )));
    }
    Ok(laguerre_unchecked(n, a, x))
}

pub(crate) fn laguerre_unchecked(n: usize, a: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + a - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + a - x) * cur - (kf + a) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Jacobi polynomial `P_n^{(a,b)}(x)`.
pub fn jacobi(n: usize, a: f64, b: f64, x: f64) -> Result<f64> {
    if !(a > -1.0 && b > -1.0) {
        return Err(Error::ParameterDomain(format!(
            "Jacobi parameters must exceed -1, got ({a}, {b})"
        )));
    }
    Ok(jacobi_unchecked(n, a, b, x))
}

pub(crate) fn jacobi_unchecked(n: usize, a: f64, b: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    // (a - b) + (a + b + 2) x keeps P(a,a) exactly odd
    let mut cur = 0.5 * ((a - b) + (a + b + 2.0) * x);
    let ab_diff = (a - b) * (a + b);
    for k in 2..=n {
        let kf = k as f64;
        let s = 2.0 * kf + a + b;
        let c0 = 2.0 * kf * (kf + a + b) * (s - 2.0);
        let c1 = (s - 1.0) * (s * (s - 2.0) * x + ab_diff);
        let c2 = 2.0 * (kf + a - 1.0) * (kf + b - 1.0) * s;
        let next = (c1 * cur - c2 * prev) / c0;
        prev = cur;
        cur = next;
    }
    cur
}

/// Which Rodrigues weight to differentiate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RodriguesKind {
    /// weight `x^a e^{-x}`
    Laguerre { a: f64 },
    /// weight `(1 - x^2)^a`
    JacobiSymmetric { a: f64 },
}

/// Evaluates the degree-`n` polynomial by expanding the n-fold derivative of
/// the weighted product with the Leibniz rule. Ground truth for the recurrences
/// at small degree.
pub fn rodrigues_oracle(kind: RodriguesKind, n: usize, x: f64) -> Result<f64> {
    if n > RODRIGUES_MAX_DEGREE {
        return Err(Error::OracleRange {
            degree: n,
            max: RODRIGUES_MAX_DEGREE,
        });
    }
    let nf = n as f64;
    let value = match kind {
        RodriguesKind::Laguerre { a } => {
            // e^x x^-a / n! * d^n [e^-x x^(n+a)]
            let mut sum = 0.0;
            for k in 0..=n {
                let sign = if (n - k).is_multiple_of(2) { 1.0 } else { -1.0 };
                sum += binomial(n, k) * sign * falling(nf + a, k) * x.powi((n - k) as i32);
            }
            sum / factorial(n)
        }
        RodriguesKind::JacobiSymmetric { a } => {
            // (-1)^n / (2^n n!) (1-x^2)^-a d^n [(1-x)^(n+a) (1+x)^(n+a)]
            let mut sum = 0.0;
            for k in 0..=n {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                sum += binomial(n, k)
                    * sign
                    * falling(nf + a, k)
                    * falling(nf + a, n - k)
                    * (1.0 - x).powi((n - k) as i32)
                    * (1.0 + x).powi(k as i32);
            }
            let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
            sign * sum / (2f64.powi(n as i32) * factorial(n))
        }
    };
    Ok(value)
}

fn falling(z: f64, k: usize) -> f64 {
    (0..k).map(|i| z - i as f64).product()
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}
