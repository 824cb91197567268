//! Nikiforov–Uvarov reduction of hypergeometric-type equations
//!
//! ```text
//! psi'' + (tau~ / sigma) psi' + (sigma~ / sigma^2) psi = 0
//! ```
//!
//! For a numeric instance this enumerates the constants `k` that turn the
//! radicand of `pi(s)` into a perfect square, emits the resulting `pi`
//! branches, and picks the physical one.

use crate::error::{Error, Result};

/// Default relative tolerance for the zero-discriminant and perfect-square tests.
pub const DEFAULT_TOL: f64 = 1e-10;

/// `c2 s^2 + c1 s + c0`
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quadratic {
    pub c2: f64,
    pub c1: f64,
    pub c0: f64,
}

impl Quadratic {
    pub const fn new(c2: f64, c1: f64, c0: f64) -> Self {
        Self { c2, c1, c0 }
    }

    pub fn eval(&self, s: f64) -> f64 {
        (self.c2 * s + self.c1) * s + self.c0
    }

    pub fn derivative(&self) -> Linear {
        Linear::new(2.0 * self.c2, self.c1)
    }

    fn scale(&self) -> f64 {
        self.c2.abs().max(self.c1.abs()).max(self.c0.abs())
    }
}

/// `c1 s + c0`
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Linear {
    pub c1: f64,
    pub c0: f64,
}

impl Linear {
    pub const fn new(c1: f64, c0: f64) -> Self {
        Self { c1, c0 }
    }

    pub fn eval(&self, s: f64) -> f64 {
        self.c1 * s + self.c0
    }

    fn squared(&self) -> Quadratic {
        Quadratic::new(self.c1 * self.c1, 2.0 * self.c1 * self.c0, self.c0 * self.c0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypergeometricForm {
    pub sigma: Quadratic,
    pub sigma_tilde: Quadratic,
    pub tau_tilde: Linear,
}

impl HypergeometricForm {
    pub fn new(sigma: Quadratic, sigma_tilde: Quadratic, tau_tilde: Linear) -> Result<Self> {
        let all = [
            sigma.c2,
            sigma.c1,
            sigma.c0,
            sigma_tilde.c2,
            sigma_tilde.c1,
            sigma_tilde.c0,
            tau_tilde.c1,
            tau_tilde.c0,
        ];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::ParameterDomain("non-finite polynomial coefficient".into()));
        }
        if sigma.scale() == 0.0 {
            return Err(Error::ParameterDomain("sigma is identically zero".into()));
        }
        Ok(Self { sigma, sigma_tilde, tau_tilde })
    }

    /// `(sigma' - tau~) / 2`, the rational part of `pi`.
    pub fn pi_center(&self) -> Linear {
        let d = self.sigma.derivative();
        Linear::new(0.5 * (d.c1 - self.tau_tilde.c1), 0.5 * (d.c0 - self.tau_tilde.c0))
    }

    /// The quadratic under the square root of `pi` for a given `k`.
    pub fn radicand(&self, k: f64) -> Quadratic {
        let p = self.pi_center().squared();
        Quadratic::new(
            p.c2 - self.sigma_tilde.c2 + k * self.sigma.c2,
            p.c1 - self.sigma_tilde.c1 + k * self.sigma.c1,
            p.c0 - self.sigma_tilde.c0 + k * self.sigma.c0,
        )
    }

    /// Discriminant of [`Self::radicand`]; zero exactly when the radicand is a square.
    pub fn discriminant(&self, k: f64) -> f64 {
        let q = self.radicand(k);
        q.c1 * q.c1 - 4.0 * q.c2 * q.c0
    }

    fn coefficient_scale(&self) -> f64 {
        let p = self.pi_center().squared();
        p.scale().max(self.sigma_tilde.scale()).max(self.sigma.scale()).max(1.0)
    }

    /// `sigma''`
    pub fn sigma_second_derivative(&self) -> f64 {
        2.0 * self.sigma.c2
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NuBranch {
    pub k: f64,
    pub pi: Linear,
    /// `tau~ + 2 pi`
    pub tau: Linear,
    pub tau_slope: f64,
    /// `k + pi'`
    pub lambda: f64,
}

impl NuBranch {
    fn new(form: &HypergeometricForm, k: f64, pi: Linear) -> Self {
        let tau = Linear::new(form.tau_tilde.c1 + 2.0 * pi.c1, form.tau_tilde.c0 + 2.0 * pi.c0);
        Self { k, pi, tau, tau_slope: tau.c1, lambda: k + pi.c1 }
    }

    /// Largest coefficientwise gap between `(pi - pi_center)^2` and the radicand.
    pub fn perfect_square_error(&self, form: &HypergeometricForm) -> f64 {
        let c = form.pi_center();
        let root = Linear::new(self.pi.c1 - c.c1, self.pi.c0 - c.c0).squared();
        let q = form.radicand(self.k);
        (root.c2 - q.c2).abs().max((root.c1 - q.c1).abs()).max((root.c0 - q.c0).abs())
    }
}

pub fn nu_branches(form: &HypergeometricForm) -> Vec<NuBranch> {
    nu_branches_with_tol(form, DEFAULT_TOL)
}

/// Up to four branches: two signs of the square root for each real `k`.
/// Empty when no real `k` exists.
pub fn nu_branches_with_tol(form: &HypergeometricForm, tol: f64) -> Vec<NuBranch> {
    let scale = form.coefficient_scale();
    let mut out = Vec::with_capacity(4);
    for k in k_roots(form, tol) {
        let q = form.radicand(k);
        let q_scale = q.scale().max(scale);
        if q.c2 < -tol * q_scale || q.c0 < -tol * q_scale {
            // square of a complex linear polynomial
            continue;
        }
        let slope = if q.c2 <= tol * q_scale { 0.0 } else { q.c2.sqrt() };
        let intercept = if slope > 0.0 { q.c1 / (2.0 * slope) } else { q.c0.max(0.0).sqrt() };
        let root = Linear::new(slope, intercept);
        let center = form.pi_center();
        for sign in [1.0, -1.0] {
            let pi = Linear::new(center.c1 + sign * root.c1, center.c0 + sign * root.c0);
            out.push(NuBranch::new(form, k, pi));
        }
    }
    out
}

/// Real solutions of `discriminant(k) = 0`, ascending, a double root reported once.
fn k_roots(form: &HypergeometricForm, tol: f64) -> Vec<f64> {
    let sigma = form.sigma;
    let center = form.pi_center().squared();
    let u2 = center.c2 - form.sigma_tilde.c2;
    let u1 = center.c1 - form.sigma_tilde.c1;
    let u0 = center.c0 - form.sigma_tilde.c0;
    // (u1 + k c1)^2 - 4 (u2 + k c2)(u0 + k c0) = a k^2 + b k + c
    let a = sigma.c1 * sigma.c1 - 4.0 * sigma.c2 * sigma.c0;
    let b = 2.0 * u1 * sigma.c1 - 4.0 * (u2 * sigma.c0 + u0 * sigma.c2);
    let c = u1 * u1 - 4.0 * u2 * u0;
    let scale = a.abs().max(b.abs()).max(c.abs());
    if scale == 0.0 {
        // every k works; k = 0 is as good as any
        return vec![0.0];
    }
    if a.abs() <= tol * scale {
        if b.abs() <= tol * scale {
            return Vec::new();
        }
        return vec![-c / b];
    }
    let disc = b * b - 4.0 * a * c;
    let disc_scale = (b * b).max((4.0 * a * c).abs());
    if disc < -tol * disc_scale {
        return Vec::new();
    }
    if disc <= tol * disc_scale {
        return vec![-b / (2.0 * a)];
    }
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    let (r1, r2) = (q / a, c / q);
    vec![r1.min(r2), r1.max(r2)]
}

pub fn nu_select(branches: &[NuBranch]) -> Result<NuBranch> {
    nu_select_with_tol(branches, DEFAULT_TOL)
}

/// Keeps branches with `tau' < 0`, then prefers the most negative slope of `pi`,
/// then the smallest `k`.
pub fn nu_select_with_tol(branches: &[NuBranch], tol: f64) -> Result<NuBranch> {
    let scale = branches
        .iter()
        .map(|b| b.tau_slope.abs().max(b.pi.c1.abs()).max(b.k.abs()))
        .fold(1.0, f64::max);
    let eps = tol * scale;
    branches
        .iter()
        .filter(|b| b.tau_slope < -eps)
        .copied()
        .reduce(|best, b| {
            let steeper = b.pi.c1 < best.pi.c1 - eps;
            let tie_lower_k = (b.pi.c1 - best.pi.c1).abs() <= eps && b.k < best.k - eps;
            if steeper || tie_lower_k {
                b
            } else {
                best
            }
        })
        .ok_or(Error::NoPhysicalBranch)
}

/// `-n tau' - n (n - 1) sigma'' / 2`
pub fn nu_lambda_n(form: &HypergeometricForm, branch: &NuBranch, n: usize) -> f64 {
    let nf = n as f64;
    -nf * branch.tau_slope - 0.5 * nf * (nf - 1.0) * form.sigma_second_derivative()
}
