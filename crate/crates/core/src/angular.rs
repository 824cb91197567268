//! Angular part of the separated problem in D dimensions.
//!
//! The azimuth carries `m`; the intermediate angles `theta_2 .. theta_{D-2}`
//! carry the cascade `l_2 <= .. <= l_{D-2}`; the polar angle `theta_{D-1}`
//! feels the ring term `beta alpha2^2 cot^2(theta)` and produces the
//! non-integer, energy-dependent effective angular momentum `l~`.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::nucore::{HypergeometricForm, Linear, Quadratic};
use crate::quad;
use crate::specfun::{jacobi_unchecked, ln_gamma};

/// Relative tolerance used when normalizing angular factors by quadrature.
const NORM_QUAD_TOL: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuantumNumbers {
    /// Radial node count.
    pub n: u32,
    /// Polar index `n_{D-1}`.
    pub n_polar: u32,
    /// `l_2 ..= l_{D-2}`; empty for D = 3.
    pub cascade: Vec<u32>,
    /// Azimuthal number, `|m| = l_1`.
    pub m: i32,
}

impl QuantumNumbers {
    pub fn new(n: u32, n_polar: u32, cascade: Vec<u32>, m: i32) -> Self {
        Self { n, n_polar, cascade, m }
    }

    /// Three-dimensional level: no intermediate cascade.
    pub fn three_d(n: u32, n_polar: u32, m: i32) -> Self {
        Self::new(n, n_polar, Vec::new(), m)
    }

    pub fn validate(&self, dim: u32) -> Result<()> {
        if dim < 3 {
            return Err(Error::ParameterDomain(format!("dimension must be at least 3, got {dim}")));
        }
        let want = (dim - 3) as usize;
        if self.cascade.len() != want {
            return Err(Error::ParameterDomain(format!(
                "D = {dim} needs {want} intermediate indices, got {}",
                self.cascade.len()
            )));
        }
        let mut prev = self.m.unsigned_abs();
        for &l in &self.cascade {
            if l < prev {
                return Err(Error::ParameterDomain(format!(
                    "cascade must be nondecreasing from |m| = {}: {:?}",
                    self.m.unsigned_abs(),
                    self.cascade
                )));
            }
            prev = l;
        }
        Ok(())
    }

    /// `l_{D-2}`, the index the polar equation couples to (`|m|` for D = 3).
    pub fn l_sub(&self) -> u32 {
        self.cascade.last().copied().unwrap_or_else(|| self.m.unsigned_abs())
    }

    /// `(j, n_j, l_{j-1})` for every intermediate angle, `n_j = l_j - l_{j-1}`.
    pub fn cascade_steps(&self) -> Vec<(u32, u32, u32)> {
        let mut prev = self.m.unsigned_abs();
        self.cascade
            .iter()
            .enumerate()
            .map(|(i, &l)| {
                let step = (i as u32 + 2, l.saturating_sub(prev), prev);
                prev = l;
                step
            })
            .collect()
    }
}

/// Angular quantities at one value of `alpha2^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularShift {
    pub m_prime: f64,
    /// Effective angular momentum `l~`.
    pub l_tilde: f64,
    /// `n_{D-1} + m'`.
    pub l_prime: f64,
    /// Separation constant `l~ (l~ + D - 2)`.
    pub lambda_l: f64,
}

/// `(1/sqrt(2 pi)) e^{i m phi}`
pub fn azimuthal_wave(m: i32, phi: f64) -> Complex64 {
    Complex64::from_polar(1.0 / (2.0 * PI).sqrt(), f64::from(m) * phi)
}

/// `m' = sqrt((l_{D-2} + (D-3)/2)^2 + alpha2^2 beta)`
pub fn m_prime(l_sub: u32, dim: u32, alpha2_sq: f64, beta: f64) -> f64 {
    let shifted = f64::from(l_sub) + 0.5 * (f64::from(dim) - 3.0);
    (shifted * shifted + alpha2_sq * beta).sqrt()
}

/// `l~ = -(D-2)/2 + sqrt((n_{D-1} + m' + 1/2)^2 - alpha2^2 beta)`
pub fn l_tilde_from(n_polar: u32, m_prime: f64, dim: u32, alpha2_sq: f64, beta: f64) -> Result<f64> {
    let top = f64::from(n_polar) + m_prime + 0.5;
    let radicand = top * top - alpha2_sq * beta;
    if !(radicand >= 0.0) {
        return Err(Error::NoRealChannel { radicand });
    }
    Ok(-0.5 * (f64::from(dim) - 2.0) + radicand.sqrt())
}

pub fn effective_l(qn: &QuantumNumbers, dim: u32, alpha2_sq: f64, beta: f64) -> Result<AngularShift> {
    if !(alpha2_sq > 0.0) {
        return Err(Error::ParameterDomain(format!("alpha2^2 must be positive, got {alpha2_sq}")));
    }
    if !(beta >= 0.0) {
        return Err(Error::ParameterDomain(format!("beta must be nonnegative, got {beta}")));
    }
    qn.validate(dim)?;
    let mp = m_prime(qn.l_sub(), dim, alpha2_sq, beta);
    let l_tilde = if beta == 0.0 {
        // integer channel; avoids the sqrt round trip
        f64::from(qn.n_polar + qn.l_sub())
    } else {
        l_tilde_from(qn.n_polar, mp, dim, alpha2_sq, beta)?
    };
    Ok(AngularShift {
        m_prime: mp,
        l_tilde,
        l_prime: f64::from(qn.n_polar) + mp,
        lambda_l: l_tilde * (l_tilde + f64::from(dim) - 2.0),
    })
}

/// Polynomial data of the intermediate equation for angle `theta_j`.
pub fn cascade_form(j: u32, l_prev: u32, l_j: u32) -> HypergeometricForm {
    let jf = f64::from(j);
    let lambda = |l: u32, p: f64| f64::from(l) * (f64::from(l) + p - 1.0);
    let lambda_j = lambda(l_j, jf);
    let lambda_prev = lambda(l_prev, jf - 1.0);
    HypergeometricForm {
        sigma: Quadratic::new(-1.0, 0.0, 1.0),
        sigma_tilde: Quadratic::new(-lambda_j, 0.0, lambda_j - lambda_prev),
        tau_tilde: Linear::new(-jf, 0.0),
    }
}

/// Polynomial data of the polar equation, with `nu' = l~(l~ + D - 2) + beta alpha2^2`
/// and `Lambda' = Lambda_{D-2} + beta alpha2^2`.
pub fn polar_form(qn: &QuantumNumbers, dim: u32, shift: &AngularShift, alpha2_sq: f64, beta: f64) -> HypergeometricForm {
    let d = f64::from(dim);
    let strength = alpha2_sq * beta;
    let l_sub = f64::from(qn.l_sub());
    let nu = shift.lambda_l + strength;
    let lambda_prime = l_sub * (l_sub + d - 3.0) + strength;
    HypergeometricForm {
        sigma: Quadratic::new(-1.0, 0.0, 1.0),
        sigma_tilde: Quadratic::new(-nu, 0.0, nu - lambda_prime),
        tau_tilde: Linear::new(-(d - 1.0), 0.0),
    }
}

/// A normalized factor `N sin^p(theta) P_n^{(a,a)}(cos theta)` under the measure
/// `sin^w(theta) d theta` on [0, pi].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularFactor {
    pub degree: u32,
    /// Jacobi parameter.
    pub order: f64,
    pub sin_power: f64,
    pub weight_power: f64,
    /// Normalization from quadrature.
    pub norm: f64,
    /// Closed-form Gamma-function constant, when finite.
    pub gamma_norm: Option<f64>,
}

impl AngularFactor {
    fn build(degree: u32, order: f64, sin_power: f64, weight_power: f64, gamma_norm: Option<f64>) -> Self {
        let mut f = Self { degree, order, sin_power, weight_power, norm: 1.0, gamma_norm };
        let integral = f.norm_integral();
        f.norm = 1.0 / integral.sqrt();
        f
    }

    pub fn value(&self, theta: f64) -> f64 {
        let s = theta.sin().abs();
        let sin_part = if self.sin_power == 0.0 { 1.0 } else { s.powf(self.sin_power) };
        self.norm * sin_part * jacobi_unchecked(self.degree as usize, self.order, self.order, theta.cos())
    }

    /// `int_0^pi |H|^2 sin^w(theta) d theta`
    pub fn norm_integral(&self) -> f64 {
        quad::adaptive(
            |t| {
                let h = self.value(t);
                h * h * t.sin().powf(self.weight_power)
            },
            0.0,
            PI,
            NORM_QUAD_TOL,
        )
    }

    /// `int_0^pi H_self H_other sin^w(theta) d theta`
    pub fn overlap(&self, other: &AngularFactor) -> f64 {
        quad::adaptive(
            |t| self.value(t) * other.value(t) * t.sin().powf(self.weight_power),
            0.0,
            PI,
            NORM_QUAD_TOL,
        )
    }
}

fn gamma_norm(n: u32, twice_order_term: f64) -> Option<f64> {
    // sqrt((2n + x + 1) n! / (2 Gamma(n + x)))
    let nf = f64::from(n);
    let g = nf + twice_order_term;
    if g <= 0.0 {
        return None;
    }
    let log = (2.0 * nf + twice_order_term + 1.0).ln() + ln_gamma(nf + 1.0).ok()? - 2f64.ln() - ln_gamma(g).ok()?;
    Some((0.5 * log).exp())
}

/// Intermediate factor for angle `theta_j`, `2 <= j <= D - 2`.
pub fn cascade_factor(dim: u32, j: u32, n_j: u32, l_prev: u32) -> Result<AngularFactor> {
    if dim <= 3 || j < 2 || j > dim - 2 {
        return Err(Error::IndexOutOfRange {
            index: i64::from(j),
            lo: 2,
            hi: i64::from(dim) - 2,
        });
    }
    let half = 0.5 * (f64::from(j) - 2.0);
    let order = f64::from(l_prev) + half;
    Ok(AngularFactor::build(
        n_j,
        order,
        order - half,
        f64::from(j) - 1.0,
        gamma_norm(n_j, 2.0 * f64::from(l_prev) + f64::from(j) - 2.0),
    ))
}

pub fn cascade_wave(dim: u32, j: u32, n_j: u32, l_prev: u32, theta: f64) -> Result<f64> {
    Ok(cascade_factor(dim, j, n_j, l_prev)?.value(theta))
}

/// Polar factor; its Jacobi order is `m'`.
pub fn polar_factor(n_polar: u32, shift: &AngularShift, dim: u32) -> AngularFactor {
    let half = 0.5 * (f64::from(dim) - 3.0);
    AngularFactor::build(
        n_polar,
        shift.m_prime,
        shift.m_prime - half,
        f64::from(dim) - 2.0,
        gamma_norm(n_polar, 2.0 * shift.m_prime),
    )
}

pub fn polar_wave(n_polar: u32, shift: &AngularShift, dim: u32, theta: f64) -> f64 {
    polar_factor(n_polar, shift, dim).value(theta)
}
