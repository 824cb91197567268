//! Physical parameters and the couplings derived from them.
//!
//! Natural units (hbar = c = 1) throughout. The radial potential is
//! `V1(r) = A r^2 + B / r^2 + C`, the pseudoharmonic form
//! `a0 (r / r0 - r0 / r)^2`, and the ring term is `beta * cot^2(theta) / r^2`.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Rest mass.
    pub mu: f64,
    /// Dissociation energy.
    pub a0: f64,
    /// Equilibrium internuclear distance.
    pub r0: f64,
    /// Ring-shape strength.
    pub beta: f64,
    /// Spatial dimension, at least 3.
    pub dim: u32,
}

impl ModelParams {
    /// Validated constructor.
    pub fn new(mu: f64, a0: f64, r0: f64, beta: f64, dim: u32) -> Result<Self> {
        let p = Self {
            mu,
            a0,
            r0,
            beta,
            dim,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::ParameterDomain(format!("{name} must be positive, got {v}")))
            }
        };
        positive("mu", self.mu)?;
        positive("a0", self.a0)?;
        positive("r0", self.r0)?;
        if !(self.beta.is_finite() && self.beta >= 0.0) {
            return Err(Error::ParameterDomain(format!(
                "beta must be nonnegative, got {}",
                self.beta
            )));
        }
        if self.dim < 3 {
            return Err(Error::ParameterDomain(format!(
                "dimension must be at least 3, got {}",
                self.dim
            )));
        }
        Ok(())
    }

    pub fn dim_f64(&self) -> f64 {
        f64::from(self.dim)
    }
}

/// Coefficients of `A r^2 + B / r^2 + C`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedCouplings {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

/// `alpha1^2 = mu - E` and `alpha2^2 = mu + E`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyCouplings {
    pub alpha1_sq: f64,
    pub alpha2_sq: f64,
}

pub fn derive_couplings(p: &ModelParams) -> Result<DerivedCouplings> {
    for (name, v) in [("a0", p.a0), ("r0", p.r0)] {
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::ParameterDomain(format!("{name} must be positive, got {v}")));
        }
    }
    Ok(DerivedCouplings {
        a: p.a0 / (p.r0 * p.r0),
        b: p.a0 * p.r0 * p.r0,
        c: -2.0 * p.a0,
    })
}

pub fn energy_couplings(p: &ModelParams, energy: f64) -> Result<EnergyCouplings> {
    let alpha2_sq = p.mu + energy;
    if !(alpha2_sq > 0.0) {
        return Err(Error::EnergyDomain {
            energy,
            neg_mu: -p.mu,
        });
    }
    Ok(EnergyCouplings {
        alpha1_sq: p.mu - energy,
        alpha2_sq,
    })
}

/// Which wave equation the energy couplings describe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Regime {
    /// Klein–Gordon: `alpha1^2 = mu - E`, `alpha2^2 = mu + E`.
    #[default]
    Relativistic,
    /// Schrödinger limit: `alpha1^2 = -E`, `alpha2^2 = 2 mu`.
    Nonrelativistic,
}

impl Regime {
    pub fn couplings(self, p: &ModelParams, energy: f64) -> Result<EnergyCouplings> {
        match self {
            Regime::Relativistic => energy_couplings(p, energy),
            Regime::Nonrelativistic => Ok(EnergyCouplings {
                alpha1_sq: -energy,
                alpha2_sq: 2.0 * p.mu,
            }),
        }
    }
}
