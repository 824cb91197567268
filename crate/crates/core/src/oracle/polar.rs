//! Finite-difference eigensolver for the polar equation.
//!
//! In the Mercator variable `x = artanh(cos theta)` with
//! `H = sin^{-c}(theta) w`, `c = (D - 3)/2`, the polar equation becomes
//!
//! ```text
//! -w'' + m'^2 w = Omega sech^2(x) w,   Omega = nu' + c (c + 1),
//! ```
//!
//! a symmetric pencil whose eigenvalues are counted exactly by the inertia of
//! `A - Omega B`. Solutions decay like `exp(-m' |x|)`, which the Robin
//! conditions `w' = -+m' w` at `x = +-X` impose on a finite box.

use crate::error::{Error, Result};

pub const DEFAULT_HALF_WIDTH: f64 = 20.0;
pub const DEFAULT_POINTS: usize = 4000;
/// Agreement demanded between the two extrapolated resolutions.
pub const CONVERGENCE_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarProblem {
    pub dim: u32,
    /// Coefficient of the ring term, `beta alpha2^2`.
    pub strength: f64,
    /// `l_{D-2}` (`|m|` in three dimensions).
    pub l_sub: f64,
    pub half_width: f64,
    pub points: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarSolution {
    /// Separation constant `nu' = l~(l~ + D - 2) + beta alpha2^2`.
    pub nu_prime: f64,
    /// `-(D-2)/2 + sqrt(((D-2)/2)^2 + nu')`
    pub l_prime: f64,
    /// Difference between the two extrapolated resolutions.
    pub error_estimate: f64,
}

impl PolarProblem {
    pub fn new(dim: u32, strength: f64, l_sub: f64) -> Result<Self> {
        if dim < 3 {
            return Err(Error::ParameterDomain(format!("dimension must be at least 3, got {dim}")));
        }
        if !(strength >= 0.0 && strength.is_finite()) {
            return Err(Error::ParameterDomain(format!("strength must be nonnegative, got {strength}")));
        }
        if !(l_sub >= 0.0 && l_sub.is_finite()) {
            return Err(Error::ParameterDomain(format!("l_sub must be nonnegative, got {l_sub}")));
        }
        Ok(Self { dim, strength, l_sub, half_width: DEFAULT_HALF_WIDTH, points: DEFAULT_POINTS })
    }

    pub fn with_points(mut self, points: usize) -> Self {
        self.points = points;
        self
    }

    fn c(&self) -> f64 {
        0.5 * (f64::from(self.dim) - 3.0)
    }

    /// `m'^2 = Lambda' + c^2`.
    fn decay_sq(&self) -> f64 {
        let c = self.c();
        self.l_sub * (self.l_sub + f64::from(self.dim) - 3.0) + self.strength + c * c
    }
}

struct Pencil {
    diag: Vec<f64>,
    off: f64,
    weight: Vec<f64>,
}

impl Pencil {
    fn new(prob: &PolarProblem, intervals: usize) -> Self {
        let k2 = prob.decay_sq();
        let k = k2.sqrt();
        let x_max = prob.half_width;
        let h = 2.0 * x_max / intervals as f64;
        let inv_h2 = 1.0 / (h * h);
        let mut diag = Vec::with_capacity(intervals + 1);
        let mut weight = Vec::with_capacity(intervals + 1);
        for i in 0..=intervals {
            let x = -x_max + i as f64 * h;
            let sech = 1.0 / x.cosh();
            if i == 0 || i == intervals {
                // ghost point from the Robin condition, row halved to keep the pencil symmetric
                diag.push(inv_h2 + k / h + 0.5 * k2);
                weight.push(0.5 * sech * sech);
            } else {
                diag.push(2.0 * inv_h2 + k2);
                weight.push(sech * sech);
            }
        }
        Self { diag, off: -inv_h2, weight }
    }

    /// Number of eigenvalues strictly below `omega`.
    fn count_below(&self, omega: f64) -> usize {
        let off2 = self.off * self.off;
        let mut negatives = 0;
        let mut d = 1.0;
        for (i, (&a, &w)) in self.diag.iter().zip(&self.weight).enumerate() {
            d = a - omega * w - if i == 0 { 0.0 } else { off2 / d };
            if d == 0.0 {
                d = -f64::EPSILON * a.abs().max(1.0);
            }
            if d < 0.0 {
                negatives += 1;
            }
        }
        negatives
    }

    fn eigenvalue(&self, n: usize) -> Result<f64> {
        // the pencil is positive semidefinite; a zero mode sits at Omega = 0 when m' = 0
        let mut lo = -1.0;
        let mut hi = 1.0;
        while self.count_below(hi) <= n {
            hi *= 2.0;
            if hi > 1e12 {
                return Err(Error::NotFound(format!("polar level {n} not found")));
            }
        }
        if self.count_below(lo) > n {
            return Err(Error::NotFound(format!("polar level {n} below zero")));
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) <= n {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }
}

/// Richardson-extrapolated `Omega` of level `n` from grids of `points` and `2 points`.
fn extrapolated(prob: &PolarProblem, n: usize, points: usize) -> Result<f64> {
    let coarse = Pencil::new(prob, points).eigenvalue(n)?;
    let fine = Pencil::new(prob, 2 * points).eigenvalue(n)?;
    Ok((4.0 * fine - coarse) / 3.0)
}

pub fn solve_polar_numeric(prob: &PolarProblem, n_polar: u32) -> Result<PolarSolution> {
    if prob.points < 16 || !(prob.half_width > 0.0) {
        return Err(Error::ParameterDomain(format!(
            "bad polar grid: {} points on half width {}",
            prob.points, prob.half_width
        )));
    }
    let n = n_polar as usize;
    let first = extrapolated(prob, n, prob.points)?;
    let second = extrapolated(prob, n, 2 * prob.points)?;
    let scale = second.abs().max(1.0);
    if (second - first).abs() > CONVERGENCE_TOL * scale {
        return Err(Error::Accuracy { coarse: first, fine: second });
    }
    let c = prob.c();
    let nu_prime = second - c * (c + 1.0);
    let half = 0.5 * (f64::from(prob.dim) - 2.0);
    Ok(PolarSolution {
        nu_prime,
        l_prime: -half + (half * half + nu_prime).sqrt(),
        error_estimate: (second - first).abs(),
    })
}
