//! Energy quantization, radial wavefunctions and limiting spectra.
//!
//! With `x = alpha2^2`, `y = alpha1^2` and the couplings `A, B, C`, the radial
//! equation
//!
//! ```text
//! g'' = [ (M-1)(M-3) / (4 r^2) + x (A r^2 + B / r^2 + C) + x y ] g,   M = D + 2 l~
//! ```
//!
//! has bound states exactly when
//!
//! ```text
//! -sqrt(A) (4n + 2 + zeta) = sqrt(x) (y + C),   zeta = sqrt((M - 2)^2 + 4 B x).
//! ```
//!
//! Multiplied by `r0` this is the Klein–Gordon relation
//! `-sqrt(a0) [4n + 2 + zeta] = r0 sqrt(mu + E) (mu - E - 2 a0)`. Because `l~`
//! depends on `E` through `x`, the relation is solved as a single scalar
//! equation in `E`.

use crate::angular::{effective_l, AngularShift, QuantumNumbers};
use crate::error::{Error, Result};
use crate::model::{derive_couplings, DerivedCouplings, ModelParams, Regime};
use crate::nucore::{nu_branches, nu_lambda_n, nu_select, HypergeometricForm, Linear, Quadratic};
use crate::quad;
use crate::roots::{brent, scan_brackets, Tolerance};
use crate::specfun::{laguerre_unchecked, ln_gamma};

/// Residual tolerance for accepted roots.
pub const DEFAULT_TOL: f64 = 1e-11;
pub const DEFAULT_POINTS: usize = 2000;
pub const DEFAULT_MAX_ROOTS: usize = 64;

/// A solved level together with every quantity derived from it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyState {
    pub regime: Regime,
    /// Radial quantum number.
    pub n: u32,
    pub energy: f64,
    pub alpha1_sq: f64,
    pub alpha2_sq: f64,
    pub shift: AngularShift,
    /// `D + 2 l~`
    pub big_m: f64,
    pub zeta: f64,
    /// `(zeta - 1) / 2`
    pub lambda: f64,
    /// Gaussian exponent `sqrt(A alpha2^2)`.
    pub alpha: f64,
    pub gamma_sq: f64,
    pub eps_sq: f64,
    pub residual: f64,
}

impl EnergyState {
    /// Populates all derived fields at `energy`.
    pub fn at(params: &ModelParams, qn: &QuantumNumbers, regime: Regime, energy: f64) -> Result<Self> {
        params.validate()?;
        let cp = derive_couplings(params)?;
        let ec = regime.couplings(params, energy)?;
        let (x, y) = (ec.alpha2_sq, ec.alpha1_sq);
        let shift = effective_l(qn, params.dim, x, params.beta)?;
        let big_m = params.dim_f64() + 2.0 * shift.l_tilde;
        let zeta = ((big_m - 2.0).powi(2) + 4.0 * cp.b * x).sqrt();
        let residual = params.r0 * quantization(&cp, qn.n, x, y, zeta);
        Ok(Self {
            regime,
            n: qn.n,
            energy,
            alpha1_sq: y,
            alpha2_sq: x,
            shift,
            big_m,
            zeta,
            lambda: 0.5 * (zeta - 1.0),
            alpha: (cp.a * x).sqrt(),
            gamma_sq: 0.25 * (big_m - 1.0) * (big_m - 3.0) + cp.b * x,
            eps_sq: x * (y + cp.c),
            residual,
        })
    }

    /// `mu - E - 2 a0 < 0` (or its Schrödinger analogue `C - E < 0`).
    pub fn admissible(&self, params: &ModelParams) -> bool {
        self.alpha1_sq - 2.0 * params.a0 < 0.0
    }

    /// Polynomial data of the radial equation in `s = r^2`.
    pub fn radial_form(&self) -> HypergeometricForm {
        HypergeometricForm {
            sigma: Quadratic::new(0.0, 2.0, 0.0),
            sigma_tilde: Quadratic::new(-self.alpha * self.alpha, -self.eps_sq, -self.gamma_sq),
            tau_tilde: Linear::new(0.0, 1.0),
        }
    }

    /// `lambda - lambda_n` of the selected reduction branch; zero at a bound state.
    pub fn nu_mismatch(&self) -> Result<f64> {
        let form = self.radial_form();
        let branch = nu_select(&nu_branches(&form))?;
        Ok(branch.lambda - nu_lambda_n(&form, &branch, self.n as usize))
    }
}

fn quantization(cp: &DerivedCouplings, n: u32, x: f64, y: f64, zeta: f64) -> f64 {
    -cp.a.sqrt() * (4.0 * f64::from(n) + 2.0 + zeta) - x.sqrt() * (y + cp.c)
}

/// LHS minus RHS of the Klein–Gordon quantization relation at `energy`.
pub fn energy_residual(params: &ModelParams, qn: &QuantumNumbers, energy: f64) -> Result<f64> {
    Ok(EnergyState::at(params, qn, Regime::Relativistic, energy)?.residual)
}

/// The same relation with `alpha1^2 -> -E`, `alpha2^2 -> 2 mu`.
pub fn nr_residual(params: &ModelParams, qn: &QuantumNumbers, energy: f64) -> Result<f64> {
    Ok(EnergyState::at(params, qn, Regime::Nonrelativistic, energy)?.residual)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumRequest {
    pub params: ModelParams,
    pub qn: QuantumNumbers,
    pub regime: Regime,
    pub window: (f64, f64),
    pub tol: f64,
    pub points: usize,
    pub max_roots: usize,
}

impl SpectrumRequest {
    /// Window `(-mu + 1e-6, mu + 6 a0)` on 2000 points.
    pub fn new(params: ModelParams, qn: QuantumNumbers) -> Self {
        Self {
            window: (-params.mu + 1e-6, params.mu + 6.0 * params.a0),
            params,
            qn,
            regime: Regime::Relativistic,
            tol: DEFAULT_TOL,
            points: DEFAULT_POINTS,
            max_roots: DEFAULT_MAX_ROOTS,
        }
    }

    /// Schrödinger-limit request over `(-2 a0, -2 a0 + 1000 a0)`.
    pub fn nonrelativistic(params: ModelParams, qn: QuantumNumbers) -> Self {
        let floor = -2.0 * params.a0;
        Self {
            regime: Regime::Nonrelativistic,
            window: (floor, floor + 1e3 * params.a0),
            ..Self::new(params, qn)
        }
    }

    pub fn with_window(mut self, lo: f64, hi: f64) -> Self {
        self.window = (lo, hi);
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_points(mut self, points: usize) -> Self {
        self.points = points;
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        self.qn.validate(self.params.dim)?;
        let (lo, hi) = self.window;
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::ParameterDomain(format!("empty search window [{lo}, {hi}]")));
        }
        if self.regime == Regime::Relativistic && !(lo > -self.params.mu) {
            return Err(Error::ParameterDomain(format!(
                "window must start above -mu = {}, got {lo}",
                -self.params.mu
            )));
        }
        if !(self.tol > 0.0) {
            return Err(Error::ParameterDomain(format!("tolerance must be positive, got {}", self.tol)));
        }
        if self.points < 2 {
            return Err(Error::ParameterDomain("scan needs at least two points".into()));
        }
        Ok(())
    }
}

/// All admissible roots in the window, ascending in energy.
pub fn solve_energies(req: &SpectrumRequest) -> Result<Vec<EnergyState>> {
    req.validate()?;
    let residual = |e: f64| Ok(EnergyState::at(&req.params, &req.qn, req.regime, e)?.residual);
    let tol = Tolerance { ftol: req.tol, ..Tolerance::default() };
    let mut out = Vec::new();
    for bracket in scan_brackets(residual, req.window.0, req.window.1, req.points) {
        let (e, _) = brent(residual, bracket, tol)?;
        let state = EnergyState::at(&req.params, &req.qn, req.regime, e)?;
        if !state.admissible(&req.params) {
            continue;
        }
        if !(state.residual.abs() <= req.tol) {
            return Err(Error::Convergence {
                what: "energy root",
                iterations: tol.max_iter,
                lo: bracket.lo,
                hi: bracket.hi,
                residual: state.residual,
            });
        }
        out.push(state);
        if out.len() >= req.max_roots {
            break;
        }
    }
    out.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    Ok(out)
}

/// `C r^{Lambda + 1 - (D-1)/2} exp(-alpha r^2 / 2) L_n^{(Lambda + 1/2)}(alpha r^2)`
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialWave {
    pub n: u32,
    pub lambda: f64,
    pub alpha: f64,
    pub dim: u32,
    /// Constant fixed by quadrature under `r^{D-1} dr`.
    pub norm: f64,
    /// `sqrt(2 alpha^{Lambda + 3/2} n! / Gamma(Lambda + n + 3/2))`
    pub gamma_norm: f64,
}

impl RadialWave {
    pub fn from_state(state: &EnergyState, dim: u32) -> Result<Self> {
        Self::with_parameters(state.n, state.lambda, state.alpha, dim)
    }

    /// A member of the Laguerre family sharing `(Lambda, alpha)`.
    pub fn with_parameters(n: u32, lambda: f64, alpha: f64, dim: u32) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::ParameterDomain(format!("alpha must be positive, got {alpha}")));
        }
        if !(lambda > -1.5 && lambda.is_finite()) {
            return Err(Error::ParameterDomain(format!("Lambda must exceed -3/2, got {lambda}")));
        }
        let nf = f64::from(n);
        let log_gamma_norm = 2f64.ln() + (lambda + 1.5) * alpha.ln() + ln_gamma(nf + 1.0)? - ln_gamma(lambda + nf + 1.5)?;
        let mut wave = Self { n, lambda, alpha, dim, norm: 1.0, gamma_norm: (0.5 * log_gamma_norm).exp() };
        wave.norm = 1.0 / wave.norm_integral().sqrt();
        Ok(wave)
    }

    pub fn value(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) {
            return Err(Error::ParameterDomain(format!("radius must be positive, got {r}")));
        }
        Ok(self.raw(r, self.lambda + 1.0 - 0.5 * (f64::from(self.dim) - 1.0)))
    }

    fn raw(&self, r: f64, power: f64) -> f64 {
        let s = self.alpha * r * r;
        let envelope = if r == 0.0 { 0.0 } else { (power * r.ln() - 0.5 * s).exp() };
        self.norm * envelope * laguerre_unchecked(self.n as usize, self.lambda + 0.5, s)
    }

    /// `r^{(D-1)/2} R(r)`
    fn reduced(&self, r: f64) -> f64 {
        self.raw(r, self.lambda + 1.0)
    }

    /// Radius beyond which the density is negligible.
    pub fn extent(&self) -> f64 {
        ((2.0 * self.lambda + 4.0 * f64::from(self.n) + 120.0) / self.alpha).sqrt()
    }

    pub fn norm_integral(&self) -> f64 {
        self.overlap(self)
    }

    /// `int_0^inf R_self R_other r^{D-1} dr`
    pub fn overlap(&self, other: &RadialWave) -> f64 {
        let f = |r: f64| self.reduced(r) * other.reduced(r);
        integrate_half_line(&f, self.extent().max(other.extent()))
    }

    /// Quadrature constant over the closed-form one.
    pub fn gamma_norm_ratio(&self) -> f64 {
        self.norm / self.gamma_norm
    }
}

fn integrate_half_line<F: Fn(f64) -> f64>(f: &F, r_max: f64) -> f64 {
    const PANELS: usize = 32;
    let rough = quad::composite_gauss_legendre(|r| f(r).abs(), 0.0, r_max, PANELS, 20).max(f64::MIN_POSITIVE);
    let h = r_max / PANELS as f64;
    (0..PANELS)
        .map(|i| quad::adaptive(f, i as f64 * h, (i + 1) as f64 * h, 1e-16 * rough))
        .sum()
}

pub fn radial_wave(state: &EnergyState, dim: u32, r: f64) -> Result<f64> {
    RadialWave::from_state(state, dim)?.value(r)
}

/// Real roots of `x^3 + a x^2 + b x + c`, ascending.
fn real_cubic_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    let p = b - a * a / 3.0;
    let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    let shift = -a / 3.0;
    let disc = (q / 2.0).powi(2) + (p / 3.0).powi(3);
    let mut roots = if disc > 0.0 {
        let sq = disc.sqrt();
        vec![(-q / 2.0 + sq).cbrt() + (-q / 2.0 - sq).cbrt() + shift]
    } else if p == 0.0 {
        vec![shift]
    } else {
        let m = 2.0 * (-p / 3.0).sqrt();
        let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
        let theta = arg.acos() / 3.0;
        (0..3)
            .map(|k| m * (theta - 2.0 * std::f64::consts::PI * f64::from(k) / 3.0).cos() + shift)
            .collect()
    };
    for x in roots.iter_mut() {
        for _ in 0..4 {
            let f = ((*x + a) * *x + b) * *x + c;
            let df = (3.0 * *x + 2.0 * a) * *x + b;
            if df == 0.0 || f == 0.0 {
                break;
            }
            let step = f / df;
            *x -= step;
            if step.abs() <= f64::EPSILON * x.abs() {
                break;
            }
        }
    }
    roots.sort_by(f64::total_cmp);
    roots
}

/// Relativistic oscillator levels: real roots of
/// `(mu + E)(mu - E)^2 = (k^2 / 2)(4n + 2l + D)^2` with `mu + E > 0`.
pub fn ho_energy_relativistic(n: u32, l: u32, dim: u32, k: f64, mu: f64) -> Vec<f64> {
    let big_n = f64::from(4 * n + 2 * l + dim);
    let rhs = 0.5 * k * k * big_n * big_n;
    // with x = mu - E: x^3 - 2 mu x^2 + rhs = 0
    let mut out: Vec<f64> = real_cubic_roots(-2.0 * mu, 0.0, rhs)
        .into_iter()
        .map(|x| mu - x)
        .filter(|e| mu + e > 0.0)
        .collect();
    out.sort_by(f64::total_cmp);
    out
}

/// Closed-form Schrödinger spectra.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NrKind {
    /// `V = k^2 r^2 / 2` in D dimensions.
    Oscillator { n: u32, l: u32, dim: u32, k: f64, mu: f64 },
    /// Pseudoharmonic in three dimensions.
    Pseudoharmonic { n: u32, l: u32, mu: f64, a0: f64, r0: f64 },
    /// Ring-shaped pseudoharmonic in three dimensions, `l = n_tilde + sqrt(m^2 + 2 mu beta)`.
    Ring { n: u32, n_tilde: u32, m: i32, mu: f64, a0: f64, r0: f64, beta: f64 },
}

pub fn nr_energies(kind: NrKind) -> Result<f64> {
    match kind {
        NrKind::Oscillator { n, l, dim, k, mu } => {
            positive(&[("k", k), ("mu", mu)])?;
            Ok(k / mu.sqrt() * (2.0 * f64::from(n) + f64::from(l) + 0.5 * f64::from(dim)))
        }
        NrKind::Pseudoharmonic { n, l, mu, a0, r0 } => pseudoharmonic_nr(n, f64::from(l), mu, a0, r0, 0.0),
        NrKind::Ring { n, n_tilde, m, mu, a0, r0, beta } => {
            if !(beta >= 0.0) {
                return Err(Error::ParameterDomain(format!("beta must be nonnegative, got {beta}")));
            }
            let m = f64::from(m);
            let l = f64::from(n_tilde) + (m * m + 2.0 * mu * beta).sqrt();
            pseudoharmonic_nr(n, l, mu, a0, r0, beta)
        }
    }
}

fn pseudoharmonic_nr(n: u32, l: f64, mu: f64, a0: f64, r0: f64, beta: f64) -> Result<f64> {
    positive(&[("mu", mu), ("a0", a0), ("r0", r0)])?;
    let radicand = (l + 0.5).powi(2) + 2.0 * mu * (a0 * r0 * r0 - beta);
    if !(radicand >= 0.0) {
        return Err(Error::ParameterDomain(format!("negative radicand {radicand}")));
    }
    Ok(-2.0 * a0 + (2.0 * a0 / (mu * r0 * r0)).sqrt() * (2.0 * f64::from(n) + 1.0 + radicand.sqrt()))
}

fn positive(values: &[(&str, f64)]) -> Result<()> {
    for &(name, v) in values {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::ParameterDomain(format!("{name} must be positive, got {v}")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn params(mu: f64, a0: f64, beta: f64, dim: u32) -> ModelParams {
        ModelParams::new(mu, a0, 1.0, beta, dim).unwrap()
    }

    fn qn(n: u32, n_polar: u32, m: i32, dim: u32) -> QuantumNumbers {
        let l = m.unsigned_abs();
        QuantumNumbers::new(n, n_polar, vec![l; (dim - 3) as usize], m)
    }

    fn wide(p: ModelParams, q: QuantumNumbers) -> SpectrumRequest {
        SpectrumRequest::new(p, q).with_window(-p.mu + 1e-6, 40.0).with_points(4000)
    }

    #[test]
    fn frozen_ground_states() {
        // independent high-precision evaluations of the quantization relation
        let table = [
            (1.0, [2.1955691255304197, 3.7923122520348835, 5.092122543674732, 6.238017993350698]),
            (0.5, [1.9113111763596964, 3.1430105934843136, 4.1601477196007535, 5.061368540039004]),
        ];
        for (a0, want) in table {
            for (n, w) in want.iter().enumerate() {
                let states = solve_energies(&wide(params(1.0, a0, 0.0, 3), qn(n as u32, 0, 0, 3))).unwrap();
                assert_eq!(states.len(), 1);
                assert!((states[0].energy - w).abs() < 1e-9 * w, "a0={a0} n={n}: {}", states[0].energy);
                assert!(states[0].residual.abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn default_window_and_empty_window() {
        let p = params(1.0, 1.0, 0.0, 3);
        let states = solve_energies(&SpectrumRequest::new(p, qn(0, 0, 0, 3))).unwrap();
        assert_eq!(states.len(), 1);
        let none = solve_energies(&SpectrumRequest::new(p, qn(0, 0, 0, 3)).with_window(-0.5, 1.0)).unwrap();
        assert!(none.is_empty());
        let bad = SpectrumRequest::new(p, qn(0, 0, 0, 3)).with_window(-2.0, 1.0);
        assert!(solve_energies(&bad).is_err());
        let bad = SpectrumRequest::new(p, qn(0, 0, 0, 3)).with_window(1.0, 1.0);
        assert!(solve_energies(&bad).is_err());
    }

    #[test]
    fn accepted_states_are_consistent() {
        for dim in [3, 4, 5] {
            for beta in [0.0, 0.5] {
                for n in 0..4 {
                    let p = params(1.0, 0.5, beta, dim);
                    for s in solve_energies(&wide(p, qn(n, 1, 1, dim))).unwrap() {
                        assert!(s.energy > p.mu - 2.0 * p.a0);
                        assert!(s.alpha > 0.0);
                        let ident = s.zeta.powi(2) - (s.big_m - 2.0).powi(2) - 4.0 * p.a0 * (p.mu + s.energy);
                        assert!(ident.abs() < 1e-10);
                        assert!((2.0 * s.lambda + 1.0 - s.zeta).abs() < 1e-14);
                        assert!(s.zeta >= (s.big_m - 2.0).abs());
                        assert!(s.nu_mismatch().unwrap().abs() < 1e-10, "{:?}", s);
                        // closed-form NU ladder
                        let lhs = 2.0 * s.alpha * f64::from(n);
                        let rhs = -0.5 * s.eps_sq - 0.5 * s.alpha * (2.0 + (4.0 * s.gamma_sq + 1.0).sqrt());
                        assert!((lhs - rhs).abs() < 1e-10);
                    }
                }
            }
        }
    }

    #[test]
    fn beta_zero_is_integer_channel() {
        let p = params(1.0, 1.0, 0.0, 3);
        let s = solve_energies(&wide(p, qn(1, 2, 1, 3))).unwrap()[0];
        assert_eq!(s.shift.l_tilde, 3.0);
        assert_eq!(s.big_m, 9.0);
        // l~ = 0 in three dimensions: no centrifugal term
        let s = solve_energies(&wide(p, qn(0, 0, 0, 3))).unwrap()[0];
        assert_eq!(0.25 * (s.big_m - 1.0) * (s.big_m - 3.0), 0.0);
    }

    #[test]
    fn nonrelativistic_mapping_matches_closed_forms() {
        for (a0, mu) in [(1.0, 1.0), (0.5, 2.0), (2.0, 0.7)] {
            for n in 0..3 {
                for l in 0..3 {
                    let p = params(mu, a0, 0.0, 3);
                    let s = solve_energies(&SpectrumRequest::nonrelativistic(p, qn(n, l, 0, 3))).unwrap();
                    assert_eq!(s.len(), 1);
                    let want = nr_energies(NrKind::Pseudoharmonic { n, l, mu, a0, r0: 1.0 }).unwrap();
                    assert!((s[0].energy - want).abs() < 1e-8 * want.abs().max(1.0));
                }
                for beta in [0.3, 1.0] {
                    let p = params(mu, a0, beta, 3);
                    let s = solve_energies(&SpectrumRequest::nonrelativistic(p, qn(n, 1, 2, 3))).unwrap();
                    let want = nr_energies(NrKind::Ring { n, n_tilde: 1, m: 2, mu, a0, r0: 1.0, beta }).unwrap();
                    assert!((s[0].energy - want).abs() < 1e-8 * want.abs().max(1.0));
                }
            }
        }
    }

    #[test]
    fn ring_collapses_to_pseudoharmonic() {
        for n in 0..4 {
            for nt in 0..3 {
                for m in -2..3 {
                    let ring = nr_energies(NrKind::Ring { n, n_tilde: nt, m, mu: 1.3, a0: 0.7, r0: 1.1, beta: 0.0 }).unwrap();
                    let l = nt + m.unsigned_abs();
                    let ph = nr_energies(NrKind::Pseudoharmonic { n, l, mu: 1.3, a0: 0.7, r0: 1.1 }).unwrap();
                    assert_eq!(ring, ph);
                }
            }
        }
        // the ring radicand stays above sqrt(m^2 + 2 mu beta) + 1/4, so only the bare helper can fail
        assert!(pseudoharmonic_nr(0, 0.0, 1.0, 0.01, 1.0, 10.0).is_err());
        let bad = NrKind::Ring { n: 0, n_tilde: 0, m: 0, mu: -1.0, a0: 0.01, r0: 1.0, beta: 10.0 };
        assert!(nr_energies(bad).is_err());
    }

    #[test]
    fn oscillator_closed_form() {
        let e = nr_energies(NrKind::Oscillator { n: 0, l: 0, dim: 3, k: 1.0, mu: 1.0 }).unwrap();
        assert_eq!(e, 1.5);
    }

    #[test]
    fn oscillator_cubic_roots() {
        for (n, l, dim, k, mu) in [(0, 0, 3, 1e-3, 1.0), (1, 2, 4, 0.1, 2.0), (2, 1, 5, 0.05, 1.0)] {
            let roots = ho_energy_relativistic(n, l, dim, k, mu);
            assert_eq!(roots.len(), 3);
            let big_n = f64::from(4 * n + 2 * l + dim);
            let rhs = 0.5 * k * k * big_n * big_n;
            for e in &roots {
                let lhs = (mu + e) * (mu - e).powi(2);
                assert!((lhs - rhs).abs() < 1e-12 * rhs.max(1.0));
            }
        }
        // only 4n + 2l + D matters
        assert_eq!(ho_energy_relativistic(1, 0, 3, 0.2, 1.0), ho_energy_relativistic(0, 2, 3, 0.2, 1.0));
    }

    #[test]
    fn oscillator_limit() {
        let (k, mu) = (1e-3, 1.0);
        let e_nr = nr_energies(NrKind::Oscillator { n: 0, l: 0, dim: 3, k, mu }).unwrap();
        let roots = ho_energy_relativistic(0, 0, 3, k, mu);
        let bound = *roots.last().unwrap();
        // mu - E -> -E_NR, with a correction of relative size E_NR / (4 mu)
        let gap = (mu - bound) + e_nr;
        assert!(gap.abs() <= 2.0 * e_nr * e_nr / (4.0 * mu));
        assert!(((mu + e_nr) - bound).abs() / bound <= 1e-4);
    }

    #[test]
    fn wavefunctions_normalized_and_nodes() {
        for dim in [3, 4, 5] {
            let p = params(1.0, 1.0, 0.5, dim);
            for n in 0..4 {
                let s = solve_energies(&wide(p, qn(n, 1, 1, dim))).unwrap()[0];
                let w = RadialWave::from_state(&s, dim).unwrap();
                assert!((w.norm_integral() - 1.0).abs() < 1e-8);
                assert!((w.gamma_norm_ratio() - 1.0).abs() < 1e-8);
                let r_max = w.extent();
                let samples: Vec<f64> = (1..4000).map(|i| w.value(r_max * i as f64 / 4000.0).unwrap()).collect();
                let flips = samples.windows(2).filter(|p| p[0] * p[1] < 0.0).count();
                assert_eq!(flips as u32, n);
                if n == 0 {
                    assert!(samples.iter().all(|v| *v > 0.0 || v.abs() < 1e-300));
                }
            }
        }
    }

    #[test]
    fn laguerre_family_orthogonal() {
        let p = params(1.0, 1.0, 0.5, 4);
        let s = solve_energies(&wide(p, qn(0, 1, 1, 4))).unwrap()[0];
        let waves: Vec<RadialWave> = (0..4).map(|n| RadialWave::with_parameters(n, s.lambda, s.alpha, 4).unwrap()).collect();
        for a in 0..4 {
            for b in 0..a {
                assert!(waves[a].overlap(&waves[b]).abs() < 1e-7);
            }
        }
    }

    #[test]
    fn radial_wave_domain() {
        let p = params(1.0, 1.0, 0.0, 3);
        let s = solve_energies(&wide(p, qn(0, 0, 0, 3))).unwrap()[0];
        assert!(radial_wave(&s, 3, 0.0).is_err());
        assert!(radial_wave(&s, 3, -1.0).is_err());
        assert!(radial_wave(&s, 3, 1.0).unwrap() > 0.0);
    }

    #[test]
    fn cubic_helper() {
        let r = real_cubic_roots(-6.0, 11.0, -6.0);
        assert_eq!(r.len(), 3);
        for (g, w) in r.iter().zip([1.0, 2.0, 3.0]) {
            assert!((g - w).abs() < 1e-12);
        }
        let r = real_cubic_roots(0.0, 1.0, 0.0);
        assert_eq!(r.len(), 1);
        assert!(r[0].abs() < 1e-15);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn roots_are_admissible_and_sorted(a0 in 0.2f64..2.0, beta in 0.0f64..1.0, n in 0u32..3, np in 0u32..3, dim in 3u32..6) {
            let p = params(1.0, a0, beta, dim);
            let states = solve_energies(&wide(p, qn(n, np, 1, dim))).unwrap();
            prop_assert!(states.windows(2).all(|w| w[0].energy <= w[1].energy));
            for s in states {
                prop_assert!(s.energy > p.mu - 2.0 * p.a0);
                prop_assert!(s.residual.abs() <= DEFAULT_TOL);
                prop_assert!((s.alpha1_sq + s.alpha2_sq - 2.0 * p.mu).abs() < 1e-12);
            }
        }
    }
}
