//! Numerov shooting for the radial equation on a logarithmic grid.
//!
//! With `r = e^t` and `g = r^{1/2} u` the radial equation becomes
//! `u'' = F(t) u`, `F = kappa + x B + 1/4 + x A r^4 - lambda r^2`, where
//! `lambda = -x (y + C)`. For fixed `x` this is a linear eigenproblem in
//! `lambda`; the relativistic energy couples back through `x = mu + E`.

use crate::angular::{effective_l, QuantumNumbers};
use crate::error::{Error, Result};
use crate::model::{derive_couplings, DerivedCouplings, ModelParams, Regime};
use crate::roots::{brent, scan_brackets, Bracket, Tolerance};

pub const DEFAULT_POINTS: usize = 6000;
/// Gaussian e-folds of `|g|^2` kept beyond the outer turning point.
const TAIL: f64 = 90.0;
const RESCALE: f64 = 1e100;
const MAX_BISECTIONS: usize = 400;

/// How `l~` is obtained for a trial energy.
#[derive(Debug, Clone, PartialEq)]
pub enum Channel {
    Fixed(f64),
    /// Recomputed from the polar quantization at every `alpha2^2`.
    Ring(QuantumNumbers),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialGrid {
    pub r_min: f64,
    /// Chosen from the eigenvalue scale when absent.
    pub r_max: Option<f64>,
    /// Minimum point count; raised when the confining term demands a finer step.
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadialProblem {
    pub dim: u32,
    pub channel: Channel,
    pub mu: f64,
    pub beta: f64,
    pub couplings: DerivedCouplings,
    pub regime: Regime,
    pub grid: RadialGrid,
    /// Relativistic energy search window; the upper end grows until it brackets a root.
    pub window: Option<(f64, f64)>,
    pub scan_points: usize,
}

/// Outcome of one two-sided integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Shot {
    /// Normalized Wronskian of the outward and inward solutions at the match point.
    pub mismatch: f64,
    pub nodes: u32,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialSolution {
    pub energy: f64,
    pub l_tilde: f64,
    /// `-alpha2^2 (alpha1^2 + C)`
    pub lambda: f64,
    pub mismatch: f64,
    pub nodes: u32,
}

impl RadialProblem {
    pub fn new(params: &ModelParams, channel: Channel, regime: Regime) -> Result<Self> {
        params.validate()?;
        if let Channel::Ring(qn) = &channel {
            qn.validate(params.dim)?;
        }
        Ok(Self {
            dim: params.dim,
            channel,
            mu: params.mu,
            beta: params.beta,
            couplings: derive_couplings(params)?,
            regime,
            grid: RadialGrid { r_min: 1e-3 * params.r0, r_max: None, points: DEFAULT_POINTS },
            window: None,
            scan_points: 48,
        })
    }

    /// `V = k^2 r^2 / 2` in the Schrödinger limit.
    pub fn oscillator(k: f64, mu: f64, dim: u32, l: u32) -> Result<Self> {
        if !(k > 0.0 && mu > 0.0) {
            return Err(Error::ParameterDomain(format!("k and mu must be positive, got {k}, {mu}")));
        }
        if dim < 3 {
            return Err(Error::ParameterDomain(format!("dimension must be at least 3, got {dim}")));
        }
        let length = 1.0 / (k * mu.sqrt()).sqrt();
        Ok(Self {
            dim,
            channel: Channel::Fixed(f64::from(l)),
            mu,
            beta: 0.0,
            couplings: DerivedCouplings { a: 0.5 * k * k, b: 0.0, c: 0.0 },
            regime: Regime::Nonrelativistic,
            grid: RadialGrid { r_min: 1e-3 * length, r_max: None, points: DEFAULT_POINTS },
            window: None,
            scan_points: 48,
        })
    }

    pub fn with_points(mut self, points: usize) -> Self {
        self.grid.points = points;
        self
    }

    pub fn with_window(mut self, lo: f64, hi: f64) -> Self {
        self.window = Some((lo, hi));
        self
    }

    /// `(alpha2^2, alpha1^2)` at a trial energy.
    fn couplings_at(&self, energy: f64) -> Result<(f64, f64)> {
        match self.regime {
            Regime::Relativistic => {
                let x = self.mu + energy;
                if !(x > 0.0) {
                    return Err(Error::EnergyDomain { energy, neg_mu: -self.mu });
                }
                Ok((x, self.mu - energy))
            }
            Regime::Nonrelativistic => Ok((2.0 * self.mu, -energy)),
        }
    }

    fn l_tilde(&self, x: f64) -> Result<f64> {
        match &self.channel {
            Channel::Fixed(l) => Ok(*l),
            Channel::Ring(qn) => Ok(effective_l(qn, self.dim, x, self.beta)?.l_tilde),
        }
    }

    /// Operator resolving every `lambda <= lambda_max`; `r_max` sits past the
    /// outer turning point of `lambda_max` unless the grid fixes it.
    fn operator(&self, x: f64, l_tilde: f64, lambda_max: f64) -> Result<Operator> {
        let m = f64::from(self.dim) + 2.0 * l_tilde;
        let q = 0.25 * (m - 1.0) * (m - 3.0) + x * self.couplings.b + 0.25;
        if !(q >= 0.0) {
            return Err(Error::Integration(format!("no regular solution for l~ = {l_tilde}")));
        }
        let xa = x * self.couplings.a;
        let alpha = xa.sqrt();
        let r_max = self
            .grid
            .r_max
            .unwrap_or_else(|| (lambda_max.max(0.0) / xa + TAIL / alpha).sqrt());
        if self.grid.points < 16 || !(r_max > self.grid.r_min) {
            return Err(Error::ParameterDomain(format!(
                "bad radial grid: r in [{}, {r_max}] on {} points",
                self.grid.r_min, self.grid.points
            )));
        }
        let t0 = self.grid.r_min.ln();
        let span = r_max.ln() - t0;
        // |F| peaks either at the outer edge or, for oscillation, at
        // max_r (lambda r^2 - xa r^4 - q) = lambda^2 / (4 xa) - q
        let confining = q + xa * r_max.powi(4) + (-lambda_max).max(0.0) * r_max * r_max;
        let oscillating = lambda_max.max(0.0).powi(2) / (4.0 * xa) - q;
        let f_max = confining.max(oscillating);
        let needed = (span * (f_max / (12.0 * 0.02)).sqrt()).ceil() as usize + 1;
        let points = self.grid.points.max(needed);
        let h = span / (points - 1) as f64;
        Ok(Operator { q, xa, t0, h, points })
    }

    /// An operator and a `lambda` bound with more than `n` levels below it.
    fn sized_operator(&self, x: f64, l_tilde: f64, n: u32) -> Result<(Operator, f64)> {
        let probe = self.operator(x, l_tilde, 0.0)?;
        let floor = probe.floor();
        let mut step = probe.xa.sqrt();
        for _ in 0..80 {
            let hi = floor + step;
            let op = self.operator(x, l_tilde, hi)?;
            if op.count(hi)? > n {
                return Ok((op, hi));
            }
            step *= 2.0;
        }
        Err(Error::NotFound(format!("fewer than {} levels on the radial grid", n + 1)))
    }

    /// `n`-th eigenvalue `lambda` at fixed `x`.
    fn lambda_n(&self, x: f64, n: u32) -> Result<(f64, Shot, f64)> {
        let l_tilde = self.l_tilde(x)?;
        let (op, hi) = self.sized_operator(x, l_tilde, n)?;
        let (lambda, shot) = op.eigenvalue(n, hi)?;
        Ok((lambda, shot, l_tilde))
    }

    fn lambda_target(&self, x: f64, y: f64) -> f64 {
        -x * (y + self.couplings.c)
    }
}

/// Two-sided integration at a trial energy.
pub fn shoot_radial(prob: &RadialProblem, energy: f64) -> Result<Shot> {
    let (x, y) = prob.couplings_at(energy)?;
    let l_tilde = prob.l_tilde(x)?;
    let lambda = prob.lambda_target(x, y);
    let op = prob.operator(x, l_tilde, lambda)?;
    let m = op.match_index(lambda);
    op.shoot(lambda, m)
}

/// `n`-th bound state by shooting, with node-count steering.
pub fn solve_radial_numeric(prob: &RadialProblem, n: u32) -> Result<RadialSolution> {
    match prob.regime {
        Regime::Nonrelativistic => {
            let x = 2.0 * prob.mu;
            let (lambda, shot, l_tilde) = prob.lambda_n(x, n)?;
            Ok(RadialSolution {
                energy: prob.couplings.c + lambda / x,
                l_tilde,
                lambda,
                mismatch: shot.mismatch,
                nodes: shot.nodes,
            })
        }
        Regime::Relativistic => solve_relativistic(prob, n),
    }
}

fn solve_relativistic(prob: &RadialProblem, n: u32) -> Result<RadialSolution> {
    // G(E) = x (x - 2 mu - C) - lambda_n(x) vanishes at a bound state
    let gap = |e: f64| -> Result<f64> {
        let (x, y) = prob.couplings_at(e)?;
        Ok(prob.lambda_target(x, y) - prob.lambda_n(x, n)?.0)
    };
    let (lo, mut hi) = prob.window.unwrap_or((-prob.mu * (1.0 - 1e-6), prob.mu + 6.0 * prob.couplings.c.abs() / 2.0));
    if prob.window.is_none() {
        let mut grown = 0;
        while gap(hi)? <= 0.0 {
            hi = prob.mu + 2.0 * (hi - prob.mu).max(prob.mu);
            grown += 1;
            if grown > 40 {
                return Err(Error::NotFound(format!("no sign change of the shooting gap below E = {hi}")));
            }
        }
    }
    let brackets = scan_brackets(gap, lo, hi, prob.scan_points.max(2));
    let bracket = brackets
        .first()
        .copied()
        .ok_or_else(|| Error::NotFound(format!("no level n = {n} in [{lo}, {hi}]")))?;
    let tol = Tolerance { ftol: 0.0, xtol: 1e-15, max_iter: 300, accept_width: true };
    let (energy, _) = brent(gap, bracket, tol)?;
    let (x, _) = prob.couplings_at(energy)?;
    let (lambda, shot, l_tilde) = prob.lambda_n(x, n)?;
    Ok(RadialSolution { energy, l_tilde, lambda, mismatch: shot.mismatch, nodes: shot.nodes })
}

/// `u'' = (q + xa r^4 - lambda r^2) u` on `t = t0 + i h`.
#[derive(Debug, Clone, Copy)]
struct Operator {
    q: f64,
    xa: f64,
    t0: f64,
    h: f64,
    points: usize,
}

impl Operator {
    fn r(&self, i: usize) -> f64 {
        (self.t0 + i as f64 * self.h).exp()
    }

    fn f(&self, i: usize, lambda: f64) -> f64 {
        let r2 = self.r(i).powi(2);
        self.q + self.xa * r2 * r2 - lambda * r2
    }

    /// Numerov weight `1 - h^2 F / 12`.
    fn w(&self, i: usize, lambda: f64) -> f64 {
        1.0 - self.h * self.h * self.f(i, lambda) / 12.0
    }

    /// Regular solution near the origin, `(r / r_min)^s (1 + c r^2 + d r^4)`.
    fn regular(&self, i: usize, lambda: f64) -> f64 {
        let s = self.q.sqrt();
        let c = -lambda / (4.0 * s + 4.0);
        let d = (self.xa - lambda * c) / (8.0 * s + 16.0);
        let r2 = self.r(i).powi(2);
        (s * i as f64 * self.h).exp() * (1.0 + c * r2 + d * r2 * r2)
    }

    /// Outward sweep to index `upto`; returns the last two values and the sign changes seen.
    fn outward(&self, lambda: f64, upto: usize) -> Result<(f64, f64, u32)> {
        let mut prev = self.regular(0, lambda);
        let mut cur = self.regular(1, lambda);
        let mut nodes = u32::from(prev * cur < 0.0);
        let mut w_prev = self.w(0, lambda);
        let mut w_cur = self.w(1, lambda);
        for i in 1..upto {
            let w_next = self.w(i + 1, lambda);
            if w_next <= 0.0 {
                return Err(Error::Integration("radial grid too coarse for the potential".into()));
            }
            let next = ((12.0 - 10.0 * w_cur) * cur - w_prev * prev) / w_next;
            if next * cur < 0.0 {
                nodes += 1;
            }
            prev = cur;
            cur = next;
            w_prev = w_cur;
            w_cur = w_next;
            if cur.abs() > RESCALE {
                prev /= RESCALE;
                cur /= RESCALE;
            }
        }
        Ok((prev, cur, nodes))
    }

    /// Inward sweep from `u = 0` at the outer edge down to index `downto`.
    fn inward(&self, lambda: f64, downto: usize) -> Result<(f64, f64, u32)> {
        let last = self.points - 1;
        let mut next = 0.0;
        let mut cur = 1e-200;
        let mut nodes = 0;
        let mut w_next = self.w(last, lambda);
        let mut w_cur = self.w(last - 1, lambda);
        let mut i = last - 1;
        while i > downto {
            let w_prev = self.w(i - 1, lambda);
            if w_prev <= 0.0 {
                return Err(Error::Integration("radial grid too coarse for the potential".into()));
            }
            let prev = ((12.0 - 10.0 * w_cur) * cur - w_next * next) / w_prev;
            if prev * cur < 0.0 {
                nodes += 1;
            }
            next = cur;
            cur = prev;
            w_next = w_cur;
            w_cur = w_prev;
            if cur.abs() > RESCALE {
                next /= RESCALE;
                cur /= RESCALE;
            }
            i -= 1;
        }
        Ok((cur, next, nodes))
    }

    /// Nodes of the outward solution across the whole grid, counting a zero at the edge.
    fn count(&self, lambda: f64) -> Result<u32> {
        let (prev, cur, nodes) = self.outward(lambda, self.points - 1)?;
        Ok(nodes + u32::from(cur == 0.0 && prev != 0.0))
    }

    /// Last index where the motion is classically allowed, else the bottom of `F`.
    fn match_index(&self, lambda: f64) -> usize {
        let hi = self.points - 3;
        let allowed = (1..=hi).rev().find(|&i| self.f(i, lambda) < 0.0);
        allowed.unwrap_or_else(|| {
            (1..=hi)
                .min_by(|&a, &b| self.f(a, lambda).total_cmp(&self.f(b, lambda)))
                .unwrap_or(1)
        })
    }

    fn shoot(&self, lambda: f64, m: usize) -> Result<Shot> {
        let (o0, o1, n_out) = self.outward(lambda, m + 1)?;
        let (i0, i1, n_in) = self.inward(lambda, m)?;
        let wronskian = o0 * i1 - o1 * i0;
        let scale = o0.hypot(o1) * i0.hypot(i1);
        let mismatch = if scale > 0.0 { wronskian / scale } else { 0.0 };
        // both sweeps include the interval (m, m + 1); count it once
        let nodes = n_out + n_in - u32::from(i0 * i1 < 0.0);
        Ok(Shot { mismatch, nodes })
    }

    /// Minimum of `(q - 1/4) / r^2 + xa r^2`; no level lies below it.
    fn floor(&self) -> f64 {
        let c = self.q - 0.25;
        if c > 0.0 {
            2.0 * (c * self.xa).sqrt()
        } else {
            0.0
        }
    }

    fn eigenvalue(&self, n: u32, hi: f64) -> Result<(f64, Shot)> {
        let mut a = self.floor();
        let mut b = hi;
        let mut steps = 0;
        loop {
            let (ca, cb) = (self.count(a)?, self.count(b)?);
            if ca == n && cb == n + 1 {
                break;
            }
            let mid = 0.5 * (a + b);
            if self.count(mid)? <= n {
                a = mid;
            } else {
                b = mid;
            }
            steps += 1;
            if steps > MAX_BISECTIONS || b - a <= f64::EPSILON * b.abs() {
                return Err(Error::Convergence {
                    what: "radial node bracket",
                    iterations: steps,
                    lo: a,
                    hi: b,
                    residual: f64::NAN,
                });
            }
        }
        let m = self.match_index(0.5 * (a + b));
        let mismatch = |lambda: f64| Ok(self.shoot(lambda, m)?.mismatch);
        let bracket = Bracket { lo: a, hi: b, f_lo: mismatch(a)?, f_hi: mismatch(b)? };
        let tol = Tolerance { ftol: 0.0, xtol: 1e-15, max_iter: 300, accept_width: true };
        let (lambda, _) = brent(mismatch, bracket, tol)?;
        Ok((lambda, self.shoot(lambda, m)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radial::{nr_energies, solve_energies, NrKind, SpectrumRequest};

    fn ring(dim: u32, n: u32) -> QuantumNumbers {
        QuantumNumbers::new(n, 1, vec![1; (dim - 3) as usize], 1)
    }

    #[test]
    fn oscillator_spectrum() {
        for (dim, l, k, mu) in [(3, 0, 1.0, 1.0), (3, 2, 0.7, 2.0), (4, 1, 1.3, 0.5)] {
            let prob = RadialProblem::oscillator(k, mu, dim, l).unwrap();
            for n in 0..4 {
                let s = solve_radial_numeric(&prob, n).unwrap();
                let want = nr_energies(NrKind::Oscillator { n, l, dim, k, mu }).unwrap();
                assert!((s.energy - want).abs() < 1e-8, "D={dim} l={l} n={n}: {} vs {want}", s.energy);
                assert_eq!(s.nodes, n);
            }
        }
    }

    #[test]
    fn pseudoharmonic_schrodinger() {
        let p = ModelParams::new(1.0, 1.0, 1.0, 0.0, 3).unwrap();
        for l in 0..3 {
            let prob = RadialProblem::new(&p, Channel::Fixed(f64::from(l)), Regime::Nonrelativistic).unwrap();
            for n in 0..3 {
                let s = solve_radial_numeric(&prob, n).unwrap();
                let want = nr_energies(NrKind::Pseudoharmonic { n, l, mu: 1.0, a0: 1.0, r0: 1.0 }).unwrap();
                assert!((s.energy - want).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn closed_form_energy_shoots_clean() {
        let p = ModelParams::new(1.0, 1.0, 1.0, 0.5, 4).unwrap();
        let prob = RadialProblem::new(&p, Channel::Ring(ring(4, 0)), Regime::Relativistic).unwrap();
        for n in 0..3 {
            let qn = ring(4, n);
            let req = SpectrumRequest::new(p, qn.clone()).with_window(-1.0 + 1e-6, 40.0);
            let e = solve_energies(&req).unwrap()[0].energy;
            let prob = RadialProblem { channel: Channel::Ring(qn), ..prob.clone() };
            let shot = shoot_radial(&prob, e).unwrap();
            assert!(shot.mismatch.abs() < 1e-6);
            assert_eq!(shot.nodes, n);
            // the mismatch changes sign across the level
            let below = shoot_radial(&prob, e - 1e-3).unwrap().mismatch;
            let above = shoot_radial(&prob, e + 1e-3).unwrap().mismatch;
            assert!(below * above < 0.0);
        }
    }

    #[test]
    fn levels_increase_with_n() {
        let p = ModelParams::new(1.0, 0.5, 1.0, 0.5, 3).unwrap();
        let prob = RadialProblem::new(&p, Channel::Ring(ring(3, 0)), Regime::Relativistic)
            .unwrap()
            .with_points(3000);
        let e: Vec<f64> = (0..4).map(|n| solve_radial_numeric(&prob, n).unwrap().energy).collect();
        assert!(e.windows(2).all(|w| w[0] < w[1]), "{e:?}");
    }

    #[test]
    fn grid_doubling_converged() {
        let p = ModelParams::new(1.0, 1.0, 1.0, 0.0, 5).unwrap();
        let prob = RadialProblem::new(&p, Channel::Ring(ring(5, 0)), Regime::Relativistic).unwrap();
        for n in [0, 3] {
            let coarse = solve_radial_numeric(&prob, n).unwrap().energy;
            let fine = solve_radial_numeric(&prob.clone().with_points(2 * DEFAULT_POINTS), n).unwrap().energy;
            assert!((coarse - fine).abs() <= 1e-7);
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let p = ModelParams::new(1.0, 1.0, 1.0, 0.0, 3).unwrap();
        let prob = RadialProblem::new(&p, Channel::Fixed(0.0), Regime::Relativistic).unwrap();
        assert!(matches!(shoot_radial(&prob, -1.0), Err(Error::EnergyDomain { .. })));
        assert!(solve_radial_numeric(&prob.clone().with_points(4), 0).is_err());
        assert!(RadialProblem::oscillator(0.0, 1.0, 3, 0).is_err());
        assert!(RadialProblem::new(&p, Channel::Ring(QuantumNumbers::new(0, 0, vec![1], 0)), Regime::Relativistic).is_err());
        let empty = prob.with_window(-0.5, 0.0);
        assert!(matches!(solve_radial_numeric(&empty, 0), Err(Error::NotFound(_))));
    }
}
