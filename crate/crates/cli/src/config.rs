//! Strict TOML run configuration.
//!
//! Every section except `[model]` is optional. Unknown keys are rejected, and
//! the assembled problem is checked against the library's own validators
//! before any job runs.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use kgring_core::angular::QuantumNumbers;
use kgring_core::model::{ModelParams, Regime};
use kgring_core::radial::{self, SpectrumRequest};
use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::CliError;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Output path; `--out` wins over it.
    #[serde(default)]
    pub output: Option<PathBuf>,
    pub model: ModelSection,
    #[serde(default)]
    pub levels: LevelsSection,
    #[serde(default)]
    pub solver: SolverSection,
    #[serde(default)]
    pub verify: VerifySection,
    #[serde(default)]
    pub wavefunction: WavefunctionSection,
    #[serde(default)]
    pub nu: NuSection,
    #[serde(default)]
    pub limits: LimitsSection,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSection {
    pub mu: f64,
    pub a0: f64,
    pub r0: f64,
    #[serde(default)]
    pub beta: f64,
    #[serde(default = "default_dim")]
    pub dim: u32,
}

fn default_dim() -> u32 {
    3
}

/// An inclusive integer range written as `3`, `[lo, hi]` or `[]` (empty).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(try_from = "RangeRepr")]
pub struct Span {
    pub lo: i64,
    pub hi: i64,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RangeRepr {
    One(i64),
    Many(Vec<i64>),
}

impl TryFrom<RangeRepr> for Span {
    type Error = String;

    fn try_from(r: RangeRepr) -> Result<Self, String> {
        match r {
            RangeRepr::One(v) => Ok(Span { lo: v, hi: v }),
            RangeRepr::Many(v) if v.is_empty() => Ok(Span::EMPTY),
            RangeRepr::Many(v) if v.len() == 2 => Ok(Span { lo: v[0], hi: v[1] }),
            RangeRepr::Many(v) => Err(format!("a range needs zero or two bounds, got {}", v.len())),
        }
    }
}

impl Span {
    pub const EMPTY: Span = Span { lo: 0, hi: -1 };

    pub fn single(v: i64) -> Self {
        Span { lo: v, hi: v }
    }

    pub fn iter(self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }

    fn check_nonnegative(self, name: &str) -> Result<(), CliError> {
        if self.lo <= self.hi && (self.lo < 0 || self.hi > i64::from(u32::MAX)) {
            return Err(CliError::Config(format!("levels.{name} must lie in [0, {}]", u32::MAX)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelsSection {
    #[serde(default = "Span::zero")]
    pub n: Span,
    #[serde(default = "Span::zero")]
    pub n_polar: Span,
    #[serde(default = "Span::zero")]
    pub m: Span,
    /// `l_1 ..= l_{D-3}`; defaults to `|m|` in every slot.
    #[serde(default)]
    pub cascade: Option<Vec<u32>>,
}

impl Span {
    fn zero() -> Self {
        Span::single(0)
    }
}

impl Default for LevelsSection {
    fn default() -> Self {
        Self { n: Span::zero(), n_polar: Span::zero(), m: Span::zero(), cascade: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RegimeName {
    #[default]
    Relativistic,
    Nonrelativistic,
}

impl From<RegimeName> for Regime {
    fn from(r: RegimeName) -> Self {
        match r {
            RegimeName::Relativistic => Regime::Relativistic,
            RegimeName::Nonrelativistic => Regime::Nonrelativistic,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverSection {
    #[serde(default)]
    pub regime: RegimeName,
    #[serde(default)]
    pub window: Option<[f64; 2]>,
    #[serde(default = "default_solver_tol")]
    pub tol: f64,
    #[serde(default = "default_points")]
    pub points: usize,
    #[serde(default = "default_max_roots")]
    pub max_roots: usize,
    #[serde(default = "yes")]
    pub parallel: bool,
}

fn default_solver_tol() -> f64 {
    radial::DEFAULT_TOL
}
fn default_points() -> usize {
    radial::DEFAULT_POINTS
}
fn default_max_roots() -> usize {
    radial::DEFAULT_MAX_ROOTS
}
fn yes() -> bool {
    true
}

impl Default for SolverSection {
    fn default() -> Self {
        Self {
            regime: RegimeName::default(),
            window: None,
            tol: default_solver_tol(),
            points: default_points(),
            max_roots: default_max_roots(),
            parallel: true,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifySection {
    /// Largest relative gap between closed form and oracle.
    #[serde(default = "default_verify_tol")]
    pub tol: f64,
    #[serde(default = "default_norm_tol")]
    pub norm_tol: f64,
    /// Added to every closed-form energy before comparison; exercises the detector.
    #[serde(default)]
    pub perturb: f64,
    /// Minimum radial grid size handed to the shooting oracle.
    #[serde(default)]
    pub oracle_points: Option<usize>,
}

fn default_verify_tol() -> f64 {
    1e-6
}
fn default_norm_tol() -> f64 {
    1e-8
}

impl Default for VerifySection {
    fn default() -> Self {
        Self { tol: default_verify_tol(), norm_tol: default_norm_tol(), perturb: 0.0, oracle_points: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parts {
    #[default]
    Both,
    Radial,
    Polar,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WavefunctionSection {
    #[serde(default)]
    pub n: u32,
    #[serde(default)]
    pub n_polar: u32,
    #[serde(default)]
    pub m: i32,
    #[serde(default)]
    pub cascade: Option<Vec<u32>>,
    #[serde(default)]
    pub parts: Parts,
    #[serde(default = "default_samples")]
    pub r_points: usize,
    /// Defaults to a radius past which the state is negligible.
    #[serde(default)]
    pub r_max: Option<f64>,
    #[serde(default = "default_samples")]
    pub theta_points: usize,
    #[serde(default = "default_norm_tol")]
    pub norm_tol: f64,
}

fn default_samples() -> usize {
    200
}

impl Default for WavefunctionSection {
    fn default() -> Self {
        Self {
            n: 0,
            n_polar: 0,
            m: 0,
            cascade: None,
            parts: Parts::Both,
            r_points: default_samples(),
            r_max: None,
            theta_points: default_samples(),
            norm_tol: default_norm_tol(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Fixture {
    #[default]
    All,
    Angular,
    Polar,
    Radial,
    Custom,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NuSection {
    #[serde(default)]
    pub fixture: Fixture,
    /// Cascade step `j` of the angular fixture.
    #[serde(default = "default_j")]
    pub j: u32,
    #[serde(default)]
    pub l_prev: u32,
    #[serde(default = "one")]
    pub l_j: u32,
    /// Energy at which the polar and radial fixtures are built; solved from
    /// `[levels]` when absent.
    #[serde(default)]
    pub energy: Option<f64>,
    /// `[c2, c1, c0]`
    #[serde(default)]
    pub sigma: Option<[f64; 3]>,
    #[serde(default)]
    pub sigma_tilde: Option<[f64; 3]>,
    /// `[c1, c0]`
    #[serde(default)]
    pub tau_tilde: Option<[f64; 2]>,
}

fn default_j() -> u32 {
    2
}
fn one() -> u32 {
    1
}

impl Default for NuSection {
    fn default() -> Self {
        Self {
            fixture: Fixture::All,
            j: default_j(),
            l_prev: 0,
            l_j: 1,
            energy: None,
            sigma: None,
            sigma_tilde: None,
            tau_tilde: None,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LimitsSection {
    /// Oscillator strengths for the cubic check.
    #[serde(default = "default_k")]
    pub k: Vec<f64>,
    /// `[n, l, D]` triples for the cubic check.
    #[serde(default = "default_oscillator_states")]
    pub oscillator: Vec<[u32; 3]>,
    #[serde(default = "default_cubic_tol")]
    pub cubic_tol: f64,
    #[serde(default = "default_mapping_tol")]
    pub mapping_tol: f64,
    /// Ring-shape strengths used for the Schrödinger mapping check.
    #[serde(default = "default_betas")]
    pub beta: Vec<f64>,
}

fn default_k() -> Vec<f64> {
    vec![1e-3]
}
fn default_oscillator_states() -> Vec<[u32; 3]> {
    vec![[0, 0, 3], [1, 1, 3], [2, 0, 4], [1, 2, 5]]
}
fn default_cubic_tol() -> f64 {
    1e-4
}
fn default_mapping_tol() -> f64 {
    1e-8
}
fn default_betas() -> Vec<f64> {
    vec![0.0, 0.5]
}

impl Default for LimitsSection {
    fn default() -> Self {
        Self {
            k: default_k(),
            oscillator: default_oscillator_states(),
            cubic_tol: default_cubic_tol(),
            mapping_tol: default_mapping_tol(),
            beta: default_betas(),
        }
    }
}

/// Command-line values that replace configured ones.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub out: Option<PathBuf>,
    pub tol: Option<f64>,
    pub window: Option<(f64, f64)>,
    pub grid: Option<usize>,
}

impl Overrides {
    fn canonical(&self) -> String {
        let mut s = String::new();
        if let Some(t) = self.tol {
            s.push_str(&format!("tol={t:e}\n"));
        }
        if let Some((lo, hi)) = self.window {
            s.push_str(&format!("window={lo:e}:{hi:e}\n"));
        }
        if let Some(g) = self.grid {
            s.push_str(&format!("grid={g}\n"));
        }
        s
    }
}

pub fn parse_window(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| format!("expected lo:hi, got {s:?}"))?;
    let lo: f64 = lo.trim().parse().map_err(|e| format!("bad lower bound {lo:?}: {e}"))?;
    let hi: f64 = hi.trim().parse().map_err(|e| format!("bad upper bound {hi:?}: {e}"))?;
    if !(lo < hi) {
        return Err(format!("window needs lo < hi, got {lo}:{hi}"));
    }
    Ok((lo, hi))
}

/// A validated configuration plus the digest that identifies it.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub config: RunConfig,
    pub params: ModelParams,
    pub hash: String,
}

impl Loaded {
    pub fn from_path(path: &Path, ov: &Overrides) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_str(&text, ov)
    }

    pub fn from_str(text: &str, ov: &Overrides) -> Result<Self, CliError> {
        let mut config: RunConfig = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        if let Some(out) = &ov.out {
            config.output = Some(out.clone());
        }
        if let Some(w) = ov.window {
            config.solver.window = Some([w.0, w.1]);
        }
        if let Some(g) = ov.grid {
            config.solver.points = g;
        }
        if let Some(t) = ov.tol {
            // the principal tolerance of each job
            config.solver.tol = t;
            config.verify.tol = t;
        }
        let m = config.model;
        let params = ModelParams::new(m.mu, m.a0, m.r0, m.beta, m.dim).map_err(config_err)?;
        let mut digest = Sha256::new();
        digest.update(text.as_bytes());
        digest.update(ov.canonical().as_bytes());
        let loaded = Self { config, params, hash: hex::encode(digest.finalize()) };
        loaded.validate()?;
        Ok(loaded)
    }

    fn validate(&self) -> Result<(), CliError> {
        let c = &self.config;
        c.levels.n.check_nonnegative("n")?;
        c.levels.n_polar.check_nonnegative("n_polar")?;
        if c.levels.m.lo <= c.levels.m.hi
            && (c.levels.m.lo < i64::from(i32::MIN) || c.levels.m.hi > i64::from(i32::MAX))
        {
            return Err(CliError::Config("levels.m out of range".into()));
        }
        for qn in self.channels(0) {
            qn.validate(self.params.dim).map_err(config_err)?;
        }
        let probe = self.request(self.probe_channel());
        probe.validate().map_err(config_err)?;
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(CliError::Config(format!("{name} must be positive, got {v}")))
            }
        };
        positive("verify.tol", c.verify.tol)?;
        positive("verify.norm_tol", c.verify.norm_tol)?;
        positive("wavefunction.norm_tol", c.wavefunction.norm_tol)?;
        positive("limits.cubic_tol", c.limits.cubic_tol)?;
        positive("limits.mapping_tol", c.limits.mapping_tol)?;
        if !c.verify.perturb.is_finite() {
            return Err(CliError::Config("verify.perturb must be finite".into()));
        }
        for &k in &c.limits.k {
            positive("limits.k", k)?;
        }
        for &b in &c.limits.beta {
            if !(b.is_finite() && b >= 0.0) {
                return Err(CliError::Config(format!("limits.beta must be nonnegative, got {b}")));
            }
        }
        for &[_, _, d] in &c.limits.oscillator {
            if d < 2 {
                return Err(CliError::Config(format!("limits.oscillator dimension must be at least 2, got {d}")));
            }
        }
        let w = &c.wavefunction;
        if w.r_points == 0 || w.theta_points == 0 {
            return Err(CliError::Config("wavefunction sample counts must be positive".into()));
        }
        if let Some(r) = w.r_max {
            positive("wavefunction.r_max", r)?;
        }
        self.wave_channel().validate(self.params.dim).map_err(config_err)?;
        if c.nu.fixture == Fixture::Custom
            && (c.nu.sigma.is_none() || c.nu.sigma_tilde.is_none() || c.nu.tau_tilde.is_none())
        {
            return Err(CliError::Config("nu.fixture = \"custom\" needs sigma, sigma_tilde and tau_tilde".into()));
        }
        if c.nu.j < 2 {
            return Err(CliError::Config(format!("nu.j must be at least 2, got {}", c.nu.j)));
        }
        if c.nu.l_j < c.nu.l_prev {
            return Err(CliError::Config("nu.l_j must not be below nu.l_prev".into()));
        }
        Ok(())
    }

    fn cascade_for(&self, fixed: &Option<Vec<u32>>, m: i32) -> Vec<u32> {
        let slots = self.params.dim.saturating_sub(3) as usize;
        fixed.clone().unwrap_or_else(|| vec![m.unsigned_abs(); slots])
    }

    /// Requested channels with radial index `n`, ordered by `(n_polar, m)`.
    fn channels(&self, n: u32) -> Vec<QuantumNumbers> {
        let lv = &self.config.levels;
        let mut out = Vec::new();
        for np in lv.n_polar.iter() {
            for m in lv.m.iter() {
                let m = m as i32;
                out.push(QuantumNumbers::new(n, np as u32, self.cascade_for(&lv.cascade, m), m));
            }
        }
        out
    }

    /// Every requested state in lexicographic `(n, n_polar, m)` order.
    pub fn states(&self) -> Vec<QuantumNumbers> {
        self.config.levels.n.iter().flat_map(|n| self.channels(n as u32)).collect()
    }

    /// First requested state, or the wavefunction level when none are requested.
    pub fn probe_channel(&self) -> QuantumNumbers {
        self.states().into_iter().next().unwrap_or_else(|| self.wave_channel())
    }

    pub fn wave_channel(&self) -> QuantumNumbers {
        let w = &self.config.wavefunction;
        QuantumNumbers::new(w.n, w.n_polar, self.cascade_for(&w.cascade, w.m), w.m)
    }

    pub fn regime(&self) -> Regime {
        self.config.solver.regime.into()
    }

    pub fn request(&self, qn: QuantumNumbers) -> SpectrumRequest {
        let s = &self.config.solver;
        let mut req = match self.regime() {
            Regime::Relativistic => SpectrumRequest::new(self.params, qn),
            Regime::Nonrelativistic => SpectrumRequest::nonrelativistic(self.params, qn),
        };
        if let Some([lo, hi]) = s.window {
            req = req.with_window(lo, hi);
        }
        req = req.with_tol(s.tol).with_points(s.points);
        req.max_roots = s.max_roots;
        req
    }
}

fn config_err(e: kgring_core::Error) -> CliError {
    CliError::Config(e.to_string())
}

pub(crate) fn theta_samples(points: usize) -> impl Iterator<Item = f64> {
    (1..=points).map(move |i| PI * i as f64 / (points + 1) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = "[model]\nmu = 1.0\na0 = 1.0\nr0 = 1.0\n";

    #[test]
    fn defaults_fill_in() {
        let l = Loaded::from_str(BASE, &Overrides::default()).unwrap();
        assert_eq!(l.params.dim, 3);
        assert_eq!(l.states(), vec![QuantumNumbers::three_d(0, 0, 0)]);
        assert_eq!(l.config.verify.tol, 1e-6);
    }

    #[test]
    fn ranges() {
        let text = format!("{BASE}[levels]\nn = [0, 1]\nn_polar = 2\nm = [-1, 1]\n");
        let l = Loaded::from_str(&text, &Overrides::default()).unwrap();
        let states = l.states();
        assert_eq!(states.len(), 6);
        assert_eq!(states[0], QuantumNumbers::three_d(0, 2, -1));
        assert_eq!(states[5], QuantumNumbers::three_d(1, 2, 1));
        let empty = format!("{BASE}[levels]\nn = []\n");
        assert!(Loaded::from_str(&empty, &Overrides::default()).unwrap().states().is_empty());
    }

    #[test]
    fn cascade_defaults_to_abs_m() {
        let text = "[model]\nmu = 1.0\na0 = 1.0\nr0 = 1.0\ndim = 5\n[levels]\nm = -2\n";
        let l = Loaded::from_str(text, &Overrides::default()).unwrap();
        assert_eq!(l.states()[0].cascade, vec![2, 2]);
    }

    #[test]
    fn rejects_bad_input() {
        let ov = Overrides::default();
        for text in [
            format!("{BASE}bogus = 1\n"),
            format!("{BASE}[solver]\nwindow = [1.0, 0.0]\n"),
            format!("{BASE}[levels]\nn = [0, 1, 2]\n"),
            format!("{BASE}[levels]\nn = -1\n"),
            format!("{BASE}[verify]\ntol = 0.0\n"),
            "[model]\nmu = -1.0\na0 = 1.0\nr0 = 1.0\n".to_string(),
            "[model]\nmu = 1.0\na0 = 1.0\nr0 = 1.0\ndim = 4\n[levels]\nm = 2\ncascade = [1]\n".to_string(),
            format!("{BASE}[nu]\nfixture = \"custom\"\n"),
        ] {
            assert!(matches!(Loaded::from_str(&text, &ov), Err(CliError::Config(_))), "{text}");
        }
    }

    #[test]
    fn overrides_apply_and_change_hash() {
        let plain = Loaded::from_str(BASE, &Overrides::default()).unwrap();
        let ov = Overrides { tol: Some(1e-9), window: Some((-0.5, 9.0)), grid: Some(300), out: None };
        let l = Loaded::from_str(BASE, &ov).unwrap();
        assert_eq!(l.config.solver.window, Some([-0.5, 9.0]));
        assert_eq!(l.config.solver.points, 300);
        assert_eq!(l.config.verify.tol, 1e-9);
        assert_ne!(plain.hash, l.hash);
        assert_eq!(plain.hash, Loaded::from_str(BASE, &Overrides::default()).unwrap().hash);
    }

    #[test]
    fn window_syntax() {
        assert_eq!(parse_window("-0.5:40").unwrap(), (-0.5, 40.0));
        assert!(parse_window("3").is_err());
        assert!(parse_window("2:1").is_err());
    }
}
