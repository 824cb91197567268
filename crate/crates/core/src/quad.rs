//! Gauss–Legendre quadrature: fixed, composite and adaptive.

use std::f64::consts::PI;

/// Nodes and weights of the `n`-point Gauss–Legendre rule on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n > 0, "Gauss-Legendre rule needs at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        // Tricomi initial guess, then Newton on P_n
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let step = p / d;
            x -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        dp = if d.is_finite() { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let (p, prev) = if n == 0 { (1.0, 0.0) } else { (p1, p0) };
    let d = n as f64 * (x * p - prev) / (x * x - 1.0);
    (p, d)
}

/// A reusable rule mapped onto arbitrary intervals.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        let (nodes, weights) = gauss_legendre(n);
        Self { nodes, weights }
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        half * self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(mid + half * x))
            .sum::<f64>()
    }
}

pub fn composite_gauss_legendre<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    panels: usize,
    order: usize,
) -> f64 {
    let rule = GaussLegendre::new(order);
    let width = (b - a) / panels as f64;
    (0..panels)
        .map(|k| {
            let lo = a + k as f64 * width;
            rule.integrate(&f, lo, lo + width)
        })
        .sum()
}

const ADAPTIVE_ORDER: usize = 15;
const ADAPTIVE_MAX_DEPTH: usize = 48;

/// Recursive bisection until the panel estimate and the sum of its halves
/// agree to `tol` (absolute, shared across panels by halving) or to roundoff.
pub fn adaptive<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    let rule = GaussLegendre::new(ADAPTIVE_ORDER);
    let whole = rule.integrate(&f, a, b);
    refine(&rule, &f, a, b, whole, tol, 0)
}

fn refine<F: Fn(f64) -> f64>(
    rule: &GaussLegendre,
    f: &F,
    a: f64,
    b: f64,
    whole: f64,
    tol: f64,
    depth: usize,
) -> f64 {
    let mid = 0.5 * (a + b);
    let left = rule.integrate(f, a, mid);
    let right = rule.integrate(f, mid, b);
    let split = left + right;
    let floor = 16.0 * f64::EPSILON * (left.abs() + right.abs());
    if (split - whole).abs() <= tol.max(floor) || depth >= ADAPTIVE_MAX_DEPTH {
        return split;
    }
    refine(rule, f, a, mid, left, 0.5 * tol, depth + 1)
        + refine(rule, f, mid, b, right, 0.5 * tol, depth + 1)
}
