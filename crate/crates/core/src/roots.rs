//! Sign-change scanning and bracketed root polishing (Brent's method).

use crate::error::{Error, Result};

/// A bracket `[lo, hi]` with function values of opposite sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

/// Samples `f` on `points` evenly spaced abscissae and returns every cell whose
/// endpoint values change sign. Points where `f` fails are skipped, so a cell
/// never straddles a failed evaluation.
pub fn scan_brackets<F>(mut f: F, lo: f64, hi: f64, points: usize) -> Vec<Bracket>
where
    F: FnMut(f64) -> Result<f64>,
{
    let points = points.max(2);
    let step = (hi - lo) / (points - 1) as f64;
    let mut out = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for i in 0..points {
        let x = if i + 1 == points { hi } else { lo + i as f64 * step };
        let fx = match f(x) {
            Ok(v) if v.is_finite() => v,
            _ => {
                prev = None;
                continue;
            }
        };
        if let Some((xp, fp)) = prev {
            if fx == 0.0 {
                // exact hit: report a degenerate bracket once
                out.push(Bracket { lo: x, hi: x, f_lo: 0.0, f_hi: 0.0 });
            } else if fp != 0.0 && (fp < 0.0) != (fx < 0.0) {
                out.push(Bracket { lo: xp, hi: x, f_lo: fp, f_hi: fx });
            }
        } else if fx == 0.0 && i == 0 {
            out.push(Bracket { lo: x, hi: x, f_lo: 0.0, f_hi: 0.0 });
        }
        prev = Some((x, fx));
    }
    out
}

/// Stopping rule for [`brent`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    /// Accept once `|f| <= ftol`.
    pub ftol: f64,
    /// Or once the bracket is narrower than this (relative to |x|, floored at 1).
    pub xtol: f64,
    pub max_iter: usize,
    /// Accept the better endpoint once the bracket collapses, whatever `|f|` is.
    pub accept_width: bool,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { ftol: 1e-12, xtol: 4.0 * f64::EPSILON, max_iter: 200, accept_width: false }
    }
}

/// Returns `(root, f(root))`. Fails if the bracket collapses without meeting
/// `ftol`, or the iteration budget runs out.
pub fn brent<F>(mut f: F, bracket: Bracket, tol: Tolerance) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let Bracket { lo: mut a, hi: mut b, f_lo: mut fa, f_hi: mut fb } = bracket;
    if fa == 0.0 {
        return Ok((a, 0.0));
    }
    if fb == 0.0 {
        return Ok((b, 0.0));
    }
    if (fa < 0.0) == (fb < 0.0) {
        return Err(Error::NotFound(format!("[{a}, {b}] does not bracket a sign change")));
    }
    if fa.abs() < fb.abs() {
        std::mem::swap(&mut a, &mut b);
        std::mem::swap(&mut fa, &mut fb);
    }
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut bisected = true;
    for _ in 0..tol.max_iter {
        if fb.abs() <= tol.ftol {
            return Ok((b, fb));
        }
        let width = (b - a).abs();
        if width <= tol.xtol * b.abs().max(1.0) {
            let (x, fx) = if fa.abs() < fb.abs() { (a, fa) } else { (b, fb) };
            if tol.accept_width || fx.abs() <= tol.ftol {
                return Ok((x, fx));
            }
            return Err(Error::Convergence {
                what: "bracketed root",
                iterations: tol.max_iter,
                lo: a.min(b),
                hi: a.max(b),
                residual: fx,
            });
        }
        let mut s = if fa != fc && fb != fc {
            // inverse quadratic interpolation
            a * fb * fc / ((fa - fb) * (fa - fc))
                + b * fa * fc / ((fb - fa) * (fb - fc))
                + c * fa * fb / ((fc - fa) * (fc - fb))
        } else {
            b - fb * (b - a) / (fb - fa)
        };
        let lo = (3.0 * a + b) / 4.0;
        let outside = !((s > lo.min(b)) && (s < lo.max(b)));
        let slow = if bisected {
            (s - b).abs() >= 0.5 * (b - c).abs()
        } else {
            (s - b).abs() >= 0.5 * (c - d).abs()
        };
        if outside || slow || !s.is_finite() {
            s = 0.5 * (a + b);
            bisected = true;
        } else {
            bisected = false;
        }
        let fs = f(s)?;
        d = c;
        c = b;
        fc = fb;
        if (fa < 0.0) != (fs < 0.0) {
            b = s;
            fb = fs;
        } else {
            a = s;
            fa = fs;
        }
        if fa.abs() < fb.abs() {
            std::mem::swap(&mut a, &mut b);
            std::mem::swap(&mut fa, &mut fb);
        }
    }
    Err(Error::Convergence {
        what: "bracketed root",
        iterations: tol.max_iter,
        lo: a.min(b),
        hi: a.max(b),
        residual: fb,
    })
}

/// Scan then polish every bracket.
pub fn find_roots<F>(mut f: F, lo: f64, hi: f64, points: usize, tol: Tolerance) -> Result<Vec<(f64, f64)>>
where
    F: FnMut(f64) -> Result<f64>,
{
    let brackets = scan_brackets(&mut f, lo, hi, points);
    brackets.into_iter().map(|b| brent(&mut f, b, tol)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polishes_polynomial_root() {
        let f = |x: f64| Ok(-x * x + 2.0 * x + 1.0);
        let roots = find_roots(f, 0.0, 5.0, 11, Tolerance::default()).unwrap();
        assert_eq!(roots.len(), 1);
        assert!((roots[0].0 - (1.0 + 2f64.sqrt())).abs() < 1e-14);
    }

    #[test]
    fn finds_all_sign_changes_in_order() {
        let roots = find_roots(|x: f64| Ok(x.sin()), 0.5, 10.0, 200, Tolerance::default()).unwrap();
        let got: Vec<f64> = roots.iter().map(|r| r.0).collect();
        let want = [std::f64::consts::PI, 2.0 * std::f64::consts::PI, 3.0 * std::f64::consts::PI];
        assert_eq!(got.len(), 3);
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() < 1e-12);
        }
    }

    #[test]
    fn skips_failed_evaluations() {
        let f = |x: f64| {
            if (1.0..2.0).contains(&x) {
                Err(Error::NotFound("hole".into()))
            } else {
                Ok(x - 1.5)
            }
        };
        assert!(scan_brackets(f, 0.0, 3.0, 31).is_empty());
    }

    #[test]
    fn rejects_non_bracket() {
        let b = Bracket { lo: 0.0, hi: 1.0, f_lo: 1.0, f_hi: 2.0 };
        assert!(brent(|x: f64| Ok(x + 1.0), b, Tolerance::default()).is_err());
    }
}
