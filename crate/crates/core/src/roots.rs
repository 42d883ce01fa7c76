//! Safeguarded scalar root finding: bisection to a coarse tolerance, then
//! Newton polish kept inside the bracket.

use crate::error::{QuermassError, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootOptions {
    /// Bracket width at which bisection hands over to Newton.
    pub bisection_tol: f64,
    /// Required `|f(root)|`, relative to `max(1, |root|)`.
    pub residual_tol: f64,
    pub max_newton: usize,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions { bisection_tol: 1e-6, residual_tol: 1e-12, max_newton: 30 }
    }
}

/// Finds a root of `f` in `[lo, hi]`, where `f` returns `(value, derivative)`.
///
/// `f(lo)` and `f(hi)` must have opposite signs. Newton steps that leave the
/// current bracket or have a vanishing derivative are replaced by bisection.
pub fn bracketed_newton<F>(mut f: F, mut lo: f64, mut hi: f64, opts: &RootOptions) -> Result<f64>
where
    F: FnMut(f64) -> (f64, f64),
{
    let (mut flo, _) = f(lo);
    let (fhi, _) = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if !(flo.is_finite() && fhi.is_finite()) || flo.signum() == fhi.signum() {
        return Err(QuermassError::Geometry(format!(
            "root not bracketed on [{lo}, {hi}]: f = ({flo:e}, {fhi:e})"
        )));
    }

    while hi - lo > opts.bisection_tol {
        let mid = 0.5 * (lo + hi);
        let (fm, _) = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }

    let mut x = 0.5 * (lo + hi);
    let mut last = f(x);
    for _ in 0..opts.max_newton {
        let (fx, dfx) = last;
        if fx == 0.0 {
            return Ok(x);
        }
        if fx.signum() == flo.signum() {
            lo = x;
        } else {
            hi = x;
        }
        let mut next = x - fx / dfx;
        if !(next > lo && next < hi) || !next.is_finite() {
            next = 0.5 * (lo + hi);
        }
        let step = (next - x).abs();
        x = next;
        last = f(x);
        if step <= 4.0 * f64::EPSILON * x.abs().max(f64::MIN_POSITIVE) {
            break;
        }
    }
    let scale = x.abs().max(1.0);
    if !(last.0.abs() <= opts.residual_tol * scale) {
        return Err(QuermassError::Geometry(format!(
            "root polish did not converge: |f({x})| = {:e}",
            last.0.abs()
        )));
    }
    Ok(x)
}
