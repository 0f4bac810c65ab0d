//! Adaptive quadrature plumbing shared by the weight and step-space modules.
//!
//! A classic adaptive Simpson rule with Richardson extrapolation. Intervals
//! are split until the local error estimate fits the local budget; at the
//! depth cap the estimate is accepted and charged against a global residual,
//! so isolated jumps (box weights) cost a bounded number of splits instead of
//! diverging. The caller gets an error if the accepted residual ends up
//! larger than the requested tolerance.

use thiserror::Error;

/// Bisection depth cap; a jump confined to a width-`2⁻⁵²` interval
/// contributes below f64 resolution for the integrands used here.
const MAX_DEPTH: u32 = 52;

#[derive(Debug, Clone, Error)]
pub enum QuadError {
    #[error("quadrature did not converge: residual estimate {estimate:e} exceeds tolerance {tol:e}")]
    NotConverged { estimate: f64, tol: f64 },
}

/// Integrate `f` over `[a, b]` to absolute tolerance `tol`.
pub(crate) fn adaptive_simpson(
    f: &mut dyn FnMut(f64) -> f64,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<f64, QuadError> {
    if a == b {
        return Ok(0.0);
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = simpson(a, b, fa, fm, fb);
    let mut residual = 0.0;
    let value = refine(f, a, b, fa, fm, fb, whole, tol, 0, &mut residual);
    if residual > tol {
        return Err(QuadError::NotConverged {
            estimate: residual,
            tol,
        });
    }
    Ok(value)
}

/// Integrate `f` over consecutive intervals of `points`, splitting at every
/// breakpoint so each panel is smooth. `points` must be sorted.
pub(crate) fn integrate_with_breakpoints(
    f: &mut dyn FnMut(f64) -> f64,
    points: &[f64],
    tol: f64,
) -> Result<f64, QuadError> {
    let panels = points.len().saturating_sub(1).max(1);
    let mut total = 0.0;
    for w in points.windows(2) {
        total += adaptive_simpson(f, w[0], w[1], tol / panels as f64)?;
    }
    Ok(total)
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn refine(
    f: &mut dyn FnMut(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
    residual: &mut f64,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let (flm, frm) = (f(lm), f(rm));
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * tol || depth >= MAX_DEPTH {
        if depth >= MAX_DEPTH && delta.abs() > 15.0 * tol {
            *residual += delta.abs() / 15.0;
        }
        return left + right + delta / 15.0;
    }
    let half_tol = 0.5 * tol;
    refine(f, a, m, fa, flm, fm, left, half_tol, depth + 1, residual)
        + refine(f, m, b, fm, frm, fb, right, half_tol, depth + 1, residual)
}
