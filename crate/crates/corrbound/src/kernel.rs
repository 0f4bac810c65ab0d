//! Cell-averaged kernel for the discretized bilinear form.
//!
//! For grid step `δ`, the kernel value at lag `s = kδ` is the average of the
//! weight against a triangular window of half-width `δ`:
//!
//! ```text
//!   w̃(s) = δ⁻² ∫_{s−δ}^{s+δ} w(t) · (δ − |t − s|) dt
//! ```
//!
//! This is exactly `δ⁻² ⟨χ_{[s,s+δ)}, w ∗ χ_{[0,δ)}⟩`, so the discrete form
//! `δ² Σᵢⱼ fᵢ w̃(|i−j|δ) gⱼ` reproduces `∫∫ f(x) g(y) w(x−y) dx dy` *exactly*
//! when `f, g` are step functions on the grid — the property that makes every
//! computed Rayleigh quotient a rigorous lower-bound witness.
//!
//! [`kernel_oracle`] evaluates the raw double integral by 2-D adaptive
//! quadrature; it is deliberately independent of the closed forms used by
//! [`DiscretizedKernel::build`] and exists to validate them.

use crate::quad::{adaptive_simpson, integrate_with_breakpoints, QuadError};
use crate::weight::WeightSpec;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum KernelError {
    #[error("grid step must be positive and finite, got {0}")]
    BadDelta(f64),
    #[error("kernel needs at least one lag")]
    Empty,
    #[error("quadrature failed at lag {lag}: {source}")]
    Quadrature {
        lag: usize,
        #[source]
        source: QuadError,
    },
    #[error("kernel values must be non-increasing within 1e-12 (lag {lag}: {prev} -> {next})")]
    NotMonotone { lag: usize, prev: f64, next: f64 },
    #[error("kernel value at lag {lag} is negative: {value}")]
    Negative { lag: usize, value: f64 },
}

/// Kernel samples `w̃(kδ)` for `k = 0, …, n−1`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscretizedKernel {
    delta: f64,
    values: Vec<f64>,
    truncated: bool,
}

impl DiscretizedKernel {
    /// Build the kernel for `n` lags. The box weight uses an exact piecewise
    /// quadratic closed form; Gaussian and tabulated weights are integrated
    /// adaptively with the kink and sample breakpoints split out.
    pub fn build(w: &WeightSpec, delta: f64, n: usize) -> Result<Self, KernelError> {
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(KernelError::BadDelta(delta));
        }
        if n == 0 {
            return Err(KernelError::Empty);
        }
        let mut values = Vec::with_capacity(n);
        for k in 0..n {
            let s = k as f64 * delta;
            let v = match w {
                WeightSpec::Box => box_lag(delta, s),
                _ => lag_by_quadrature(w, delta, s)
                    .map_err(|source| KernelError::Quadrature { lag: k, source })?,
            };
            values.push(v);
        }
        let kernel = DiscretizedKernel {
            delta,
            values,
            truncated: false,
        };
        kernel.validate()?;
        Ok(kernel)
    }

    /// Wrap precomputed lag values (validated).
    pub fn from_values(delta: f64, values: Vec<f64>) -> Result<Self, KernelError> {
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(KernelError::BadDelta(delta));
        }
        if values.is_empty() {
            return Err(KernelError::Empty);
        }
        let kernel = DiscretizedKernel {
            delta,
            values,
            truncated: false,
        };
        kernel.validate()?;
        Ok(kernel)
    }

    fn validate(&self) -> Result<(), KernelError> {
        for (k, pair) in self.values.windows(2).enumerate() {
            if pair[1] > pair[0] + 1e-12 {
                return Err(KernelError::NotMonotone {
                    lag: k + 1,
                    prev: pair[0],
                    next: pair[1],
                });
            }
        }
        for (k, &v) in self.values.iter().enumerate() {
            if v < -1e-15 || !v.is_finite() {
                return Err(KernelError::Negative { lag: k, value: v });
            }
        }
        Ok(())
    }

    /// Zero out trailing values below `threshold`; returns how many were
    /// dropped. This only ever lowers the (already valid) witnessed values,
    /// so it is safe for lower bounds; the certification sweep does not use
    /// it.
    pub fn truncate_tail(&mut self, threshold: f64) -> usize {
        let mut count = 0;
        for v in self.values.iter_mut().rev() {
            if *v >= threshold {
                break;
            }
            if *v != 0.0 {
                count += 1;
            }
            *v = 0.0;
        }
        if count > 0 {
            self.truncated = true;
        }
        count
    }

    /// True if [`DiscretizedKernel::truncate_tail`] dropped anything.
    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Number of stored lags.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `w̃(kδ)`, extended by zero beyond the stored range.
    pub fn value(&self, lag: usize) -> f64 {
        self.values.get(lag).copied().unwrap_or(0.0)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Exact box-weight lag value: clip the triangular window against the box
/// support `[−1/2, 1/2]` using the window's piecewise-quadratic CDF.
fn box_lag(delta: f64, s: f64) -> f64 {
    (tri_cdf(delta, s, 0.5) - tri_cdf(delta, s, -0.5)) / (delta * delta)
}

/// `∫_{−∞}^{x} (δ − |t − s|)₊ dt`.
fn tri_cdf(delta: f64, s: f64, x: f64) -> f64 {
    let u = (x - s).clamp(-delta, delta);
    if u <= 0.0 {
        0.5 * (delta + u) * (delta + u)
    } else {
        0.5 * delta * delta + delta * u - 0.5 * u * u
    }
}

/// One lag by 1-D adaptive quadrature against the triangular window.
fn lag_by_quadrature(w: &WeightSpec, delta: f64, s: f64) -> Result<f64, QuadError> {
    let (lo, hi) = (s - delta, s + delta);
    let mut points = vec![lo, s, hi];
    if let WeightSpec::Tabulated(t) = w {
        for &x in t.xs() {
            if x > lo && x < hi {
                points.push(x);
            }
        }
    }
    points.sort_by(|a, b| a.partial_cmp(b).expect("finite breakpoints"));
    points.dedup();
    // Target 1e-12 on w̃ itself; the raw integral is scaled by δ⁻².
    let tol = 0.5e-12 * delta * delta;
    let integral = integrate_with_breakpoints(
        &mut |t: f64| w.eval(t) * (delta - (t - s).abs()),
        &points,
        tol,
    )?;
    Ok(integral / (delta * delta))
}

/// Reference evaluation of the lag value as the raw double integral
///
/// ```text
///   δ⁻² ∫_s^{s+δ} ∫_0^δ w(y − x) dx dy
/// ```
///
/// by iterated adaptive quadrature, to absolute tolerance `tol` on the
/// returned value. Slow; used to validate [`DiscretizedKernel::build`].
pub fn kernel_oracle(w: &WeightSpec, delta: f64, s: f64, tol: f64) -> Result<f64, QuadError> {
    let inner_tol = 0.05 * tol * delta;
    let outer_tol = 0.5 * tol * delta * delta;
    let mut inner_err: Option<QuadError> = None;
    let outer = adaptive_simpson(
        &mut |y: f64| match adaptive_simpson(&mut |x: f64| w.eval(y - x), 0.0, delta, inner_tol) {
            Ok(v) => v,
            Err(e) => {
                inner_err = Some(e);
                0.0
            }
        },
        s,
        s + delta,
        outer_tol,
    )?;
    if let Some(e) = inner_err {
        return Err(e);
    }
    Ok(outer / (delta * delta))
}
