//! Fixed-point iteration on the stationarity equation of the quotient
//! `Q(f,f)/(‖f‖₁‖f‖₂)`: a fast heuristic that produces rigorous lower
//! bounds and extremizer candidates, independent of the eigenvalue route.
//!
//! The update rearranges the stationarity condition into
//! `f ← ‖f‖₂²·max(2·(w̃∗f)/Q(f,f) − 1/‖f‖₁, 0)`, which keeps iterates
//! non-negative by construction. Convergence is conjectural — the result
//! carries a flag, and the final value is a valid lower bound either way
//! because the iterate itself is a feasible witness.

use crate::kernel::DiscretizedKernel;
use crate::stepspace::{kernel_apply, StepFunction};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FixedPointError {
    #[error("the start must be non-negative and nonzero")]
    BadStart,
    #[error(
        "iterate collapsed to zero at iteration {iteration}; try a start with more overlap \
         with the expected extremizer (e.g. a wider centered bump)"
    )]
    Collapsed { iteration: usize },
}

/// One row of the convergence trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRow {
    pub iteration: usize,
    /// Rayleigh quotient `Q(f,f)/(‖f‖₁‖f‖₂)` of the iterate.
    pub value: f64,
    /// Relative sup-norm change from the previous iterate.
    pub sup_change: f64,
}

#[derive(Debug, Clone)]
pub struct FixedPointResult {
    /// Rayleigh quotient of the final iterate — a witnessed lower bound on
    /// the optimal constant regardless of convergence.
    pub value: f64,
    /// Final iterate, non-negative, normalized to `‖f‖₁‖f‖₂ = 1`.
    pub extremizer: StepFunction,
    pub iterations: usize,
    pub converged: bool,
    /// Relative sup-change at the stop.
    pub last_delta: f64,
    pub trace: Vec<TraceRow>,
}

/// Centered triangular bump over the middle half of an `n`-cell grid,
/// normalized to `‖f‖₁‖f‖₂ = 1`: positive, symmetric, decreasing — a safe
/// default start.
pub fn default_start(delta: f64, n: usize) -> StepFunction {
    assert!(n >= 1);
    let mut vals = vec![0.0; n];
    let center = 0.5 * (n as f64 - 1.0);
    let half_width = (n as f64 / 4.0).max(0.5);
    for (i, v) in vals.iter_mut().enumerate() {
        *v = (1.0 - (i as f64 - center).abs() / half_width).max(0.0);
    }
    StepFunction::new(delta, vals)
        .expect("finite bump")
        .normalized_l1l2()
        .expect("nonzero bump")
}

/// Run the fixed-point iteration from `f0` until both the relative
/// sup-change and the relative change of the Rayleigh quotient fall to
/// `tol`, or `max_iter` is hit. Equivalent to
/// [`fixed_point_iterate_damped`] with `theta = 1`.
///
/// ```
/// use corrbound::fixedpoint::{default_start, fixed_point_iterate};
/// use corrbound::{DiscretizedKernel, WeightSpec};
///
/// let (delta, n) = (0.1, 20);
/// let kernel = DiscretizedKernel::build(&WeightSpec::Gaussian, delta, n)?;
/// let out = fixed_point_iterate(&kernel, &default_start(delta, n), 1e-10, 10_000)?;
/// assert!(out.converged);
/// assert!(out.value > 0.70 && out.value < 0.72); // witnessed lower bound
/// # Ok::<(), Box<dyn std::error::Error>>(())
/// ```
pub fn fixed_point_iterate(
    kernel: &DiscretizedKernel,
    f0: &StepFunction,
    tol: f64,
    max_iter: usize,
) -> Result<FixedPointResult, FixedPointError> {
    fixed_point_iterate_damped(kernel, f0, tol, max_iter, 1.0)
}

/// The damped variant: `f ← (1−θ)·f + θ·update(f)`, `θ ∈ (0, 1]`. Damping
/// is an escape hatch should the plain iteration cycle (its convergence is
/// only conjectured); both variants share every invariant.
pub fn fixed_point_iterate_damped(
    kernel: &DiscretizedKernel,
    f0: &StepFunction,
    tol: f64,
    max_iter: usize,
    theta: f64,
) -> Result<FixedPointResult, FixedPointError> {
    assert!(tol > 0.0);
    assert!(theta > 0.0 && theta <= 1.0);
    assert!(max_iter >= 1);
    assert_eq!(kernel.delta(), f0.delta(), "kernel and start mesh differ");
    if f0.values().iter().any(|&v| v < 0.0) || f0.values().iter().all(|&v| v == 0.0) {
        return Err(FixedPointError::BadStart);
    }
    let delta = f0.delta();
    let mut f = f0
        .normalized_l1l2()
        .map_err(|_| FixedPointError::BadStart)?;
    let mut prev_value = f64::NAN;
    let mut trace = Vec::new();
    let mut last_delta = f64::INFINITY;

    for iteration in 1..=max_iter {
        let conv = kernel_apply(kernel, &f); // δ·(Tf), i.e. w̃∗f on the grid
        let q: f64 = delta
            * f.values()
                .iter()
                .zip(conv.values())
                .map(|(a, b)| a * b)
                .sum::<f64>();
        let value = q; // ‖f‖₁‖f‖₂ = 1 ⟹ the quotient is Q itself
        let l1 = f.l1_norm();
        let l2_sq = f.l2_norm_squared();

        let mut next = f.clone();
        for (nv, (&fv, &cv)) in next
            .values_mut()
            .iter_mut()
            .zip(f.values().iter().zip(conv.values()))
        {
            let updated = l2_sq * (2.0 * cv / q - 1.0 / l1).max(0.0);
            *nv = (1.0 - theta) * fv + theta * updated;
        }
        let next = match next.normalized_l1l2() {
            Ok(g) => g,
            Err(_) => return Err(FixedPointError::Collapsed { iteration }),
        };

        let sup = next.sup_norm();
        let mut diff: f64 = 0.0;
        for (a, b) in next.values().iter().zip(f.values()) {
            diff = diff.max((a - b).abs());
        }
        last_delta = diff / sup;
        trace.push(TraceRow {
            iteration,
            value,
            sup_change: last_delta,
        });

        // On the very first update there is no previous value to compare;
        // an immobile iterate is already stationary (the value is a function
        // of the iterate alone).
        let value_settled = if prev_value.is_nan() {
            last_delta <= tol
        } else {
            (value - prev_value).abs() <= tol * value.abs()
        };
        f = next;
        if last_delta <= tol && value_settled {
            return Ok(FixedPointResult {
                value: final_value(kernel, &f),
                extremizer: f,
                iterations: iteration,
                converged: true,
                last_delta,
                trace,
            });
        }
        prev_value = value;
    }
    Ok(FixedPointResult {
        value: final_value(kernel, &f),
        extremizer: f,
        iterations: max_iter,
        converged: false,
        last_delta,
        trace,
    })
}

fn final_value(kernel: &DiscretizedKernel, f: &StepFunction) -> f64 {
    crate::stepspace::witnessed_ratio(f, kernel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::feasibility_check;
    use crate::stepspace::witnessed_ratio;
    use crate::weight::WeightSpec;

    #[test]
    fn single_cell_is_stationary_at_the_first_iteration() {
        let delta = 0.3;
        let kernel = DiscretizedKernel::build(&WeightSpec::Box, delta, 1).unwrap();
        let f0 = StepFunction::new(delta, vec![2.0]).unwrap();
        let out = fixed_point_iterate(&kernel, &f0, 1e-12, 100).unwrap();
        assert!(out.converged);
        assert_eq!(out.iterations, 1);
        assert!(out.last_delta < 1e-15);
        // Normalized single cell: v = δ^{−3/4}, value = √δ·w̃(0).
        let v = delta.powf(-0.75);
        assert!((out.extremizer.values()[0] - v).abs() < 1e-12 * v);
        assert!((out.value - delta.sqrt() * kernel.value(0)).abs() < 1e-13);
    }

    #[test]
    fn box_iteration_settles_and_witnesses_its_value() {
        let delta = 0.05;
        let n = 64;
        let kernel = DiscretizedKernel::build(&WeightSpec::Box, delta, n).unwrap();
        let f0 = default_start(delta, n);
        let out = fixed_point_iterate(&kernel, &f0, 1e-12, 100_000).unwrap();
        assert!(out.converged, "stopped at {} with {}", out.iterations, out.last_delta);
        // Coarse-mesh plateau near the box constant.
        assert!(out.value > 0.79 && out.value < 0.806, "{}", out.value);
        // The value re-derives from the stored extremizer alone.
        let w = witnessed_ratio(&out.extremizer, &kernel);
        assert!((w - out.value).abs() < 1e-12);
        // Non-negative, normalized, symmetric decreasing.
        assert!(out.extremizer.values().iter().all(|&v| v >= 0.0));
        assert!((out.extremizer.l12_norm() - 1.0).abs() < 1e-12);
        assert!(feasibility_check(&out.extremizer, 1e-8));
        // The trace is complete and its last row matches the stop state.
        assert_eq!(out.trace.len(), out.iterations);
        assert_eq!(out.trace.last().unwrap().sup_change, out.last_delta);
    }

    #[test]
    fn symmetric_starts_stay_symmetric() {
        let delta = 0.1;
        let n = 40;
        let kernel = DiscretizedKernel::build(&WeightSpec::Gaussian, delta, n).unwrap();
        let out = fixed_point_iterate(&kernel, &default_start(delta, n), 1e-12, 50_000).unwrap();
        let vals = out.extremizer.values();
        let sup = out.extremizer.sup_norm();
        for i in 0..n / 2 {
            assert!(
                (vals[i] - vals[n - 1 - i]).abs() <= 1e-12 * sup,
                "asymmetry at {i}"
            );
        }
    }

    #[test]
    fn damping_reaches_the_same_fixed_point() {
        let delta = 0.1;
        let n = 32;
        let kernel = DiscretizedKernel::build(&WeightSpec::Box, delta, n).unwrap();
        let f0 = default_start(delta, n);
        let plain = fixed_point_iterate(&kernel, &f0, 1e-12, 100_000).unwrap();
        let damped = fixed_point_iterate_damped(&kernel, &f0, 1e-12, 100_000, 0.5).unwrap();
        assert!(plain.converged && damped.converged);
        assert!((plain.value - damped.value).abs() < 1e-9);
        assert!(damped.iterations >= plain.iterations);
    }

    #[test]
    fn bad_starts_are_rejected() {
        let kernel = DiscretizedKernel::build(&WeightSpec::Box, 0.1, 4).unwrap();
        let zero = StepFunction::zeros(0.1, 4).unwrap();
        assert!(matches!(
            fixed_point_iterate(&kernel, &zero, 1e-12, 10),
            Err(FixedPointError::BadStart)
        ));
        let signed = StepFunction::new(0.1, vec![1.0, -0.2, 1.0, 0.0]).unwrap();
        assert!(matches!(
            fixed_point_iterate(&kernel, &signed, 1e-12, 10),
            Err(FixedPointError::BadStart)
        ));
    }

    #[test]
    fn default_start_is_a_normalized_centered_bump() {
        let f = default_start(0.1, 20);
        assert_eq!(f.len(), 20);
        assert!((f.l12_norm() - 1.0).abs() < 1e-12);
        assert!(feasibility_check(&f, 1e-12));
        // Supported on the middle half of the grid.
        assert_eq!(f.values()[0], 0.0);
        assert!(f.values()[10] > 0.0);
    }
}
