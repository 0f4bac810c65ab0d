//! Step functions on uniform symmetric grids, their norms, the discretized
//! bilinear form, and the whitening map for the mixed-norm denominator.
//!
//! A [`StepFunction`] holds cell values `f_0, …, f_{n−1}` on the grid of `n`
//! cells of width `δ` covering `[−nδ/2, nδ/2)`. For two step functions on
//! the same grid the weighted form
//!
//! ```text
//!   Q(f, g) = ∫∫ f(x) g(y) w(x − y) dx dy = δ² Σᵢⱼ fᵢ w̃(|i−j|δ) gⱼ
//! ```
//!
//! holds exactly (not as an approximation), because the cell-averaged kernel
//! of [`crate::kernel`] absorbs the double integral. Every lower bound the
//! crate reports is such an exactly evaluated Rayleigh quotient.
//!
//! [`MixedNormParams`] carries the rank-one perturbation `A = √λ·I + b|1⟩⟨1|`
//! chosen so that `‖Af‖² = λ‖f‖² + λ⁻¹(∫f)²`: conjugating the kernel operator
//! by `A⁻¹` turns the mixed-denominator maximization into an ordinary
//! symmetric eigenvalue problem.

use crate::convolve::ToeplitzOperator;
use crate::kernel::DiscretizedKernel;
use crate::quad::{adaptive_simpson, QuadError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum StepError {
    #[error("grid step must be positive and finite, got {0}")]
    BadDelta(f64),
    #[error("step function needs at least one cell")]
    Empty,
    #[error("non-finite cell value at index {0}")]
    NonFinite(usize),
    #[error("cannot normalize the zero function")]
    ZeroFunction,
    #[error("cell-average quadrature failed: {0}")]
    Quadrature(#[from] QuadError),
}

/// A non-negative-by-convention step function on `n` cells of width `δ`
/// centered on the origin. Negative values are allowed by the container
/// (iterates pass through them); certification paths check sign explicitly.
#[derive(Debug, Clone, PartialEq)]
pub struct StepFunction {
    delta: f64,
    values: Vec<f64>,
}

impl StepFunction {
    pub fn new(delta: f64, values: Vec<f64>) -> Result<Self, StepError> {
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(StepError::BadDelta(delta));
        }
        if values.is_empty() {
            return Err(StepError::Empty);
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(StepError::NonFinite(i));
        }
        Ok(StepFunction { delta, values })
    }

    pub fn zeros(delta: f64, n: usize) -> Result<Self, StepError> {
        StepFunction::new(delta, vec![0.0; n])
    }

    /// Cell averages of `g`, i.e. the `L²`-orthogonal projection of `g` onto
    /// this grid's step functions. Each cell is integrated adaptively to
    /// absolute tolerance `tol` on the average.
    pub fn project(
        g: &mut dyn FnMut(f64) -> f64,
        delta: f64,
        n: usize,
        tol: f64,
    ) -> Result<Self, StepError> {
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(StepError::BadDelta(delta));
        }
        if n == 0 {
            return Err(StepError::Empty);
        }
        let a = 0.5 * n as f64 * delta;
        let mut values = Vec::with_capacity(n);
        for i in 0..n {
            let lo = -a + i as f64 * delta;
            let integral = adaptive_simpson(g, lo, lo + delta, tol * delta)?;
            values.push(integral / delta);
        }
        StepFunction::new(delta, values)
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    /// Half-width of the support interval `[−a, a)`.
    pub fn support_radius(&self) -> f64 {
        0.5 * self.len() as f64 * self.delta
    }

    pub fn cell_midpoint(&self, i: usize) -> f64 {
        -self.support_radius() + (i as f64 + 0.5) * self.delta
    }

    /// `∫ f` (signed).
    pub fn integral(&self) -> f64 {
        self.delta * self.values.iter().sum::<f64>()
    }

    /// `‖f‖₁ = ∫ |f|`.
    pub fn l1_norm(&self) -> f64 {
        self.delta * self.values.iter().map(|v| v.abs()).sum::<f64>()
    }

    /// `‖f‖₂²`.
    pub fn l2_norm_squared(&self) -> f64 {
        self.delta * self.values.iter().map(|v| v * v).sum::<f64>()
    }

    /// The interpolation norm `‖f‖₁^{1/2} ‖f‖₂^{1/2}` whose square the mixed
    /// denominator relaxes.
    pub fn l12_norm(&self) -> f64 {
        (self.l1_norm() * self.l2_norm_squared().sqrt()).sqrt()
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    pub fn scaled(&self, t: f64) -> Self {
        StepFunction {
            delta: self.delta,
            values: self.values.iter().map(|v| t * v).collect(),
        }
    }

    /// Rescale so that `‖f‖₁ ‖f‖₂ = 1` (the natural gauge for Rayleigh
    /// quotients of the inequality).
    pub fn normalized_l1l2(&self) -> Result<Self, StepError> {
        let product = self.l1_norm() * self.l2_norm_squared().sqrt();
        if product <= 0.0 || !product.is_finite() {
            return Err(StepError::ZeroFunction);
        }
        Ok(self.scaled(1.0 / product.sqrt()))
    }
}

/// `Q(f, g)` via an FFT Toeplitz application; exact (up to rounding) for
/// step functions on the shared grid.
pub fn quadratic_form(f: &StepFunction, kernel: &DiscretizedKernel, g: &StepFunction) -> f64 {
    assert_eq!(f.delta, g.delta, "mismatched grids");
    assert_eq!(f.len(), g.len(), "mismatched grids");
    let n = f.len();
    let column: Vec<f64> = (0..n).map(|k| kernel.value(k)).collect();
    let mut op = ToeplitzOperator::new(column);
    let mut tg = vec![0.0; n];
    op.apply(g.values(), &mut tg);
    let dot: f64 = f.values.iter().zip(&tg).map(|(a, b)| a * b).sum();
    f.delta * f.delta * dot
}

/// `Q(f, g)` by the definition; quadratic cost, used as an oracle.
pub fn quadratic_form_direct(
    f: &StepFunction,
    kernel: &DiscretizedKernel,
    g: &StepFunction,
) -> f64 {
    assert_eq!(f.delta, g.delta, "mismatched grids");
    assert_eq!(f.len(), g.len(), "mismatched grids");
    let mut acc = 0.0;
    for (i, &fi) in f.values.iter().enumerate() {
        for (j, &gj) in g.values.iter().enumerate() {
            acc += fi * kernel.value(i.abs_diff(j)) * gj;
        }
    }
    f.delta * f.delta * acc
}

/// The step function `x ↦ ∫ w̃-smoothed image`, i.e. cell values of
/// `(K f)_i = δ Σⱼ w̃(|i−j|δ) fⱼ`, so that `⟨f, K g⟩ = Q(f, g)` in the
/// `L²` inner product.
pub fn kernel_apply(kernel: &DiscretizedKernel, f: &StepFunction) -> StepFunction {
    let n = f.len();
    let column: Vec<f64> = (0..n).map(|k| kernel.value(k)).collect();
    let mut op = ToeplitzOperator::new(column);
    let mut out = vec![0.0; n];
    op.apply(f.values(), &mut out);
    for v in &mut out {
        *v *= f.delta;
    }
    StepFunction {
        delta: f.delta,
        values: out,
    }
}

/// The witnessed ratio `Q(f, f) / (‖f‖₁ ‖f‖₂)` — a rigorous lower bound for
/// the sharp constant whenever `f ≥ 0`.
///
/// ```
/// use corrbound::stepspace::witnessed_ratio;
/// use corrbound::{DiscretizedKernel, StepFunction, WeightSpec};
///
/// // The box weight's own indicator achieves Q = 3/4 at ‖f‖₁‖f‖₂ = 1.
/// let delta = 0.1;
/// let kernel = DiscretizedKernel::build(&WeightSpec::Box, delta, 10)?;
/// let f = StepFunction::new(delta, vec![1.0; 10])?;
/// assert!((witnessed_ratio(&f, &kernel) - 0.75).abs() < 1e-12);
/// # Ok::<(), Box<dyn std::error::Error>>(())
/// ```
pub fn witnessed_ratio(f: &StepFunction, kernel: &DiscretizedKernel) -> f64 {
    quadratic_form(f, kernel, f) / (f.l1_norm() * f.l2_norm_squared().sqrt())
}

/// The unique positive root `b` of `λ⁻¹ = 2√λ·b + 2a·b²` for support radius
/// `a`, evaluated in the cancellation-free form
/// `b = (1/λ) / (√λ + √(λ + 2a/λ))`.
pub fn solve_b_lambda(lambda: f64, radius: f64) -> f64 {
    assert!(lambda > 0.0 && lambda.is_finite(), "lambda must be positive");
    assert!(radius > 0.0 && radius.is_finite(), "radius must be positive");
    (1.0 / lambda) / (lambda.sqrt() + (lambda + 2.0 * radius / lambda).sqrt())
}

/// Whitening data for the mixed denominator `λ‖f‖² + λ⁻¹(∫f)²` on a grid of
/// `n` cells of width `δ` (support `[−a, a)` with `2a = nδ`).
///
/// `b = solve_b_lambda(λ, a)` makes `A = √λ·I + b|1⟩⟨1|` satisfy
/// `⟨Af, Af⟩ = λ⟨f, f⟩ + λ⁻¹⟨f, 1⟩²`.
#[derive(Debug, Clone, Copy)]
pub struct MixedNormParams {
    lambda: f64,
    delta: f64,
    n: usize,
    b: f64,
}

impl MixedNormParams {
    pub fn new(lambda: f64, delta: f64, n: usize) -> Self {
        assert!(delta > 0.0 && delta.is_finite(), "delta must be positive");
        assert!(n > 0, "empty grid");
        let b = solve_b_lambda(lambda, 0.5 * n as f64 * delta);
        MixedNormParams {
            lambda,
            delta,
            n,
            b,
        }
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn radius(&self) -> f64 {
        0.5 * self.n as f64 * self.delta
    }

    fn mean_weight(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.n);
        self.delta * x.iter().sum::<f64>()
    }

    /// `out = A x = √λ·x + b·(∫x)·1`.
    pub fn apply_a(&self, x: &[f64], out: &mut [f64]) {
        let shift = self.b * self.mean_weight(x);
        let s = self.lambda.sqrt();
        for (o, &v) in out.iter_mut().zip(x) {
            *o = s * v + shift;
        }
    }

    /// `out = A⁻¹ x = λ^{−1/2}·(x − b/(√λ + Lb)·(∫x)·1)`.
    pub fn apply_a_inv(&self, x: &[f64], out: &mut [f64]) {
        let length = self.n as f64 * self.delta;
        let s = self.lambda.sqrt();
        let coeff = self.b / (s + length * self.b);
        let shift = coeff * self.mean_weight(x);
        let inv_s = 1.0 / s;
        for (o, &v) in out.iter_mut().zip(x) {
            *o = inv_s * (v - shift);
        }
    }

    /// The mixed denominator `λ‖f‖² + λ⁻¹(∫f)²` evaluated directly.
    pub fn h_norm_sq(&self, x: &[f64]) -> f64 {
        let l2sq = self.delta * x.iter().map(|v| v * v).sum::<f64>();
        let mean = self.mean_weight(x);
        self.lambda * l2sq + mean * mean / self.lambda
    }

    /// The sign-insensitive variant `λ‖f‖² + λ⁻¹(∫|f|)²`; coincides with
    /// [`MixedNormParams::h_norm_sq`] exactly when `x ≥ 0`.
    pub fn b_norm_sq(&self, x: &[f64]) -> f64 {
        let l2sq = self.delta * x.iter().map(|v| v * v).sum::<f64>();
        let l1 = self.delta * x.iter().map(|v| v.abs()).sum::<f64>();
        self.lambda * l2sq + l1 * l1 / self.lambda
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::WeightSpec;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    use std::f64::consts::PI;

    fn l2_dot(delta: f64, x: &[f64], y: &[f64]) -> f64 {
        delta * x.iter().zip(y).map(|(a, b)| a * b).sum::<f64>()
    }

    // 2√λ·b + L·b² = 1/λ has closed-form roots at the test points:
    // (λ=1, L=1) → √2 − 1; (λ=4, L=1) → (√17 − 4)/2.
    #[test]
    fn whitener_coefficient_closed_forms() {
        let p = MixedNormParams::new(1.0, 0.25, 4);
        assert!((p.b() - (2.0f64.sqrt() - 1.0)).abs() < 1e-15);
        let p = MixedNormParams::new(4.0, 0.5, 2);
        assert!((p.b() - (17.0f64.sqrt() - 4.0) / 2.0).abs() < 1e-15);
    }

    #[test]
    fn whitener_defining_equation_holds() {
        for lambda in [0.3, 0.7, 1.0, 2.5] {
            for (delta, n) in [(0.1, 7), (0.05, 64)] {
                let p = MixedNormParams::new(lambda, delta, n);
                let b = p.b();
                let length = delta * n as f64;
                let residual = 2.0 * lambda.sqrt() * b + length * b * b - 1.0 / lambda;
                assert!(residual.abs() < 1e-15, "λ={lambda} n={n}: {residual}");
            }
        }
    }

    #[test]
    fn whitener_reproduces_the_mixed_norm() {
        let mut rng = StdRng::seed_from_u64(3);
        for lambda in [0.3, 1.0, 4.0] {
            let (delta, n) = (0.17, 13);
            let p = MixedNormParams::new(lambda, delta, n);
            let x: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() - 0.3).collect();
            let mut ax = vec![0.0; n];
            p.apply_a(&x, &mut ax);
            let direct = p.h_norm_sq(&x);
            let via_a = l2_dot(delta, &ax, &ax);
            assert!(
                (direct - via_a).abs() < 1e-12 * direct.abs().max(1.0),
                "λ={lambda}: {direct} vs {via_a}"
            );
        }
    }

    #[test]
    fn whitener_roundtrips_and_fixes_constants() {
        let mut rng = StdRng::seed_from_u64(5);
        let (delta, n) = (0.11, 9);
        for lambda in [0.4, 1.0, 3.0] {
            let p = MixedNormParams::new(lambda, delta, n);
            let x: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
            let mut ax = vec![0.0; n];
            let mut back = vec![0.0; n];
            p.apply_a(&x, &mut ax);
            p.apply_a_inv(&ax, &mut back);
            for (a, b) in x.iter().zip(&back) {
                assert!((a - b).abs() < 1e-12, "λ={lambda}");
            }
            // A·1 = (√λ + Lb)·1.
            let ones = vec![1.0; n];
            p.apply_a(&ones, &mut ax);
            let expect = lambda.sqrt() + delta * n as f64 * p.b();
            for v in &ax {
                assert!((v - expect).abs() < 1e-13);
            }
        }
    }

    // ∫∫ over [−1/2,1/2]² of 1_{|x−y|≤1/2} is 3/4 (unit square minus two
    // corner triangles), and the grid sum reproduces it exactly.
    #[test]
    fn box_on_box_quadratic_form_is_three_quarters()
    {
        let kernel = DiscretizedKernel::build(&WeightSpec::Box, 0.25, 4).unwrap();
        let f = StepFunction::new(0.25, vec![1.0; 4]).unwrap();
        let q = quadratic_form(&f, &kernel, &f);
        assert!((q - 0.75).abs() < 1e-14, "got {q}");
        let qd = quadratic_form_direct(&f, &kernel, &f);
        assert!((qd - 0.75).abs() < 1e-14);
        // A valid witnessed lower bound for the box weight's constant.
        let ratio = witnessed_ratio(&f, &kernel);
        assert!((ratio - 0.75).abs() < 1e-13);
    }

    #[test]
    fn all_ones_kernel_factorizes_the_form() {
        let mut rng = StdRng::seed_from_u64(9);
        let (delta, n) = (0.2, 11);
        let kernel = DiscretizedKernel::from_values(delta, vec![1.0; n]).unwrap();
        let f = StepFunction::new(delta, (0..n).map(|_| rng.gen()).collect()).unwrap();
        let g = StepFunction::new(delta, (0..n).map(|_| rng.gen()).collect()).unwrap();
        let q = quadratic_form(&f, &kernel, &g);
        let expect = f.integral() * g.integral();
        assert!((q - expect).abs() < 1e-13);
    }

    #[test]
    fn single_cell_form_is_delta_sq_times_peak() {
        let kernel = DiscretizedKernel::build(&WeightSpec::Gaussian, 0.3, 1).unwrap();
        let f = StepFunction::new(0.3, vec![2.0]).unwrap();
        let q = quadratic_form(&f, &kernel, &f);
        assert!((q - 0.3 * 0.3 * kernel.value(0) * 4.0).abs() < 1e-15);
    }

    #[test]
    fn fft_and_direct_forms_agree() {
        let mut rng = StdRng::seed_from_u64(13);
        let n = 50;
        let delta = 0.04;
        let kernel = DiscretizedKernel::build(&WeightSpec::Gaussian, delta, n).unwrap();
        let f = StepFunction::new(delta, (0..n).map(|_| rng.gen()).collect()).unwrap();
        let g = StepFunction::new(delta, (0..n).map(|_| rng.gen()).collect()).unwrap();
        let a = quadratic_form(&f, &kernel, &g);
        let b = quadratic_form_direct(&f, &kernel, &g);
        assert!((a - b).abs() < 1e-12 * a.abs().max(1.0));
    }

    #[test]
    fn kernel_apply_matches_form() {
        let mut rng = StdRng::seed_from_u64(17);
        let (delta, n) = (0.1, 23);
        let kernel = DiscretizedKernel::build(&WeightSpec::Gaussian, delta, n).unwrap();
        let f = StepFunction::new(delta, (0..n).map(|_| rng.gen()).collect()).unwrap();
        let g = StepFunction::new(delta, (0..n).map(|_| rng.gen()).collect()).unwrap();
        let kg = kernel_apply(&kernel, &g);
        let via_image = l2_dot(delta, f.values(), kg.values());
        let direct = quadratic_form(&f, &kernel, &g);
        assert!((via_image - direct).abs() < 1e-12);
    }

    #[test]
    fn projection_takes_exact_cell_averages() {
        // x² on two cells [−0.1, 0) and [0, 0.1): both averages are 1/300.
        let p = StepFunction::project(&mut |x: f64| x * x, 0.1, 2, 1e-13).unwrap();
        assert!((p.values()[0] - 1.0 / 300.0).abs() < 1e-12);
        assert!((p.values()[1] - 1.0 / 300.0).abs() < 1e-12);
        assert_eq!(p.len(), 2);
        assert!((p.support_radius() - 0.1).abs() < 1e-15);
    }

    #[test]
    fn projection_is_an_l2_contraction() {
        // ‖P g‖₂ ≤ ‖g‖₂ with g = cos(x) on [−1, 1): ‖g‖₂² = 1 + sin(2)/2.
        let p = StepFunction::project(&mut |x: f64| x.cos(), 0.25, 8, 1e-13).unwrap();
        let true_sq = 1.0 + (2.0f64).sin() / 2.0;
        assert!(p.l2_norm_squared() <= true_sq + 1e-12);
        assert!(p.l2_norm_squared() > 0.9 * true_sq);
    }

    #[test]
    fn norms_and_midpoints() {
        let f = StepFunction::new(0.5, vec![1.0, -2.0, 3.0, 0.0]).unwrap();
        assert!((f.integral() - 1.0).abs() < 1e-15);
        assert!((f.l1_norm() - 3.0).abs() < 1e-15);
        assert!((f.l2_norm_squared() - 7.0).abs() < 1e-15);
        assert!((f.sup_norm() - 3.0).abs() < 1e-15);
        assert!((f.cell_midpoint(0) + 0.75).abs() < 1e-15);
        assert!((f.cell_midpoint(3) - 0.75).abs() < 1e-15);
        assert!((f.cell_midpoint(0) + f.cell_midpoint(3)).abs() < 1e-15);
    }

    #[test]
    fn l1l2_normalization_fixes_the_gauge() {
        let f = StepFunction::new(0.3, vec![0.2, 1.4, 0.7]).unwrap();
        let g = f.normalized_l1l2().unwrap();
        let gauge = g.l1_norm() * g.l2_norm_squared().sqrt();
        assert!((gauge - 1.0).abs() < 1e-13);
        assert!(StepFunction::zeros(0.3, 3).unwrap().normalized_l1l2().is_err());
    }

    #[test]
    fn constructor_validates() {
        assert!(StepFunction::new(0.0, vec![1.0]).is_err());
        assert!(StepFunction::new(0.1, vec![]).is_err());
        assert!(StepFunction::new(0.1, vec![f64::NAN]).is_err());
    }

    #[test]
    fn signed_functions_separate_the_two_mixed_norms() {
        let p = MixedNormParams::new(1.3, 0.5, 2);
        let signed = [1.0, -1.0];
        let positive = [1.0, 1.0];
        assert!(p.b_norm_sq(&signed) > p.h_norm_sq(&signed));
        assert!((p.b_norm_sq(&positive) - p.h_norm_sq(&positive)).abs() < 1e-15);
    }

    #[test]
    fn mixed_norm_satisfies_parallelogram_and_triangle() {
        let mut rng = StdRng::seed_from_u64(21);
        let (delta, n) = (0.13, 10);
        for lambda in [0.5, 1.0, 2.0] {
            let p = MixedNormParams::new(lambda, delta, n);
            let f: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() - 0.4).collect();
            let g: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() - 0.4).collect();
            let sum: Vec<f64> = f.iter().zip(&g).map(|(a, b)| a + b).collect();
            let diff: Vec<f64> = f.iter().zip(&g).map(|(a, b)| a - b).collect();
            let lhs = p.h_norm_sq(&sum) + p.h_norm_sq(&diff);
            let rhs = 2.0 * (p.h_norm_sq(&f) + p.h_norm_sq(&g));
            assert!((lhs - rhs).abs() < 1e-12 * rhs.abs().max(1.0), "λ={lambda}");
            // Triangle inequality for both norms.
            assert!(
                p.h_norm_sq(&sum).sqrt() <= p.h_norm_sq(&f).sqrt() + p.h_norm_sq(&g).sqrt() + 1e-12
            );
            assert!(
                p.b_norm_sq(&sum).sqrt() <= p.b_norm_sq(&f).sqrt() + p.b_norm_sq(&g).sqrt() + 1e-12
            );
        }
    }

    // For f ≥ 0, min over λ of the mixed denominator is 2‖f‖₁‖f‖₂ (the
    // arithmetic–geometric mean equality at λ = ‖f‖₁/‖f‖₂).
    #[test]
    fn mixed_norm_envelope_recovers_the_product_norm() {
        let f = StepFunction::new(0.2, vec![0.3, 1.1, 0.8, 0.2]).unwrap();
        let target = 2.0 * f.l1_norm() * f.l2_norm_squared().sqrt();
        let mut best = f64::INFINITY;
        let mut lambda = 0.05;
        while lambda < 20.0 {
            let p = MixedNormParams::new(lambda, 0.2, 4);
            best = best.min(p.h_norm_sq(f.values()));
            lambda *= 1.0005;
        }
        assert!(best >= target - 1e-12);
        assert!(best <= target * (1.0 + 1e-6));
        let l12 = f.l12_norm();
        assert!((l12 * l12 - 0.5 * target).abs() < 1e-13);
    }

    // Cell averaging loses at most (δ/π)‖f′‖₂ in L², with equality saturated
    // by sine profiles; check one period of sin(πx/a) against the bound.
    #[test]
    fn projection_satisfies_sharp_poincare_loss() {
        let a = 1.0;
        let n = 20;
        let delta = 2.0 * a / n as f64;
        let p = StepFunction::project(&mut |x: f64| (PI * x / a).sin(), delta, n, 1e-13).unwrap();
        // ‖f − [f]_δ‖₂² = ‖f‖₂² − ‖[f]_δ‖₂² (orthogonal projection), with
        // ‖f‖₂² = a and ‖f′‖₂² = (π/a)²·a.
        let loss_sq: f64 = a - p.l2_norm_squared();
        let bound = (delta / PI) * (PI / a) * a.sqrt();
        assert!(loss_sq >= 0.0);
        assert!(loss_sq.sqrt() <= bound + 1e-12, "{} vs {bound}", loss_sq.sqrt());
        // The sine profile nearly saturates the constant.
        assert!(loss_sq.sqrt() >= 0.9 * bound);
    }

    #[test]
    fn projection_contracts_the_mixed_norm() {
        let a = 1.0;
        let n = 16;
        let delta = 2.0 * a / n as f64;
        let mut g = |x: f64| (1.0 - x * x).max(0.0);
        let p = StepFunction::project(&mut g, delta, n, 1e-13).unwrap();
        // ∫ and ‖·‖₁ are preserved for g ≥ 0; ‖·‖₂ contracts; hence the
        // mixed norm contracts for every λ.
        let true_integral = 4.0 / 3.0;
        let true_l2_sq = 16.0 / 15.0;
        assert!((p.integral() - true_integral).abs() < 1e-12);
        assert!((p.l1_norm() - true_integral).abs() < 1e-12);
        assert!(p.l2_norm_squared() <= true_l2_sq + 1e-12);
        for lambda in [0.5, 1.0, 2.0] {
            let params = MixedNormParams::new(lambda, delta, n);
            let projected = params.h_norm_sq(p.values());
            let original = lambda * true_l2_sq + true_integral * true_integral / lambda;
            assert!(projected <= original + 1e-12, "λ={lambda}");
        }
    }
}
