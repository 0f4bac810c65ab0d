//! Certified bounds and numerical extremizers for sharp constants in
//! weighted autocorrelation inequalities.
//!
//! For an even, non-negative, non-increasing-on-`[0, ∞)` weight `w`, the
//! crate bounds the best constant `C` in
//!
//! ```text
//!   ∫∫ f(x) f(y) w(x − y) dx dy ≤ C · ‖f‖₁ ‖f‖₂     for all f ≥ 0,
//! ```
//!
//! producing a rigorous two-sided enclosure together with the step function
//! that witnesses the lower end.
//!
//! Lower bounds are witnessed: every reported lower bound is the Rayleigh
//! quotient of an explicit non-negative step function, evaluated in exact
//! closed form on the grid. Upper bounds combine an eigenvalue bound on each
//! grid with explicit discretization and scan-resolution error terms.
//!
//! Module map:
//!
//! * [`weight`] — the weight family (box, Gaussian, tabulated) and its norms.
//! * [`kernel`] — cell-averaged kernel samples `w̃(kδ)` with a
//!   double-integral oracle for validation.
//! * [`convolve`] — fast symmetric Toeplitz application.
//! * [`stepspace`] — step functions on uniform grids, their norms, the
//!   bilinear form, and the whitening map for the mixed-norm denominator.
//! * [`spectral`] — the per-`λ` eigenvalue solve with feasibility scanning.
//! * [`certify`] — grid planning, error terms, and the `λ`-sweep that
//!   assembles the final enclosure.
//! * [`fixedpoint`] — an independent self-consistency iteration used to
//!   cross-check the spectral route.

pub mod certify;
pub mod convolve;
pub mod fixedpoint;
pub mod kernel;
mod quad;
pub mod report;
pub mod spectral;
pub mod stepspace;
pub mod weight;

pub use certify::{sweep, BoundsReport, SweepConfig, SweepOptions};
pub use kernel::DiscretizedKernel;
pub use spectral::{solve_c_lambda_delta, SpectralSolution};
pub use stepspace::{MixedNormParams, StepFunction};
pub use weight::{WeightNorms, WeightSpec};
