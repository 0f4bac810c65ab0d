//! The per-`λ` solve: maximize `2Q(f,f) / (λ‖f‖² + λ⁻¹(∫f)²)` over
//! non-negative step functions on the grid.
//!
//! Conjugating the kernel operator `K` (where `⟨f, Kg⟩ = Q(f, g)`) by the
//! whitener of [`crate::stepspace`] turns the problem on each candidate
//! support into an ordinary symmetric eigenvalue problem for
//! `M = 2·A⁻¹ K A⁻¹`. The solver scans centrally placed blocks of `k` cells
//! (`k` of the grid's parity, so blocks align with cells), takes the dominant
//! eigenpair of each block by power iteration, keeps the blocks whose
//! eigenvector is non-negative, and reports the best of those.
//!
//! The reported value is always re-evaluated as the Rayleigh quotient of the
//! explicit non-negative vector (negative dust clipped), so it stands as a
//! lower bound for the grid optimum on its own, independent of how well the
//! eigensolve converged.

use crate::convolve::ToeplitzOperator;
use crate::kernel::DiscretizedKernel;
use crate::stepspace::{MixedNormParams, StepFunction};
use rustfft::num_complex::Complex;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpectralError {
    #[error("no support size produced a non-negative eigenvector at λ = {lambda}")]
    NoFeasibleK {
        lambda: f64,
        /// Best candidate after clipping negatives; its value is still a
        /// valid witnessed lower bound.
        best: Option<Box<SpectralSolution>>,
    },
    #[error("grid has no admissible support size")]
    EmptyScan,
}

/// One scanned support size, for post-hoc diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanEntry {
    pub k: usize,
    /// Raw dominant eigenvalue of the block operator.
    pub mu: f64,
    pub feasible: bool,
    pub iterations: usize,
}

/// Result of [`solve_c_lambda_delta`] for one `(λ, δ)` pair.
#[derive(Debug, Clone)]
pub struct SpectralSolution {
    pub lambda: f64,
    pub delta: f64,
    /// Witnessed optimum `2Q(f,f)/(λ‖f‖² + λ⁻¹(∫f)²)` of the stored
    /// extremizer.
    pub c_lambda_delta: f64,
    /// Non-negative extremizer on the full grid, mixed-norm normalized.
    pub extremizer: StepFunction,
    /// Cells in the winning central block.
    pub support_cells: usize,
    /// False when the value comes from the clipped fallback rather than a
    /// genuinely non-negative eigenvector.
    pub feasible: bool,
    /// Power iterations spent on the winning block.
    pub iterations: usize,
    /// Eigen-residual `‖Mg − μg‖/‖g‖` on the winning block.
    pub residual: f64,
    pub converged: bool,
    /// Set when the winning block's power iteration stalled between
    /// near-degenerate values; the caller should refine the `λ` grid near
    /// this point.
    pub degenerate: bool,
    /// All support sizes examined, in evaluation order.
    pub scan: Vec<ScanEntry>,
}

/// How [`solve_c_lambda_delta`] walks the support sizes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScanMode {
    /// Every admissible block size; the reference mode.
    Full,
    /// Bisect for the feasibility edge, then walk outward from it.
    Bisect,
    /// Walk outward from a known-good starting size (typically the previous
    /// `λ`'s winner), stopping after 10 consecutive non-improving sizes per
    /// side.
    Outward { start_k: usize },
}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub scan: ScanMode,
    /// Relative eigen-residual target.
    pub eig_tol: f64,
    /// Power-iteration budget per block is `max_iter_per_cell·k`, floored at
    /// 500.
    pub max_iter_per_cell: usize,
    /// Negative entries above `−tol·max(f)` count as dust, not infeasibility.
    pub feasibility_tol: f64,
    /// Start vector for the first block solve (whitened coordinates,
    /// centrally padded/cropped to each block).
    pub warm_vector: Option<Vec<f64>>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            scan: ScanMode::Full,
            eig_tol: 1e-12,
            max_iter_per_cell: 50,
            feasibility_tol: 1e-8,
            warm_vector: None,
        }
    }
}

/// Reusable per-block-size state (Toeplitz plans and the kernel symbol
/// minimum), shared across the `λ` values of one sweep chunk. Purely an
/// optimization: results must not depend on cache state.
#[derive(Default)]
pub struct BlockCache {
    ops: HashMap<usize, ToeplitzOperator>,
    min_symbol: Option<f64>,
}

impl BlockCache {
    pub fn new() -> Self {
        BlockCache::default()
    }

    fn op(&mut self, kernel: &DiscretizedKernel, k: usize) -> &mut ToeplitzOperator {
        if self.ops.len() > 256 {
            self.ops.clear();
        }
        self.ops
            .entry(k)
            .or_insert_with(|| ToeplitzOperator::new((0..k).map(|j| kernel.value(j)).collect()))
    }

    fn min_symbol(&mut self, kernel: &DiscretizedKernel, n: usize) -> f64 {
        *self
            .min_symbol
            .get_or_insert_with(|| sample_symbol_min(kernel, n))
    }
}

/// Smallest sampled value of the kernel's trigonometric symbol
/// `t₀ + 2Σ t_k cos(kθ)`; used only to size the spectral shift (a guard
/// re-solves with a larger shift if sampling underestimated).
fn sample_symbol_min(kernel: &DiscretizedKernel, n: usize) -> f64 {
    let m = (4 * n.max(1)).next_power_of_two();
    let mut buf = vec![Complex::new(0.0, 0.0); m];
    for k in 0..n.min(m / 2) {
        let t = kernel.value(k);
        buf[k].re = t;
        if k > 0 {
            buf[m - k].re = t;
        }
    }
    let mut planner = rustfft::FftPlanner::new();
    let fft = planner.plan_fft_forward(m);
    fft.process(&mut buf);
    buf.iter().map(|c| c.re).fold(f64::INFINITY, f64::min)
}

struct PowerOutcome {
    nu: f64,
    vec: Vec<f64>,
    iterations: usize,
    residual: f64,
    converged: bool,
    stalled: bool,
}

/// Power iteration for the dominant eigenvalue of a symmetric
/// positive-semidefinite operator, with Rayleigh-quotient extraction and a
/// stall detector for near-degenerate tops.
fn power_iteration(
    apply: &mut dyn FnMut(&[f64], &mut [f64]),
    start: &[f64],
    tol: f64,
    max_iter: usize,
) -> PowerOutcome {
    let n = start.len();
    let mut g = start.to_vec();
    let norm = euclid(&g);
    assert!(norm > 0.0, "zero start vector");
    for v in &mut g {
        *v /= norm;
    }
    let mut h = vec![0.0; n];
    let mut nu = 0.0;
    let mut prev_nu = f64::NAN;
    let mut residual = f64::INFINITY;
    let mut stall = 0usize;
    for it in 1..=max_iter {
        apply(&g, &mut h);
        nu = dot(&g, &h);
        let mut res_sq = 0.0;
        for (hi, gi) in h.iter().zip(&g) {
            let r = hi - nu * gi;
            res_sq += r * r;
        }
        residual = res_sq.sqrt();
        let scale = nu.abs().max(1e-300);
        if residual <= tol * scale.max(1.0) {
            return PowerOutcome {
                nu,
                vec: g,
                iterations: it,
                residual,
                converged: true,
                stalled: false,
            };
        }
        if (nu - prev_nu).abs() <= 1e-16 * scale {
            stall += 1;
            if stall >= 100 {
                return PowerOutcome {
                    nu,
                    vec: g,
                    iterations: it,
                    residual,
                    converged: residual <= 1e-9 * scale.max(1.0),
                    stalled: true,
                };
            }
        } else {
            stall = 0;
        }
        prev_nu = nu;
        let hn = euclid(&h);
        if hn == 0.0 {
            // The operator annihilated the iterate: eigenvalue 0.
            return PowerOutcome {
                nu: 0.0,
                vec: g,
                iterations: it,
                residual: 0.0,
                converged: true,
                stalled: false,
            };
        }
        for (gi, hi) in g.iter_mut().zip(&h) {
            *gi = hi / hn;
        }
    }
    PowerOutcome {
        nu,
        vec: g,
        iterations: max_iter,
        residual,
        converged: false,
        stalled: false,
    }
}

fn euclid(x: &[f64]) -> f64 {
    dot(x, x).sqrt()
}

/// Project onto the flip-symmetric subspace by averaging mirror entries.
fn symmetrize(x: &mut [f64]) {
    let n = x.len();
    for i in 0..n / 2 {
        let avg = 0.5 * (x[i] + x[n - 1 - i]);
        x[i] = avg;
        x[n - 1 - i] = avg;
    }
}

fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

/// Triangular bump on `k` cells: positive, symmetric, decreasing from the
/// center — guaranteed overlap with the dominant eigenvector.
fn bump(k: usize) -> Vec<f64> {
    let c = 0.5 * (k as f64 - 1.0);
    let half = 0.5 * k as f64;
    (0..k).map(|i| 1.0 - (i as f64 - c).abs() / half).collect()
}

/// Pad or crop a previous eigenvector to `k` entries, keeping it centered.
fn recenter(v: &[f64], k: usize) -> Vec<f64> {
    let mut out = vec![0.0; k];
    if v.len() >= k {
        let start = (v.len() - k) / 2;
        out.copy_from_slice(&v[start..start + k]);
    } else {
        let start = (k - v.len()) / 2;
        out[start..start + v.len()].copy_from_slice(v);
    }
    if euclid(&out) == 0.0 {
        return bump(k);
    }
    out
}

/// Dominant eigenpair of one block, in whitened coordinates.
struct BlockEigen {
    mu: f64,
    /// Un-whitened eigenvector `f = A⁻¹g` on the block, sign-fixed so the
    /// integral is non-negative.
    f: Vec<f64>,
    iterations: usize,
    residual: f64,
    converged: bool,
    stalled: bool,
}

fn solve_block(
    kernel: &DiscretizedKernel,
    lambda: f64,
    delta: f64,
    k: usize,
    start: &[f64],
    tol: f64,
    max_iter: usize,
    cache: &mut BlockCache,
    ambient_n: usize,
) -> BlockEigen {
    let p = MixedNormParams::new(lambda, delta, k);
    let min_symbol = cache.min_symbol(kernel, ambient_n);
    // M = 2A⁻¹KA⁻¹ ⪰ (2δ/λ)·min_symbol·I, so this shift makes M + σI psd.
    let mut sigma = 1.05 * 2.0 * delta * (-min_symbol).max(0.0) / lambda;
    let mut attempts = 0;
    // A feasible vector is flip-symmetric, so the relevant candidate is the
    // dominant eigenpair WITHIN the symmetric subspace; symmetrizing every
    // iterate keeps FFT rounding from leaking in antisymmetric modes (which
    // can dominate on small grids, where they dodge the mean penalty).
    let mut start = start.to_vec();
    symmetrize(&mut start);
    loop {
        let outcome = {
            let op = cache.op(kernel, k);
            let mut u = vec![0.0; k];
            let mut t = vec![0.0; k];
            let mut apply = |g: &[f64], out: &mut [f64]| {
                p.apply_a_inv(g, &mut u);
                op.apply(&u, &mut t);
                for v in &mut t {
                    *v *= 2.0 * delta;
                }
                p.apply_a_inv(&t, out);
                for (o, gi) in out.iter_mut().zip(g) {
                    *o += sigma * gi;
                }
                symmetrize(out);
            };
            power_iteration(&mut apply, &start, tol, max_iter)
        };
        let mu = outcome.nu - sigma;
        // Rayleigh quotient of the bump: a value the true top must reach.
        let bump_mu = {
            let b = bump(k);
            let mut f = vec![0.0; k];
            p.apply_a_inv(&b, &mut f);
            let op = cache.op(kernel, k);
            let mut tf = vec![0.0; k];
            op.apply(&f, &mut tf);
            2.0 * delta * delta * dot(&f, &tf) / dot(&b, &b) / delta
        };
        if mu + 1e-12 * mu.abs().max(1.0) < bump_mu && attempts < 3 {
            // The shift was too small and the iteration locked onto the most
            // negative eigenvalue; enlarge and retry.
            sigma = sigma * 4.0 + 1e-3;
            attempts += 1;
            continue;
        }
        let mut f = vec![0.0; k];
        p.apply_a_inv(&outcome.vec, &mut f);
        if f.iter().sum::<f64>() < 0.0 {
            for v in &mut f {
                *v = -*v;
            }
        }
        return BlockEigen {
            mu,
            f,
            iterations: outcome.iterations,
            residual: outcome.residual,
            converged: outcome.converged,
            stalled: outcome.stalled,
        };
    }
}

/// True iff the values are non-negative (up to `tol` relative dust),
/// symmetric, and non-increasing away from the center, all relative to the
/// peak value.
pub fn feasibility_check(v: &StepFunction, tol: f64) -> bool {
    feasible_values(v.values(), tol)
}

fn feasible_values(vals: &[f64], tol: f64) -> bool {
    let n = vals.len();
    let max = vals.iter().fold(f64::NEG_INFINITY, |m, &v| m.max(v));
    if !(max > 0.0) {
        return false;
    }
    let slack = tol * max;
    for &v in vals {
        if v < -slack {
            return false;
        }
    }
    for i in 0..n / 2 {
        if (vals[i] - vals[n - 1 - i]).abs() > slack {
            return false;
        }
        // Non-decreasing toward the center on the left half.
        if vals[i] > vals[i + 1] + slack {
            return false;
        }
    }
    true
}

/// Dominant eigenpair of the block operator `M = 2A⁻¹KA⁻¹` on the central
/// block of `support_cells` cells, with the whitener built for the block's
/// own radius. The eigenvector is returned un-whitened (`f = A⁻¹g`), scaled
/// to unit mixed norm, sign-fixed to non-negative integral.
pub fn top_eigenpair(
    kernel: &DiscretizedKernel,
    p: &MixedNormParams,
    support_cells: usize,
    tol: f64,
    max_iter: usize,
) -> (f64, StepFunction, usize, f64, bool) {
    assert!(support_cells >= 1 && support_cells <= p.n());
    let mut cache = BlockCache::new();
    let start = bump(support_cells);
    let eig = solve_block(
        kernel,
        p.lambda(),
        p.delta(),
        support_cells,
        &start,
        tol,
        max_iter,
        &mut cache,
        p.n(),
    );
    let block_p = MixedNormParams::new(p.lambda(), p.delta(), support_cells);
    let h = block_p.h_norm_sq(&eig.f).sqrt();
    let f = StepFunction::new(p.delta(), eig.f.iter().map(|v| v / h).collect())
        .expect("finite eigenvector");
    (eig.mu, f, eig.iterations, eig.residual, eig.converged)
}

/// Evaluation of one block size inside the scan.
struct Candidate {
    k: usize,
    mu: f64,
    /// Certified Rayleigh value of the clipped vector.
    value: f64,
    /// Clipped block vector (non-negative).
    clipped: Vec<f64>,
    feasible_pre_clip: bool,
    feasible_post_clip: bool,
    iterations: usize,
    residual: f64,
    converged: bool,
    stalled: bool,
}

fn evaluate_k(
    kernel: &DiscretizedKernel,
    lambda: f64,
    delta: f64,
    k: usize,
    start: &[f64],
    opts: &SolveOptions,
    cache: &mut BlockCache,
    ambient_n: usize,
) -> (Candidate, Vec<f64>) {
    let max_iter = (opts.max_iter_per_cell * k).max(500);
    let eig = solve_block(
        kernel, lambda, delta, k, start, opts.eig_tol, max_iter, cache, ambient_n,
    );
    let feasible_pre = feasible_values(&eig.f, opts.feasibility_tol);
    let mut clipped = eig.f.clone();
    for v in &mut clipped {
        if *v < 0.0 {
            *v = 0.0;
        }
    }
    let feasible_post = feasible_values(&clipped, opts.feasibility_tol);
    let p = MixedNormParams::new(lambda, delta, k);
    let h = p.h_norm_sq(&clipped);
    let value = if h > 0.0 {
        let op = cache.op(kernel, k);
        let mut tf = vec![0.0; k];
        op.apply(&clipped, &mut tf);
        2.0 * delta * delta * dot(&clipped, &tf) / h
    } else {
        f64::NEG_INFINITY
    };
    // Whitened eigenvector for warm-starting the next solve.
    let mut g = vec![0.0; k];
    p.apply_a(&eig.f, &mut g);
    (
        Candidate {
            k,
            mu: eig.mu,
            value,
            clipped,
            feasible_pre_clip: feasible_pre,
            feasible_post_clip: feasible_post,
            iterations: eig.iterations,
            residual: eig.residual,
            converged: eig.converged,
            stalled: eig.stalled,
        },
        g,
    )
}

/// Maximize `2Q(f,f)/(λ‖f‖² + λ⁻¹(∫f)²)` over non-negative step functions
/// via the support-size scan. See the module docs for the contract.
pub fn solve_c_lambda_delta(
    kernel: &DiscretizedKernel,
    p: &MixedNormParams,
    opts: &SolveOptions,
) -> Result<SpectralSolution, SpectralError> {
    let mut cache = BlockCache::new();
    solve_with_cache(kernel, p, opts, &mut cache)
}

/// [`solve_c_lambda_delta`] with a caller-owned [`BlockCache`], for sweeps
/// that solve many `λ` on one grid.
pub fn solve_with_cache(
    kernel: &DiscretizedKernel,
    p: &MixedNormParams,
    opts: &SolveOptions,
    cache: &mut BlockCache,
) -> Result<SpectralSolution, SpectralError> {
    let n = p.n();
    let lambda = p.lambda();
    let delta = p.delta();
    let k_min = if n % 2 == 0 { 2 } else { 1 };
    let parity_fix = |k: usize| -> usize {
        let k = k.clamp(k_min, n);
        if k % 2 == n % 2 {
            k
        } else {
            (k + 1).min(n)
        }
    };

    let mut scan = Vec::new();
    let mut best: Option<Candidate> = None;
    let mut fallback: Option<Candidate> = None;
    let mut warm: Option<Vec<f64>> = opts.warm_vector.clone();

    let mut run_k = |k: usize,
                     scan: &mut Vec<ScanEntry>,
                     best: &mut Option<Candidate>,
                     fallback: &mut Option<Candidate>,
                     warm: &mut Option<Vec<f64>>,
                     cache: &mut BlockCache|
     -> bool {
        let start = match warm.as_deref() {
            Some(v) => recenter(v, k),
            None => bump(k),
        };
        let (cand, g) = evaluate_k(kernel, lambda, delta, k, &start, opts, cache, n);
        *warm = Some(g);
        scan.push(ScanEntry {
            k,
            mu: cand.mu,
            feasible: cand.feasible_pre_clip,
            iterations: cand.iterations,
        });
        let improved = cand.feasible_pre_clip
            && best
                .as_ref()
                .map(|b| cand.value > b.value)
                .unwrap_or(true);
        if improved {
            *best = Some(Candidate {
                clipped: cand.clipped.clone(),
                ..cand
            });
        }
        if cand.feasible_post_clip
            && fallback
                .as_ref()
                .map(|b| cand.value > b.value)
                .unwrap_or(true)
        {
            *fallback = Some(cand);
        }
        improved
    };

    match opts.scan {
        ScanMode::Full => {
            let mut k = k_min;
            while k <= n {
                run_k(k, &mut scan, &mut best, &mut fallback, &mut warm, cache);
                k += 2;
            }
        }
        ScanMode::Bisect => {
            // Feasibility is empirically monotone: small blocks are
            // feasible, large ones are not. Find the edge, then polish.
            let idx_max = (n - k_min) / 2;
            let mut lo = 0usize;
            let lo_ok = run_k(k_min, &mut scan, &mut best, &mut fallback, &mut warm, cache);
            if lo_ok && idx_max > 0 {
                let hi_ok = run_k(n, &mut scan, &mut best, &mut fallback, &mut warm, cache);
                if !hi_ok {
                    let mut hi = idx_max;
                    while hi - lo > 1 {
                        let mid = lo + (hi - lo) / 2;
                        let ok = run_k(
                            k_min + 2 * mid,
                            &mut scan,
                            &mut best,
                            &mut fallback,
                            &mut warm,
                            cache,
                        );
                        if ok {
                            lo = mid;
                        } else {
                            hi = mid;
                        }
                    }
                }
            } else if !lo_ok {
                // Rare: even the smallest block infeasible; scan everything.
                let mut k = k_min + 2;
                while k <= n {
                    run_k(k, &mut scan, &mut best, &mut fallback, &mut warm, cache);
                    k += 2;
                }
            }
            // Outward polish around the best size found so far.
            if let Some(k0) = best.as_ref().map(|b| b.k) {
                outward_scan(
                    parity_fix(k0),
                    k_min,
                    n,
                    &mut scan,
                    &mut best,
                    &mut fallback,
                    &mut warm,
                    cache,
                    &mut run_k,
                );
            }
        }
        ScanMode::Outward { start_k } => {
            let k0 = parity_fix(start_k);
            run_k(k0, &mut scan, &mut best, &mut fallback, &mut warm, cache);
            outward_scan(
                k0,
                k_min,
                n,
                &mut scan,
                &mut best,
                &mut fallback,
                &mut warm,
                cache,
                &mut run_k,
            );
        }
    }

    let (winner, feasible) = match (best, fallback) {
        (Some(b), _) => (b, true),
        (None, Some(f)) => {
            let solution = assemble(kernel, p, f, false, scan);
            return Err(SpectralError::NoFeasibleK {
                lambda,
                best: Some(Box::new(solution)),
            });
        }
        (None, None) => {
            return Err(SpectralError::NoFeasibleK { lambda, best: None });
        }
    };
    Ok(assemble(kernel, p, winner, feasible, scan))
}

/// Walk outward from `k0` (already evaluated), stopping a side after 10
/// consecutive non-improving sizes — but never abandoning the downward side
/// before at least one feasible size has been seen.
#[allow(clippy::too_many_arguments)]
fn outward_scan(
    k0: usize,
    k_min: usize,
    n: usize,
    scan: &mut Vec<ScanEntry>,
    best: &mut Option<Candidate>,
    fallback: &mut Option<Candidate>,
    warm: &mut Option<Vec<f64>>,
    cache: &mut BlockCache,
    run_k: &mut dyn FnMut(
        usize,
        &mut Vec<ScanEntry>,
        &mut Option<Candidate>,
        &mut Option<Candidate>,
        &mut Option<Vec<f64>>,
        &mut BlockCache,
    ) -> bool,
) {
    const PATIENCE: usize = 10;
    let mut down = k0;
    let mut up = k0;
    let mut down_misses = 0usize;
    let mut up_misses = 0usize;
    loop {
        let mut progressed = false;
        if down_misses < PATIENCE && down > k_min {
            down -= 2;
            let improved = run_k(down, scan, best, fallback, warm, cache);
            if improved {
                down_misses = 0;
            } else if best.is_some() {
                down_misses += 1;
            }
            progressed = true;
        }
        if up_misses < PATIENCE && up + 2 <= n {
            up += 2;
            let improved = run_k(up, scan, best, fallback, warm, cache);
            if improved {
                up_misses = 0;
            } else {
                up_misses += 1;
            }
            progressed = true;
        }
        if !progressed {
            break;
        }
    }
}

fn assemble(
    kernel: &DiscretizedKernel,
    p: &MixedNormParams,
    cand: Candidate,
    feasible: bool,
    scan: Vec<ScanEntry>,
) -> SpectralSolution {
    let n = p.n();
    let k = cand.k;
    let start = (n - k) / 2;
    let block_p = MixedNormParams::new(p.lambda(), p.delta(), k);
    let h = block_p.h_norm_sq(&cand.clipped).sqrt();
    let mut full = vec![0.0; n];
    for (i, &v) in cand.clipped.iter().enumerate() {
        full[start + i] = v / h;
    }
    let extremizer = StepFunction::new(p.delta(), full).expect("finite extremizer");
    debug_assert!({
        let q = crate::stepspace::quadratic_form(&extremizer, kernel, &extremizer);
        let hh = p.h_norm_sq(extremizer.values());
        (2.0 * q / hh - cand.value).abs() <= 1e-9 * cand.value.abs().max(1.0)
    });
    SpectralSolution {
        lambda: p.lambda(),
        delta: p.delta(),
        c_lambda_delta: cand.value,
        extremizer,
        support_cells: k,
        feasible,
        iterations: cand.iterations,
        residual: cand.residual,
        converged: cand.converged,
        degenerate: cand.stalled && !cand.converged,
        scan,
    }
}
