//! Fast application of symmetric Toeplitz matrices.
//!
//! The discretized bilinear form is `δ² ⟨f, T g⟩` where `T` is the symmetric
//! Toeplitz matrix with first column `w̃(0), w̃(δ), …`. Applying `T` is the
//! inner loop of both the eigenvalue solve and the self-consistency
//! iteration, so it runs through an FFT circulant embedding in
//! `O(n log n)`; [`ToeplitzOperator::apply_direct`] keeps the `O(n²)`
//! definition as a reference.

use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};
use std::cell::RefCell;
use std::sync::Arc;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

/// Plan a forward/inverse FFT pair of size `m` on this thread's planner.
fn plan_pair(m: usize) -> (Arc<dyn Fft<f64>>, Arc<dyn Fft<f64>>) {
    PLANNER.with(|p| {
        let mut p = p.borrow_mut();
        (p.plan_fft_forward(m), p.plan_fft_inverse(m))
    })
}

fn next_power_of_two(n: usize) -> usize {
    n.next_power_of_two()
}

/// Symmetric Toeplitz matrix held as its first column, with a precomputed
/// circulant embedding for fast application.
pub struct ToeplitzOperator {
    n: usize,
    first_column: Vec<f64>,
    m: usize,
    /// FFT of the embedded circulant's first column.
    symbol: Vec<Complex<f64>>,
    fft: Arc<dyn Fft<f64>>,
    ifft: Arc<dyn Fft<f64>>,
    buf: Vec<Complex<f64>>,
    scratch: Vec<Complex<f64>>,
}

impl ToeplitzOperator {
    pub fn new(first_column: Vec<f64>) -> Self {
        let n = first_column.len();
        assert!(n > 0, "empty Toeplitz column");
        let m = next_power_of_two((2 * n).saturating_sub(1));
        let (fft, ifft) = plan_pair(m);

        // Circulant first column: t_0 … t_{n−1}, zeros, t_{n−1} … t_1.
        let mut symbol = vec![Complex::new(0.0, 0.0); m];
        for (k, &t) in first_column.iter().enumerate() {
            symbol[k].re = t;
            if k > 0 {
                symbol[m - k].re = t;
            }
        }
        let scratch_len = fft
            .get_inplace_scratch_len()
            .max(ifft.get_inplace_scratch_len());
        let mut scratch = vec![Complex::new(0.0, 0.0); scratch_len];
        fft.process_with_scratch(&mut symbol, &mut scratch);

        ToeplitzOperator {
            n,
            first_column,
            m,
            symbol,
            fft,
            ifft,
            buf: vec![Complex::new(0.0, 0.0); m],
            scratch,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn first_column(&self) -> &[f64] {
        &self.first_column
    }

    /// `out = T x` via the circulant embedding.
    pub fn apply(&mut self, x: &[f64], out: &mut [f64]) {
        assert_eq!(x.len(), self.n);
        assert_eq!(out.len(), self.n);
        for (i, slot) in self.buf.iter_mut().enumerate() {
            *slot = Complex::new(if i < self.n { x[i] } else { 0.0 }, 0.0);
        }
        self.fft.process_with_scratch(&mut self.buf, &mut self.scratch);
        for (slot, &s) in self.buf.iter_mut().zip(&self.symbol) {
            *slot *= s;
        }
        self.ifft.process_with_scratch(&mut self.buf, &mut self.scratch);
        let scale = 1.0 / self.m as f64;
        for (o, b) in out.iter_mut().zip(&self.buf) {
            *o = b.re * scale;
        }
    }

    /// `out = T x` by the definition; quadratic cost, used as an oracle.
    pub fn apply_direct(&self, x: &[f64], out: &mut [f64]) {
        assert_eq!(x.len(), self.n);
        assert_eq!(out.len(), self.n);
        for (i, o) in out.iter_mut().enumerate() {
            let mut acc = 0.0;
            for (j, &xj) in x.iter().enumerate() {
                acc += self.first_column[i.abs_diff(j)] * xj;
            }
            *o = acc;
        }
    }
}
