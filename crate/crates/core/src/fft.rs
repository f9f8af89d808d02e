//! Thin complex-to-complex FFT layer over `rustfft` with a per-thread plan
//! cache. Both directions are unnormalized; callers apply the `1/N^d`
//! factor where the forward transform needs it.

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::cell::RefCell;
use std::sync::Arc;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn plan(len: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| {
        let mut p = p.borrow_mut();
        if inverse {
            p.plan_fft_inverse(len)
        } else {
            p.plan_fft_forward(len)
        }
    })
}

/// DFT along contiguous rows of a `rows x cols` row-major buffer, in place.
fn dft_rows(data: &mut [Complex64], rows: usize, cols: usize, inverse: bool) {
    debug_assert_eq!(data.len(), rows * cols);
    let fft = plan(cols, inverse);
    let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
    for row in data.chunks_exact_mut(cols) {
        fft.process_with_scratch(row, &mut scratch);
    }
}

fn transpose_square(data: &mut [Complex64], n: usize) {
    for i in 0..n {
        for j in (i + 1)..n {
            data.swap(i * n + j, j * n + i);
        }
    }
}

/// Unnormalized 1D DFT, in place.
pub fn dft_1d(data: &mut [Complex64], inverse: bool) {
    let len = data.len();
    dft_rows(data, 1, len, inverse);
}

/// Unnormalized 2D DFT of an `n x n` row-major buffer, in place.
pub fn dft_2d(data: &mut [Complex64], n: usize, inverse: bool) {
    dft_rows(data, n, n, inverse);
    transpose_square(data, n);
    dft_rows(data, n, n, inverse);
    transpose_square(data, n);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_mode_1d() {
        // coeff layout delta at k=1 -> samples e^{2 pi i x/N} under inverse
        let n = 8;
        let mut data = vec![Complex64::new(0.0, 0.0); n];
        data[1] = Complex64::new(1.0, 0.0);
        dft_1d(&mut data, true);
        for (j, v) in data.iter().enumerate() {
            let phase = std::f64::consts::TAU * j as f64 / n as f64;
            assert!((v.re - phase.cos()).abs() < 1e-12);
            assert!((v.im - phase.sin()).abs() < 1e-12);
        }
    }

    #[test]
    fn round_trip_2d() {
        let n = 16;
        let mut data: Vec<Complex64> = (0..n * n)
            .map(|i| Complex64::new((i as f64).sin(), (i as f64 * 0.7).cos()))
            .collect();
        let original = data.clone();
        dft_2d(&mut data, n, false);
        dft_2d(&mut data, n, true);
        let scale = (n * n) as f64;
        for (a, b) in data.iter().zip(&original) {
            assert!((a / scale - b).norm() < 1e-12);
        }
    }
}
