//! Real fields on the collocation grid and their spectral counterparts.
//!
//! A `SpectralField` stores the full complex coefficient array in standard
//! FFT ordering, normalized so that
//!
//! ```text
//! u(x) = sum_k coeff(k) * exp(2 pi i k . x / L)
//! ```
//!
//! holds exactly at collocation points. Real fields correspond to
//! Hermitian-symmetric coefficients, `coeff(-k) = conj(coeff(k))`.

use crate::error::{Error, Result};
use crate::fft;
use crate::grid::{Dim, Grid};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;

/// Relative tolerance for the Hermitian-symmetry check on inverse transforms.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Samples of a real scalar field on the uniform collocation grid.
#[derive(Debug, Clone, PartialEq)]
pub struct RealField {
    grid: Grid,
    samples: Vec<f64>,
}

impl RealField {
    pub fn new(grid: Grid, samples: Vec<f64>) -> Result<Self> {
        if samples.len() != grid.total_points() {
            return Err(Error::LengthMismatch {
                expected: grid.total_points(),
                got: samples.len(),
            });
        }
        Ok(RealField { grid, samples })
    }

    /// Sample the closure on the collocation grid. 1D closures receive
    /// `(x, 0)`, 2D closures `(x, y)`.
    pub fn from_fn(grid: Grid, f: impl Fn(f64, f64) -> f64) -> Self {
        let n = grid.points_per_axis();
        let h = grid.length() / n as f64;
        let samples = match grid.dim() {
            Dim::One => (0..n).map(|i| f(i as f64 * h, 0.0)).collect(),
            Dim::Two => (0..n * n)
                .map(|idx| f((idx / n) as f64 * h, (idx % n) as f64 * h))
                .collect(),
        };
        RealField { grid, samples }
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    /// Forward transform to normalized Fourier coefficients.
    pub fn forward_transform(&self) -> SpectralField {
        let mut buf: Vec<Complex64> = self
            .samples
            .iter()
            .map(|&v| Complex64::new(v, 0.0))
            .collect();
        dft(&mut buf, self.grid, false);
        let scale = 1.0 / self.grid.total_points() as f64;
        for c in &mut buf {
            *c *= scale;
        }
        SpectralField {
            grid: self.grid,
            coeffs: buf,
        }
    }

    /// Largest absolute sample value.
    pub fn max_abs(&self) -> f64 {
        self.samples.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Fourier coefficients of a real field on the torus.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField {
    grid: Grid,
    coeffs: Vec<Complex64>,
}

impl SpectralField {
    pub fn zeros(grid: Grid) -> Self {
        SpectralField {
            grid,
            coeffs: vec![Complex64::new(0.0, 0.0); grid.total_points()],
        }
    }

    pub fn from_coeffs(grid: Grid, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != grid.total_points() {
            return Err(Error::LengthMismatch {
                expected: grid.total_points(),
                got: coeffs.len(),
            });
        }
        Ok(SpectralField { grid, coeffs })
    }

    /// The constant field `c`.
    pub fn constant(grid: Grid, c: f64) -> Self {
        let mut f = Self::zeros(grid);
        f.coeffs[0] = Complex64::new(c, 0.0);
        f
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub(crate) fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    /// Coefficient of the integer mode `[k]` (1D) or `[kx, ky]` (2D).
    pub fn coeff(&self, mode: &[i64]) -> Complex64 {
        self.coeffs[self.grid.index_of(pad_mode(mode, self.grid.dim()))]
    }

    pub fn set_coeff(&mut self, mode: &[i64], value: Complex64) {
        let idx = self.grid.index_of(pad_mode(mode, self.grid.dim()));
        self.coeffs[idx] = value;
    }

    /// Spatial average of the field, `coeff(0)`.
    pub fn mean(&self) -> f64 {
        self.coeffs[0].re
    }

    pub fn max_coeff_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.norm()))
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// Project onto the Hermitian-symmetric (real-field) subspace:
    /// `c(k) <- (c(k) + conj(c(-k))) / 2`. The time stepper applies this
    /// once per step; otherwise round-off in the anti-Hermitian component
    /// would grow freely under the unstable linear modes, invisible to
    /// the real-valued nonlinear term.
    pub fn hermitian_project(&mut self) {
        for idx in 0..self.coeffs.len() {
            let m = self.grid.mode_of(idx);
            let conj_idx = self.grid.index_of([-m[0], -m[1]]);
            if conj_idx == idx {
                self.coeffs[idx] = Complex64::new(self.coeffs[idx].re, 0.0);
            } else if idx < conj_idx {
                let avg = 0.5 * (self.coeffs[idx] + self.coeffs[conj_idx].conj());
                self.coeffs[idx] = avg;
                self.coeffs[conj_idx] = avg.conj();
            }
        }
    }

    /// Largest deviation from Hermitian symmetry, `max_k |c(-k) - conj(c(k))|`.
    pub fn hermitian_asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for idx in 0..self.coeffs.len() {
            let m = self.grid.mode_of(idx);
            let conj_idx = self.grid.index_of([-m[0], -m[1]]);
            let d = (self.coeffs[conj_idx] - self.coeffs[idx].conj()).norm();
            worst = worst.max(d);
        }
        worst
    }

    /// Inverse transform to real collocation samples. Rejects coefficient
    /// arrays whose Hermitian asymmetry exceeds `HERMITIAN_TOL` relative to
    /// the largest coefficient; the (tiny) imaginary residue is discarded.
    pub fn inverse_transform(&self) -> Result<RealField> {
        let asym = self.hermitian_asymmetry();
        let magnitude = self.max_coeff_abs();
        if asym > HERMITIAN_TOL * magnitude {
            return Err(Error::NotHermitian {
                asymmetry: asym / magnitude,
                tol: HERMITIAN_TOL,
            });
        }
        Ok(self.inverse_transform_unchecked())
    }

    pub(crate) fn inverse_transform_unchecked(&self) -> RealField {
        let mut buf = self.coeffs.clone();
        dft(&mut buf, self.grid, true);
        RealField {
            grid: self.grid,
            samples: buf.iter().map(|c| c.re).collect(),
        }
    }

    /// Re-embed the coefficients on a grid with `points >= N` per axis.
    /// The same trigonometric polynomial is represented; Nyquist content is
    /// split evenly between `+N/2` and `-N/2` so the result stays real.
    pub fn pad_to(&self, points: usize) -> SpectralField {
        let src = self.grid;
        let n = src.points_per_axis();
        debug_assert!(points >= n);
        let dst = src.with_points(points);
        let mut out = SpectralField::zeros(dst);
        let nyq = (n / 2) as i64;
        for (idx, &c) in self.coeffs.iter().enumerate() {
            if c == Complex64::new(0.0, 0.0) {
                continue;
            }
            let m = src.mode_of(idx);
            // Per-axis variants: a Nyquist component fans out to +-N/2.
            let variants_0: &[i64] = if m[0] == nyq { &[nyq, -nyq] } else { &[m[0]] };
            let variants_1: &[i64] = match src.dim() {
                Dim::One => &[0],
                Dim::Two => {
                    if m[1] == nyq {
                        &[nyq, -nyq]
                    } else {
                        &[m[1]]
                    }
                }
            };
            let weight = 1.0
                / (variants_0.len() * variants_1.len()) as f64;
            for &a in variants_0 {
                for &b in variants_1 {
                    let j = dst.index_of([a, b]);
                    out.coeffs[j] += c * weight;
                }
            }
        }
        out
    }

    /// Restrict the coefficients to a grid with `points <= N` per axis,
    /// dropping modes outside the band. The new Nyquist bin gathers the
    /// `+points/2` and `-points/2` contributions.
    pub(crate) fn truncate_to(&self, points: usize) -> SpectralField {
        let src = self.grid;
        debug_assert!(points <= src.points_per_axis());
        if points == src.points_per_axis() {
            return self.clone();
        }
        let dst = src.with_points(points);
        let mut out = SpectralField::zeros(dst);
        let nyq = (points / 2) as i64;
        for out_idx in 0..out.coeffs.len() {
            let m = dst.mode_of(out_idx);
            let variants_0: &[i64] = if m[0] == nyq { &[nyq, -nyq] } else { &[m[0]] };
            let variants_1: &[i64] = match dst.dim() {
                Dim::One => &[0],
                Dim::Two => {
                    if m[1] == nyq {
                        &[nyq, -nyq]
                    } else {
                        &[m[1]]
                    }
                }
            };
            let mut acc = Complex64::new(0.0, 0.0);
            for &a in variants_0 {
                for &b in variants_1 {
                    acc += self.coeffs[src.index_of([a, b])];
                }
            }
            out.coeffs[out_idx] = acc;
        }
        out
    }
}

fn pad_mode(mode: &[i64], dim: Dim) -> [i64; 2] {
    assert_eq!(
        mode.len(),
        dim.axes(),
        "mode vector length must match the grid dimension"
    );
    match dim {
        Dim::One => [mode[0], 0],
        Dim::Two => [mode[0], mode[1]],
    }
}

fn dft(buf: &mut [Complex64], grid: Grid, inverse: bool) {
    match grid.dim() {
        Dim::One => fft::dft_1d(buf, inverse),
        Dim::Two => fft::dft_2d(buf, grid.points_per_axis(), inverse),
    }
}

/// Hermitian random field with `|coeff(k)| = amplitude * (1 + |k|)^(-decay)`
/// and phases drawn from a ChaCha stream seeded by `seed`. Deterministic in
/// the seed.
pub fn random_field(grid: Grid, seed: u64, amplitude: f64, decay: f64) -> Result<SpectralField> {
    random_field_banded(grid, seed, amplitude, decay, f64::INFINITY)
}

/// As [`random_field`] but with all modes `|k| > max_mode` left empty.
/// The inequality suites use `max_mode = N/4` so that cubes and gradient
/// products stay exactly representable after padding.
pub fn random_field_banded(
    grid: Grid,
    seed: u64,
    amplitude: f64,
    decay: f64,
    max_mode: f64,
) -> Result<SpectralField> {
    if !(amplitude > 0.0) {
        return Err(Error::param("amplitude", format!("must be > 0, got {amplitude}")));
    }
    if !(decay > 1.0) {
        return Err(Error::param("decay", format!("must be > 1, got {decay}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut field = SpectralField::zeros(grid);
    for idx in 0..grid.total_points() {
        // One draw per index keeps the stream independent of the branch taken.
        let theta: f64 = rng.gen::<f64>() * TAU;
        let m = grid.mode_of(idx);
        let norm = ((m[0] * m[0] + m[1] * m[1]) as f64).sqrt();
        if norm > max_mode {
            continue;
        }
        let conj_idx = grid.index_of([-m[0], -m[1]]);
        let mag = amplitude * (1.0 + norm).powf(-decay);
        if conj_idx == idx {
            // Self-conjugate bins (k = 0 and Nyquist corners) must be real.
            let sign = if theta < TAU / 2.0 { 1.0 } else { -1.0 };
            field.coeffs[idx] = Complex64::new(sign * mag, 0.0);
        } else if idx < conj_idx {
            let c = Complex64::from_polar(mag, theta);
            field.coeffs[idx] = c;
            field.coeffs[conj_idx] = c.conj();
        }
    }
    Ok(field)
}

/// As [`random_field_banded`] with the mean component removed, for checks
/// that require zero-mean fields.
pub fn random_field_zero_mean(
    grid: Grid,
    seed: u64,
    amplitude: f64,
    decay: f64,
    max_mode: f64,
) -> Result<SpectralField> {
    let mut f = random_field_banded(grid, seed, amplitude, decay, max_mode)?;
    f.coeffs[0] = Complex64::new(0.0, 0.0);
    Ok(f)
}
