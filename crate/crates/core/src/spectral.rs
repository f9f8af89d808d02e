//! Spectral differentiation, Sobolev seminorms, dealiased products and
//! sup-norm estimation.

use crate::error::{Error, Result};
use crate::field::SpectralField;
use crate::grid::Dim;
use num_complex::Complex64;

impl SpectralField {
    /// Partial derivative `D^order` as a Fourier multiplier,
    /// `prod_j (2 pi i k_j / L)^(order_j)`. The Nyquist bin is zeroed for
    /// odd orders so that real fields stay real.
    pub fn partial_derivative(&self, order: &[u32]) -> Result<SpectralField> {
        let grid = self.grid();
        if order.len() != grid.dim().axes() {
            return Err(Error::param(
                "order",
                format!(
                    "multi-index has {} entries for a {}D grid",
                    order.len(),
                    grid.dim()
                ),
            ));
        }
        let n = grid.points_per_axis();
        let step = grid.wavenumber_step();
        // Per-axis multiplier tables.
        let table = |ord: u32| -> Vec<Complex64> {
            (0..n)
                .map(|i| {
                    let k = if i <= n / 2 { i as i64 } else { i as i64 - n as i64 };
                    if ord % 2 == 1 && i == n / 2 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        Complex64::new(0.0, step * k as f64).powu(ord)
                    }
                })
                .collect()
        };
        let mut out = self.clone();
        match grid.dim() {
            Dim::One => {
                let tx = table(order[0]);
                for (i, c) in out.coeffs_mut().iter_mut().enumerate() {
                    *c *= tx[i];
                }
            }
            Dim::Two => {
                let tx = table(order[0]);
                let ty = table(order[1]);
                for (idx, c) in out.coeffs_mut().iter_mut().enumerate() {
                    *c *= tx[idx / n] * ty[idx % n];
                }
            }
        }
        Ok(out)
    }

    /// Fractional Laplacian power `(-Laplacian)^(s/2)`, the Fourier
    /// multiplier `((2 pi / L)^2 |k|^2)^(s/2)`.
    pub fn fractional_laplacian(&self, s: f64) -> Result<SpectralField> {
        if !(s >= 0.0) {
            return Err(Error::param("s", format!("must be >= 0, got {s}")));
        }
        let grid = self.grid();
        let step2 = grid.wavenumber_step() * grid.wavenumber_step();
        let half = s / 2.0;
        let mut out = self.clone();
        for (idx, c) in out.coeffs_mut().iter_mut().enumerate() {
            let rho = step2 * grid.mode_norm_squared(idx);
            *c *= rho.powf(half);
        }
        Ok(out)
    }

    /// Squared Sobolev seminorm of real index `s >= 0`:
    ///
    /// ```text
    /// J_s = L^d (2 pi / L)^(2s) sum_k |k|^(2s) |coeff(k)|^2
    /// ```
    ///
    /// For `s = 0` this is the squared L2 norm; for `s > 0` the mean
    /// component carries weight `|0|^(2s) = 0` and drops out.
    pub fn sobolev_seminorm(&self, s: f64) -> f64 {
        let grid = self.grid();
        let integer = s.fract() == 0.0;
        let si = s as i32;
        let mut sum = 0.0;
        for (idx, c) in self.coeffs().iter().enumerate() {
            let k2 = grid.mode_norm_squared(idx);
            let weight = if integer { k2.powi(si) } else { k2.powf(s) };
            sum += weight * c.norm_sqr();
        }
        let step2 = grid.wavenumber_step() * grid.wavenumber_step();
        let prefactor = if integer { step2.powi(si) } else { step2.powf(s) };
        let volume = grid.length().powi(grid.dim().axes() as i32);
        volume * prefactor * sum
    }

    /// Lower bound on the sup-norm: the largest absolute sample value on a
    /// grid refined by `refine` via zero-padded inverse transform.
    /// Nondecreasing in `refine` (the base collocation points are a subset
    /// of every refined grid).
    pub fn sup_norm_estimate(&self, refine: usize) -> f64 {
        assert!(refine >= 1, "refinement factor must be >= 1");
        let field = if refine == 1 {
            self.inverse_transform_unchecked()
        } else {
            self.pad_to(self.grid().points_per_axis() * refine)
                .inverse_transform_unchecked()
        };
        field.max_abs()
    }
}

/// Product of 2 or 3 fields, dealiased by zero padding: the factors are
/// embedded on a grid with `ceil(cutoff_factor * N)` points per axis,
/// multiplied pointwise in physical space, transformed back and truncated
/// to the original band. Exact (to round-off) whenever the true product
/// fits the padded band, which `cutoff_factor >= (factors + 1) / 2`
/// guarantees for band-limited inputs.
pub fn dealiased_product(
    factors: &[&SpectralField],
    cutoff_factor: f64,
) -> Result<SpectralField> {
    if factors.len() < 2 || factors.len() > 3 {
        return Err(Error::FactorCount(factors.len()));
    }
    let grid = factors[0].grid();
    if factors.iter().any(|f| f.grid() != grid) {
        return Err(Error::GridMismatch);
    }
    let min_cutoff = (factors.len() + 1) as f64 / 2.0;
    if cutoff_factor < min_cutoff {
        return Err(Error::CutoffTooSmall {
            got: cutoff_factor,
            min: min_cutoff,
            factors: factors.len(),
        });
    }
    let n = grid.points_per_axis();
    let padded = (cutoff_factor * n as f64).ceil() as usize;

    let mut product: Option<Vec<f64>> = None;
    for f in factors {
        let phys = f.pad_to(padded).inverse_transform_unchecked();
        match &mut product {
            None => product = Some(phys.samples().to_vec()),
            Some(acc) => {
                for (a, v) in acc.iter_mut().zip(phys.samples()) {
                    *a *= v;
                }
            }
        }
    }
    let samples = product.expect("at least two factors");
    let phys = crate::field::RealField::new(grid.with_points(padded), samples)
        .expect("padded sample count");
    Ok(phys.forward_transform().truncate_to(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{random_field, random_field_banded, RealField};
    use crate::grid::Grid;
    use std::f64::consts::TAU;

    fn rel_close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * a.abs().max(b.abs())
    }

    #[test]
    fn derivative_of_sine() {
        let l = 5.0;
        let grid = Grid::line(64, l).unwrap();
        let u = RealField::from_fn(grid, |x, _| (TAU * x / l).sin()).forward_transform();
        let du = u.partial_derivative(&[1]).unwrap().inverse_transform().unwrap();
        for (i, &v) in du.samples().iter().enumerate() {
            let x = i as f64 * l / 64.0;
            assert!((v - TAU / l * (TAU * x / l).cos()).abs() < 1e-12);
        }
    }

    #[test]
    fn fractional_laplacian_single_mode() {
        let l = 3.0;
        let grid = Grid::line(32, l).unwrap();
        let mut u = SpectralField::zeros(grid);
        u.set_coeff(&[5], Complex64::new(1.0, 0.0));
        let au = u.fractional_laplacian(1.0).unwrap();
        // (-Laplacian)^{1/2} multiplies the mode by (2 pi / L) |k|
        let expected = TAU / l * 5.0;
        assert!((au.coeff(&[5]).re - expected).abs() < 1e-12);
        assert!(au.coeff(&[5]).im.abs() < 1e-15);
    }

    #[test]
    fn mixed_partials_commute() {
        let grid = Grid::square(16, 2.0).unwrap();
        let u = random_field(grid, 1, 1.0, 2.0).unwrap();
        // d/dx d/dy and d/dy d/dx are the same multi-index operator; the
        // canonical form is deterministic and the compositions agree with
        // it to round-off.
        let direct = u.partial_derivative(&[1, 1]).unwrap();
        assert_eq!(
            direct.coeffs(),
            u.partial_derivative(&[1, 1]).unwrap().coeffs()
        );
        let xy = u
            .partial_derivative(&[1, 0])
            .unwrap()
            .partial_derivative(&[0, 1])
            .unwrap();
        let yx = u
            .partial_derivative(&[0, 1])
            .unwrap()
            .partial_derivative(&[1, 0])
            .unwrap();
        let scale = direct.max_coeff_abs();
        for ((a, b), c) in xy.coeffs().iter().zip(yx.coeffs()).zip(direct.coeffs()) {
            assert!((a - b).norm() <= 1e-15 * scale);
            assert!((a - c).norm() <= 1e-15 * scale);
        }
    }

    #[test]
    fn seminorm_of_sine() {
        let l = TAU;
        let grid = Grid::line(128, l).unwrap();
        let u = RealField::from_fn(grid, |x, _| (TAU * x / l).sin()).forward_transform();
        // J_0 = integral of sin^2 = L/2; J_1 = (2 pi / L)^2 L/2
        assert!(rel_close(u.sobolev_seminorm(0.0), l / 2.0, 1e-13));
        assert!(rel_close(
            u.sobolev_seminorm(1.0),
            (TAU / l).powi(2) * l / 2.0,
            1e-13
        ));
    }

    #[test]
    fn seminorm_matches_quadrature() {
        // J_1 against the physical-space quadrature of integral (u_x)^2 dx.
        let l = 2.0;
        let grid = Grid::line(64, l).unwrap();
        let u = random_field_banded(grid, 9, 1.0, 2.0, 16.0).unwrap();
        let ux = u.partial_derivative(&[1]).unwrap();
        let samples = ux.inverse_transform().unwrap();
        let quad: f64 =
            samples.samples().iter().map(|v| v * v).sum::<f64>() * l / 64.0;
        assert!(rel_close(u.sobolev_seminorm(1.0), quad, 1e-10));
    }

    #[test]
    fn product_of_constants() {
        let grid = Grid::square(8, 1.0).unwrap();
        let a = SpectralField::constant(grid, 3.0);
        let b = SpectralField::constant(grid, -0.5);
        let p = dealiased_product(&[&a, &b], 2.0).unwrap();
        assert!((p.coeff(&[0, 0]).re + 1.5).abs() < 1e-14);
        assert!(p.coeffs().iter().skip(1).all(|c| c.norm() < 1e-14));
    }

    #[test]
    fn squared_sine_double_angle() {
        // (sin kx)^2 = 1/2 - cos(2kx)/2
        let l = TAU;
        let grid = Grid::line(32, l).unwrap();
        let k = 3;
        let u = RealField::from_fn(grid, |x, _| (k as f64 * TAU * x / l).sin()).forward_transform();
        let p = dealiased_product(&[&u, &u], 2.0).unwrap();
        assert!((p.coeff(&[0]).re - 0.5).abs() < 1e-14);
        assert!((p.coeff(&[2 * k]).re + 0.25).abs() < 1e-14);
        assert!((p.coeff(&[-2 * k]).re + 0.25).abs() < 1e-14);
        let rest: f64 = p
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(i, _)| {
                let m = grid.mode_of(*i)[0];
                m != 0 && m != 2 * k && m != -2 * k
            })
            .map(|(_, c)| c.norm())
            .sum();
        assert!(rest < 1e-13);
    }

    #[test]
    fn cube_matches_coefficient_convolution() {
        // Direct convolution of coefficient triples on a 3-mode field.
        let grid = Grid::line(32, 1.0).unwrap();
        let mut u = SpectralField::zeros(grid);
        let entries: [(i64, Complex64); 3] = [
            (1, Complex64::new(0.3, -0.2)),
            (2, Complex64::new(-0.1, 0.05)),
            (3, Complex64::new(0.07, 0.11)),
        ];
        for (k, c) in entries {
            u.set_coeff(&[k], c);
            u.set_coeff(&[-k], c.conj());
        }
        let cube = dealiased_product(&[&u, &u, &u], 2.0).unwrap();

        let coeff = |k: i64| -> Complex64 {
            if k == 0 {
                return Complex64::new(0.0, 0.0);
            }
            entries
                .iter()
                .find_map(|&(m, c)| {
                    if m == k {
                        Some(c)
                    } else if m == -k {
                        Some(c.conj())
                    } else {
                        None
                    }
                })
                .unwrap_or(Complex64::new(0.0, 0.0))
        };
        for k in -9..=9i64 {
            let mut expect = Complex64::new(0.0, 0.0);
            for a in -3..=3i64 {
                for b in -3..=3i64 {
                    expect += coeff(a) * coeff(b) * coeff(k - a - b);
                }
            }
            let got = if k.unsigned_abs() as usize <= 16 {
                cube.coeff(&[k])
            } else {
                Complex64::new(0.0, 0.0)
            };
            assert!(
                (got - expect).norm() <= 1e-12,
                "mode {k}: {got} vs {expect}"
            );
        }
    }

    #[test]
    fn product_rejects_mismatched_grids() {
        let a = SpectralField::constant(Grid::line(16, 1.0).unwrap(), 1.0);
        let b = SpectralField::constant(Grid::line(32, 1.0).unwrap(), 1.0);
        assert!(matches!(
            dealiased_product(&[&a, &b], 2.0),
            Err(Error::GridMismatch)
        ));
    }

    #[test]
    fn product_rejects_small_cutoff() {
        let grid = Grid::line(16, 1.0).unwrap();
        let a = SpectralField::constant(grid, 1.0);
        assert!(matches!(
            dealiased_product(&[&a, &a, &a], 1.5),
            Err(Error::CutoffTooSmall { .. })
        ));
    }

    #[test]
    fn sup_norm_of_constant_and_sine() {
        let grid = Grid::line(64, TAU).unwrap();
        let c = SpectralField::constant(grid, -4.2);
        for refine in [1, 2, 4, 8] {
            assert!((c.sup_norm_estimate(refine) - 4.2).abs() < 1e-14);
        }
        let u = RealField::from_fn(grid, |x, _| x.sin()).forward_transform();
        assert!((u.sup_norm_estimate(4) - 1.0).abs() < 1e-6);
    }

    #[test]
    fn sup_norm_monotone_in_refinement() {
        let grid = Grid::line(32, 1.0).unwrap();
        for seed in 0..20 {
            let u = random_field(grid, seed, 1.0, 1.5).unwrap();
            let coarse = u.sup_norm_estimate(1);
            let fine = u.sup_norm_estimate(8);
            assert!(fine >= coarse - 1e-13);
        }
    }

    #[test]
    fn random_field_band_limit_ratio() {
        // decay 3, N = 64: J_2/J_0 is finite and below the extreme
        // multiplier (2 pi N / (2 L))^4 attained at the band edge.
        let l = TAU;
        let grid = Grid::line(64, l).unwrap();
        let u = random_field(grid, 17, 1.0, 3.0).unwrap();
        let ratio = u.sobolev_seminorm(2.0) / u.sobolev_seminorm(0.0);
        assert!(ratio.is_finite());
        assert!(ratio < (TAU * 64.0 / (2.0 * l)).powi(4));
    }
}
