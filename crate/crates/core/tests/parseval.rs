//! Parseval consistency: the spectral seminorm sum against physical-space
//! quadrature of the defining integral, including the multinomial weights
//! over mixed partials. The quadrature path evaluates derivatives on a
//! refined collocation grid and integrates by the rectangle rule, fully
//! independent of the `|k|^(2s)` sum it checks.

use mkse_core::{random_field_banded, Dim, Grid, SpectralField};

fn binomial(n: u32, k: u32) -> f64 {
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// Rectangle-rule integral of `(D^order u)^2` on a doubly refined grid.
fn quadrature_term(u: &SpectralField, order: &[u32]) -> f64 {
    let grid = u.grid();
    let refined = grid.points_per_axis() * 2;
    let derivative = u.partial_derivative(order).unwrap();
    let samples = derivative
        .pad_to(refined)
        .inverse_transform()
        .unwrap();
    let volume = grid.length().powi(grid.dim().axes() as i32);
    let cell = volume / samples.samples().len() as f64;
    samples.samples().iter().map(|v| v * v).sum::<f64>() * cell
}

/// `sum_{|n| = s} s!/(n_1! n_2!) * integral (D^n u)^2`.
fn quadrature_seminorm(u: &SpectralField, s: u32) -> f64 {
    match u.grid().dim() {
        Dim::One => quadrature_term(u, &[s]),
        Dim::Two => (0..=s)
            .map(|i| binomial(s, i) * quadrature_term(u, &[s - i, i]))
            .sum(),
    }
}

fn run_dimension(grid: Grid, seeds: std::ops::Range<u64>) {
    let band = grid.points_per_axis() as f64 / 4.0;
    for seed in seeds {
        let u = random_field_banded(grid, seed, 1.0, 2.0, band).unwrap();
        for s in 0u32..=4 {
            let spectral = u.sobolev_seminorm(s as f64);
            let quad = quadrature_seminorm(&u, s);
            let err = (spectral - quad).abs() / spectral.abs().max(quad.abs());
            assert!(
                err <= 1e-10,
                "seed {seed}, s = {s}: spectral {spectral} vs quadrature {quad} (rel {err:.2e})"
            );
        }
    }
}

#[test]
fn seminorms_match_quadrature_1d() {
    run_dimension(Grid::line(64, 2.7).unwrap(), 0..100);
}

#[test]
fn seminorms_match_quadrature_2d() {
    run_dimension(Grid::square(32, 1.9).unwrap(), 0..100);
}

#[test]
fn mean_component_is_ignored_for_positive_s() {
    // Adding a constant changes J_0 but none of J_1..J_4.
    let grid = Grid::line(64, 3.0).unwrap();
    let u = random_field_banded(grid, 5, 1.0, 2.0, 16.0).unwrap();
    let mut shifted = u.clone();
    shifted.set_coeff(&[0], mkse_core::Complex64::new(7.5, 0.0));
    for s in 1..=4 {
        let a = u.sobolev_seminorm(s as f64);
        let b = shifted.sobolev_seminorm(s as f64);
        assert!((a - b).abs() <= 1e-12 * a);
    }
    assert!(shifted.sobolev_seminorm(0.0) > u.sobolev_seminorm(0.0));
}
