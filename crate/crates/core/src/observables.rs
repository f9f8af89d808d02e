//! Trajectory statistics: seminorm/sup-norm/crest time series, tail
//! statistics (limsup estimate and trapezoid time average) and log-log
//! power-law fits.

use crate::error::{Error, Result};
use crate::field::SpectralField;

/// Zero-padding refinement used for the sup-norm column.
pub const SUP_REFINE: usize = 4;

/// One sample of every tracked observable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObservableRow {
    pub t: f64,
    /// `J_0 .. J_4`.
    pub j: [f64; 5],
    /// Refined sup-norm estimate.
    pub sup_norm: f64,
    /// Spatial average `u*`.
    pub mean: f64,
    /// Fluctuation energy `J_0' = J_0 - L^d (u*)^2`.
    pub j0_prime: f64,
    /// Crest factor `L^(d/2) ||u||_inf / J_0^(1/2)`; NaN when `J_0 = 0`.
    pub crest: f64,
}

/// Time-ordered record of [`ObservableRow`]s.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ObservableSeries {
    rows: Vec<ObservableRow>,
}

impl ObservableSeries {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, row: ObservableRow) {
        if let Some(last) = self.rows.last() {
            assert!(row.t > last.t, "observable samples must be time-ordered");
        }
        self.rows.push(row);
    }

    pub fn rows(&self) -> &[ObservableRow] {
        &self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    fn tail(&self, transient: f64) -> &[ObservableRow] {
        let start = self.rows.partition_point(|r| r.t < transient - 1e-12);
        &self.rows[start..]
    }
}

/// Compute one observable row from the spectral state at time `t`:
/// `J_0..J_4` via Parseval, the refined sup-norm estimate, the spatial
/// average, the fluctuation energy and the crest factor.
pub fn record(u_hat: &SpectralField, t: f64) -> ObservableRow {
    let grid = u_hat.grid();
    let j = [
        u_hat.sobolev_seminorm(0.0),
        u_hat.sobolev_seminorm(1.0),
        u_hat.sobolev_seminorm(2.0),
        u_hat.sobolev_seminorm(3.0),
        u_hat.sobolev_seminorm(4.0),
    ];
    let sup_norm = u_hat.sup_norm_estimate(SUP_REFINE);
    let mean = u_hat.mean();
    let volume = grid.length().powi(grid.dim().axes() as i32);
    let j0_prime = (j[0] - volume * mean * mean).max(0.0);
    let crest = if j[0] > 0.0 {
        volume.sqrt() * sup_norm / j[0].sqrt()
    } else {
        f64::NAN
    };
    ObservableRow {
        t,
        j,
        sup_norm,
        mean,
        j0_prime,
        crest,
    }
}

/// Limsup estimate (max over the tail window) and trapezoid time average
/// of one observable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailStat {
    pub limsup_estimate: f64,
    pub time_average: f64,
}

/// Tail statistics for every tracked observable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailStatistics {
    pub j: [TailStat; 5],
    pub sup_norm: TailStat,
    pub mean: TailStat,
    pub j0_prime: TailStat,
    pub crest: TailStat,
    /// Number of samples in the tail window.
    pub samples: usize,
}

/// Minimum number of post-transient samples required by [`tail_stats`].
pub const MIN_TAIL_SAMPLES: usize = 10;

fn stat_of(tail: &[ObservableRow], f: impl Fn(&ObservableRow) -> f64) -> TailStat {
    let limsup = tail.iter().map(&f).fold(f64::NEG_INFINITY, f64::max);
    let mut weighted = 0.0;
    for pair in tail.windows(2) {
        weighted += 0.5 * (f(&pair[0]) + f(&pair[1])) * (pair[1].t - pair[0].t);
    }
    let span = tail.last().unwrap().t - tail.first().unwrap().t;
    let average = if span > 0.0 { weighted / span } else { f(&tail[0]) };
    TailStat {
        limsup_estimate: limsup,
        time_average: average,
    }
}

/// Tail statistics over the samples with `t >= transient`.
pub fn tail_stats(series: &ObservableSeries, transient: f64) -> Result<TailStatistics> {
    let tail = series.tail(transient);
    if tail.len() < MIN_TAIL_SAMPLES {
        return Err(Error::InsufficientTail {
            needed: MIN_TAIL_SAMPLES,
            got: tail.len(),
        });
    }
    Ok(TailStatistics {
        j: [
            stat_of(tail, |r| r.j[0]),
            stat_of(tail, |r| r.j[1]),
            stat_of(tail, |r| r.j[2]),
            stat_of(tail, |r| r.j[3]),
            stat_of(tail, |r| r.j[4]),
        ],
        sup_norm: stat_of(tail, |r| r.sup_norm),
        mean: stat_of(tail, |r| r.mean),
        j0_prime: stat_of(tail, |r| r.j0_prime),
        crest: stat_of(tail, |r| r.crest),
        samples: tail.len(),
    })
}

/// Trapezoid time average of the crest column over the tail. Errors on the
/// first tail sample with zero energy, naming its time.
pub fn crest_time_average(series: &ObservableSeries, transient: f64) -> Result<f64> {
    let tail = series.tail(transient);
    if tail.len() < MIN_TAIL_SAMPLES {
        return Err(Error::InsufficientTail {
            needed: MIN_TAIL_SAMPLES,
            got: tail.len(),
        });
    }
    if let Some(bad) = tail.iter().find(|r| !(r.j[0] > 0.0) || !r.crest.is_finite()) {
        return Err(Error::ZeroEnergySample { t: bad.t });
    }
    Ok(stat_of(tail, |r| r.crest).time_average)
}

/// Least-squares power-law fit `y = prefactor * x^exponent` in log-log
/// coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawFit {
    pub exponent: f64,
    pub prefactor: f64,
    pub r_squared: f64,
}

/// Fit a power law through `>= 3` strictly positive points.
pub fn fit_power_law(xs: &[f64], ys: &[f64]) -> Result<PowerLawFit> {
    if xs.len() != ys.len() {
        return Err(Error::LengthMismatch {
            expected: xs.len(),
            got: ys.len(),
        });
    }
    if xs.len() < 3 {
        return Err(Error::param(
            "points",
            format!("need >= 3 points, got {}", xs.len()),
        ));
    }
    if xs.iter().chain(ys).any(|&v| !(v > 0.0) || !v.is_finite()) {
        return Err(Error::param(
            "points",
            "power-law fit requires strictly positive finite data".to_string(),
        ));
    }
    let lx: Vec<f64> = xs.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    if sxx == 0.0 {
        return Err(Error::param(
            "points",
            "all x values coincide; exponent is undetermined".to_string(),
        ));
    }
    let exponent = sxy / sxx;
    let intercept = my - exponent * mx;
    let ss_res: f64 = lx
        .iter()
        .zip(&ly)
        .map(|(a, b)| {
            let e = b - (exponent * a + intercept);
            e * e
        })
        .sum();
    let ss_tot: f64 = ly.iter().map(|b| (b - my) * (b - my)).sum();
    let r_squared = if ss_tot == 0.0 { 1.0 } else { 1.0 - ss_res / ss_tot };
    Ok(PowerLawFit {
        exponent,
        prefactor: intercept.exp(),
        r_squared,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds;
    use crate::field::RealField;
    use crate::grid::{Dim, Grid};
    use std::f64::consts::TAU;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / a.abs().max(b.abs())
    }

    #[test]
    fn constant_field_has_unit_crest() {
        for grid in [Grid::line(32, 2.0).unwrap(), Grid::square(16, 3.0).unwrap()] {
            let u = SpectralField::constant(grid, 1.7);
            let row = record(&u, 0.0);
            assert!(rel(row.crest, 1.0) < 1e-12);
            assert!(row.j0_prime.abs() < 1e-12);
            assert!(rel(row.mean, 1.7) < 1e-14);
        }
    }

    #[test]
    fn sine_crest_is_sqrt_two() {
        let l = TAU;
        let grid = Grid::line(128, l).unwrap();
        let u = RealField::from_fn(grid, |x, _| (TAU * x / l).sin()).forward_transform();
        let row = record(&u, 0.0);
        // sup 1, J_0 = L/2, crest = L^(1/2) / (L/2)^(1/2) = sqrt(2)
        assert!(rel(row.crest, 2.0f64.sqrt()) < 1e-9);
    }

    #[test]
    fn fluctuation_energy_ignores_the_mean() {
        let l = TAU;
        let grid = Grid::line(64, l).unwrap();
        for c in [0.0, -3.0, 42.0] {
            let u = RealField::from_fn(grid, |x, _| c + (TAU * x / l).sin()).forward_transform();
            let row = record(&u, 0.0);
            assert!(rel(row.j0_prime, l / 2.0) < 1e-12, "offset {c}");
            // decomposition J_0' + L^d (u*)^2 = J_0
            assert!(rel(row.j0_prime + l * row.mean * row.mean, row.j[0]) < 1e-10);
        }
    }

    #[test]
    fn mean_matches_quadrature() {
        let grid = Grid::square(16, 2.5).unwrap();
        let u = crate::field::random_field(grid, 3, 1.0, 2.0).unwrap();
        let row = record(&u, 0.0);
        let phys = u.inverse_transform().unwrap();
        let quad = phys.samples().iter().sum::<f64>() / phys.samples().len() as f64;
        assert!((row.mean - quad).abs() < 1e-12);
    }

    fn constant_series(value: f64, n: usize) -> ObservableSeries {
        let mut s = ObservableSeries::new();
        for i in 0..n {
            s.push(ObservableRow {
                t: i as f64,
                j: [value; 5],
                sup_norm: value,
                mean: value,
                j0_prime: value,
                crest: value,
            });
        }
        s
    }

    #[test]
    fn tail_of_constant_series() {
        let s = constant_series(2.5, 30);
        let stats = tail_stats(&s, 10.0).unwrap();
        assert_eq!(stats.samples, 20);
        assert!(rel(stats.j[0].limsup_estimate, 2.5) < 1e-15);
        assert!(rel(stats.j[0].time_average, 2.5) < 1e-15);
        assert!(rel(crest_time_average(&s, 10.0).unwrap(), 2.5) < 1e-15);
    }

    #[test]
    fn oscillation_averages_out() {
        let mut s = ObservableSeries::new();
        let dt = 0.01;
        for i in 0..=62_832 {
            let t = i as f64 * dt;
            let v = t.sin();
            s.push(ObservableRow {
                t,
                j: [1.0 + v, 0.0, 0.0, 0.0, 0.0],
                sup_norm: v,
                mean: v,
                j0_prime: 0.0,
                crest: 1.0,
            });
        }
        let stats = tail_stats(&s, 0.0).unwrap();
        assert!(stats.mean.time_average.abs() < 0.05);
        assert!(stats.j[0].limsup_estimate >= stats.j[0].time_average);
    }

    #[test]
    fn insufficient_tail_is_rejected() {
        let s = constant_series(1.0, 12);
        assert!(matches!(
            tail_stats(&s, 5.0),
            Err(Error::InsufficientTail { got: 7, .. })
        ));
    }

    #[test]
    fn zero_energy_sample_is_named() {
        let mut s = constant_series(1.0, 15);
        s.push(ObservableRow {
            t: 15.0,
            j: [0.0; 5],
            sup_norm: 0.0,
            mean: 0.0,
            j0_prime: 0.0,
            crest: f64::NAN,
        });
        match crest_time_average(&s, 0.0) {
            Err(Error::ZeroEnergySample { t }) => assert_eq!(t, 15.0),
            other => panic!("expected zero-energy error, got {other:?}"),
        }
    }

    #[test]
    fn exact_power_laws_are_recovered() {
        let xs: Vec<f64> = (1..=20).map(|i| i as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|x| x.powf(0.125)).collect();
        let fit = fit_power_law(&xs, &ys).unwrap();
        assert!((fit.exponent - 0.125).abs() < 1e-12);
        assert!((fit.r_squared - 1.0).abs() < 1e-12);

        let ys: Vec<f64> = xs.iter().map(|x| 3.0 * x.powf(0.375)).collect();
        let fit = fit_power_law(&xs, &ys).unwrap();
        assert!((fit.exponent - 0.375).abs() < 1e-12);
        assert!((fit.prefactor - 3.0).abs() < 1e-12);
    }

    #[test]
    fn crest_bound_scaling_in_lambda() {
        // The 1D crest bound minus one has exponent 1/8 only
        // asymptotically; over lambda in {10..1e4} the fit sits just
        // below it.
        let lambdas = [10.0, 100.0, 1000.0, 10000.0];
        let ys: Vec<f64> = lambdas
            .iter()
            .map(|&l| bounds::bound_crest_avg(Dim::One, l, TAU).unwrap() - 1.0)
            .collect();
        let fit = fit_power_law(&lambdas, &ys).unwrap();
        assert!(fit.exponent >= 0.115 && fit.exponent <= 0.125, "{}", fit.exponent);
    }

    #[test]
    fn fit_rejects_bad_input() {
        assert!(fit_power_law(&[1.0, 2.0], &[1.0, 2.0]).is_err());
        assert!(fit_power_law(&[1.0, 2.0, -3.0], &[1.0, 2.0, 3.0]).is_err());
        assert!(fit_power_law(&[1.0, 2.0, 3.0], &[1.0, 0.0, 3.0]).is_err());
    }
}
