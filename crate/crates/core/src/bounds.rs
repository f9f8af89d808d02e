//! Closed-form time-asymptotic bounds for the modified
//! Kuramoto-Sivashinsky equation as functions of `(d, lambda, L)`.
//!
//! All formulas assume `lambda > 0` and `L > 0` and are evaluated in
//! double precision; the regression tests pin values that were produced
//! independently with >= 30-digit arithmetic.

use crate::error::{Error, Result};
use crate::grid::Dim;
use std::f64::consts::PI;

/// Catalan constant, 20 digits.
pub const CATALAN: f64 = 0.91596559417721901505;

/// Riemann zeta function for real `s > 1`, via the alternating eta series
/// with Euler acceleration.
pub fn zeta(s: f64) -> Result<f64> {
    if !(s > 1.0) {
        return Err(Error::param("s", format!("zeta requires s > 1, got {s}")));
    }
    let eta = euler_alternating_sum(|k| ((k + 1) as f64).powf(-s));
    Ok(eta / (1.0 - (2.0f64).powf(1.0 - s)))
}

/// Dirichlet beta function for real `s > 0`, by Euler-accelerated
/// summation of its defining alternating series.
pub fn dirichlet_beta(s: f64) -> Result<f64> {
    if !(s > 0.0) {
        return Err(Error::param("s", format!("beta requires s > 0, got {s}")));
    }
    Ok(euler_alternating_sum(|k| ((2 * k + 1) as f64).powf(-s)))
}

/// Sum of the alternating series `sum_{k>=0} (-1)^k a(k)` for positive,
/// eventually decreasing `a`: the head is summed directly and the tail is
/// Euler-transformed (`sum_n D^n a_head / 2^(n+1)` with `D a_k = a_k -
/// a_{k+1}`).
fn euler_alternating_sum(a: impl Fn(usize) -> f64) -> f64 {
    const HEAD: usize = 24;
    const DEPTH: usize = 48;
    let mut sum = 0.0;
    let mut sign = 1.0;
    for k in 0..HEAD {
        sum += sign * a(k);
        sign = -sign;
    }
    let mut diff: Vec<f64> = (0..DEPTH).map(|i| a(HEAD + i)).collect();
    let mut tail = diff[0] / 2.0;
    let mut scale = 4.0;
    for n in 1..DEPTH {
        for i in 0..DEPTH - n {
            diff[i] -= diff[i + 1];
        }
        tail += diff[0] / scale;
        scale *= 2.0;
    }
    sum + sign * tail
}

fn check_domain(lambda: f64, length: f64) -> Result<()> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::param(
            "lambda",
            format!("bounds are defined for lambda > 0, got {lambda}"),
        ));
    }
    if !(length > 0.0) || !length.is_finite() {
        return Err(Error::param(
            "length",
            format!("bounds are defined for L > 0, got {length}"),
        ));
    }
    Ok(())
}

/// Time-asymptotic bound on `J_0 = ||u||_2^2`: `L^d (lambda + 1/4)`.
pub fn bound_j0(dim: Dim, lambda: f64, length: f64) -> Result<f64> {
    check_domain(lambda, length)?;
    Ok(length.powi(dim.axes() as i32) * (lambda + 0.25))
}

/// Time-asymptotic bound on `J_1 = ||Du||_2^2`.
///
/// 1D: `sqrt((24 lambda + 13) / 11) * L (lambda + 1/4)`;
/// 2D: `[5/3 + (5/6) 4^(14/5) (6/pi)^(3/5)]^(1/3) * L^2 (lambda + 1/4)`.
pub fn bound_j1(dim: Dim, lambda: f64, length: f64) -> Result<f64> {
    let j0 = bound_j0(dim, lambda, length)?;
    let prefactor = match dim {
        Dim::One => ((24.0 * lambda + 13.0) / 11.0).sqrt(),
        Dim::Two => j1_prefactor_2d(),
    };
    Ok(prefactor * j0)
}

/// The 2D `J_1` prefactor `[5/3 + (5/6) 4^(14/5) (6/pi)^(3/5)]^(1/3)`.
fn j1_prefactor_2d() -> f64 {
    (5.0 / 3.0 + 5.0 / 6.0 * 4.0f64.powf(14.0 / 5.0) * (6.0 / PI).powf(3.0 / 5.0)).powf(1.0 / 3.0)
}

/// Time-asymptotic bound on `J_2` in 2D:
///
/// ```text
/// B0^(3/2) [108 + 4 lambda^2 + 108 (5/sqrt(pi))^4 B0^2
///           + 108 (78/pi)^4 B0^4]^(1/2),   B0 = L^2 (lambda + 1/4)
/// ```
pub fn bound_j2_2d(lambda: f64, length: f64) -> Result<f64> {
    let b0 = bound_j0(Dim::Two, lambda, length)?;
    let bracket = 108.0 + 4.0 * lambda * lambda
        + 108.0 * (5.0 / PI.sqrt()).powi(4) * b0.powi(2)
        + 108.0 * (78.0 / PI).powi(4) * b0.powi(4);
    Ok(b0.powf(1.5) * bracket.sqrt())
}

/// Time-asymptotic bound on the sup-norm.
///
/// 1D: `[L pi/24 (4 lambda + 1) sqrt((24 lambda + 13)/11)]^(1/2)
///      + sqrt(4 lambda + 1)/2`.
/// 2D: `(L / 2 pi^3) sqrt(6 K) * bound_j2^(1/2) + bound_j0^(1/2) / L`
/// with `K` the Catalan constant.
pub fn bound_sup(dim: Dim, lambda: f64, length: f64) -> Result<f64> {
    check_domain(lambda, length)?;
    match dim {
        Dim::One => {
            let first = (length * PI / 24.0
                * (4.0 * lambda + 1.0)
                * ((24.0 * lambda + 13.0) / 11.0).sqrt())
            .sqrt();
            Ok(first + (4.0 * lambda + 1.0).sqrt() / 2.0)
        }
        Dim::Two => {
            let j2 = bound_j2_2d(lambda, length)?;
            let j0 = bound_j0(Dim::Two, lambda, length)?;
            Ok(length / (2.0 * PI.powi(3)) * (6.0 * CATALAN).sqrt() * j2.sqrt()
                + j0.sqrt() / length)
        }
    }
}

/// Bounds on the time averages `<J_1>`, `<J_2>`, `<J_3>` in 2D.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeAveragedBounds2d {
    pub j1: f64,
    pub j2: f64,
    pub j3: f64,
}

/// 2D time-average bounds:
///
/// ```text
/// <J_2> <= (2 lambda + 1) L^2 (lambda + 1/4)
/// <J_1> <= (2 lambda + 1)^(1/2) L^2 (lambda + 1/4)
/// <J_3> <= (2 lambda + 1)^(1/2) L^2 (lambda + 1/4)
///          * [lambda + (2 lambda + 1)^(1/2) (1 + sqrt(24/pi) L (lambda + 1/4)^(1/2))]
/// ```
pub fn bound_time_avg_2d(lambda: f64, length: f64) -> Result<TimeAveragedBounds2d> {
    let b0 = bound_j0(Dim::Two, lambda, length)?;
    let two_lp1 = 2.0 * lambda + 1.0;
    let j2 = two_lp1 * b0;
    let j1 = two_lp1.sqrt() * b0;
    let j3 = two_lp1.sqrt()
        * b0
        * (lambda + two_lp1.sqrt() * (1.0 + (24.0 / PI).sqrt() * length * (lambda + 0.25).sqrt()));
    Ok(TimeAveragedBounds2d { j1, j2, j3 })
}

/// Bound on the time-averaged crest factor, `1 +` the pure-distortion
/// bound.
///
/// 1D: `1 + L^(1/2) ((24 lambda + 13)/11)^(1/8)`.
/// 2D: `1 + (1/sqrt(pi)) L [(2 lambda + 1) + (156/pi) <J_1>
///      + (10/sqrt(pi)) <J_3>^(1/4) <J_1>^(1/4)]^(1/4)` with the
/// time-average bounds of [`bound_time_avg_2d`].
pub fn bound_crest_avg(dim: Dim, lambda: f64, length: f64) -> Result<f64> {
    check_domain(lambda, length)?;
    match dim {
        Dim::One => Ok(1.0 + length.sqrt() * ((24.0 * lambda + 13.0) / 11.0).powf(0.125)),
        Dim::Two => {
            let avg = bound_time_avg_2d(lambda, length)?;
            let bracket = (2.0 * lambda + 1.0)
                + 156.0 / PI * avg.j1
                + 10.0 / PI.sqrt() * avg.j3.powf(0.25) * avg.j1.powf(0.25);
            Ok(1.0 + length / PI.sqrt() * bracket.powf(0.25))
        }
    }
}

/// Every explicit bound for one `(d, lambda, L)`, with the 2D-only entries
/// absent in 1D.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundSet {
    pub dim: Dim,
    pub lambda: f64,
    pub length: f64,
    pub j0: f64,
    pub j1: f64,
    pub j2: Option<f64>,
    pub sup: f64,
    pub crest_avg: f64,
    pub j1_time_avg: Option<f64>,
    pub j2_time_avg: Option<f64>,
    pub j3_time_avg: Option<f64>,
}

pub fn bound_set(dim: Dim, lambda: f64, length: f64) -> Result<BoundSet> {
    let (j2, time_avg) = match dim {
        Dim::One => (None, None),
        Dim::Two => (
            Some(bound_j2_2d(lambda, length)?),
            Some(bound_time_avg_2d(lambda, length)?),
        ),
    };
    Ok(BoundSet {
        dim,
        lambda,
        length,
        j0: bound_j0(dim, lambda, length)?,
        j1: bound_j1(dim, lambda, length)?,
        j2,
        sup: bound_sup(dim, lambda, length)?,
        crest_avg: bound_crest_avg(dim, lambda, length)?,
        j1_time_avg: time_avg.map(|t| t.j1),
        j2_time_avg: time_avg.map(|t| t.j2),
        j3_time_avg: time_avg.map(|t| t.j3),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / a.abs().max(b.abs())
    }

    // Reference values computed independently with 50-digit arithmetic.
    const TOL: f64 = 1e-13;

    #[test]
    fn zeta_reference_values() {
        assert!(rel(zeta(2.0).unwrap(), PI * PI / 6.0) < TOL);
        assert!(rel(zeta(1.5).unwrap(), 2.6123753486854883) < TOL);
        assert!(rel(zeta(3.0).unwrap(), 1.2020569031595943) < TOL);
        assert!(zeta(1.0).is_err());
    }

    #[test]
    fn beta_reference_values() {
        assert!(rel(dirichlet_beta(2.0).unwrap(), CATALAN) < TOL);
        assert!(rel(dirichlet_beta(1.5).unwrap(), 0.8645026534612020) < TOL);
        assert!(rel(dirichlet_beta(3.0).unwrap(), 0.9689461462593694) < TOL);
        assert!(rel(dirichlet_beta(1.0).unwrap(), PI / 4.0) < TOL);
        assert!(dirichlet_beta(0.0).is_err());
    }

    #[test]
    fn catalan_product_identity() {
        // zeta(2) beta(2) = (pi^2/6) K, by series summation.
        let product = zeta(2.0).unwrap() * dirichlet_beta(2.0).unwrap();
        assert!(rel(product, PI * PI / 6.0 * CATALAN) < 1e-9);
        assert!(rel(product, 1.5067030099229850) < TOL);
    }

    #[test]
    fn j0_reference() {
        assert!(rel(bound_j0(Dim::One, 1.0, TAU).unwrap(), 7.853981633974483) < TOL);
        assert!(rel(bound_j0(Dim::Two, 1.0, TAU).unwrap(), 49.34802200544679) < TOL);
        // lambda -> 0+ tends to L/4
        assert!(rel(bound_j0(Dim::One, 1e-15, 8.0).unwrap(), 2.0) < 1e-12);
    }

    #[test]
    fn j1_reference() {
        assert!(rel(bound_j1(Dim::One, 1.0, TAU).unwrap(), 14.404374391614874) < TOL);
        assert!(rel(j1_prefactor_2d(), 3.9420523010787963) < TOL);
        assert!(rel(bound_j1(Dim::Two, 1.0, TAU).unwrap(), 194.53248370025861) < TOL);
    }

    #[test]
    fn j1_j0_ratio_identity() {
        for lambda in [0.3, 1.0, 7.5, 120.0] {
            for length in [1.0, TAU, 19.0] {
                let ratio = bound_j1(Dim::One, lambda, length).unwrap()
                    / bound_j0(Dim::One, lambda, length).unwrap();
                assert!(rel(ratio, ((24.0 * lambda + 13.0) / 11.0).sqrt()) < 1e-14);
            }
        }
    }

    #[test]
    fn j2_reference_and_dominance() {
        assert!(rel(bound_j2_2d(1.0, TAU).unwrap(), 5408109503.5743556) < TOL);
        // At lambda = 1e6 the quartic term dominates the bracket.
        let lambda = 1e6;
        let b0 = bound_j0(Dim::Two, lambda, TAU).unwrap();
        let dominant = b0.powf(1.5) * 108.0f64.sqrt() * (78.0 / PI).powi(2) * b0.powi(2);
        let ratio = bound_j2_2d(lambda, TAU).unwrap() / dominant;
        assert!(ratio > 0.99 && ratio < 1.01);
    }

    #[test]
    fn sup_reference() {
        assert!(rel(bound_sup(Dim::One, 1.0, TAU).unwrap(), 3.8643247225778047) < TOL);
        assert!(rel(bound_sup(Dim::Two, 1.0, TAU).unwrap(), 17468.917542573509) < TOL);
        // lambda -> 0+ stays positive and finite.
        let small = bound_sup(Dim::One, 1e-12, TAU).unwrap();
        assert!(small.is_finite() && small > 0.0);
        assert!(rel(small, 1.4455770358675106) < 1e-9);
    }

    #[test]
    fn time_avg_reference() {
        let avg = bound_time_avg_2d(1.0, TAU).unwrap();
        assert!(rel(avg.j1, 85.473281366460846) < TOL);
        assert!(rel(avg.j2, 148.04406601634038) < TOL);
        assert!(rel(avg.j3, 3107.9792951571320) < TOL);
    }

    #[test]
    fn time_avg_cauchy_schwarz_chain() {
        // <J_1>^2 <= <J_2> * J0bar, mirroring the averaging chain that
        // produced the bounds.
        let mut state = 0x243f6a8885a308d3u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..300 {
            let lambda = 0.01 + 100.0 * next();
            let length = 0.5 + 50.0 * next();
            let avg = bound_time_avg_2d(lambda, length).unwrap();
            let j0 = bound_j0(Dim::Two, lambda, length).unwrap();
            assert!(avg.j1 * avg.j1 <= avg.j2 * j0 * (1.0 + 1e-12));
        }
    }

    #[test]
    fn time_avg_growth_orders() {
        // Fitted lambda-exponents of the three formulas over [1e2, 1e5]:
        // <J_1> ~ lambda^(3/2), <J_2> ~ lambda^2, <J_3> ~ lambda^(5/2).
        let lambdas = [1e2, 1e3, 1e4, 1e5];
        let fit = |extract: fn(&TimeAveragedBounds2d) -> f64| {
            let ys: Vec<f64> = lambdas
                .iter()
                .map(|&l| extract(&bound_time_avg_2d(l, TAU).unwrap()))
                .collect();
            crate::observables::fit_power_law(&lambdas, &ys)
                .unwrap()
                .exponent
        };
        assert!((fit(|t| t.j1) - 1.5).abs() <= 0.01);
        assert!((fit(|t| t.j2) - 2.0).abs() <= 0.01);
        assert!((fit(|t| t.j3) - 2.5).abs() <= 0.01);
    }

    #[test]
    fn crest_reference() {
        assert!(rel(bound_crest_avg(Dim::One, 1.0, TAU).unwrap(), 3.9170311312646961) < TOL);
        assert!(rel(bound_crest_avg(Dim::Two, 1.0, TAU).unwrap(), 29.830939424246237) < TOL);
    }

    #[test]
    fn bounds_monotone_in_lambda() {
        for dim in [Dim::One, Dim::Two] {
            let mut last = bound_set(dim, 0.05, TAU).unwrap();
            let mut lambda = 0.1;
            while lambda <= 1e6 {
                let cur = bound_set(dim, lambda, TAU).unwrap();
                assert!(cur.j0 >= last.j0);
                assert!(cur.j1 >= last.j1);
                assert!(cur.sup >= last.sup);
                assert!(cur.crest_avg >= last.crest_avg);
                if let (Some(a), Some(b)) = (cur.j2, last.j2) {
                    assert!(a >= b);
                }
                last = cur;
                lambda *= 2.0;
            }
        }
    }

    #[test]
    fn bounds_positive_finite() {
        for dim in [Dim::One, Dim::Two] {
            for lambda in [1e-6, 0.5, 1.0, 1e3, 1e6] {
                let set = bound_set(dim, lambda, TAU).unwrap();
                for v in [set.j0, set.j1, set.sup, set.crest_avg] {
                    assert!(v.is_finite() && v > 0.0, "dim {dim} lambda {lambda}");
                }
            }
        }
    }

    #[test]
    fn rejects_nonpositive_domain() {
        assert!(bound_j0(Dim::One, 0.0, 1.0).is_err());
        assert!(bound_j0(Dim::One, -1.0, 1.0).is_err());
        assert!(bound_j0(Dim::One, 1.0, 0.0).is_err());
        assert!(bound_crest_avg(Dim::Two, f64::NAN, 1.0).is_err());
    }
}
