//! Self-convergence of the exponential time-differencing stepper on the
//! full nonlinear equation, by Richardson comparison of dt, dt/2, dt/4.
//!
//! The order is measured from a smoothed state: the random initial
//! spectrum decays only algebraically and its stiff transient provokes
//! genuine order reduction, so the trajectory is first advanced to t = 1
//! at the finest step before the comparison window starts.

use mkse_core::dynamics::{EtdStepper, Nonlinearity, TrajectoryState};
use mkse_core::{random_field, Grid, SpectralField};
use std::f64::consts::TAU;

fn advance(grid: Grid, lambda: f64, dt: f64, t_end: f64, from: SpectralField) -> SpectralField {
    let stepper = EtdStepper::new(grid, lambda, dt, Nonlinearity::Full);
    let mut state = TrajectoryState { t: 0.0, u_hat: from };
    let steps = (t_end / dt).round() as usize;
    for _ in 0..steps {
        state = stepper.step(&state).unwrap();
    }
    state.u_hat
}

fn l2_difference(a: &SpectralField, b: &SpectralField) -> f64 {
    a.coeffs()
        .iter()
        .zip(b.coeffs())
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

#[test]
fn nonlinear_step_is_fourth_order() {
    let grid = Grid::line(64, TAU).unwrap();
    let lambda = 1.0;
    let rough = random_field(grid, 0, 1.0, 3.0).unwrap();
    let warm = advance(grid, lambda, 0.005, 1.0, rough);

    let coarse = advance(grid, lambda, 0.02, 1.0, warm.clone());
    let medium = advance(grid, lambda, 0.01, 1.0, warm.clone());
    let fine = advance(grid, lambda, 0.005, 1.0, warm);
    let e1 = l2_difference(&coarse, &medium);
    let e2 = l2_difference(&medium, &fine);
    let order = (e1 / e2).log2();
    assert!(
        order >= 3.5,
        "observed order {order:.3} (errors {e1:.3e}, {e2:.3e})"
    );
}
