//! Discretization of the periodic torus `[0, L]^d`, d = 1, 2.

use crate::error::{Error, Result};
use std::f64::consts::TAU;

/// Spatial dimension of the torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dim {
    One,
    Two,
}

impl Dim {
    /// Number of axes (1 or 2).
    pub fn axes(self) -> usize {
        match self {
            Dim::One => 1,
            Dim::Two => 2,
        }
    }
}

impl std::fmt::Display for Dim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.axes())
    }
}

/// Uniform collocation grid on the torus `[0, L]^d` with `N` points per axis.
///
/// Integer mode `k` carries the physical wavenumber `(2*pi/L) * k` on each
/// axis. `N` must be a power of two, at least 8.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    dim: Dim,
    points: usize,
    length: f64,
}

impl Grid {
    /// Grid on the 1D torus `[0, L]`.
    pub fn line(points: usize, length: f64) -> Result<Self> {
        Self::new(Dim::One, points, length)
    }

    /// Grid on the 2D torus `[0, L]^2`.
    pub fn square(points: usize, length: f64) -> Result<Self> {
        Self::new(Dim::Two, points, length)
    }

    pub fn new(dim: Dim, points: usize, length: f64) -> Result<Self> {
        if points < 8 || !points.is_power_of_two() {
            return Err(Error::InvalidResolution(points));
        }
        if !(length > 0.0) || !length.is_finite() {
            return Err(Error::InvalidLength(length));
        }
        Ok(Grid {
            dim,
            points,
            length,
        })
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    /// Points per axis.
    pub fn points_per_axis(&self) -> usize {
        self.points
    }

    /// Torus side length L.
    pub fn length(&self) -> f64 {
        self.length
    }

    /// Total number of collocation points, `N^d`.
    pub fn total_points(&self) -> usize {
        match self.dim {
            Dim::One => self.points,
            Dim::Two => self.points * self.points,
        }
    }

    /// Fundamental wavenumber `2*pi/L`.
    pub fn wavenumber_step(&self) -> f64 {
        TAU / self.length
    }

    /// Integer mode vector of the linear coefficient index, in
    /// `[-N/2+1, N/2]` per axis. The second component is 0 in 1D.
    pub fn mode_of(&self, index: usize) -> [i64; 2] {
        let n = self.points;
        debug_assert!(index < self.total_points());
        match self.dim {
            Dim::One => [unfold(index, n), 0],
            Dim::Two => [unfold(index / n, n), unfold(index % n, n)],
        }
    }

    /// Linear coefficient index of an integer mode vector (wrapped mod N).
    pub fn index_of(&self, mode: [i64; 2]) -> usize {
        let n = self.points as i64;
        let wrap = |k: i64| (k.rem_euclid(n)) as usize;
        match self.dim {
            Dim::One => wrap(mode[0]),
            Dim::Two => wrap(mode[0]) * self.points + wrap(mode[1]),
        }
    }

    /// Squared Euclidean norm `|k|^2` of the mode at `index`.
    pub fn mode_norm_squared(&self, index: usize) -> f64 {
        let [a, b] = self.mode_of(index);
        (a * a + b * b) as f64
    }

    /// Unchecked construction for internal padded grids (any even size).
    pub(crate) fn with_points(&self, points: usize) -> Grid {
        Grid {
            dim: self.dim,
            points,
            length: self.length,
        }
    }
}

fn unfold(index: usize, n: usize) -> i64 {
    if index <= n / 2 {
        index as i64
    } else {
        index as i64 - n as i64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_resolution() {
        assert!(matches!(Grid::line(7, 1.0), Err(Error::InvalidResolution(7))));
        assert!(matches!(Grid::line(12, 1.0), Err(Error::InvalidResolution(12))));
        assert!(matches!(Grid::line(4, 1.0), Err(Error::InvalidResolution(4))));
        assert!(Grid::line(8, 1.0).is_ok());
        assert!(Grid::square(64, 1.0).is_ok());
    }

    #[test]
    fn rejects_bad_length() {
        assert!(matches!(Grid::line(8, 0.0), Err(Error::InvalidLength(_))));
        assert!(matches!(Grid::line(8, -1.0), Err(Error::InvalidLength(_))));
        assert!(matches!(
            Grid::line(8, f64::INFINITY),
            Err(Error::InvalidLength(_))
        ));
    }

    #[test]
    fn mode_index_round_trip() {
        let g = Grid::square(16, 2.0).unwrap();
        for idx in 0..g.total_points() {
            let m = g.mode_of(idx);
            assert_eq!(g.index_of(m), idx);
            assert!(m[0] >= -7 && m[0] <= 8);
            assert!(m[1] >= -7 && m[1] <= 8);
        }
    }

    #[test]
    fn mode_range_1d() {
        let g = Grid::line(8, 1.0).unwrap();
        let modes: Vec<i64> = (0..8).map(|i| g.mode_of(i)[0]).collect();
        assert_eq!(modes, vec![0, 1, 2, 3, 4, -3, -2, -1]);
    }
}
