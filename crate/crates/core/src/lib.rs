//! Pseudo-spectral toolkit for the modified Kuramoto-Sivashinsky equation
//!
//! ```text
//! u_t = -Lap^2 u - Lap u + lambda u - u^3 - u (u_x + u_y)
//! ```
//!
//! on the periodic torus `[0, L]^d`, d = 1, 2 (the 1D form drops `u_y`).
//! The crate bundles:
//!
//! - [`grid`], [`field`], [`spectral`]: Fourier representation of real
//!   periodic fields, spectral differentiation, dealiased products and
//!   Sobolev seminorms via Parseval;
//! - [`dynamics`]: fourth-order exponential time differencing with the
//!   stiff linear part integrated exactly in Fourier space;
//! - [`observables`]: seminorm/sup-norm/crest-factor time series, tail
//!   statistics and log-log power-law fits;
//! - [`bounds`]: closed-form evaluation of the time-asymptotic bounds on
//!   `J_0`, `J_1`, `J_2`, the sup-norm and the time-averaged crest factor
//!   as functions of `(d, lambda, L)`;
//! - [`inequality`]: randomized verification of the functional
//!   inequalities those bounds rely on, with slack tracking and
//!   near-extremizer search.

pub mod bounds;
pub mod dynamics;
pub mod error;
pub mod fft;
pub mod field;
pub mod grid;
pub mod inequality;
pub mod observables;
pub mod spectral;

pub use error::{Error, Result};
pub use field::{random_field, random_field_banded, random_field_zero_mean, RealField, SpectralField};
pub use grid::{Dim, Grid};
pub use spectral::dealiased_product;

pub use num_complex::Complex64;
