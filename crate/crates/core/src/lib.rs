//! Standard-monomial staircases of lattice point sets and what they say
//! about Laurent polynomials vanishing to high order at `(1, ..., 1)`.
//!
//! The modules build on each other bottom-up:
//!
//! * [`linalg`]: exact rationals, rref, kernels, incremental independence.
//! * [`order`]: exponent vectors and monomial orders.
//! * [`staircase`]: `E_A`, `sm(f)`, witnesses, convolution.
//! * [`geometry`]: lattice and rational polygons, Minkowski sums, mixed
//!   volumes, unimodular normal forms, polygon enumeration.
//! * [`limit`]: dilate experiments and exact brackets of the limit body.
//! * [`atlas`]: large irreducible functions and their Newton polygons.
//! * [`checks`]: seeded property suites behind `staircase check`.

pub mod atlas;
pub mod checks;
pub mod error;
pub mod geometry;
pub mod limit;
pub mod linalg;
pub mod order;
pub mod staircase;

pub use error::{Error, Result};
