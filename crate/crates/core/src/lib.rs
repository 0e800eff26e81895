//! Multi-parameter random simplicial complexes.
//!
//! The random complex `Y_r(n, p)` lives inside the `r`-skeleton of the simplex on `n` vertices.
//! It is built level by level: each vertex is kept with probability `p_0`, then every `i`-simplex
//! whose whole boundary is present is kept independently with probability `p_i`.
//!
//! This crate is `no_std` (it needs `alloc`) and contains the algorithmic parts:
//!
//! - [`complex`]: immutable abstract simplicial complexes, external faces, induced subcomplexes.
//! - [`embed`]: backtracking search for copies of a fixed complex inside another.
//! - [`measure`]: exact evaluation of the measure, sandwich probabilities, brute-force
//!   normalization and the Gibbs parametrization.
//! - [`sampler`]: reproducible sampling with a counter-derived generator per trial.
//! - [`density`]: density invariants, density domains, balancedness.
//! - [`prediction`]: containment and dimension verdicts for exponent vectors `p_i = n^{-α_i}`.
//! - [`catalog`]: the small named complexes used throughout docs and tests.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod catalog;
pub mod complex;
pub mod density;
pub mod embed;
mod error;
pub mod measure;
pub mod prediction;
pub mod rational;
pub mod sampler;

pub use complex::{AmbientContext, Complex, FaceVector, Vertex};
pub use error::{Error, Result};
pub use rational::Rational;
