//! File formats, Monte Carlo experiments and the command-line tool for random simplicial
//! complexes. The algorithms live in [`randcx_core`], re-exported here as [`core`].

pub mod cli;
pub mod corpus;
pub mod error;
pub mod experiment;
pub mod format;

pub use error::{Error, Result};
pub use randcx_core as core;

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 1;
