//! Independent numerical oracles for tests: adaptive quadrature,
//! finite differences and determinants. Nothing here calls into the
//! sampler crate.

// Gauss-Kronrod nodes are kept at their published precision.
#![allow(clippy::excessive_precision, clippy::needless_range_loop)]

pub mod fd;
pub mod linalg;
pub mod quad;
