//! Global asymptotics of Christoffel-Darboux kernels for unitary ensembles
//! `e^{-N tr V(M)}` with convex real-analytic `V`, together with an exact
//! finite-`N` orthogonal-polynomial oracle to test them against.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod deviations;
pub mod edge_map;
pub mod equilibrium;
pub mod error;
pub mod kernel_asym;
pub mod linalg;
pub mod math;
pub mod oracle;
pub mod potential;
pub mod quadrature;
pub mod scaled;
pub mod special_fn;

pub use error::{Error, Result};
pub use potential::{ExtendedInterval, Field, FnField, Potential, Sine};
pub use scaled::ScaledReal;

/// Crate version.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
