//! Kernel ridge regression across sample-size regimes.
//!
//! The crate computes effective dimensions (plug-in and exact Fourier
//! sums on the torus), bias functionals, minimax lower bounds for
//! polynomial and Sobolev-type classes, and runs seeded Monte-Carlo
//! experiments over (n, σ, λ) grids.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod cli;
pub mod error;
pub mod experiments;
pub mod kernels;
pub mod linalg;
pub mod numeric;
pub mod ridge;
pub mod spectral;
pub mod target;

pub use error::{Error, Result};
pub use target::TargetFunction;
