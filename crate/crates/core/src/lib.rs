//! Exact finite-dimensional models of Hopf categories and their descent and
//! Galois theory.
//!
//! Every structure is given by structure constants over an exact [`Field`]
//! (the rationals or a prime field), and every axiom or theorem check reduces
//! to equalities and ranks of matrices.

#![cfg_attr(not(test), no_std)]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod clusters;
pub mod descent;
pub mod error;
pub mod galois;
pub mod graded;
pub mod hopfcat;
pub mod linalg;
pub mod lincat;
pub mod report;
pub mod scalar;
pub mod smash;

#[cfg(test)]
mod fixtures;

pub use error::Error;
pub use linalg::{kernel_basis, kron, quotient_by, rank, solve, Mat, Quotient};
pub use report::{Report, Violation};
pub use scalar::{Field, Scalar};
