//! Exact symbolic calculus for framed quantum principal bundles.
//!
//! Everything is computed over rational functions in declared parameters
//! with Gaussian-rational coefficients; no floating point is used.

pub mod bimodule;
pub mod calculus;
pub mod connection;
pub mod error;
pub mod homogeneous;
pub mod hopf;
pub mod horizontal;
pub mod instance;
pub mod linalg;
pub mod linebundle;
pub mod ncalg;
pub mod report;
pub mod sample;
pub mod scalar;
pub mod suites;
pub mod torsion;

pub use error::{Error, Result};
pub use scalar::Scalar;
