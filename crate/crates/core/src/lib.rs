//! Numerical laboratory for the discrete spectrum of nuclearly perturbed
//! bounded operators: regularized determinants, exact Toeplitz
//! resolvents, the band-to-disc conformal map, argument-principle zero
//! counting, and eigenvalue-sum inequalities, exercised on the discrete
//! Laplacian on the integer lattice and on multiplication-plus-kernel
//! operators on an interval.

pub mod conformal;
pub mod determinant;
pub mod error;
pub mod exec;
pub mod linalg;
pub mod operator;
pub mod quadrature;
pub mod resolvent;
pub mod spectral;
pub mod verify;

pub use error::{Error, Result};

pub use ndarray;
pub use num_complex;
