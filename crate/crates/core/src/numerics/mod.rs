//! Exact and floating-point numeric kernels.

mod eigen;
mod entropy;
mod halfint;
mod rational;

pub use eigen::{hermitian_eigen, hermitian_eigenvalues, HermitianEigen, HermitianMatrix, MAX_SWEEPS};
pub use entropy::{entropy_bits, rational_log2_entropy, EIGENVALUE_FLOOR};
pub use halfint::HalfInt;
pub use rational::ExactRational;
