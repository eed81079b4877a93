//! Dense complex linear algebra for small matrices and double-double arithmetic.

mod eigen;
mod extended;
mod matrix;

pub use eigen::{hermitian_eigen, hermitian_smallest_eigenpair, hermitian_smallest_eigenvalue, Eigen};
pub use extended::{extended_sum, extended_sum_of, two_prod, two_sum, ExactSum, ExtendedReal};
pub use matrix::{fourier_minor, unit_root, vandermonde, ComplexMatrix};
pub(crate) use matrix::solve_real;

/// Default tolerance for the eigensolver.
pub const DEFAULT_TOL: f64 = 1e-12;
