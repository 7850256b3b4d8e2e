//! Dense linear algebra used by the kernel, the Monte Carlo counter and
//! the asymptotic fit. Matrices are row-major `Vec<f64>` with an explicit
//! dimension.

pub mod jacobi;
pub mod lstsq;
pub mod lu;
pub mod schur;
pub mod symmetric;

pub use jacobi::squared_singular_values;
pub use lstsq::least_squares;
pub use lu::log_abs_determinant;
pub use schur::{real_schur_eigenvalues, SchurEigenvalues, DEFAULT_BLOCK_TAU};
pub use symmetric::{symmetric_eigenvalues, tridiagonal_eigenvalues};
