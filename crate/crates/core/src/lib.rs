//! Probabilities for the number of real eigenvalues of real Ginibre matrices.
//!
//! For a `2n × 2n` matrix with independent standard normal entries the
//! generating function of the real-eigenvalue count is the determinant
//! `det(I + (z - 1) M_n)`, where `M_n` is the symmetric Gamma-ratio kernel
//! built in [`kernel`]. Everything else in the crate hangs off that identity:
//!
//! * [`kernel`] builds `M_n`, its spectrum, trace powers and conditioning.
//! * [`probability`] turns the spectrum into `log p_{2n,2k}` for every `k`
//!   and fits the `sqrt(N)` decay of `log p_{N,0}`.
//! * [`montecarlo`] samples Ginibre matrices and counts real eigenvalues
//!   through the real Schur form, for cross-validation.
//! * [`specfun`] holds log-gamma, `zeta(3/2)` and the exponential-section
//!   polynomials with their lower-plateau bound.
//! * [`linalg`] and [`quadrature`] are the dense numerical kernels.

pub mod error;
pub mod kernel;
pub mod linalg;
pub mod montecarlo;
pub mod probability;
pub mod quadrature;
pub mod specfun;

pub use error::{Error, Result};
pub use kernel::{Spectrum, SymmetricKernel, TraceReport};
pub use montecarlo::MCEstimate;
pub use probability::{FitModel, FitResult, ProbabilityTable};
