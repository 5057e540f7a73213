//! Matrix analysis toolkit for Hardy–Littlewood submajorization.
//!
//! The crate works at finite dimension with the standard trace: operators
//! are dense complex matrices, the generalized singular value function is
//! the sorted sequence of singular values, and every inequality is checked
//! through exact Ky Fan partial sums.
//!
//! * [`kernel`]: SVD, Hermitian eigendecomposition, matrix exponential,
//!   PSD powers, polar decomposition.
//! * [`rearrangement`]: singular-value profiles, Ky Fan functions,
//!   submajorization and symmetric norms.
//! * [`duality`]: Ky Fan sums as a supremum of `|Tr(a·c)|` over
//!   support-bounded contractions, with optimal certificates.
//! * [`interpolation`]: the strip function `F(z) = Tr(e^{zb} a e^{(1−z)b} c)`
//!   and three-lines checks.
//! * [`inequalities`]: one verdict-returning check per inequality, plus the
//!   2×2 counterexamples.
//! * [`spectral`]: eigenvalue multisets and trace identities.
//! * [`harness`]: seeded campaigns and JSON reports.

pub mod duality;
pub mod error;
pub mod harness;
pub mod inequalities;
pub mod interpolation;
pub mod io;
pub mod kernel;
pub mod random;
pub mod rearrangement;
pub mod spectral;
pub mod tol;

pub use error::{Error, Result};
pub use kernel::Matrix;
pub use rearrangement::{NormSpec, SingularProfile, SubmajorizationVerdict};
