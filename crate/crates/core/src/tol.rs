//! Numerical tolerances shared across the crate.
//!
//! Relative tolerances are multiplied by a scale chosen by the caller,
//! usually `1 + ‖input‖` or `max(1, reference value)`.

/// Generic relative tolerance for algebraic identities (reconstruction,
/// isometry, functional calculus).
pub const RTOL: f64 = 1e-10;

/// Hermitian validation: `‖a − a*‖_F ≤ HERMITIAN_REL · (1 + ‖a‖_F)`.
pub const HERMITIAN_REL: f64 = 1e-10;

/// PSD validation: eigenvalues `≥ −PSD_REL · (1 + ‖b‖_F)`; smaller negative
/// eigenvalues are clamped to zero.
pub const PSD_REL: f64 = 1e-10;

/// Singular values below `RANK_REL · s_max` count as zero in rank queries.
pub const RANK_REL: f64 = 1e-13;

/// Submajorization comparisons of matrix-derived profiles:
/// `tol = SUBMAJ_REL · max(1, K_right(n))`.
pub const SUBMAJ_REL: f64 = 1e-9;

/// Three-lines comparison: `tol = THREE_LINES_REL · (1 + boundary_max)`.
pub const THREE_LINES_REL: f64 = 1e-8;

/// Norm inequalities of exponentials: `tol = EXP_NORM_REL · max(1, rhs)`.
pub const EXP_NORM_REL: f64 = 1e-8;
