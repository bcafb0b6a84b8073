//! Numerical tolerances shared across the crate.
//!
//! Every threshold used by a membership test or a validating constructor
//! lives here so that callers can see (and tests can cite) the defaults.

/// Eigenvalue floor for the positivity test of a Gram matrix.
pub const POSITIVITY: f64 = 1e-10;

/// Components outside grades {0, 1} below this are treated as zero when
/// deciding whether a conjugation preserves paravectors.
pub const PARAVECTOR_LEAK: f64 = 1e-10;

/// Unit-norm check for axes and sphere points.
pub const UNIT_NORM: f64 = 1e-12;

/// Unit-norm check for points produced by long iterations.
pub const ITERATED_NORM: f64 = 1e-9;

/// `|Σ n_i|` below this counts as balanced.
pub const BALANCE: f64 = 1e-10;

/// Scalar-part and norm checks on algebra elements (`Φ(a) = 1`, `Δ(g) = 1`).
pub const ALGEBRA: f64 = 1e-10;

/// Invariant checks on Lorentz matrices.
pub const LORENTZ: f64 = 1e-10;

/// Convergence tolerance of the trace-operator power iteration.
pub const FIXED_POINT: f64 = 1e-12;

/// Iteration cap of the trace-operator power iteration.
pub const FIXED_POINT_MAX_ITER: usize = 100_000;

/// Upper bound on `N^k` leaf evaluations for one exact density evaluation.
pub const EXACT_DENSITY_COST_CAP: f64 = 1e8;

/// Two vertices closer than this are considered the same point.
pub const VERTEX_DISTINCT: f64 = 1e-9;

/// Chordal-length slack when collecting edges at the minimal distance.
pub const EDGE_LENGTH: f64 = 1e-8;
