//! Numerical tolerances shared across the crate.

/// Relative defect allowed when a tensor is validated on construction.
pub const VALIDATION_REL: f64 = 1e-9;

/// Gram-matrix defect allowed for four-frames and unit vectors.
pub const FRAME: f64 = 1e-9;

/// Feasibility slack accepted from iterative optimizers.
pub const FEASIBILITY: f64 = 1e-6;

/// Residual allowed for subspace membership and constraint checks.
pub const SUBSPACE: f64 = 1e-10;

/// Singular-value cutoff (relative to the largest) used for nullspaces.
pub const NULLSPACE_CUTOFF: f64 = 1e-8;
