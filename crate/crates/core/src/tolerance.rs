//! Numeric tolerances shared by every module.
//!
//! All of these are relative to a scale chosen at the call site; see the
//! individual constants.

/// Hermitian check: `|a_ij - conj(a_ji)| <= TOL_HERM * (1 + max|a|)`.
pub const TOL_HERM: f64 = 1e-12;

/// PSD check slack, multiplied by `max(1, ||H||_2)`.
pub const TOL_PSD: f64 = 1e-10;

/// Leading blocks with `cond_2 > 1 / TOL_COND` are treated as singular.
pub const TOL_COND: f64 = 1e-12;

/// Default verdict slack, multiplied by `max(1, |lhs|, |rhs|)`.
pub const TOL_VERDICT: f64 = 1e-8;

/// Reports with `|rel_gap|` at or below this are flagged as equality cases.
pub const EQUALITY_REL_GAP: f64 = 1e-10;

/// Weights for the arithmetic-geometric mean forms must sum to one within this.
pub const TOL_WEIGHT_SUM: f64 = 1e-12;

/// Above this order, determinant-bearing quantities are assembled in the
/// log domain.
pub const LOG_DOMAIN_ORDER: usize = 30;

pub(crate) fn herm_tolerance(max_abs_entry: f64) -> f64 {
    TOL_HERM * (1.0 + max_abs_entry)
}

pub(crate) fn psd_threshold(spectral_norm: f64) -> f64 {
    TOL_PSD * spectral_norm.max(1.0)
}

pub(crate) fn verdict_threshold(tol_verdict: f64, lhs: f64, rhs: f64) -> f64 {
    tol_verdict * 1f64.max(lhs.abs()).max(rhs.abs())
}
