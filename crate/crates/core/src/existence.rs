//! Existence decisions for the non-central Wishart family: shape-ensemble
//! membership, the joint shape/rank verdict, infinite divisibility in the
//! central case, and the drift condition for the associated processes.

use serde::{Deserialize, Serialize};

use crate::error::{Result, WishartError};

/// Absolute tolerance on 2p when deciding half-integrality; shapes arrive
/// from JSON floats.
pub const HALF_INTEGER_TOL: f64 = 1e-9;

/// Tolerance on the drift-condition comparison p ≥ (d−1)/2.
pub const DRIFT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExistenceStatus {
    Exists,
    NotExists,
    OpenProblem,
    Trivial,
}

impl std::fmt::Display for ExistenceStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ExistenceStatus::Exists => "Exists",
            ExistenceStatus::NotExists => "NotExists",
            ExistenceStatus::OpenProblem => "OpenProblem",
            ExistenceStatus::Trivial => "Trivial",
        };
        f.write_str(s)
    }
}

/// Decision outcome together with the machine-readable rule that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GindikinVerdict {
    pub status: ExistenceStatus,
    /// Rule tag, e.g. "thm1.part2a" or "gap-unaddressed-degenerate".
    pub rule: String,
}

impl GindikinVerdict {
    fn new(status: ExistenceStatus, rule: &str) -> Self {
        Self {
            status,
            rule: rule.to_string(),
        }
    }
}

/// Is 2p an integer within tolerance?
pub fn is_half_integer(p: f64) -> bool {
    (2.0 * p - (2.0 * p).round()).abs() <= HALF_INTEGER_TOL
}

/// Membership of p in the shape ensemble for dimension d: the isolated
/// half-integers j/2, j = 1, …, d−2, together with the continuum
/// [(d−1)/2, ∞).
pub fn gindikin_contains(d: usize, p: f64) -> bool {
    assert!(d >= 1, "dimension must be positive");
    if p < 0.0 {
        return false;
    }
    if p >= (d as f64 - 1.0) / 2.0 {
        return true;
    }
    if !is_half_integer(p) {
        return false;
    }
    let j = (2.0 * p).round() as i64;
    j >= 1 && j <= d as i64 - 2
}

/// Joint shape/rank existence verdict.
///
/// Consumes ranks, not matrices: rank tolerances live in the matrix kernel,
/// keeping this decision exact. Where the scale is degenerate and the
/// non-centrality nonzero, no known result applies either way, so the
/// verdict is OpenProblem rather than a guess.
pub fn existence_verdict(
    d: usize,
    p: f64,
    rank_omega: usize,
    rank_sigma: usize,
    omega_is_zero: bool,
) -> Result<GindikinVerdict> {
    if d == 0 {
        return Err(WishartError::InvalidParameter(
            "dimension must be positive".into(),
        ));
    }
    if p < 0.0 || !p.is_finite() {
        return Err(WishartError::InvalidParameter(format!(
            "shape p = {p} must be ≥ 0"
        )));
    }
    if rank_omega > d || rank_sigma > d {
        return Err(WishartError::InvalidParameter(format!(
            "rank out of range: rank(omega) = {rank_omega}, rank(sigma) = {rank_sigma}, d = {d}"
        )));
    }
    if omega_is_zero != (rank_omega == 0) {
        return Err(WishartError::InvalidParameter(
            "omega_is_zero inconsistent with rank_omega".into(),
        ));
    }

    let threshold = (d as f64 - 1.0) / 2.0;

    // (i) point mass at zero.
    if p == 0.0 && omega_is_zero {
        return Ok(GindikinVerdict::new(
            ExistenceStatus::Trivial,
            "thm1.footnote.trivial",
        ));
    }
    // (ii) continuum shapes: exists for every PSD scale.
    if p >= threshold - DRIFT_TOL {
        return Ok(GindikinVerdict::new(ExistenceStatus::Exists, "thm1.part2a"));
    }
    // (iii) isolated half-integer shapes with rank-bounded non-centrality.
    if gindikin_contains(d, p) && is_half_integer(p) {
        let two_p = (2.0 * p).round() as usize;
        if rank_omega <= two_p {
            return Ok(GindikinVerdict::new(ExistenceStatus::Exists, "thm1.part2b"));
        }
    }

    if rank_sigma == d {
        // (iv) invertible scale: the necessity direction applies.
        if !gindikin_contains(d, p) {
            return Ok(GindikinVerdict::new(
                ExistenceStatus::NotExists,
                "thm1.part1.gindikin",
            ));
        }
        let two_p = (2.0 * p).round() as usize;
        if rank_omega > two_p + 1 {
            return Ok(GindikinVerdict::new(
                ExistenceStatus::NotExists,
                "thm1.part1.rank",
            ));
        }
        // rank(omega) = 2p+1 with p below the continuum: unresolved.
        return Ok(GindikinVerdict::new(
            ExistenceStatus::OpenProblem,
            "sec1.open-question",
        ));
    }

    // Degenerate scale from here on.
    if omega_is_zero {
        // (v) central case: existence reduces to the rank of the scale
        // (zero scale is the point mass at zero, which always exists).
        let exists = rank_sigma == 0 || gindikin_contains(rank_sigma, p);
        let status = if exists {
            ExistenceStatus::Exists
        } else {
            ExistenceStatus::NotExists
        };
        return Ok(GindikinVerdict::new(status, "cor2.9"));
    }
    // (vi) degenerate scale with non-centrality: outside every stated result.
    Ok(GindikinVerdict::new(
        ExistenceStatus::OpenProblem,
        "gap-unaddressed-degenerate",
    ))
}

/// Infinite divisibility of the central law: holds exactly for rank-one scale.
pub fn infinitely_divisible_central(_d: usize, rank_sigma: usize) -> bool {
    rank_sigma == 1
}

/// Process existence precondition p ≥ (d−1)/2, equality allowed.
pub fn drift_condition_check(d: usize, p: f64) -> bool {
    p >= (d as f64 - 1.0) / 2.0 - DRIFT_TOL
}
