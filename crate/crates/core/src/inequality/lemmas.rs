//! Single-matrix facts about real parts, sectors and Schur complements.

use crate::error::Result;
use crate::linalg::{
    cartesian_decomposition, det_ratio, hermitian_eigenvalues, leading_principal_submatrix,
    logabsdet, logdet_pd, real_part, schur_complement, singular_values,
};
use crate::matrix::ComplexMatrix;
use crate::sector::{sector_membership, SectorCertificate};

use super::hypothesis::{k_in_range, positive_real_part, sector_with_floor};
use super::report::{InequalityId, InequalityReport};

/// Ostrowski-Taussky, in two parts:
///
/// * spectral: `λ_i(Re A) <= s_i(A)` for every `i` (any `A`);
/// * determinant: `det Re A + |det Im A| <= |det A|` when `Re A > 0`.
///
/// The part with the smaller relative gap is reported as `lhs`/`rhs`; both
/// parts are summarized in `notes`.
pub fn check_ostrowski_taussky(a: &ComplexMatrix) -> Result<InequalityReport> {
    let (re, im) = cartesian_decomposition(a);
    let lambdas = hermitian_eigenvalues(&re);
    let sigmas = singular_values(a);
    let spectral_min = sigmas
        .iter()
        .zip(&lambdas)
        .map(|(s, l)| s - l)
        .fold(f64::INFINITY, f64::min);
    let spectral =
        InequalityReport::assemble(InequalityId::OstrowskiTaussky, spectral_min, 0.0, 0, vec![]);

    let mut notes = vec![format!(
        "spectral part: min_i(s_i - lambda_i(Re A)) = {spectral_min:e}"
    )];
    if positive_real_part(a, "A").is_err() {
        notes.push("determinant part skipped: Re A is not positive definite".into());
        return Ok(InequalityReport::assemble(
            InequalityId::OstrowskiTaussky,
            spectral_min,
            0.0,
            0,
            notes,
        ));
    }
    let lhs = logabsdet(a).abs();
    let rhs = logdet_pd(&re)?.exp() + logabsdet(im.as_complex()).abs();
    let det_part = InequalityReport::assemble(InequalityId::OstrowskiTaussky, lhs, rhs, 0, vec![]);
    notes.push(format!(
        "determinant part: |det A| = {lhs:e}, det Re A + |det Im A| = {rhs:e}"
    ));

    if spectral.rel_gap < det_part.rel_gap {
        notes.push("reported: spectral part".into());
        Ok(InequalityReport::assemble(
            InequalityId::OstrowskiTaussky,
            spectral_min,
            0.0,
            0,
            notes,
        ))
    } else {
        notes.push("reported: determinant part".into());
        Ok(InequalityReport::assemble(
            InequalityId::OstrowskiTaussky,
            lhs,
            rhs,
            0,
            notes,
        ))
    }
}

/// Reverse Ostrowski-Taussky for sector matrices:
/// `sec(α)^n det Re A >= |det A|`.
pub fn check_sector_reverse_det(a: &ComplexMatrix, alpha: f64) -> Result<InequalityReport> {
    sector_with_floor(a, alpha, 0.0, "A")?;
    let n = a.order() as f64;
    let ln_lhs = logdet_pd(&real_part(a))? - n * alpha.cos().ln();
    let lhs = ln_lhs.exp();
    let rhs = logabsdet(a).abs();
    Ok(InequalityReport::assemble(
        InequalityId::SectorReverseDet,
        lhs,
        rhs,
        0,
        vec![],
    ))
}

/// Leading block and Schur complement of a sector matrix stay in the same
/// sector. `lhs` is the smallest certificate eigenvalue over both pieces,
/// `rhs = 0`.
///
/// For `k = 0` the leading block is empty and the complement is `A` itself.
pub fn check_schur_sector_inheritance(
    a: &ComplexMatrix,
    alpha: f64,
    k: usize,
) -> Result<InequalityReport> {
    k_in_range(k, a.order())?;
    sector_with_floor(a, alpha, 0.0, "A")?;
    let mut pieces: Vec<(&str, SectorCertificate)> = Vec::with_capacity(2);
    if k > 0 {
        pieces.push((
            "A_k",
            sector_membership(&leading_principal_submatrix(a, k)?, alpha)?,
        ));
        pieces.push(("A/A_k", sector_membership(&schur_complement(a, k)?, alpha)?));
    } else {
        pieces.push(("A/A_0", sector_membership(a, alpha)?));
    }
    let lhs = pieces
        .iter()
        .map(|(_, c)| c.min_eigenvalue())
        .fold(f64::INFINITY, f64::min);
    let notes = pieces
        .iter()
        .map(|(name, c)| {
            format!(
                "{name} member = {} (min certificate eigenvalue {:e})",
                c.member,
                c.min_eigenvalue()
            )
        })
        .collect();
    Ok(InequalityReport::assemble(
        InequalityId::SchurSectorInheritance,
        lhs,
        0.0,
        0,
        notes,
    ))
}

/// `Re(A/A_k) - (Re A)/(Re A_k) >= 0` when `Re A > 0`; `lhs` is the smallest
/// eigenvalue of the difference, `rhs = 0`.
pub fn check_schur_real_part_dominance(a: &ComplexMatrix, k: usize) -> Result<InequalityReport> {
    k_in_range(k, a.order())?;
    positive_real_part(a, "A")?;
    if k == 0 {
        return Ok(InequalityReport::assemble(
            InequalityId::SchurRealPartDominance,
            0.0,
            0.0,
            0,
            vec!["k = 0: both sides equal Re A".into()],
        ));
    }
    let re_of_schur = real_part(&schur_complement(a, k)?);
    let schur_of_re = schur_complement(real_part(a).as_complex(), k)?;
    let diff = re_of_schur.as_complex().checked_sub(&schur_of_re)?;
    let lhs = hermitian_eigenvalues(&real_part(&diff))
        .last()
        .copied()
        .unwrap_or(0.0);
    Ok(InequalityReport::assemble(
        InequalityId::SchurRealPartDominance,
        lhs,
        0.0,
        0,
        vec![],
    ))
}

/// `|det A / det A_k| >= det Re A / det Re A_k` when `Re A > 0`.
pub fn check_det_ratio_real_part(a: &ComplexMatrix, k: usize) -> Result<InequalityReport> {
    k_in_range(k, a.order())?;
    positive_real_part(a, "A")?;
    let lhs = det_ratio(a, k)?.abs();
    let rhs = det_ratio(real_part(a).as_complex(), k)?.abs();
    Ok(InequalityReport::assemble(
        InequalityId::DetRatioRealPart,
        lhs,
        rhs,
        0,
        vec![],
    ))
}
