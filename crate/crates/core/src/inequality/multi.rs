//! Multi-matrix extensions and their corollaries.

use std::f64::consts::FRAC_PI_4;

use crate::error::{Error, Result};
use crate::linalg::det_ratio;
use crate::tolerance::TOL_WEIGHT_SUM;

use super::family::{geometric_bound, rooted_bound, BoundShape, FamilyBound, Weighted};
use super::hypothesis::{
    accretive_dissipative_with_floor, hermitian_with_floor, label, sector_with_floor,
};
use super::instance::InequalityInstance;
use super::report::{InequalityId, InequalityReport};

fn finish(id: InequalityId, b: FamilyBound) -> InequalityReport {
    InequalityReport::assemble(id, b.lhs, b.rhs, b.clamped_terms, b.notes)
}

fn require_pd_family(inst: &InequalityInstance, use_floors: bool) -> Result<()> {
    for (i, (a, &f)) in inst.matrices().iter().zip(inst.floors()).enumerate() {
        hermitian_with_floor(a, if use_floors { f } else { 0.0 }, &label(i), true)?;
    }
    Ok(())
}

fn require_sector_family(inst: &InequalityInstance) -> Result<()> {
    for (i, (a, &f)) in inst.matrices().iter().zip(inst.floors()).enumerate() {
        sector_with_floor(a, inst.alpha(), f, &label(i))?;
    }
    Ok(())
}

fn required_weights(inst: &InequalityInstance, normalized: bool) -> Result<&[f64]> {
    let w = inst
        .weights()
        .ok_or_else(|| Error::Hypothesis("this inequality needs weights lambda_i".into()))?;
    let total: f64 = w.iter().sum();
    if total.is_nan() || total <= 0.0 {
        return Err(Error::Hypothesis("weights must not all be zero".into()));
    }
    if normalized && (total - 1.0).abs() > TOL_WEIGHT_SUM {
        return Err(Error::Hypothesis(format!(
            "weights must sum to 1, got {total}"
        )));
    }
    Ok(w)
}

/// Ky Fan for `m` positive definite matrices. Floors are ignored.
pub fn check_multi_ky_fan(inst: &InequalityInstance) -> Result<InequalityReport> {
    require_pd_family(inst, false)?;
    let zeros = vec![0.0; inst.family_size()];
    let family = Weighted::new(inst.matrices(), &zeros, None)?;
    Ok(finish(
        InequalityId::MultiKyFan,
        rooted_bound(&family, inst.k(), BoundShape::hermitian())?,
    ))
}

/// Yuan-Leng for `m` positive definite matrices with `A_i >= a_i I`.
pub fn check_multi_yuan_leng(inst: &InequalityInstance) -> Result<InequalityReport> {
    require_pd_family(inst, true)?;
    let family = Weighted::new(inst.matrices(), inst.floors(), None)?;
    Ok(finish(
        InequalityId::MultiYuanLeng,
        rooted_bound(&family, inst.k(), BoundShape::hermitian())?,
    ))
}

/// The sector extension:
///
/// ```text
/// ( |r(Σ A_i)| - (Σ a_i)^{n-k} )^{1/(n-k)}
///     >= cos(α)^{n/(n-k)} Σ ( |r(A_i)| - a_i^{n-k} / cos(α)^n )^{1/(n-k)}
/// ```
///
/// Negative right-hand brackets are clamped to zero and counted.
pub fn check_multi_sector(inst: &InequalityInstance) -> Result<InequalityReport> {
    require_sector_family(inst)?;
    let family = Weighted::new(inst.matrices(), inst.floors(), None)?;
    let shape = BoundShape::sector(inst.order(), inst.k(), inst.alpha());
    Ok(finish(
        InequalityId::MultiSector,
        rooted_bound(&family, inst.k(), shape)?,
    ))
}

/// The sector bound for accretive-dissipative matrices, which rotate into
/// `S_{π/4}` under `e^{-iπ/4}`. Constants are `2^{-n/(2(n-k))}` and
/// `2^{n/2}`; the floor `a_i` bounds `Re(e^{-iπ/4} A_i)`. The instance's
/// `alpha` is not used.
pub fn check_accretive_dissipative(inst: &InequalityInstance) -> Result<InequalityReport> {
    for (i, (a, &f)) in inst.matrices().iter().zip(inst.floors()).enumerate() {
        accretive_dissipative_with_floor(a, f, &label(i))?;
    }
    let family = Weighted::new(inst.matrices(), inst.floors(), None)?;
    let shape = BoundShape::accretive_dissipative(inst.order(), inst.k());
    let mut report = finish(
        InequalityId::AccretiveDissipative,
        rooted_bound(&family, inst.k(), shape)?,
    );
    if inst.alpha() != 0.0 && (inst.alpha() - FRAC_PI_4).abs() > 1e-15 {
        append_note(
            &mut report,
            "instance alpha ignored; the rotation fixes alpha = pi/4",
        );
    }
    Ok(report)
}

/// The sector bound with nonnegative weights:
/// `A_i -> λ_i A_i`, `a_i -> λ_i a_i`. Zero weights drop their term.
pub fn check_weighted_multi_sector(inst: &InequalityInstance) -> Result<InequalityReport> {
    let w = required_weights(inst, false)?;
    require_sector_family(inst)?;
    let family = Weighted::new(inst.matrices(), inst.floors(), Some(w))?;
    let shape = BoundShape::sector(inst.order(), inst.k(), inst.alpha());
    Ok(finish(
        InequalityId::WeightedMultiSector,
        rooted_bound(&family, inst.k(), shape)?,
    ))
}

/// Weighted arithmetic-geometric mean form, weights summing to one:
///
/// ```text
/// |r(Σ λ_i A_i)| - (Σ λ_i a_i)^{n-k}
///     >= cos(α)^n Π ( |r(A_i)| - a_i^{n-k} / cos(α)^n )^{λ_i}
/// ```
pub fn check_amgm_multi_sector(inst: &InequalityInstance) -> Result<InequalityReport> {
    let w = required_weights(inst, true)?;
    require_sector_family(inst)?;
    let family = Weighted::new(inst.matrices(), inst.floors(), Some(w))?;
    Ok(finish(
        InequalityId::AmgmMultiSector,
        geometric_bound(&family, inst.k(), inst.alpha())?,
    ))
}

/// The `k = 0` case of the geometric form: log-concavity of `|det|` over
/// sector matrices with floors. Any `k` on the instance is overridden.
pub fn check_logconcavity_sector(inst: &InequalityInstance) -> Result<InequalityReport> {
    let w = required_weights(inst, true)?;
    require_sector_family(inst)?;
    let family = Weighted::new(inst.matrices(), inst.floors(), Some(w))?;
    let mut report = finish(
        InequalityId::LogconcavitySector,
        geometric_bound(&family, 0, inst.alpha())?,
    );
    if inst.k() != 0 {
        append_note(&mut report, "k forced to 0");
    }
    Ok(report)
}

fn append_note(report: &mut InequalityReport, note: &str) {
    if report.notes.is_empty() {
        report.notes = note.to_string();
    } else {
        report.notes = format!("{}; {note}", report.notes);
    }
}

/// `|det A_i / det A_ik|` for each member; handy for diagnostics.
pub fn member_ratios(inst: &InequalityInstance) -> Result<Vec<f64>> {
    inst.matrices()
        .iter()
        .map(|a| Ok(det_ratio(a, inst.k())?.abs()))
        .collect()
}
