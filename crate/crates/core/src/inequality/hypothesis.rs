//! Precondition checks shared by the evaluators. Each failure names the
//! matrix and the invariant that broke.

use std::f64::consts::FRAC_PI_4;

use crate::error::{Error, Result};
use crate::linalg::{cartesian_decomposition, is_positive_definite, psd_check, real_part};
use crate::matrix::{ComplexMatrix, HermitianMatrix};
use crate::sector::{is_accretive_dissipative, sector_membership};

pub(crate) fn label(i: usize) -> String {
    format!("A_{}", i + 1)
}

/// Hermitian, `A >= floor * I`, and (when `strict`) positive definite.
pub(crate) fn hermitian_with_floor(
    a: &ComplexMatrix,
    floor: f64,
    name: &str,
    strict: bool,
) -> Result<()> {
    let h = HermitianMatrix::new(a.clone())
        .map_err(|e| Error::Hypothesis(format!("{name} is not Hermitian ({e})")))?;
    if strict && !is_positive_definite(&h) {
        let v = psd_check(&h, 0.0);
        return Err(Error::Hypothesis(format!(
            "{name} is not positive definite (lambda_min = {:e})",
            v.lambda_min
        )));
    }
    let v = psd_check(&h, floor);
    if !v.is_psd {
        return Err(Error::Hypothesis(format!(
            "{name} >= {floor} I failed (lambda_min({name} - {floor} I) = {:e})",
            v.lambda_min
        )));
    }
    Ok(())
}

/// `W(A) ⊆ S_α` and `Re A >= floor * I`.
pub(crate) fn sector_with_floor(
    a: &ComplexMatrix,
    alpha: f64,
    floor: f64,
    name: &str,
) -> Result<()> {
    let cert = sector_membership(a, alpha)?;
    if !cert.member {
        return Err(Error::Hypothesis(format!(
            "sector membership failed for {name} at alpha = {alpha} \
             (lambda_min Re = {:e}, plus = {:e}, minus = {:e})",
            cert.lambda_min_re, cert.lambda_min_plus, cert.lambda_min_minus
        )));
    }
    real_floor(a, floor, name)
}

pub(crate) fn real_floor(a: &ComplexMatrix, floor: f64, name: &str) -> Result<()> {
    let v = psd_check(&real_part(a), floor);
    if !v.is_psd {
        return Err(Error::Hypothesis(format!(
            "Re {name} >= {floor} I failed (lambda_min = {:e})",
            v.lambda_min
        )));
    }
    Ok(())
}

pub(crate) fn positive_real_part(a: &ComplexMatrix, name: &str) -> Result<()> {
    let re = cartesian_decomposition(a).0;
    if !is_positive_definite(&re) {
        return Err(Error::Hypothesis(format!(
            "Re {name} is not positive definite (lambda_min = {:e})",
            psd_check(&re, 0.0).lambda_min
        )));
    }
    Ok(())
}

/// Accretive-dissipative, with the floor applying to `Re(e^{-iπ/4} A)`.
pub(crate) fn accretive_dissipative_with_floor(
    a: &ComplexMatrix,
    floor: f64,
    name: &str,
) -> Result<()> {
    if !is_accretive_dissipative(a) {
        return Err(Error::Hypothesis(format!(
            "{name} is not accretive-dissipative"
        )));
    }
    real_floor(
        &a.rotate(-FRAC_PI_4),
        floor,
        &format!("(e^(-i pi/4) {name})"),
    )
}

pub(crate) fn family_size(id: &str, got: usize, want: usize) -> Result<()> {
    if got != want {
        return Err(Error::Hypothesis(format!(
            "{id} expects exactly {want} matrices, got {got}"
        )));
    }
    Ok(())
}

pub(crate) fn k_in_range(k: usize, n: usize) -> Result<()> {
    if k >= n {
        return Err(Error::Domain(format!(
            "k = {k} must lie in 0..={}",
            n.saturating_sub(1)
        )));
    }
    Ok(())
}
