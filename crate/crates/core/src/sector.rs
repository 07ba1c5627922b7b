//! Sector membership `W(A) ⊆ S_α`, minimal half-angles, accretive-dissipative
//! detection, and real-part floors.
//!
//! `S_α = { z : Re z > 0, |Im z| <= tan(α) Re z }`. Because
//! `x* (Re A) x = Re(x* A x)` and `x* (Im A) x = Im(x* A x)`, containment of
//! the numerical range is equivalent to
//!
//! ```text
//! Re A > 0   and   tan(α) Re A ± Im A >= 0,
//! ```
//!
//! which is what [`sector_membership`] decides, with eigenvalues reported as
//! an audit trail.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use nalgebra::{Cholesky, DMatrix};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    cartesian_decomposition, hermitian_eigen, hermitian_eigenvalues, is_positive_definite,
    psd_check,
};
use crate::matrix::{ComplexMatrix, HermitianMatrix};

/// Evidence for (or against) `W(A) ⊆ S_α`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SectorCertificate {
    pub alpha: f64,
    pub member: bool,
    /// `λ_min(Re A)`.
    pub lambda_min_re: f64,
    /// `λ_min(tan α · Re A + Im A)`.
    pub lambda_min_plus: f64,
    /// `λ_min(tan α · Re A − Im A)`.
    pub lambda_min_minus: f64,
}

impl SectorCertificate {
    /// Smallest of the three certificate eigenvalues.
    pub fn min_eigenvalue(&self) -> f64 {
        self.lambda_min_re
            .min(self.lambda_min_plus)
            .min(self.lambda_min_minus)
    }
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if !(0.0..FRAC_PI_2).contains(&alpha) {
        return Err(Error::Domain(format!(
            "sector angle alpha = {alpha} is outside [0, pi/2)"
        )));
    }
    Ok(())
}

/// `tan(α) Re A + sign · Im A` as an exactly Hermitian matrix.
fn pencil(
    re: &HermitianMatrix,
    im: &HermitianMatrix,
    tan_alpha: f64,
    sign: f64,
) -> HermitianMatrix {
    re.scale(tan_alpha)
        .checked_add(&im.scale(sign))
        .expect("Cartesian parts share an order")
}

/// Decides `W(A) ⊆ S_α` through the two-PSD-test characterization.
///
/// `Re A` must be positive definite with a strict margin; the two pencils
/// `tan α · Re A ± Im A` only need to be PSD within the usual slack.
pub fn sector_membership(a: &ComplexMatrix, alpha: f64) -> Result<SectorCertificate> {
    check_alpha(alpha)?;
    let (re, im) = cartesian_decomposition(a);
    let t = alpha.tan();
    let re_verdict = psd_check(&re, 0.0);
    let plus = psd_check(&pencil(&re, &im, t, 1.0), 0.0);
    let minus = psd_check(&pencil(&re, &im, t, -1.0), 0.0);
    let member = re_verdict.lambda_min > re_verdict.threshold && plus.is_psd && minus.is_psd;
    Ok(SectorCertificate {
        alpha,
        member,
        lambda_min_re: re_verdict.lambda_min,
        lambda_min_plus: plus.lambda_min,
        lambda_min_minus: minus.lambda_min,
    })
}

/// A unit vector `x` whose Rayleigh quotient `x*Ax` falls outside `S_α`, if
/// membership fails. Taken from the eigenvector of whichever certificate
/// matrix is most negative.
pub fn sector_violation_witness(a: &ComplexMatrix, alpha: f64) -> Result<Option<Vec<Complex64>>> {
    let cert = sector_membership(a, alpha)?;
    if cert.member {
        return Ok(None);
    }
    let (re, im) = cartesian_decomposition(a);
    let t = alpha.tan();
    let candidates = [
        re.clone(),
        pencil(&re, &im, t, 1.0),
        pencil(&re, &im, t, -1.0),
    ];
    let witness = candidates
        .iter()
        .filter_map(|h| hermitian_eigen(h).pop())
        .min_by(|x, y| x.0.total_cmp(&y.0))
        .map(|(_, v)| v);
    Ok(witness)
}

/// `x* A x` for a vector `x`.
pub fn rayleigh_quotient(a: &ComplexMatrix, x: &[Complex64]) -> Complex64 {
    let n = a.order();
    let mut acc = Complex64::ZERO;
    for i in 0..n {
        let mut row = Complex64::ZERO;
        for j in 0..n {
            row += a[(i, j)] * x[j];
        }
        acc += x[i].conj() * row;
    }
    acc
}

/// Whether a single complex number lies in `S_α`, with `slack` applied to
/// both the strict and the non-strict inequality.
pub fn point_in_sector(z: Complex64, alpha: f64, slack: f64) -> bool {
    z.re > -slack && z.im.abs() <= alpha.tan() * z.re + slack
}

/// The least `α` with `W(A) ⊆ S_α`: `arctan` of the spectral radius of
/// `L^{-1} (Im A) L^{-*}` where `Re A = L L*`.
pub fn minimal_sector_angle(a: &ComplexMatrix) -> Result<f64> {
    let (re, im) = cartesian_decomposition(a);
    if !is_positive_definite(&re) {
        return Err(Error::NotSectorial {
            lambda_min: psd_check(&re, 0.0).lambda_min,
        });
    }
    let n = a.order();
    if n == 0 {
        return Ok(0.0);
    }
    let chol = Cholesky::new(re.as_complex().as_dmatrix().clone()).ok_or(Error::NotSectorial {
        lambda_min: psd_check(&re, 0.0).lambda_min,
    })?;
    let l = chol.l();
    // M = L^{-1} K L^{-*}
    let y = l
        .solve_lower_triangular(im.as_complex().as_dmatrix())
        .ok_or(Error::NotSectorial { lambda_min: 0.0 })?;
    let m = l
        .solve_lower_triangular(&y.adjoint())
        .ok_or(Error::NotSectorial { lambda_min: 0.0 })?
        .adjoint();
    let m = HermitianMatrix::from_upper(symmetrize(m));
    let radius = hermitian_eigenvalues(&m)
        .iter()
        .fold(0.0f64, |acc, x| acc.max(x.abs()));
    Ok(radius.atan())
}

fn symmetrize(m: DMatrix<Complex64>) -> DMatrix<Complex64> {
    (&m + m.adjoint()) * Complex64::new(0.5, 0.0)
}

/// `λ_min(Re A)`: the largest `a` with `Re A >= a I`. May be non-positive.
pub fn real_part_floor(a: &ComplexMatrix) -> f64 {
    hermitian_eigenvalues(&cartesian_decomposition(a).0)
        .last()
        .copied()
        .unwrap_or(f64::INFINITY)
}

/// True when both `Re A` and `Im A` are positive definite.
pub fn is_accretive_dissipative(a: &ComplexMatrix) -> bool {
    let (re, im) = cartesian_decomposition(a);
    is_positive_definite(&re) && is_positive_definite(&im)
}

/// `e^{-iπ/4} A`, which lies in `S_{π/4}` whenever `A` is accretive-dissipative.
pub fn rotate_accretive_dissipative(a: &ComplexMatrix) -> ComplexMatrix {
    a.rotate(-FRAC_PI_4)
}
