//! Dense complex linear algebra primitives: Cartesian decomposition,
//! leading blocks and Schur complements, log-domain determinants, spectra,
//! and PSD certification.
//!
//! Factorizations and eigensolvers come from `nalgebra`; this module fixes
//! the conventions (descending order, empty-block determinant, tolerances)
//! the rest of the crate relies on.

use nalgebra::{Cholesky, DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, HermitianMatrix};
use crate::tolerance::{psd_threshold, TOL_COND};

/// Splits `A` into `(Re A, Im A)` with `Re A = (A + A*)/2` and
/// `Im A = (A - A*)/(2i)`. Both halves are exactly Hermitian.
pub fn cartesian_decomposition(a: &ComplexMatrix) -> (HermitianMatrix, HermitianMatrix) {
    let n = a.order();
    let half = 0.5;
    let mut re = DMatrix::<Complex64>::zeros(n, n);
    let mut im = DMatrix::<Complex64>::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let x = a[(i, j)];
            let y = a[(j, i)].conj();
            re[(i, j)] = (x + y) * half;
            // (x - y) / (2i) = -i (x - y) / 2
            let d = x - y;
            im[(i, j)] = Complex64::new(d.im, -d.re) * half;
        }
    }
    (
        HermitianMatrix::from_upper(re),
        HermitianMatrix::from_upper(im),
    )
}

/// `Re A` alone.
pub fn real_part(a: &ComplexMatrix) -> HermitianMatrix {
    cartesian_decomposition(a).0
}

/// `Im A` alone.
pub fn imag_part(a: &ComplexMatrix) -> HermitianMatrix {
    cartesian_decomposition(a).1
}

/// Top-left `k x k` block. `k = 0` yields the empty matrix.
pub fn leading_principal_submatrix(a: &ComplexMatrix, k: usize) -> Result<ComplexMatrix> {
    let n = a.order();
    if k > n {
        return Err(Error::Domain(format!(
            "leading block size k = {k} exceeds order n = {n}"
        )));
    }
    Ok(ComplexMatrix::from_dmatrix_unchecked(
        a.as_dmatrix().view((0, 0), (k, k)).into_owned(),
    ))
}

/// Spectral condition number `s_max / s_min`; infinite when singular.
pub fn condition_number(a: &ComplexMatrix) -> f64 {
    let s = singular_values(a);
    match (s.first(), s.last()) {
        (Some(&max), Some(&min)) if min > 0.0 => max / min,
        (Some(_), Some(_)) => f64::INFINITY,
        _ => 1.0,
    }
}

/// `A_22 - A_21 A_11^{-1} A_12` where `A_11` is the leading `k x k` block.
///
/// Requires `1 <= k <= n - 1`. Leading blocks whose condition number exceeds
/// `1 / TOL_COND` are rejected.
pub fn schur_complement(a: &ComplexMatrix, k: usize) -> Result<ComplexMatrix> {
    let n = a.order();
    if k == 0 || k >= n {
        return Err(Error::Domain(format!(
            "Schur complement needs 1 <= k <= n - 1, got k = {k}, n = {n}"
        )));
    }
    let m = a.as_dmatrix();
    let a11 = m.view((0, 0), (k, k)).into_owned();
    let a12 = m.view((0, k), (k, n - k)).into_owned();
    let a21 = m.view((k, 0), (n - k, k));
    let a22 = m.view((k, k), (n - k, n - k));

    let condition = condition_number(&ComplexMatrix::from_dmatrix_unchecked(a11.clone()));
    if condition.is_nan() || condition > 1.0 / TOL_COND {
        return Err(Error::SingularBlock { k, condition });
    }
    let x = a11.lu().solve(&a12).ok_or(Error::SingularBlock {
        k,
        condition: f64::INFINITY,
    })?;
    let s = a22 - a21 * x;
    ComplexMatrix::from_dmatrix(s)
}

/// Eigenvalues of a Hermitian matrix, largest first.
pub fn hermitian_eigenvalues(h: &HermitianMatrix) -> Vec<f64> {
    if h.order() == 0 {
        return Vec::new();
    }
    let mut ev: Vec<f64> = SymmetricEigen::new(h.as_complex().as_dmatrix().clone())
        .eigenvalues
        .iter()
        .copied()
        .collect();
    ev.sort_by(|a, b| b.total_cmp(a));
    ev
}

/// Eigenpairs of a Hermitian matrix, largest eigenvalue first. Each vector
/// has unit Euclidean norm.
pub fn hermitian_eigen(h: &HermitianMatrix) -> Vec<(f64, Vec<Complex64>)> {
    let n = h.order();
    if n == 0 {
        return Vec::new();
    }
    let eig = SymmetricEigen::new(h.as_complex().as_dmatrix().clone());
    let mut pairs: Vec<(f64, Vec<Complex64>)> = (0..n)
        .map(|c| {
            (
                eig.eigenvalues[c],
                eig.eigenvectors.column(c).iter().copied().collect(),
            )
        })
        .collect();
    pairs.sort_by(|a, b| b.0.total_cmp(&a.0));
    pairs
}

/// Smallest eigenvalue of a Hermitian matrix (`+inf` for order zero).
pub fn lambda_min(h: &HermitianMatrix) -> f64 {
    hermitian_eigenvalues(h)
        .last()
        .copied()
        .unwrap_or(f64::INFINITY)
}

/// Singular values, largest first.
pub fn singular_values(a: &ComplexMatrix) -> Vec<f64> {
    if a.order() == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = a.as_dmatrix().singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

pub fn spectral_norm(a: &ComplexMatrix) -> f64 {
    singular_values(a).first().copied().unwrap_or(0.0)
}

/// `log det H` for Hermitian positive definite `H`, via Cholesky.
pub fn logdet_pd(h: &HermitianMatrix) -> Result<f64> {
    if h.order() == 0 {
        return Ok(0.0);
    }
    let chol =
        Cholesky::new(h.as_complex().as_dmatrix().clone()).ok_or_else(|| Error::Definiteness {
            lambda_min: lambda_min(h),
        })?;
    let l = chol.l_dirty();
    let mut acc = 0.0;
    for i in 0..h.order() {
        // complex sqrt never fails, so a negative pivot shows up as an imaginary diagonal
        let d = l[(i, i)].re;
        if d.is_nan() || d <= 0.0 || l[(i, i)].im.abs() > 1e-14 * d {
            return Err(Error::Definiteness {
                lambda_min: lambda_min(h),
            });
        }
        acc += d.ln();
    }
    Ok(2.0 * acc)
}

/// A determinant held as `exp(ln_abs) * phase`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogAbsDet {
    /// `log |det|`; `-inf` when singular.
    pub ln_abs: f64,
    /// Unit-modulus phase `det / |det|` (1 when singular).
    pub phase: Complex64,
}

impl LogAbsDet {
    pub const ONE: LogAbsDet = LogAbsDet {
        ln_abs: 0.0,
        phase: Complex64 { re: 1.0, im: 0.0 },
    };

    pub fn abs(&self) -> f64 {
        self.ln_abs.exp()
    }

    pub fn value(&self) -> Complex64 {
        self.phase * self.abs()
    }

    pub fn is_singular(&self) -> bool {
        self.ln_abs == f64::NEG_INFINITY
    }
}

/// `(log |det A|, det A / |det A|)` from an LU factorization with partial
/// pivoting. The empty matrix has determinant 1.
pub fn logabsdet(a: &ComplexMatrix) -> LogAbsDet {
    let n = a.order();
    if n == 0 {
        return LogAbsDet::ONE;
    }
    let lu = a.as_dmatrix().clone().lu();
    let mut ln_abs = 0.0;
    let mut phase: Complex64 = lu.p().determinant();
    let u = lu.u();
    for i in 0..n {
        let d = u[(i, i)];
        let r = d.norm();
        if r == 0.0 {
            return LogAbsDet {
                ln_abs: f64::NEG_INFINITY,
                phase: Complex64::new(1.0, 0.0),
            };
        }
        ln_abs += r.ln();
        phase *= d / r;
    }
    // renormalize accumulated rounding in the phase
    phase /= phase.norm();
    LogAbsDet { ln_abs, phase }
}

/// Determinant in the linear domain.
pub fn determinant(a: &ComplexMatrix) -> Complex64 {
    logabsdet(a).value()
}

/// `det A / det A_k`, computed as `det(A / A_k)` for `k >= 1` and `det A`
/// for `k = 0`.
pub fn det_ratio(a: &ComplexMatrix, k: usize) -> Result<LogAbsDet> {
    let n = a.order();
    if n == 0 || k >= n {
        return Err(Error::Domain(format!(
            "det_ratio needs 0 <= k <= n - 1, got k = {k}, n = {n}"
        )));
    }
    if k == 0 {
        return Ok(logabsdet(a));
    }
    Ok(logabsdet(&schur_complement(a, k)?))
}

/// Outcome of testing `H - floor * I >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PsdVerdict {
    pub is_psd: bool,
    /// Smallest eigenvalue of `H - floor * I`.
    pub lambda_min: f64,
    /// Slack actually applied: `1e-10 * max(1, ||H||_2)`.
    pub threshold: f64,
}

/// Decides `H >= floor * I` up to a slack proportional to `||H||_2`.
pub fn psd_check(h: &HermitianMatrix, floor: f64) -> PsdVerdict {
    let ev = hermitian_eigenvalues(h);
    let norm = ev.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
    let threshold = psd_threshold(norm);
    let lambda_min = ev.last().copied().unwrap_or(f64::INFINITY) - floor;
    PsdVerdict {
        is_psd: lambda_min >= -threshold,
        lambda_min,
        threshold,
    }
}

/// Positive definiteness with the same slack used as a strict margin.
pub fn is_positive_definite(h: &HermitianMatrix) -> bool {
    let v = psd_check(h, 0.0);
    v.lambda_min > v.threshold
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tolerance::TOL_HERM;

    fn rel_close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * 1f64.max(a.abs()).max(b.abs())
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn real(rows: &[&[f64]]) -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn one_i_i_one() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(0.0, 1.0)],
            vec![c(0.0, 1.0), c(1.0, 0.0)],
        ])
        .unwrap()
    }

    fn herm(a: ComplexMatrix) -> HermitianMatrix {
        HermitianMatrix::new(a).unwrap()
    }

    #[test]
    fn cartesian_examples() {
        let (re, im) = cartesian_decomposition(&ComplexMatrix::identity(2));
        assert_eq!(re.as_complex(), &ComplexMatrix::identity(2));
        assert_eq!(im.as_complex(), &ComplexMatrix::zeros(2));

        let (re, im) = cartesian_decomposition(&one_i_i_one());
        assert_eq!(re.as_complex(), &ComplexMatrix::identity(2));
        assert_eq!(im.as_complex(), &real(&[&[0.0, 1.0], &[1.0, 0.0]]));

        let (re, im) = cartesian_decomposition(&ComplexMatrix::scaled_identity(c(0.0, 1.0), 2));
        assert_eq!(re.as_complex(), &ComplexMatrix::zeros(2));
        assert_eq!(im.as_complex(), &ComplexMatrix::identity(2));
    }

    #[test]
    fn leading_blocks() {
        let d = ComplexMatrix::from_real_diagonal(&[2.0, 1.0]);
        assert_eq!(leading_principal_submatrix(&d, 1).unwrap(), real(&[&[2.0]]));
        let a = real(&[&[5.0, 1.0], &[1.0, 3.0]]);
        assert_eq!(leading_principal_submatrix(&a, 1).unwrap(), real(&[&[5.0]]));
        let empty = leading_principal_submatrix(&a, 0).unwrap();
        assert_eq!(empty.order(), 0);
        assert_eq!(logabsdet(&empty), LogAbsDet::ONE);
        assert_eq!(leading_principal_submatrix(&a, 2).unwrap(), a);
        assert!(matches!(
            leading_principal_submatrix(&a, 3),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn schur_examples() {
        let s = schur_complement(&one_i_i_one(), 1).unwrap();
        assert_eq!(s.order(), 1);
        assert!((s[(0, 0)] - c(2.0, 0.0)).norm() < 1e-15);

        let s = schur_complement(&ComplexMatrix::from_real_diagonal(&[3.0, 7.0]), 1).unwrap();
        assert_eq!(s[(0, 0)], c(7.0, 0.0));

        let s = schur_complement(&real(&[&[2.0, 1.0], &[1.0, 2.0]]), 1).unwrap();
        assert!((s[(0, 0)] - c(1.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn schur_rejects_singular_block_and_bad_k() {
        let a = real(&[&[0.0, 1.0], &[1.0, 1.0]]);
        assert!(matches!(
            schur_complement(&a, 1),
            Err(Error::SingularBlock { k: 1, .. })
        ));
        let b = real(&[&[1.0, 1.0, 0.0], &[1.0, 1.0, 0.0], &[0.0, 0.0, 1.0]]);
        assert!(matches!(
            schur_complement(&b, 2),
            Err(Error::SingularBlock { k: 2, .. })
        ));
        assert!(matches!(schur_complement(&a, 0), Err(Error::Domain(_))));
        assert!(matches!(schur_complement(&a, 2), Err(Error::Domain(_))));
    }

    #[test]
    fn eigenvalue_examples() {
        assert_eq!(
            hermitian_eigenvalues(&HermitianMatrix::identity(3)),
            vec![1.0, 1.0, 1.0]
        );
        let ev = hermitian_eigenvalues(&herm(real(&[&[0.0, 1.0], &[1.0, 0.0]])));
        assert!((ev[0] - 1.0).abs() < 1e-15 && (ev[1] + 1.0).abs() < 1e-15);
        let ev = hermitian_eigenvalues(&herm(real(&[&[2.0, 1.0], &[1.0, 2.0]])));
        assert!((ev[0] - 3.0).abs() < 1e-14 && (ev[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn eigenvectors_are_unit_and_satisfy_equation() {
        let h = herm(
            ComplexMatrix::from_rows(&[
                vec![c(2.0, 0.0), c(1.0, 1.0)],
                vec![c(1.0, -1.0), c(3.0, 0.0)],
            ])
            .unwrap(),
        );
        for (lambda, v) in hermitian_eigen(&h) {
            let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            assert!((norm - 1.0).abs() < 1e-14);
            for i in 0..2 {
                let hv: Complex64 = (0..2).map(|j| h[(i, j)] * v[j]).sum();
                assert!((hv - v[i] * lambda).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn singular_value_examples() {
        assert_eq!(singular_values(&ComplexMatrix::identity(3)), vec![1.0; 3]);
        let s = singular_values(&one_i_i_one());
        assert!(s.iter().all(|x| (x - 2f64.sqrt()).abs() < 1e-14));
        let s = singular_values(&ComplexMatrix::from_real_diagonal(&[3.0, -4.0]));
        assert!((s[0] - 4.0).abs() < 1e-14 && (s[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn logdet_examples() {
        assert_eq!(logdet_pd(&HermitianMatrix::identity(4)).unwrap(), 0.0);
        let v = logdet_pd(&herm(ComplexMatrix::from_real_diagonal(&[2.0, 3.0]))).unwrap();
        assert!(rel_close(v, 6f64.ln(), 1e-15));
        let v = logdet_pd(&herm(real(&[&[2.0, 1.0], &[1.0, 2.0]]))).unwrap();
        assert!(rel_close(v, 3f64.ln(), 1e-15));
        let indefinite = herm(real(&[&[1.0, 2.0], &[2.0, 1.0]]));
        assert!(matches!(
            logdet_pd(&indefinite),
            Err(Error::Definiteness { .. })
        ));
    }

    #[test]
    fn logabsdet_examples() {
        let d = logabsdet(&ComplexMatrix::identity(5));
        assert_eq!(d.ln_abs, 0.0);
        assert!((d.phase - c(1.0, 0.0)).norm() < 1e-15);

        let d = logabsdet(&one_i_i_one());
        assert!((d.ln_abs - 2f64.ln()).abs() < 1e-15);
        assert!((d.phase - c(1.0, 0.0)).norm() < 1e-15);

        let d = logabsdet(&ComplexMatrix::scaled_identity(c(0.0, 1.0), 2));
        assert!(d.ln_abs.abs() < 1e-15);
        assert!((d.phase - c(-1.0, 0.0)).norm() < 1e-15);

        let s = logabsdet(&real(&[&[1.0, 2.0], &[2.0, 4.0]]));
        assert!(s.is_singular());
        assert_eq!(s.abs(), 0.0);
    }

    #[test]
    fn det_ratio_examples() {
        let r = det_ratio(&ComplexMatrix::from_real_diagonal(&[2.0, 1.0]), 1).unwrap();
        assert!((r.abs() - 1.0).abs() < 1e-15);
        let r = det_ratio(&real(&[&[2.0, 1.0], &[1.0, 2.0]]), 1).unwrap();
        assert!((r.abs() - 1.5).abs() < 1e-15);
        let r = det_ratio(&real(&[&[5.0, 1.0], &[1.0, 3.0]]), 1).unwrap();
        assert!((r.abs() - 2.8).abs() < 1e-15);
        let r = det_ratio(&real(&[&[2.0, 1.0], &[1.0, 2.0]]), 0).unwrap();
        assert!((r.abs() - 3.0).abs() < 1e-14);
        assert!(det_ratio(&real(&[&[2.0, 1.0], &[1.0, 2.0]]), 2).is_err());
    }

    #[test]
    fn psd_examples() {
        let v = psd_check(&HermitianMatrix::identity(2), 1.0);
        assert!(v.is_psd);
        assert_eq!(v.lambda_min, 0.0);
        assert_eq!(v.threshold, 1e-10);

        let a = herm(real(&[&[2.0, 1.0], &[1.0, 2.0]]));
        let v = psd_check(&a, 1.0);
        assert!(v.is_psd, "{v:?}");
        assert!(v.lambda_min.abs() < 1e-14);
        assert!((v.threshold - 3e-10).abs() < 1e-24);

        assert!(!psd_check(&a, 1.5).is_psd);
    }

    #[test]
    fn herm_tolerance_scales_with_entries() {
        let big = 1e6;
        let a = ComplexMatrix::from_rows(&[
            vec![c(big, 0.0), c(1.0, 0.0)],
            vec![c(1.0 + 0.5 * TOL_HERM * big, 0.0), c(big, 0.0)],
        ])
        .unwrap();
        assert!(HermitianMatrix::new(a).is_ok());
    }
}
