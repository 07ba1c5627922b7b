//! The two-matrix inequalities: superadditivity, Brunn-Minkowski, Ky Fan,
//! Bergström, Yuan-Leng and Liu.

use crate::error::Result;
use crate::linalg::{det_ratio, logabsdet};
use crate::matrix::ComplexMatrix;

use super::family::{rooted_bound, BoundShape, Weighted};
use super::hypothesis::{hermitian_with_floor, k_in_range, sector_with_floor};
use super::report::{InequalityId, InequalityReport};

fn pair(a: &ComplexMatrix, b: &ComplexMatrix) -> [ComplexMatrix; 2] {
    [a.clone(), b.clone()]
}

fn same_order(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<usize> {
    a.checked_add(b)?;
    Ok(a.order())
}

/// `det(A + B) >= det A + det B` for Hermitian PSD `A`, `B`.
pub fn check_det_superadditivity(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<InequalityReport> {
    same_order(a, b)?;
    hermitian_with_floor(a, 0.0, "A", false)?;
    hermitian_with_floor(b, 0.0, "B", false)?;
    let lhs = logabsdet(&a.checked_add(b)?).abs();
    let rhs = logabsdet(a).abs() + logabsdet(b).abs();
    Ok(InequalityReport::assemble(
        InequalityId::DetSuperadditivity,
        lhs,
        rhs,
        0,
        vec![],
    ))
}

/// `det(A + B)^{1/n} >= det(A)^{1/n} + det(B)^{1/n}` for Hermitian PSD `A`, `B`.
pub fn check_brunn_minkowski(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<InequalityReport> {
    same_order(a, b)?;
    hermitian_with_floor(a, 0.0, "A", false)?;
    hermitian_with_floor(b, 0.0, "B", false)?;
    let mats = pair(a, b);
    let bound = rooted_bound(
        &Weighted::new(&mats, &[0.0, 0.0], None)?,
        0,
        BoundShape::hermitian(),
    )?;
    Ok(InequalityReport::assemble(
        InequalityId::BrunnMinkowski,
        bound.lhs,
        bound.rhs,
        0,
        bound.notes,
    ))
}

/// Ky Fan:
/// `(det(A+B)/det(A_k+B_k))^{1/(n-k)} >= (det A/det A_k)^{1/(n-k)} + (det B/det B_k)^{1/(n-k)}`.
///
/// `k = 0` reads `det A_0 = 1` and reduces to Brunn-Minkowski.
pub fn check_ky_fan(a: &ComplexMatrix, b: &ComplexMatrix, k: usize) -> Result<InequalityReport> {
    let n = same_order(a, b)?;
    k_in_range(k, n)?;
    hermitian_with_floor(a, 0.0, "A", true)?;
    hermitian_with_floor(b, 0.0, "B", true)?;
    let mats = pair(a, b);
    let bound = rooted_bound(
        &Weighted::new(&mats, &[0.0, 0.0], None)?,
        k,
        BoundShape::hermitian(),
    )?;
    Ok(InequalityReport::assemble(
        InequalityId::KyFan,
        bound.lhs,
        bound.rhs,
        bound.clamped_terms,
        bound.notes,
    ))
}

/// Bergström: `det(A+B)/det(A_k+B_k) >= det A/det A_k + det B/det B_k`.
pub fn check_bergstrom(a: &ComplexMatrix, b: &ComplexMatrix, k: usize) -> Result<InequalityReport> {
    let n = same_order(a, b)?;
    k_in_range(k, n)?;
    hermitian_with_floor(a, 0.0, "A", true)?;
    hermitian_with_floor(b, 0.0, "B", true)?;
    let lhs = det_ratio(&a.checked_add(b)?, k)?.abs();
    let rhs = det_ratio(a, k)?.abs() + det_ratio(b, k)?.abs();
    Ok(InequalityReport::assemble(
        InequalityId::Bergstrom,
        lhs,
        rhs,
        0,
        vec![],
    ))
}

/// Yuan-Leng: Ky Fan with `A >= aI`, `B >= bI` and the floors subtracted
/// inside each bracket.
pub fn check_yuan_leng(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    floor_a: f64,
    floor_b: f64,
    k: usize,
) -> Result<InequalityReport> {
    let n = same_order(a, b)?;
    k_in_range(k, n)?;
    hermitian_with_floor(a, floor_a, "A", true)?;
    hermitian_with_floor(b, floor_b, "B", true)?;
    let mats = pair(a, b);
    let bound = rooted_bound(
        &Weighted::new(&mats, &[floor_a, floor_b], None)?,
        k,
        BoundShape::hermitian(),
    )?;
    Ok(InequalityReport::assemble(
        InequalityId::YuanLeng,
        bound.lhs,
        bound.rhs,
        bound.clamped_terms,
        bound.notes,
    ))
}

/// Liu's sector version of Yuan-Leng, with constants `cos(α)^k` on the left
/// and `cos(α)^{(n+k)/(n-k)}` on the right.
pub fn check_liu(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    floor_a: f64,
    floor_b: f64,
    k: usize,
    alpha: f64,
) -> Result<InequalityReport> {
    let n = same_order(a, b)?;
    k_in_range(k, n)?;
    sector_with_floor(a, alpha, floor_a, "A")?;
    sector_with_floor(b, alpha, floor_b, "B")?;
    let mats = pair(a, b);
    let bound = rooted_bound(
        &Weighted::new(&mats, &[floor_a, floor_b], None)?,
        k,
        BoundShape::liu(n, k, alpha),
    )?;
    Ok(InequalityReport::assemble(
        InequalityId::Liu,
        bound.lhs,
        bound.rhs,
        bound.clamped_terms,
        bound.notes,
    ))
}
