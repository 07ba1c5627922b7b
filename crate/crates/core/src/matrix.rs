//! Dense square complex matrices and their Hermitian refinement.

use std::fmt;
use std::ops::Index;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tolerance::herm_tolerance;

/// A dense square complex matrix with finite entries.
///
/// Order zero is permitted so that the `k = 0` leading principal submatrix
/// has a representation; its determinant is the empty product, 1.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct ComplexMatrix {
    data: DMatrix<Complex64>,
}

impl ComplexMatrix {
    pub fn from_dmatrix(data: DMatrix<Complex64>) -> Result<Self> {
        if data.nrows() != data.ncols() {
            return Err(Error::Dimension(format!(
                "matrix must be square, got {}x{}",
                data.nrows(),
                data.ncols()
            )));
        }
        for j in 0..data.ncols() {
            for i in 0..data.nrows() {
                let z = data[(i, j)];
                if !(z.re.is_finite() && z.im.is_finite()) {
                    return Err(Error::NonFinite { row: i, col: j });
                }
            }
        }
        Ok(Self { data })
    }

    /// Builds a matrix from complex rows. Ragged or non-square input is rejected.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        if let Some((i, row)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(Error::Dimension(format!(
                "row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
        Self::from_dmatrix(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
    }

    /// Builds a matrix from separate real and imaginary row-major grids.
    pub fn from_parts(re: &[Vec<f64>], im: &[Vec<f64>]) -> Result<Self> {
        let n = re.len();
        if im.len() != n {
            return Err(Error::Dimension(format!(
                "real part has {n} rows but imaginary part has {}",
                im.len()
            )));
        }
        for (label, grid) in [("re", re), ("im", im)] {
            if let Some((i, row)) = grid.iter().enumerate().find(|(_, r)| r.len() != n) {
                return Err(Error::Dimension(format!(
                    "{label} row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
        }
        Self::from_dmatrix(DMatrix::from_fn(n, n, |i, j| {
            Complex64::new(re[i][j], im[i][j])
        }))
    }

    /// Real matrix from rows.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let zeros: Vec<Vec<f64>> = rows.iter().map(|r| vec![0.0; r.len()]).collect();
        Self::from_parts(rows, &zeros)
    }

    pub fn identity(n: usize) -> Self {
        Self {
            data: DMatrix::identity(n, n),
        }
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            data: DMatrix::zeros(n, n),
        }
    }

    pub fn scaled_identity(z: Complex64, n: usize) -> Self {
        Self {
            data: DMatrix::from_diagonal_element(n, n, z),
        }
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Self {
        let n = diag.len();
        Self {
            data: DMatrix::from_fn(n, n, |i, j| if i == j { diag[i] } else { Complex64::ZERO }),
        }
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let d: Vec<Complex64> = diag.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::from_diagonal(&d)
    }

    pub fn order(&self) -> usize {
        self.data.nrows()
    }

    pub fn as_dmatrix(&self) -> &DMatrix<Complex64> {
        &self.data
    }

    pub fn into_dmatrix(self) -> DMatrix<Complex64> {
        self.data
    }

    pub fn adjoint(&self) -> Self {
        Self {
            data: self.data.adjoint(),
        }
    }

    pub fn scale(&self, z: Complex64) -> Self {
        Self {
            data: self.data.map(|w| w * z),
        }
    }

    pub fn scale_real(&self, x: f64) -> Self {
        Self {
            data: self.data.map(|w| w * x),
        }
    }

    /// `e^{i theta} A`.
    pub fn rotate(&self, theta: f64) -> Self {
        self.scale(Complex64::from_polar(1.0, theta))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(Self {
            data: &self.data + &other.data,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(Self {
            data: &self.data - &other.data,
        })
    }

    /// `A - x I`.
    pub fn shift_diagonal(&self, x: f64) -> Self {
        let mut data = self.data.clone();
        for i in 0..data.nrows() {
            data[(i, i)] -= x;
        }
        Self { data }
    }

    /// Sum of a non-empty family of equal-order matrices.
    pub fn sum<'a, I>(family: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a ComplexMatrix>,
    {
        let mut iter = family.into_iter();
        let first = iter
            .next()
            .ok_or_else(|| Error::Domain("cannot sum an empty matrix family".into()))?;
        let mut acc = first.data.clone();
        for m in iter {
            first.same_order(m)?;
            acc += &m.data;
        }
        Ok(Self { data: acc })
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.data.iter().fold(0.0, |acc, z| acc.max(z.norm()))
    }

    pub fn to_rows(&self) -> Vec<Vec<Complex64>> {
        (0..self.order())
            .map(|i| (0..self.order()).map(|j| self.data[(i, j)]).collect())
            .collect()
    }

    fn same_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::Dimension(format!(
                "order mismatch: {} vs {}",
                self.order(),
                other.order()
            )));
        }
        Ok(())
    }

    pub(crate) fn from_dmatrix_unchecked(data: DMatrix<Complex64>) -> Self {
        debug_assert_eq!(data.nrows(), data.ncols());
        Self { data }
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, idx: (usize, usize)) -> &Complex64 {
        &self.data[idx]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

/// A complex matrix that is Hermitian within `tol_herm`.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix {
    inner: ComplexMatrix,
}

impl HermitianMatrix {
    /// Validates `a` against `tol_herm = 1e-12 * (1 + max|a_ij|)`.
    pub fn new(a: ComplexMatrix) -> Result<Self> {
        let tolerance = herm_tolerance(a.max_abs_entry());
        let deviation = hermitian_deviation(&a);
        if deviation > tolerance {
            return Err(Error::Symmetry {
                deviation,
                tolerance,
            });
        }
        Ok(Self { inner: a })
    }

    /// Builds from a matrix that is Hermitian by construction, mirroring the
    /// upper triangle so the result is exactly Hermitian.
    pub(crate) fn from_upper(a: DMatrix<Complex64>) -> Self {
        let n = a.nrows();
        let data = DMatrix::from_fn(n, n, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Less => a[(i, j)],
            std::cmp::Ordering::Equal => Complex64::new(a[(i, i)].re, 0.0),
            std::cmp::Ordering::Greater => a[(j, i)].conj(),
        });
        Self {
            inner: ComplexMatrix::from_dmatrix_unchecked(data),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            inner: ComplexMatrix::identity(n),
        }
    }

    pub fn order(&self) -> usize {
        self.inner.order()
    }

    pub fn as_complex(&self) -> &ComplexMatrix {
        &self.inner
    }

    pub fn into_complex(self) -> ComplexMatrix {
        self.inner
    }

    pub fn scale(&self, x: f64) -> Self {
        Self {
            inner: self.inner.scale_real(x),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        Ok(Self::from_upper(
            self.inner.checked_add(&other.inner)?.into_dmatrix(),
        ))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        Ok(Self::from_upper(
            self.inner.checked_sub(&other.inner)?.into_dmatrix(),
        ))
    }
}

impl Index<(usize, usize)> for HermitianMatrix {
    type Output = Complex64;

    fn index(&self, idx: (usize, usize)) -> &Complex64 {
        &self.inner[idx]
    }
}

pub(crate) fn hermitian_deviation(a: &ComplexMatrix) -> f64 {
    let n = a.order();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((a[(i, j)] - a[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Wire form of a matrix: `{"n": int, "re": [[...]], "im": [[...]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub n: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl TryFrom<MatrixJson> for ComplexMatrix {
    type Error = Error;

    fn try_from(j: MatrixJson) -> Result<Self> {
        if j.n == 0 {
            return Err(Error::Dimension("matrix order n must be positive".into()));
        }
        if j.re.len() != j.n {
            return Err(Error::Dimension(format!(
                "declared n = {} but re has {} rows",
                j.n,
                j.re.len()
            )));
        }
        ComplexMatrix::from_parts(&j.re, &j.im)
    }
}

impl From<ComplexMatrix> for MatrixJson {
    fn from(m: ComplexMatrix) -> Self {
        let n = m.order();
        let re = (0..n)
            .map(|i| (0..n).map(|j| m[(i, j)].re).collect())
            .collect();
        let im = (0..n)
            .map(|i| (0..n).map(|j| m[(i, j)].im).collect())
            .collect();
        MatrixJson { n, re, im }
    }
}
