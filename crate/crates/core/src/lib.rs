//! Brunn-Minkowski type determinantal inequalities for positive-definite and
//! sector matrices, evaluated numerically with certified verdicts.
//!
//! The crate is organized bottom-up:
//!
//! * [`matrix`] and [`linalg`]: dense complex matrices, Cartesian
//!   decomposition, leading blocks, Schur complements, log-domain
//!   determinants, spectra and PSD checks.
//! * [`sector`]: membership `W(A) ⊆ S_α`, minimal half-angles, floors.
//! * [`inequality`]: one evaluator per inequality, from `det(A+B) >= det A +
//!   det B` up to the multi-matrix sector bounds.
//! * [`generate`]: seeded random families that satisfy each hypothesis.
//! * [`campaign`]: batch runs with aggregated JSON/CSV reports.
//!
//! ```
//! use sector_det::{check_ky_fan, ComplexMatrix};
//!
//! let a = ComplexMatrix::from_real_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]])?;
//! let b = ComplexMatrix::from_real_diagonal(&[3.0, 1.0]);
//! let report = check_ky_fan(&a, &b, 1)?;
//! assert!(report.holds);
//! assert!((report.lhs - 2.8).abs() < 1e-12);
//! assert!((report.rhs - 2.5).abs() < 1e-12);
//! # Ok::<(), sector_det::Error>(())
//! ```

pub mod campaign;
mod error;
pub mod generate;
pub mod inequality;
pub mod linalg;
pub mod matrix;
pub mod sector;
pub mod tolerance;

pub use error::{Error, Result};
pub use inequality::*;
pub use matrix::{ComplexMatrix, HermitianMatrix};
pub use num_complex::Complex64;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/matrices.md")]
    mod matrices {}
    #[doc = include_str!("../../../book/src/sectors.md")]
    mod sectors {}
    #[doc = include_str!("../../../book/src/inequalities.md")]
    mod inequalities {}
    #[doc = include_str!("../../../book/src/clamping.md")]
    mod clamping {}
    #[doc = include_str!("../../../book/src/generators.md")]
    mod generators {}
    #[doc = include_str!("../../../book/src/campaigns.md")]
    mod campaigns {}
}
