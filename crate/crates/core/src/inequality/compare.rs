use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::matrix::ComplexMatrix;

use super::classic::check_liu;
use super::instance::InequalityInstance;
use super::multi::check_multi_sector;
use super::report::{InequalityId, InequalityReport};

/// The two-matrix sector bound side by side with Liu's bound on the same
/// instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LiuComparison {
    pub multi_sector: InequalityReport,
    pub liu: InequalityReport,
    /// `multi_sector.rhs - liu.rhs`; nonnegative since
    /// `cos(α)^{n/(n-k)} >= cos(α)^{(n+k)/(n-k)}`.
    pub rhs_delta: f64,
    /// `liu.lhs - multi_sector.lhs`; nonnegative since Liu subtracts the
    /// smaller `cos(α)^k (a+b)^{n-k}`.
    pub lhs_delta: f64,
}

impl LiuComparison {
    /// Collapses the comparison into a report whose `lhs`/`rhs` are the two
    /// right-hand sides, so `holds` means "no worse than Liu".
    pub fn to_report(&self) -> InequalityReport {
        let notes = vec![format!("lhs_delta = {:e}", self.lhs_delta)];
        InequalityReport::assemble(
            InequalityId::CompareThm29VsLiu,
            self.multi_sector.rhs,
            self.liu.rhs,
            0,
            notes,
        )
    }
}

pub fn compare_thm29_vs_liu(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    floor_a: f64,
    floor_b: f64,
    k: usize,
    alpha: f64,
) -> Result<LiuComparison> {
    let liu = check_liu(a, b, floor_a, floor_b, k, alpha)?;
    let inst = InequalityInstance::new(
        vec![a.clone(), b.clone()],
        vec![floor_a, floor_b],
        k,
        alpha,
        None,
    )?;
    let multi_sector = check_multi_sector(&inst)?;
    Ok(LiuComparison {
        rhs_delta: multi_sector.rhs - liu.rhs,
        lhs_delta: liu.lhs - multi_sector.lhs,
        multi_sector,
        liu,
    })
}
