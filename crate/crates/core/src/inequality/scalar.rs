//! Scalar power-sum inequality on a nonnegative grid (Bellman's inequality
//! when there are two rows).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::report::{InequalityId, InequalityReport};

/// Relative slack accepted on row feasibility `x_{i1}^p >= Σ_{j>=2} x_{ij}^p`.
const FEASIBILITY_SLACK: f64 = 1e-12;

/// An `m x n` grid of nonnegative reals with exponent `p >= 1`, each row
/// satisfying `x_{i1}^p >= Σ_{j>=2} x_{ij}^p`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GridJson", into = "GridJson")]
pub struct ScalarGrid {
    x: Vec<Vec<f64>>,
    p: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GridJson {
    x: Vec<Vec<f64>>,
    p: f64,
}

impl TryFrom<GridJson> for ScalarGrid {
    type Error = Error;

    fn try_from(j: GridJson) -> Result<Self> {
        ScalarGrid::new(j.x, j.p)
    }
}

impl From<ScalarGrid> for GridJson {
    fn from(g: ScalarGrid) -> Self {
        GridJson { x: g.x, p: g.p }
    }
}

impl ScalarGrid {
    pub fn new(x: Vec<Vec<f64>>, p: f64) -> Result<Self> {
        if x.is_empty() || x[0].is_empty() {
            return Err(Error::Dimension(
                "grid needs at least one row and one column".into(),
            ));
        }
        let cols = x[0].len();
        if let Some((i, row)) = x.iter().enumerate().find(|(_, r)| r.len() != cols) {
            return Err(Error::Dimension(format!(
                "row {} has {} entries, expected {cols}",
                i + 1,
                row.len()
            )));
        }
        if !(p.is_finite() && p >= 1.0) {
            return Err(Error::Domain(format!("exponent p = {p} must be >= 1")));
        }
        for (i, row) in x.iter().enumerate() {
            if let Some(v) = row.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
                return Err(Error::Domain(format!(
                    "row {} holds {v}; entries must be nonnegative",
                    i + 1
                )));
            }
            let head = row[0].powf(p);
            let tail: f64 = row[1..].iter().map(|v| v.powf(p)).sum();
            if head < tail * (1.0 - FEASIBILITY_SLACK) {
                return Err(Error::Hypothesis(format!(
                    "row {} infeasible: x_i1^p = {head:e} < sum_j>=2 x_ij^p = {tail:e}",
                    i + 1
                )));
            }
        }
        Ok(ScalarGrid { x, p })
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.x
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.x.len(), self.x[0].len())
    }
}

/// `((Σ_i x_i1)^p - Σ_{j>=2} (Σ_i x_ij)^p)^{1/p} >= Σ_i (x_i1^p - Σ_{j>=2} x_ij^p)^{1/p}`.
pub fn check_minkowski_complement(grid: &ScalarGrid) -> Result<InequalityReport> {
    let p = grid.p();
    let (_, cols) = grid.shape();
    let mut notes = Vec::new();

    let column_sums: Vec<f64> = (0..cols)
        .map(|j| grid.rows().iter().map(|r| r[j]).sum())
        .collect();
    let lhs_inner =
        column_sums[0].powf(p) - column_sums[1..].iter().map(|s| s.powf(p)).sum::<f64>();
    let lhs = if lhs_inner < 0.0 {
        notes.push(format!("lhs bracket {lhs_inner:e} clamped to 0"));
        0.0
    } else {
        lhs_inner.powf(1.0 / p)
    };

    let mut clamped = 0u32;
    let mut rhs = 0.0;
    for (i, row) in grid.rows().iter().enumerate() {
        let inner = row[0].powf(p) - row[1..].iter().map(|v| v.powf(p)).sum::<f64>();
        if inner < 0.0 {
            clamped += 1;
            notes.push(format!("row {} bracket {inner:e} clamped to 0", i + 1));
        } else {
            rhs += inner.powf(1.0 / p);
        }
    }
    Ok(InequalityReport::assemble(
        InequalityId::MinkowskiComplement,
        lhs,
        rhs,
        clamped,
        notes,
    ))
}
