use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::sector::check_alpha;

/// A family `A_1..A_m` with floors `a_i`, leading-block index `k`, sector
/// half-angle `α` and optional weights `λ_i`.
///
/// Construction validates shapes only. Whether the matrices satisfy a
/// particular inequality's hypotheses is checked by each evaluator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "InstanceJson", into = "InstanceJson")]
pub struct InequalityInstance {
    matrices: Vec<ComplexMatrix>,
    floors: Vec<f64>,
    k: usize,
    alpha: f64,
    weights: Option<Vec<f64>>,
}

impl InequalityInstance {
    pub fn new(
        matrices: Vec<ComplexMatrix>,
        floors: Vec<f64>,
        k: usize,
        alpha: f64,
        weights: Option<Vec<f64>>,
    ) -> Result<Self> {
        let m = matrices.len();
        if m == 0 {
            return Err(Error::Domain(
                "instance needs at least one matrix (m >= 1)".into(),
            ));
        }
        let n = matrices[0].order();
        if n == 0 {
            return Err(Error::Dimension("matrix order n must be positive".into()));
        }
        if let Some((i, a)) = matrices.iter().enumerate().find(|(_, a)| a.order() != n) {
            return Err(Error::Dimension(format!(
                "all matrices must share order n = {n}, but A_{} has order {}",
                i + 1,
                a.order()
            )));
        }
        if floors.len() != m {
            return Err(Error::Dimension(format!(
                "{} floors given for {m} matrices",
                floors.len()
            )));
        }
        if let Some((i, a)) = floors
            .iter()
            .enumerate()
            .find(|(_, a)| !(a.is_finite() && **a >= 0.0))
        {
            return Err(Error::Domain(format!(
                "floor a_{} = {a} must be finite and nonnegative",
                i + 1
            )));
        }
        if k >= n {
            return Err(Error::Domain(format!("k = {k} must lie in 0..={}", n - 1)));
        }
        check_alpha(alpha)?;
        if let Some(w) = &weights {
            if w.len() != m {
                return Err(Error::Dimension(format!(
                    "{} weights given for {m} matrices",
                    w.len()
                )));
            }
            if let Some((i, x)) = w
                .iter()
                .enumerate()
                .find(|(_, x)| !(x.is_finite() && **x >= 0.0))
            {
                return Err(Error::Domain(format!(
                    "weight lambda_{} = {x} must be finite and nonnegative",
                    i + 1
                )));
            }
        }
        Ok(Self {
            matrices,
            floors,
            k,
            alpha,
            weights,
        })
    }

    /// Matrices with zero floors, `k = 0`, `α = 0` and no weights.
    pub fn from_matrices(matrices: Vec<ComplexMatrix>) -> Result<Self> {
        let m = matrices.len();
        Self::new(matrices, vec![0.0; m], 0, 0.0, None)
    }

    pub fn with_k(mut self, k: usize) -> Result<Self> {
        if k >= self.order() {
            return Err(Error::Domain(format!(
                "k = {k} must lie in 0..={}",
                self.order() - 1
            )));
        }
        self.k = k;
        Ok(self)
    }

    pub fn with_alpha(mut self, alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        self.alpha = alpha;
        Ok(self)
    }

    pub fn with_floors(self, floors: Vec<f64>) -> Result<Self> {
        Self::new(self.matrices, floors, self.k, self.alpha, self.weights)
    }

    pub fn with_weights(self, weights: Option<Vec<f64>>) -> Result<Self> {
        Self::new(self.matrices, self.floors, self.k, self.alpha, weights)
    }

    pub fn matrices(&self) -> &[ComplexMatrix] {
        &self.matrices
    }

    pub fn floors(&self) -> &[f64] {
        &self.floors
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    pub fn order(&self) -> usize {
        self.matrices[0].order()
    }

    pub fn family_size(&self) -> usize {
        self.matrices.len()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceJson {
    matrices: Vec<ComplexMatrix>,
    #[serde(default)]
    floors: Option<Vec<f64>>,
    #[serde(default)]
    k: usize,
    #[serde(default)]
    alpha: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weights: Option<Vec<f64>>,
}

impl TryFrom<InstanceJson> for InequalityInstance {
    type Error = Error;

    fn try_from(j: InstanceJson) -> Result<Self> {
        let m = j.matrices.len();
        let floors = j.floors.unwrap_or_else(|| vec![0.0; m]);
        InequalityInstance::new(j.matrices, floors, j.k, j.alpha, j.weights)
    }
}

impl From<InequalityInstance> for InstanceJson {
    fn from(i: InequalityInstance) -> Self {
        InstanceJson {
            matrices: i.matrices,
            floors: Some(i.floors),
            k: i.k,
            alpha: i.alpha,
            weights: i.weights,
        }
    }
}
