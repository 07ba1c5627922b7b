//! Shared machinery for the Brunn-Minkowski family.
//!
//! Every bound from Ky Fan through the weighted sector bound has the form
//!
//! ```text
//! ( r(Σ w_i A_i) - c_L (Σ w_i a_i)^p )^{1/p}
//!     >= c_R Σ w_i ( r(A_i) - c_F a_i^p )^{1/p}
//! ```
//!
//! with `p = n - k`, `r(X) = |det X / det X_k|`, and constants `(c_L, c_R, c_F)`
//! that depend on the inequality. Routing all of them through one function makes
//! the reduction chain between them hold exactly, not just approximately.

use std::f64::consts::LN_2;

use crate::error::{Error, Result};
use crate::linalg::det_ratio;
use crate::matrix::ComplexMatrix;
use crate::tolerance::LOG_DOMAIN_ORDER;

/// Per-inequality constants, stored as `ln c_L`, `c_R`, `ln c_F`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct BoundShape {
    pub lhs_floor_ln_scale: f64,
    pub rhs_scale: f64,
    pub rhs_floor_ln_scale: f64,
}

impl BoundShape {
    /// Yuan-Leng and its multi-matrix extension; with zero floors, Ky Fan.
    pub fn hermitian() -> Self {
        BoundShape {
            lhs_floor_ln_scale: 0.0,
            rhs_scale: 1.0,
            rhs_floor_ln_scale: 0.0,
        }
    }

    /// `c_R = cos(α)^{n/p}`, `c_F = cos(α)^{-n}`.
    pub fn sector(n: usize, k: usize, alpha: f64) -> Self {
        let p = (n - k) as f64;
        let c = alpha.cos();
        BoundShape {
            lhs_floor_ln_scale: 0.0,
            rhs_scale: c.powf(n as f64 / p),
            rhs_floor_ln_scale: -(n as f64) * c.ln(),
        }
    }

    /// Liu: `c_L = cos(α)^k`, `c_R = cos(α)^{(n+k)/p}`, `c_F = cos(α)^{-n}`.
    pub fn liu(n: usize, k: usize, alpha: f64) -> Self {
        let p = (n - k) as f64;
        let c = alpha.cos();
        BoundShape {
            lhs_floor_ln_scale: k as f64 * c.ln(),
            rhs_scale: c.powf((n + k) as f64 / p),
            rhs_floor_ln_scale: -(n as f64) * c.ln(),
        }
    }

    /// Accretive-dissipative: `c_R = 2^{-n/(2p)}`, `c_F = 2^{n/2}`.
    pub fn accretive_dissipative(n: usize, k: usize) -> Self {
        let p = (n - k) as f64;
        BoundShape {
            lhs_floor_ln_scale: 0.0,
            rhs_scale: 2f64.powf(-(n as f64) / (2.0 * p)),
            rhs_floor_ln_scale: 0.5 * n as f64 * LN_2,
        }
    }
}

/// `r - s` given `ln r` and `ln s`, clamped at zero when negative.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Bracket {
    value: f64,
    ln: f64,
    pub clamped: bool,
    log_domain: bool,
}

impl Bracket {
    pub fn new(ln_r: f64, ln_s: f64, n: usize) -> Self {
        if n > LOG_DOMAIN_ORDER {
            if ln_s >= ln_r {
                return Bracket {
                    value: 0.0,
                    ln: f64::NEG_INFINITY,
                    clamped: ln_s > ln_r,
                    log_domain: true,
                };
            }
            let ln = ln_r + (-(ln_s - ln_r).exp()).ln_1p();
            return Bracket {
                value: ln.exp(),
                ln,
                clamped: false,
                log_domain: true,
            };
        }
        let value = ln_r.exp() - ln_s.exp();
        if value < 0.0 {
            Bracket {
                value: 0.0,
                ln: f64::NEG_INFINITY,
                clamped: true,
                log_domain: false,
            }
        } else {
            Bracket {
                value,
                ln: value.ln(),
                clamped: false,
                log_domain: false,
            }
        }
    }

    #[cfg(test)]
    fn value(&self) -> f64 {
        self.value
    }

    pub fn ln(&self) -> f64 {
        self.ln
    }

    /// `bracket^{1/p}`, real positive branch.
    pub fn root(&self, p: usize) -> f64 {
        if self.value == 0.0 {
            0.0
        } else if self.log_domain {
            (self.ln / p as f64).exp()
        } else {
            self.value.powf(1.0 / p as f64)
        }
    }
}

/// `ln a^p` with `a = 0` mapping to `-inf`.
pub(crate) fn ln_power(a: f64, p: usize) -> f64 {
    if a == 0.0 {
        f64::NEG_INFINITY
    } else {
        p as f64 * a.ln()
    }
}

/// Matrices paired with weights; zero-weight members are dropped.
pub(crate) struct Weighted<'a> {
    pub members: Vec<(&'a ComplexMatrix, f64, f64)>,
}

impl<'a> Weighted<'a> {
    pub fn new(
        matrices: &'a [ComplexMatrix],
        floors: &[f64],
        weights: Option<&[f64]>,
    ) -> Result<Self> {
        let members: Vec<_> = matrices
            .iter()
            .zip(floors)
            .enumerate()
            .map(|(i, (a, &f))| (a, f, weights.map_or(1.0, |w| w[i])))
            .filter(|&(_, _, w)| w > 0.0)
            .collect();
        if members.is_empty() {
            return Err(Error::Hypothesis(
                "weights sum to zero; sum of weighted matrices is not sectorial".into(),
            ));
        }
        Ok(Weighted { members })
    }

    /// `Σ w_i A_i`; a unit weight contributes `A_i` unchanged.
    pub fn matrix_sum(&self) -> Result<ComplexMatrix> {
        let scaled: Vec<ComplexMatrix> = self
            .members
            .iter()
            .map(|&(a, _, w)| if w == 1.0 { a.clone() } else { a.scale_real(w) })
            .collect();
        ComplexMatrix::sum(&scaled)
    }

    pub fn floor_sum(&self) -> f64 {
        self.members.iter().map(|&(_, a, w)| w * a).sum()
    }
}

pub(crate) struct FamilyBound {
    pub lhs: f64,
    pub rhs: f64,
    pub clamped_terms: u32,
    pub notes: Vec<String>,
}

/// Evaluates the rooted family bound for leading index `k`.
pub(crate) fn rooted_bound(
    family: &Weighted<'_>,
    k: usize,
    shape: BoundShape,
) -> Result<FamilyBound> {
    let n = family.members[0].0.order();
    let p = n - k;
    let mut notes = Vec::new();

    let sum = family.matrix_sum()?;
    let ln_r_sum = det_ratio(&sum, k)?.ln_abs;
    let ln_s = ln_power(family.floor_sum(), p) + shape.lhs_floor_ln_scale;
    let lhs_bracket = Bracket::new(ln_r_sum, ln_s, n);
    if lhs_bracket.clamped {
        notes.push("lhs bracket negative, clamped to 0".to_string());
    }
    let lhs = lhs_bracket.root(p);

    let mut clamped_terms = 0u32;
    let mut acc = 0.0;
    for (i, &(a, floor, w)) in family.members.iter().enumerate() {
        let ln_r = det_ratio(a, k)?.ln_abs;
        let b = Bracket::new(ln_r, ln_power(floor, p) + shape.rhs_floor_ln_scale, n);
        if b.clamped {
            clamped_terms += 1;
            notes.push(format!("rhs bracket {} clamped to 0", i + 1));
        }
        let term = b.root(p);
        acc += if w == 1.0 { term } else { w * term };
    }
    Ok(FamilyBound {
        lhs,
        rhs: shape.rhs_scale * acc,
        clamped_terms,
        notes,
    })
}

/// Unrooted, geometric-mean form:
/// `r(Σ λ_i A_i) - (Σ λ_i a_i)^p >= cos(α)^n Π (r(A_i) - a_i^p / cos(α)^n)^{λ_i}`.
pub(crate) fn geometric_bound(family: &Weighted<'_>, k: usize, alpha: f64) -> Result<FamilyBound> {
    let n = family.members[0].0.order();
    let p = n - k;
    let ln_cos = alpha.cos().ln();
    let mut notes = Vec::new();

    let sum = family.matrix_sum()?;
    let r_sum = det_ratio(&sum, k)?.abs();
    let lhs = r_sum - ln_power(family.floor_sum(), p).exp();

    let mut clamped_terms = 0u32;
    let mut ln_rhs = n as f64 * ln_cos;
    for (i, &(a, floor, w)) in family.members.iter().enumerate() {
        let ln_r = det_ratio(a, k)?.ln_abs;
        let b = Bracket::new(ln_r, ln_power(floor, p) - n as f64 * ln_cos, n);
        if b.clamped {
            clamped_terms += 1;
            notes.push(format!("product factor {} negative, clamped to 0", i + 1));
        }
        ln_rhs += w * b.ln();
    }
    let rhs = if clamped_terms > 0 { 0.0 } else { ln_rhs.exp() };
    Ok(FamilyBound {
        lhs,
        rhs,
        clamped_terms,
        notes,
    })
}
