//! One evaluator per inequality. Each computes both sides exactly as the
//! inequality is stated, checks the hypotheses first, and returns an
//! [`InequalityReport`].
//!
//! Evaluators never widen `α` or adjust floors to make a hypothesis hold;
//! a violated precondition is an [`Error::Hypothesis`](crate::Error::Hypothesis).

mod classic;
mod compare;
mod family;
mod hypothesis;
mod instance;
mod lemmas;
mod multi;
mod report;
mod scalar;

pub use classic::{
    check_bergstrom, check_brunn_minkowski, check_det_superadditivity, check_ky_fan, check_liu,
    check_yuan_leng,
};
pub use compare::{compare_thm29_vs_liu, LiuComparison};
pub use instance::InequalityInstance;
pub use lemmas::{
    check_det_ratio_real_part, check_ostrowski_taussky, check_schur_real_part_dominance,
    check_schur_sector_inheritance, check_sector_reverse_det,
};
pub use multi::{
    check_accretive_dissipative, check_amgm_multi_sector, check_logconcavity_sector,
    check_multi_ky_fan, check_multi_sector, check_multi_yuan_leng, check_weighted_multi_sector,
    member_ratios,
};
pub use report::{Arity, HypothesisClass, InequalityId, InequalityReport, KRange};
pub use scalar::{check_minkowski_complement, ScalarGrid};

use crate::error::{Error, Result};
use hypothesis::family_size;

/// Runs the evaluator for `id` on a matrix instance.
///
/// Pair evaluators need `m = 2`, single-matrix evaluators `m = 1`. The scalar
/// grid evaluator takes a [`ScalarGrid`] instead and is rejected here.
pub fn evaluate(id: InequalityId, inst: &InequalityInstance) -> Result<InequalityReport> {
    use InequalityId::*;
    let mats = inst.matrices();
    let m = mats.len();
    match id.arity() {
        Arity::Pair => family_size(id.as_str(), m, 2)?,
        Arity::Single => family_size(id.as_str(), m, 1)?,
        Arity::Family => {}
        Arity::ScalarGrid => {
            return Err(Error::Domain(format!(
                "{id} evaluates a scalar grid, not a matrix instance"
            )))
        }
    }
    let f = inst.floors();
    let (k, alpha) = (inst.k(), inst.alpha());
    match id {
        DetSuperadditivity => check_det_superadditivity(&mats[0], &mats[1]),
        BrunnMinkowski => check_brunn_minkowski(&mats[0], &mats[1]),
        KyFan => check_ky_fan(&mats[0], &mats[1], k),
        Bergstrom => check_bergstrom(&mats[0], &mats[1], k),
        YuanLeng => check_yuan_leng(&mats[0], &mats[1], f[0], f[1], k),
        Liu => check_liu(&mats[0], &mats[1], f[0], f[1], k, alpha),
        OstrowskiTaussky => check_ostrowski_taussky(&mats[0]),
        SectorReverseDet => check_sector_reverse_det(&mats[0], alpha),
        SchurSectorInheritance => check_schur_sector_inheritance(&mats[0], alpha, k),
        SchurRealPartDominance => check_schur_real_part_dominance(&mats[0], k),
        DetRatioRealPart => check_det_ratio_real_part(&mats[0], k),
        MultiKyFan => check_multi_ky_fan(inst),
        MultiYuanLeng => check_multi_yuan_leng(inst),
        MultiSector => check_multi_sector(inst),
        AccretiveDissipative => check_accretive_dissipative(inst),
        WeightedMultiSector => check_weighted_multi_sector(inst),
        AmgmMultiSector => check_amgm_multi_sector(inst),
        LogconcavitySector => check_logconcavity_sector(inst),
        CompareThm29VsLiu => Ok(compare_instance(inst)?.to_report()),
        MinkowskiComplement => unreachable!("rejected above"),
    }
}

/// [`compare_thm29_vs_liu`] on an `m = 2` instance.
pub fn compare_instance(inst: &InequalityInstance) -> Result<LiuComparison> {
    family_size("compare_thm29_vs_liu", inst.family_size(), 2)?;
    let mats = inst.matrices();
    let f = inst.floors();
    compare_thm29_vs_liu(&mats[0], &mats[1], f[0], f[1], inst.k(), inst.alpha())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::ComplexMatrix;

    #[test]
    fn arity_is_enforced() {
        let one = InequalityInstance::from_matrices(vec![ComplexMatrix::identity(2)]).unwrap();
        let err = evaluate(InequalityId::KyFan, &one).unwrap_err();
        assert!(
            err.to_string().contains("expects exactly 2 matrices"),
            "{err}"
        );
        let two = InequalityInstance::from_matrices(vec![ComplexMatrix::identity(2); 2]).unwrap();
        assert!(evaluate(InequalityId::SectorReverseDet, &two).is_err());
        assert!(evaluate(InequalityId::MinkowskiComplement, &two).is_err());
    }

    #[test]
    fn hypothesis_errors_name_the_failure() {
        let not_pd = ComplexMatrix::from_real_diagonal(&[1.0, -1.0]);
        let inst =
            InequalityInstance::from_matrices(vec![not_pd, ComplexMatrix::identity(2)]).unwrap();
        let err = evaluate(InequalityId::KyFan, &inst).unwrap_err();
        assert!(matches!(err, Error::Hypothesis(_)));
        assert!(
            err.to_string().contains("A is not positive definite"),
            "{err}"
        );

        let skew = ComplexMatrix::scaled_identity(num_complex::Complex64::new(0.0, 1.0), 2);
        let inst = InequalityInstance::from_matrices(vec![skew.clone(), skew]).unwrap();
        let err = evaluate(InequalityId::MultiSector, &inst).unwrap_err();
        assert!(
            err.to_string().contains("sector membership failed"),
            "{err}"
        );
    }

    #[test]
    fn floors_above_spectrum_rejected() {
        let inst = InequalityInstance::new(
            vec![ComplexMatrix::identity(2), ComplexMatrix::identity(2)],
            vec![1.5, 0.0],
            1,
            0.0,
            None,
        )
        .unwrap();
        let err = evaluate(InequalityId::YuanLeng, &inst).unwrap_err();
        assert!(err.to_string().contains(">= 1.5 I failed"), "{err}");
    }

    #[test]
    fn weights_required_and_normalized() {
        let inst = InequalityInstance::from_matrices(vec![ComplexMatrix::identity(2); 2]).unwrap();
        assert!(evaluate(InequalityId::WeightedMultiSector, &inst).is_err());
        let w = inst.clone().with_weights(Some(vec![0.0, 0.0])).unwrap();
        assert!(evaluate(InequalityId::WeightedMultiSector, &w).is_err());
        let w = inst.clone().with_weights(Some(vec![0.5, 0.6])).unwrap();
        assert!(evaluate(InequalityId::AmgmMultiSector, &w).is_err());
        assert!(evaluate(InequalityId::WeightedMultiSector, &w).is_ok());
    }

    #[test]
    fn singular_leading_block_propagates() {
        let psd = ComplexMatrix::from_real_diagonal(&[0.0, 1.0]);
        // PSD is fine for Brunn-Minkowski (k = 0) ...
        assert!(check_brunn_minkowski(&psd, &ComplexMatrix::identity(2)).is_ok());
        // ... but Bergström with k = 1 needs an invertible leading block.
        assert!(check_bergstrom(&psd, &ComplexMatrix::identity(2), 1).is_err());
    }
}
