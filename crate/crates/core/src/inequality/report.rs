use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::tolerance::{verdict_threshold, EQUALITY_REL_GAP, TOL_VERDICT};

/// Which inequality a report belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", try_from = "String")]
pub enum InequalityId {
    /// `det(A+B) >= det A + det B` on the PSD cone.
    DetSuperadditivity,
    /// `det(A+B)^{1/n} >= det(A)^{1/n} + det(B)^{1/n}`.
    BrunnMinkowski,
    /// Ky Fan's leading-block refinement of Brunn-Minkowski.
    KyFan,
    /// Bergström's (unrooted) determinant-ratio superadditivity.
    Bergstrom,
    /// Yuan-Leng: Ky Fan with floors `A >= aI`, `B >= bI`.
    YuanLeng,
    /// Liu's sector-matrix version of Yuan-Leng.
    Liu,
    /// `λ_i(Re A) <= s_i(A)` and `det Re A + |det Im A| <= |det A|`.
    OstrowskiTaussky,
    /// `|det A| <= sec^n(α) det Re A` for sector matrices.
    SectorReverseDet,
    /// Leading blocks and Schur complements stay in the sector.
    SchurSectorInheritance,
    /// `Re(A/A_k) >= (Re A)/(Re A_k)`.
    SchurRealPartDominance,
    /// `|det A / det A_k| >= det Re A / det Re A_k`.
    DetRatioRealPart,
    /// Scalar power-sum inequality generalizing Bellman's inequality.
    MinkowskiComplement,
    /// Ky Fan for `m` matrices.
    MultiKyFan,
    /// Yuan-Leng for `m` matrices.
    MultiYuanLeng,
    /// Yuan-Leng for `m` sector matrices.
    MultiSector,
    /// The sector bound applied to rotated accretive-dissipative matrices.
    AccretiveDissipative,
    /// Nonnegatively weighted sector bound.
    WeightedMultiSector,
    /// Weighted arithmetic-geometric mean form of the sector bound.
    AmgmMultiSector,
    /// `k = 0` form: log-concavity of `|det|` on sector matrices with floors.
    LogconcavitySector,
    /// Multi-matrix sector bound at `m = 2` against Liu's bound.
    CompareThm29VsLiu,
}

/// How many matrices an evaluator consumes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arity {
    Single,
    Pair,
    Family,
    ScalarGrid,
}

/// Which matrices an evaluator accepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HypothesisClass {
    /// Hermitian positive semidefinite.
    PositiveSemidefinite,
    /// Hermitian positive definite, `A_i >= a_i I`.
    PositiveDefinite,
    /// `W(A_i) ⊆ S_α` and `Re A_i >= a_i I`.
    Sector,
    /// `Re A` positive definite, nothing else.
    PositiveRealPart,
    /// `Re A_i, Im A_i > 0`, floors on `Re(e^{-iπ/4} A_i)`.
    AccretiveDissipative,
    /// Nonnegative reals with row feasibility.
    ScalarGrid,
}

/// Which leading-block indices an evaluator is defined for, given order `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KRange {
    /// `0..=n-1`.
    Full,
    /// `1..=n-1` (needs an honest leading block).
    Positive,
    /// `k` is not used; reports carry `k = 0`.
    Unused,
}

impl InequalityId {
    /// The nineteen evaluators, excluding the comparison run.
    pub const EVALUATORS: [InequalityId; 19] = [
        InequalityId::DetSuperadditivity,
        InequalityId::BrunnMinkowski,
        InequalityId::KyFan,
        InequalityId::Bergstrom,
        InequalityId::YuanLeng,
        InequalityId::Liu,
        InequalityId::OstrowskiTaussky,
        InequalityId::SectorReverseDet,
        InequalityId::SchurSectorInheritance,
        InequalityId::SchurRealPartDominance,
        InequalityId::DetRatioRealPart,
        InequalityId::MinkowskiComplement,
        InequalityId::MultiKyFan,
        InequalityId::MultiYuanLeng,
        InequalityId::MultiSector,
        InequalityId::AccretiveDissipative,
        InequalityId::WeightedMultiSector,
        InequalityId::AmgmMultiSector,
        InequalityId::LogconcavitySector,
    ];

    pub fn as_str(&self) -> &'static str {
        use InequalityId::*;
        match self {
            DetSuperadditivity => "det_superadditivity",
            BrunnMinkowski => "brunn_minkowski",
            KyFan => "ky_fan",
            Bergstrom => "bergstrom",
            YuanLeng => "yuan_leng",
            Liu => "liu",
            OstrowskiTaussky => "ostrowski_taussky",
            SectorReverseDet => "sector_reverse_det",
            SchurSectorInheritance => "schur_sector_inheritance",
            SchurRealPartDominance => "schur_real_part_dominance",
            DetRatioRealPart => "det_ratio_real_part",
            MinkowskiComplement => "minkowski_complement",
            MultiKyFan => "multi_ky_fan",
            MultiYuanLeng => "multi_yuan_leng",
            MultiSector => "multi_sector",
            AccretiveDissipative => "accretive_dissipative",
            WeightedMultiSector => "weighted_multi_sector",
            AmgmMultiSector => "amgm_multi_sector",
            LogconcavitySector => "logconcavity_sector",
            CompareThm29VsLiu => "compare_thm29_vs_liu",
        }
    }

    /// Stable small integer used to derive per-trial RNG streams.
    pub fn ordinal(&self) -> u64 {
        *self as u64
    }

    pub fn arity(&self) -> Arity {
        use InequalityId::*;
        match self {
            DetSuperadditivity | BrunnMinkowski | KyFan | Bergstrom | YuanLeng | Liu
            | CompareThm29VsLiu => Arity::Pair,
            OstrowskiTaussky
            | SectorReverseDet
            | SchurSectorInheritance
            | SchurRealPartDominance
            | DetRatioRealPart => Arity::Single,
            MinkowskiComplement => Arity::ScalarGrid,
            MultiKyFan | MultiYuanLeng | MultiSector | AccretiveDissipative
            | WeightedMultiSector | AmgmMultiSector | LogconcavitySector => Arity::Family,
        }
    }

    pub fn hypothesis(&self) -> HypothesisClass {
        use InequalityId::*;
        match self {
            DetSuperadditivity | BrunnMinkowski => HypothesisClass::PositiveSemidefinite,
            KyFan | Bergstrom | YuanLeng | MultiKyFan | MultiYuanLeng => {
                HypothesisClass::PositiveDefinite
            }
            Liu
            | SectorReverseDet
            | SchurSectorInheritance
            | DetRatioRealPart
            | MultiSector
            | WeightedMultiSector
            | AmgmMultiSector
            | LogconcavitySector
            | CompareThm29VsLiu => HypothesisClass::Sector,
            OstrowskiTaussky | SchurRealPartDominance => HypothesisClass::PositiveRealPart,
            AccretiveDissipative => HypothesisClass::AccretiveDissipative,
            MinkowskiComplement => HypothesisClass::ScalarGrid,
        }
    }

    pub fn k_range(&self) -> KRange {
        use InequalityId::*;
        match self {
            DetSuperadditivity | BrunnMinkowski | OstrowskiTaussky | SectorReverseDet
            | MinkowskiComplement | LogconcavitySector => KRange::Unused,
            Liu | CompareThm29VsLiu => KRange::Positive,
            _ => KRange::Full,
        }
    }

    /// Whether the evaluator reads `floors`.
    pub fn uses_floors(&self) -> bool {
        use InequalityId::*;
        matches!(
            self,
            YuanLeng
                | Liu
                | MultiYuanLeng
                | MultiSector
                | AccretiveDissipative
                | WeightedMultiSector
                | AmgmMultiSector
                | LogconcavitySector
                | CompareThm29VsLiu
        )
    }

    /// `None`: no weights; `Some(false)`: nonnegative weights; `Some(true)`:
    /// weights summing to one.
    pub fn weight_rule(&self) -> Option<bool> {
        use InequalityId::*;
        match self {
            WeightedMultiSector => Some(false),
            AmgmMultiSector | LogconcavitySector => Some(true),
            _ => None,
        }
    }
}

impl fmt::Display for InequalityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for InequalityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        use InequalityId::*;
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        let all = InequalityId::EVALUATORS
            .iter()
            .chain(std::iter::once(&CompareThm29VsLiu));
        if let Some(id) = all.into_iter().find(|id| id.as_str() == key) {
            return Ok(*id);
        }
        // Short aliases.
        let alias = match key.as_str() {
            "superadditivity" => DetSuperadditivity,
            "bm" => BrunnMinkowski,
            "fan" => KyFan,
            "ot" => OstrowskiTaussky,
            "reverse_det" => SectorReverseDet,
            "bellman" => MinkowskiComplement,
            "thm28" => MultiYuanLeng,
            "thm29" => MultiSector,
            "ad" | "accretive" => AccretiveDissipative,
            "weighted" => WeightedMultiSector,
            "amgm" => AmgmMultiSector,
            "logconcavity" | "k0" => LogconcavitySector,
            "compare" | "thm29_vs_liu" => CompareThm29VsLiu,
            _ => return Err(Error::UnknownInequality(s.to_string())),
        };
        Ok(alias)
    }
}

impl TryFrom<String> for InequalityId {
    type Error = Error;

    fn try_from(s: String) -> Result<Self, Error> {
        s.parse()
    }
}

/// Result of evaluating one inequality on one instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub id: InequalityId,
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs - rhs` exactly as computed.
    pub gap: f64,
    /// `gap / max(1, |lhs|, |rhs|)`.
    pub rel_gap: f64,
    pub holds: bool,
    /// Right-hand-side brackets that were negative and clamped to zero.
    pub clamped_terms: u32,
    pub notes: String,
}

pub(crate) const EQUALITY_NOTE: &str = "equality case";

impl InequalityReport {
    pub(crate) fn assemble(
        id: InequalityId,
        lhs: f64,
        rhs: f64,
        clamped_terms: u32,
        mut notes: Vec<String>,
    ) -> Self {
        let gap = lhs - rhs;
        let rel_gap = gap / 1f64.max(lhs.abs()).max(rhs.abs());
        if rel_gap.abs() <= EQUALITY_REL_GAP {
            notes.insert(0, EQUALITY_NOTE.to_string());
        }
        let holds = gap >= -verdict_threshold(TOL_VERDICT, lhs, rhs);
        InequalityReport {
            id,
            lhs,
            rhs,
            gap,
            rel_gap,
            holds,
            clamped_terms,
            notes: notes.join("; "),
        }
    }

    /// Re-judges the verdict with a different relative slack.
    pub fn with_tolerance(mut self, tol_verdict: f64) -> Self {
        self.holds = self.gap >= -verdict_threshold(tol_verdict, self.lhs, self.rhs);
        self
    }

    pub fn is_equality_case(&self) -> bool {
        self.rel_gap.abs() <= EQUALITY_REL_GAP
    }
}
