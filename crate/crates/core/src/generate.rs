//! Seeded generation of matrix families that satisfy each inequality's
//! hypotheses by construction, plus curated equality families.
//!
//! Every trial draws from its own ChaCha stream keyed by `(seed, index)`, so
//! output does not depend on evaluation order or thread count.

use std::f64::consts::FRAC_PI_4;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inequality::{HypothesisClass, InequalityId, InequalityInstance, KRange, ScalarGrid};
use crate::linalg::{hermitian_eigenvalues, real_part, spectral_norm};
use crate::matrix::{ComplexMatrix, HermitianMatrix};
use crate::sector::check_alpha;

/// Retries allowed per matrix before giving up on the condition cap.
const MAX_RETRIES: u32 = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKind {
    #[serde(alias = "pd")]
    PdWithFloor,
    Sector,
    #[serde(alias = "ad")]
    AccretiveDissipative,
    Diagonal,
    Proportional,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FloorPolicy {
    Zero,
    /// `a_i = u · λ_min(Re A_i)` with `u ~ U[0, 1]`.
    RandomFractionOfLambdaMin,
    /// `a_i = λ_min(Re A_i)`.
    Saturating,
}

/// What to generate. `n`, `m` and `seed` are usually overridden per trial by
/// a campaign.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    #[serde(default = "default_n")]
    pub n: usize,
    #[serde(default = "default_m")]
    pub m: usize,
    pub kind: GeneratorKind,
    #[serde(default = "default_alpha")]
    pub alpha_target: f64,
    #[serde(default = "default_floor_policy")]
    pub floor_policy: FloorPolicy,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_condition_cap")]
    pub condition_cap: f64,
}

fn default_n() -> usize {
    3
}

fn default_m() -> usize {
    2
}

fn default_alpha() -> f64 {
    FRAC_PI_4
}

fn default_floor_policy() -> FloorPolicy {
    FloorPolicy::RandomFractionOfLambdaMin
}

fn default_condition_cap() -> f64 {
    1e3
}

impl Default for GeneratorSpec {
    fn default() -> Self {
        GeneratorSpec {
            n: default_n(),
            m: default_m(),
            kind: GeneratorKind::Sector,
            alpha_target: default_alpha(),
            floor_policy: default_floor_policy(),
            seed: 0,
            condition_cap: default_condition_cap(),
        }
    }
}

impl GeneratorSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Domain("generator n must be >= 1".into()));
        }
        if self.m == 0 {
            return Err(Error::Domain("generator m must be >= 1".into()));
        }
        check_alpha(self.alpha_target)?;
        if self.condition_cap.is_nan() || self.condition_cap < 1.0 {
            return Err(Error::Domain(format!(
                "condition_cap = {} must be >= 1",
                self.condition_cap
            )));
        }
        Ok(())
    }
}

/// Independent RNG stream for trial `index` under `seed`.
pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the
/// phases of `R`'s diagonal folded back into `Q`.
pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<Complex64> {
    let g = DMatrix::from_fn(n, n, |_, _| complex_gaussian(rng));
    let qr = g.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// `n` values log-uniform in `[1/sqrt(ratio), sqrt(ratio)]`.
pub fn log_uniform_spectrum<R: Rng + ?Sized>(n: usize, ratio: f64, rng: &mut R) -> Vec<f64> {
    let half = 0.5 * ratio.max(1.0).ln();
    (0..n)
        .map(|_| (rng.random_range(-1.0..=1.0) * half).exp())
        .collect()
}

/// `Q diag(d) Q*`, exactly Hermitian.
fn unitary_congruence(q: &DMatrix<Complex64>, d: &[f64]) -> HermitianMatrix {
    let n = d.len();
    let scaled = DMatrix::from_fn(n, n, |i, j| q[(i, j)] * d[j]);
    HermitianMatrix::from_upper(&scaled * q.adjoint())
}

fn random_pd<R: Rng + ?Sized>(n: usize, ratio: f64, rng: &mut R) -> (DMatrix<Complex64>, Vec<f64>) {
    let q = random_unitary(n, rng);
    let d = log_uniform_spectrum(n, ratio, rng);
    (q, d)
}

/// `Q D Q* + a I` with Haar `Q` and log-uniform positive `D`; satisfies
/// `A >= a I` strictly.
pub fn gen_pd_with_floor<R: Rng + ?Sized>(
    n: usize,
    a: f64,
    condition_cap: f64,
    rng: &mut R,
) -> ComplexMatrix {
    let (q, d) = random_pd(n, condition_cap, rng);
    unitary_congruence(&q, &d).into_complex().shift_diagonal(-a)
}

/// A matrix with `W(A) ⊆ S_α` whose minimal sector angle is exactly `α`.
///
/// `Re A = H` is random PD and `Im A = H^{1/2} S H^{1/2}` with `S` a random
/// Hermitian matrix of spectral norm `tan α`, so `tan α · Re A ± Im A =
/// H^{1/2} (tan α · I ± S) H^{1/2} >= 0` with a zero eigenvalue.
pub fn gen_sector<R: Rng + ?Sized>(
    n: usize,
    alpha: f64,
    condition_cap: f64,
    rng: &mut R,
) -> ComplexMatrix {
    // cond(A_k) <= cond(H) sec(α) for every leading block, so shrink H's range
    let ratio = (condition_cap * alpha.cos()).max(1.0);
    let (q, d) = random_pd(n, ratio, rng);
    let h = unitary_congruence(&q, &d);
    if alpha == 0.0 {
        return h.into_complex();
    }
    let g = DMatrix::from_fn(n, n, |_, _| complex_gaussian(rng));
    let s = HermitianMatrix::from_upper((&g + g.adjoint()) * Complex64::new(0.5, 0.0));
    let radius = hermitian_eigenvalues(&s)
        .iter()
        .fold(0.0f64, |acc, x| acc.max(x.abs()));
    let s = if radius > 0.0 {
        s.scale(alpha.tan() / radius)
    } else {
        s
    };

    let sqrt_d: Vec<f64> = d.iter().map(|x| x.sqrt()).collect();
    let root = unitary_congruence(&q, &sqrt_d);
    let root = root.as_complex().as_dmatrix();
    let im = HermitianMatrix::from_upper(root * s.as_complex().as_dmatrix() * root);

    let i = Complex64::new(0.0, 1.0);
    let a = h.as_complex().as_dmatrix() + im.as_complex().as_dmatrix() * i;
    ComplexMatrix::from_dmatrix(a).expect("finite by construction")
}

/// `Re A` and `Im A` independent random PD matrices.
pub fn gen_accretive_dissipative<R: Rng + ?Sized>(
    n: usize,
    condition_cap: f64,
    rng: &mut R,
) -> ComplexMatrix {
    let ratio = (condition_cap / 2.0).max(1.0);
    let (q1, d1) = random_pd(n, ratio, rng);
    let (q2, d2) = random_pd(n, ratio, rng);
    let re = unitary_congruence(&q1, &d1);
    let im = unitary_congruence(&q2, &d2);
    let i = Complex64::new(0.0, 1.0);
    let a = re.as_complex().as_dmatrix() + im.as_complex().as_dmatrix() * i;
    ComplexMatrix::from_dmatrix(a).expect("finite by construction")
}

/// Diagonal matrix with entries `r_j e^{iθ_j}`, `|θ_j| <= α`.
pub fn gen_diagonal<R: Rng + ?Sized>(
    n: usize,
    alpha: f64,
    condition_cap: f64,
    rng: &mut R,
) -> ComplexMatrix {
    let ratio = (condition_cap * alpha.cos()).max(1.0);
    let r = log_uniform_spectrum(n, ratio, rng);
    let diag: Vec<Complex64> = r
        .iter()
        .map(|&x| {
            let theta = if alpha > 0.0 {
                rng.random_range(-alpha..=alpha)
            } else {
                0.0
            };
            Complex64::from_polar(x, theta)
        })
        .collect();
    ComplexMatrix::from_diagonal(&diag)
}

/// Upper bound on the spectral condition number of every leading block
/// `A_k`: `s_max(A) / λ_min(Re A)`, valid because `s_max(A_k) <= s_max(A)`
/// and `s_min(A_k) >= λ_min(Re A_k) >= λ_min(Re A)`. Infinite unless `Re A > 0`.
pub fn leading_block_condition_bound(a: &ComplexMatrix) -> f64 {
    let floor = hermitian_eigenvalues(&real_part(a))
        .last()
        .copied()
        .unwrap_or(1.0);
    if floor > 0.0 {
        spectral_norm(a) / floor
    } else {
        f64::INFINITY
    }
}

/// Family members an equality-family generator can produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EqualityFamily {
    /// `A_i = c_i B` for one PD `B`: Brunn-Minkowski and Ky Fan are tight.
    Proportional,
    /// Positive diagonal matrices with `k = n - 1`: Ky Fan ratios are the
    /// trailing entries, which add.
    Diagonal,
    /// `A_i = r_i e^{iα} I`: the reverse determinant bound is tight.
    RotatedIdentity,
    /// `A_i = a_i I` with floors `a_i`: every floor bracket is zero.
    SaturatedFloor,
}

pub fn gen_equality_family<R: Rng + ?Sized>(
    family: EqualityFamily,
    n: usize,
    m: usize,
    alpha: f64,
    rng: &mut R,
) -> Result<InequalityInstance> {
    if n == 0 || m == 0 {
        return Err(Error::Domain(
            "equality families need n >= 1 and m >= 1".into(),
        ));
    }
    check_alpha(alpha)?;
    let scales: Vec<f64> = (0..m).map(|_| rng.random_range(0.5..2.0)).collect();
    match family {
        EqualityFamily::Proportional => {
            let b = gen_pd_with_floor(n, 0.0, 100.0, rng);
            let mats = scales.iter().map(|&c| b.scale_real(c)).collect();
            InequalityInstance::from_matrices(mats)
        }
        EqualityFamily::Diagonal => {
            let mats = (0..m)
                .map(|_| ComplexMatrix::from_real_diagonal(&log_uniform_spectrum(n, 100.0, rng)))
                .collect();
            InequalityInstance::from_matrices(mats)?.with_k(n - 1)
        }
        EqualityFamily::RotatedIdentity => {
            let mats = scales
                .iter()
                .map(|&r| ComplexMatrix::scaled_identity(Complex64::from_polar(r, alpha), n))
                .collect();
            InequalityInstance::from_matrices(mats)?.with_alpha(alpha)
        }
        EqualityFamily::SaturatedFloor => {
            let mats = scales
                .iter()
                .map(|&a| ComplexMatrix::scaled_identity(Complex64::new(a, 0.0), n))
                .collect();
            InequalityInstance::new(mats, scales, 0, alpha, None)
        }
    }
}

/// Random feasible grid: tail entries uniform in `[0, 10]`, head chosen so
/// that `x_i1^p = (1 + u) Σ_{j>=2} x_ij^p` with `u ~ U[0.05, 1]`.
pub fn gen_scalar_grid<R: Rng + ?Sized>(
    rows: usize,
    cols: usize,
    p: f64,
    rng: &mut R,
) -> Result<ScalarGrid> {
    let x = (0..rows)
        .map(|_| {
            let tail: Vec<f64> = (1..cols).map(|_| rng.random_range(0.0..10.0)).collect();
            let tail_sum: f64 = tail.iter().map(|v| v.powf(p)).sum();
            let head = if tail_sum > 0.0 {
                (tail_sum * (1.0 + rng.random_range(0.05..1.0))).powf(1.0 / p)
            } else {
                rng.random_range(0.1..10.0)
            };
            std::iter::once(head).chain(tail).collect()
        })
        .collect();
    ScalarGrid::new(x, p)
}

/// Leading-block index selection for a generated trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KChoice {
    Fixed(usize),
    Random,
}

/// Input for one trial.
#[derive(Debug, Clone, PartialEq)]
pub enum TrialInput {
    Matrices(InequalityInstance),
    Grid(ScalarGrid),
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratedTrial {
    pub input: TrialInput,
    /// Regenerations forced by the condition cap.
    pub retries: u32,
}

impl GeneratedTrial {
    pub fn k(&self) -> usize {
        match &self.input {
            TrialInput::Matrices(i) => i.k(),
            TrialInput::Grid(_) => 0,
        }
    }

    pub fn m(&self) -> usize {
        match &self.input {
            TrialInput::Matrices(i) => i.family_size(),
            TrialInput::Grid(g) => g.shape().0,
        }
    }

    pub fn alpha(&self) -> f64 {
        match &self.input {
            TrialInput::Matrices(i) => i.alpha(),
            TrialInput::Grid(_) => 0.0,
        }
    }
}

/// Valid `k` values for `id` at order `n`.
pub fn valid_ks(id: InequalityId, n: usize) -> Vec<usize> {
    match id.k_range() {
        KRange::Full => (0..n).collect(),
        KRange::Positive => (1..n).collect(),
        KRange::Unused => vec![0],
    }
}

/// Family size actually used for `id` given a requested `m`.
pub fn effective_m(id: InequalityId, m: usize) -> usize {
    use crate::inequality::Arity;
    match id.arity() {
        Arity::Pair => 2,
        Arity::Single => 1,
        Arity::Family | Arity::ScalarGrid => m,
    }
}

fn resolve_kind(class: HypothesisClass, requested: GeneratorKind) -> GeneratorKind {
    use GeneratorKind::*;
    match class {
        HypothesisClass::PositiveSemidefinite | HypothesisClass::PositiveDefinite => {
            match requested {
                PdWithFloor | Diagonal | Proportional => requested,
                _ => PdWithFloor,
            }
        }
        HypothesisClass::Sector | HypothesisClass::PositiveRealPart => match requested {
            AccretiveDissipative if class == HypothesisClass::Sector => Sector,
            other => other,
        },
        HypothesisClass::AccretiveDissipative => AccretiveDissipative,
        HypothesisClass::ScalarGrid => requested,
    }
}

/// Draws one matrix of the given kind; `hermitian` forces real diagonals
/// and zero angle for Hermitian-only hypotheses.
fn draw_matrix<R: Rng + ?Sized>(
    kind: GeneratorKind,
    n: usize,
    alpha: f64,
    cap: f64,
    proportional_base: Option<&ComplexMatrix>,
    rng: &mut R,
) -> ComplexMatrix {
    match kind {
        GeneratorKind::PdWithFloor => gen_pd_with_floor(n, 0.0, cap, rng),
        GeneratorKind::Sector => gen_sector(n, alpha, cap, rng),
        GeneratorKind::AccretiveDissipative => gen_accretive_dissipative(n, cap, rng),
        GeneratorKind::Diagonal => gen_diagonal(n, alpha, cap, rng),
        GeneratorKind::Proportional => {
            let base = proportional_base.expect("base drawn first");
            base.scale_real(rng.random_range(0.5..2.0))
        }
    }
}

/// Generates one trial for `id` from `spec`, using stream `index`.
///
/// The matrices always satisfy `id`'s hypothesis class; `spec.kind` is
/// honored when it is compatible and replaced by the natural generator
/// otherwise.
pub fn generate_trial(
    id: InequalityId,
    spec: &GeneratorSpec,
    k: KChoice,
    index: u64,
) -> Result<GeneratedTrial> {
    spec.validate()?;
    let mut rng = instance_rng(spec.seed, index);
    let n = spec.n;
    let m = effective_m(id, spec.m);
    let class = id.hypothesis();

    if class == HypothesisClass::ScalarGrid {
        let p = rng.random_range(1.0..=5.0);
        return Ok(GeneratedTrial {
            input: TrialInput::Grid(gen_scalar_grid(m, n, p, &mut rng)?),
            retries: 0,
        });
    }

    let ks = valid_ks(id, n);
    let k = match k {
        KChoice::Fixed(k) if ks.contains(&k) => k,
        KChoice::Fixed(k) => {
            return Err(Error::Domain(format!(
                "k = {k} is not valid for {id} at n = {n}"
            )));
        }
        KChoice::Random => {
            if ks.is_empty() {
                return Err(Error::Domain(format!("{id} has no valid k at n = {n}")));
            }
            ks[rng.random_range(0..ks.len())]
        }
    };

    let hermitian_only = matches!(
        class,
        HypothesisClass::PositiveSemidefinite | HypothesisClass::PositiveDefinite
    );
    let alpha = if hermitian_only {
        0.0
    } else {
        spec.alpha_target
    };
    let kind = resolve_kind(class, spec.kind);
    let cap = spec.condition_cap;

    let mut retries = 0;
    let mut draw_checked =
        |angle: f64, base: Option<&ComplexMatrix>, rng: &mut ChaCha8Rng| -> Result<ComplexMatrix> {
            for _ in 0..=MAX_RETRIES {
                let a = draw_matrix(kind, n, angle, cap, base, rng);
                if leading_block_condition_bound(&a) <= cap * (1.0 + 1e-9) {
                    return Ok(a);
                }
                retries += 1;
            }
            Err(Error::Domain(format!(
                "could not meet condition_cap = {cap} after {MAX_RETRIES} retries"
            )))
        };

    let base = if kind == GeneratorKind::Proportional {
        let inner = if hermitian_only {
            GeneratorKind::PdWithFloor
        } else {
            GeneratorKind::Sector
        };
        let b = draw_matrix(inner, n, alpha, cap, None, &mut rng);
        Some(b)
    } else {
        None
    };

    // First member sits exactly at the target angle; the rest anywhere inside.
    let mut matrices = Vec::with_capacity(m);
    for i in 0..m {
        let angle = if i == 0 || kind == GeneratorKind::Proportional {
            alpha
        } else {
            alpha * rng.random_range(0.0..=1.0)
        };
        matrices.push(draw_checked(angle, base.as_ref(), &mut rng)?);
    }

    let floors = if id.uses_floors() {
        matrices
            .iter()
            .map(|a| {
                let re = if class == HypothesisClass::AccretiveDissipative {
                    real_part(&a.rotate(-FRAC_PI_4))
                } else {
                    real_part(a)
                };
                let top = hermitian_eigenvalues(&re)
                    .last()
                    .copied()
                    .unwrap_or(0.0)
                    .max(0.0);
                match spec.floor_policy {
                    FloorPolicy::Zero => 0.0,
                    FloorPolicy::RandomFractionOfLambdaMin => top * rng.random_range(0.0..=1.0),
                    FloorPolicy::Saturating => top,
                }
            })
            .collect()
    } else {
        vec![0.0; m]
    };

    let weights = id
        .weight_rule()
        .map(|normalized| random_weights(m, normalized, &mut rng));
    let alpha_field = if class == HypothesisClass::AccretiveDissipative {
        FRAC_PI_4
    } else {
        alpha
    };
    let inst = InequalityInstance::new(matrices, floors, k, alpha_field, weights)?;
    Ok(GeneratedTrial {
        input: TrialInput::Matrices(inst),
        retries,
    })
}

/// Nonnegative weights, about one in five exactly zero but never all zero;
/// normalized to sum to one when asked.
fn random_weights<R: Rng + ?Sized>(m: usize, normalized: bool, rng: &mut R) -> Vec<f64> {
    let mut w: Vec<f64> = (0..m)
        .map(|_| {
            if m > 1 && rng.random_bool(0.2) {
                0.0
            } else {
                rng.random_range(0.05..2.0)
            }
        })
        .collect();
    if w.iter().all(|&x| x == 0.0) {
        w[0] = 1.0;
    }
    if normalized {
        let total: f64 = w.iter().sum();
        for x in &mut w {
            *x /= total;
        }
    }
    w
}
