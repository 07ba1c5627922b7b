//! Batch verification runs: generate, evaluate, aggregate, write.
//!
//! A campaign enumerates `inequality × n × m × k × trial` in a fixed order.
//! Each cell gets its own RNG stream, trials run in parallel, and results are
//! collected back in enumeration order, so reports do not depend on the
//! thread count.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generate::{effective_m, generate_trial, valid_ks, GeneratorSpec, KChoice, TrialInput};
use crate::inequality::{
    check_minkowski_complement, evaluate, InequalityId, InequalityReport, KRange,
};
use crate::tolerance::TOL_VERDICT;

/// Bits reserved for the per-inequality trial counter in a stream index.
const STREAM_SHIFT: u32 = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

/// Leading-block indices to sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum KSelection {
    Named(KMode),
    List(Vec<usize>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KMode {
    /// Every valid `k` for each `n`.
    All,
    /// One uniformly drawn valid `k` per trial.
    Random,
}

impl Default for KSelection {
    fn default() -> Self {
        KSelection::Named(KMode::All)
    }
}

/// Which inequalities to run: `"all"` or a list of ids and aliases.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSelection", into = "RawSelection")]
pub enum InequalitySelection {
    All,
    List(Vec<InequalityId>),
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawSelection {
    One(String),
    Many(Vec<String>),
}

impl TryFrom<RawSelection> for InequalitySelection {
    type Error = Error;

    fn try_from(raw: RawSelection) -> Result<Self> {
        match raw {
            RawSelection::One(s) if s == "all" => Ok(InequalitySelection::All),
            RawSelection::One(s) => Err(Error::Parse(format!(
                "inequalities must be \"all\" or a list, got \"{s}\""
            ))),
            RawSelection::Many(v) => Ok(InequalitySelection::List(
                v.iter().map(|s| s.parse()).collect::<Result<_>>()?,
            )),
        }
    }
}

impl From<InequalitySelection> for RawSelection {
    fn from(s: InequalitySelection) -> Self {
        match s {
            InequalitySelection::All => RawSelection::One("all".into()),
            InequalitySelection::List(ids) => {
                RawSelection::Many(ids.iter().map(|id| id.to_string()).collect())
            }
        }
    }
}

impl InequalitySelection {
    pub fn ids(&self) -> Vec<InequalityId> {
        match self {
            InequalitySelection::All => InequalityId::EVALUATORS.to_vec(),
            InequalitySelection::List(ids) => ids.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CampaignConfig {
    pub inequalities: InequalitySelection,
    #[serde(default)]
    pub generator: GeneratorSpec,
    pub trials: usize,
    pub dims: Vec<usize>,
    #[serde(default)]
    pub ks: KSelection,
    /// Family sizes; defaults to `[generator.m]`. Ignored by pair and
    /// single-matrix evaluators.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ms: Option<Vec<usize>>,
    #[serde(default = "default_tol")]
    pub tol_verdict: f64,
    #[serde(default)]
    pub output_format: OutputFormat,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_path: Option<PathBuf>,
    /// Worker threads; `None` uses all cores.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jobs: Option<usize>,
}

fn default_tol() -> f64 {
    TOL_VERDICT
}

impl CampaignConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: CampaignConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Domain("trials must be >= 1".into()));
        }
        if !(self.tol_verdict > 0.0 && self.tol_verdict.is_finite()) {
            return Err(Error::Domain(format!(
                "tol_verdict = {} must be > 0",
                self.tol_verdict
            )));
        }
        if self.dims.is_empty() || self.dims.contains(&0) {
            return Err(Error::Domain(
                "dims must be a non-empty list of orders >= 1".into(),
            ));
        }
        if self.ids().is_empty() {
            return Err(Error::Domain("no inequalities selected".into()));
        }
        if let Some(ms) = &self.ms {
            if ms.is_empty() || ms.contains(&0) {
                return Err(Error::Domain(
                    "ms must be a non-empty list of sizes >= 1".into(),
                ));
            }
        }
        if self.jobs == Some(0) {
            return Err(Error::Domain("jobs must be >= 1".into()));
        }
        self.generator.validate()
    }

    pub fn ids(&self) -> Vec<InequalityId> {
        self.inequalities.ids()
    }

    fn family_sizes(&self, id: InequalityId) -> Vec<usize> {
        let ms = self.ms.clone().unwrap_or_else(|| vec![self.generator.m]);
        ms.into_iter().map(|m| effective_m(id, m)).collect()
    }

    fn k_choices(&self, id: InequalityId, n: usize) -> Vec<KChoice> {
        let valid = valid_ks(id, n);
        match &self.ks {
            KSelection::Named(KMode::All) => valid.into_iter().map(KChoice::Fixed).collect(),
            KSelection::Named(KMode::Random) if valid.is_empty() => vec![],
            KSelection::Named(KMode::Random) => vec![KChoice::Random],
            KSelection::List(_) if id.k_range() == KRange::Unused => vec![KChoice::Fixed(0)],
            KSelection::List(list) => list
                .iter()
                .filter(|k| valid.contains(k))
                .map(|&k| KChoice::Fixed(k))
                .collect(),
        }
    }

    /// Every trial in enumeration order.
    pub fn plan(&self) -> Vec<PlannedTrial> {
        let mut out = Vec::new();
        for id in self.ids() {
            let mut counter = 0u64;
            for &n in &self.dims {
                for m in self.family_sizes(id) {
                    for k in self.k_choices(id, n) {
                        for _ in 0..self.trials {
                            let seed_index = (id.ordinal() << STREAM_SHIFT) | counter;
                            counter += 1;
                            out.push(PlannedTrial {
                                id,
                                n,
                                m,
                                k,
                                seed_index,
                            });
                        }
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlannedTrial {
    pub id: InequalityId,
    pub n: usize,
    pub m: usize,
    pub k: KChoice,
    pub seed_index: u64,
}

/// One evaluated trial; also the CSV row layout.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRow {
    pub inequality_id: InequalityId,
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub alpha: f64,
    pub seed_index: u64,
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
    pub rel_gap: f64,
    pub holds: bool,
    pub clamped_terms: u32,
}

pub const CSV_COLUMNS: [&str; 12] = [
    "inequality_id",
    "n",
    "k",
    "m",
    "alpha",
    "seed_index",
    "lhs",
    "rhs",
    "gap",
    "rel_gap",
    "holds",
    "clamped_terms",
];

/// A trial whose generation or evaluation failed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialError {
    pub inequality_id: InequalityId,
    pub n: usize,
    pub m: usize,
    pub seed_index: u64,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub inequality_id: InequalityId,
    pub trials: usize,
    pub violations: usize,
    /// Smallest `rel_gap` seen; the worst case whether or not it violates.
    pub worst_rel_gap: Option<f64>,
    pub equality_cases: usize,
    /// Trials with at least one clamped bracket.
    pub clamped_trials: usize,
    pub clamped_terms: u64,
    pub min_gap: Option<f64>,
    pub median_gap: Option<f64>,
    pub generator_retries: u64,
    pub errors: usize,
}

/// Run-specific data kept apart from the deterministic body.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    /// Seconds since the Unix epoch at the start of the run.
    pub timestamp: u64,
    pub wall_time_seconds: f64,
    pub per_inequality_seconds: BTreeMap<InequalityId, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub config: CampaignConfig,
    pub aggregates: Vec<Aggregate>,
    pub rows: Vec<TrialRow>,
    pub errors: Vec<TrialError>,
    pub metadata: Metadata,
}

impl CampaignReport {
    pub fn total_violations(&self) -> usize {
        self.aggregates.iter().map(|a| a.violations).sum()
    }

    pub fn total_errors(&self) -> usize {
        self.errors.len()
    }

    /// JSON of everything except [`Metadata`]; identical across reruns.
    pub fn deterministic_json(&self) -> Result<String> {
        let mut value = serde_json::to_value(self)?;
        if let Some(obj) = value.as_object_mut() {
            obj.remove("metadata");
        }
        Ok(serde_json::to_string_pretty(&value)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Per-trial rows with the fixed [`CSV_COLUMNS`] header.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(CSV_COLUMNS).map_err(csv_err)?;
        for r in &self.rows {
            w.write_record([
                r.inequality_id.to_string(),
                r.n.to_string(),
                r.k.to_string(),
                r.m.to_string(),
                r.alpha.to_string(),
                r.seed_index.to_string(),
                r.lhs.to_string(),
                r.rhs.to_string(),
                r.gap.to_string(),
                r.rel_gap.to_string(),
                r.holds.to_string(),
                r.clamped_terms.to_string(),
            ])
            .map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Writes the report in the configured format. CSV mode writes the rows
    /// to `path` and the remaining fields to `<path>.summary.json`.
    pub fn write(&self, path: &Path, format: OutputFormat) -> Result<Vec<PathBuf>> {
        match format {
            OutputFormat::Json => {
                write_file(path, &self.to_json()?)?;
                Ok(vec![path.to_path_buf()])
            }
            OutputFormat::Csv => {
                write_file(path, &self.to_csv()?)?;
                let mut summary = self.clone();
                summary.rows.clear();
                let side = summary_path(path);
                write_file(&side, &summary.to_json()?)?;
                Ok(vec![path.to_path_buf(), side])
            }
        }
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Parse(e.to_string())
}

pub fn summary_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".summary.json");
    PathBuf::from(s)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    let io = |source| Error::Io {
        path: path.display().to_string(),
        source,
    };
    let mut f = fs::File::create(path).map_err(io)?;
    f.write_all(text.as_bytes()).map_err(io)?;
    if !text.ends_with('\n') {
        f.write_all(b"\n").map_err(io)?;
    }
    Ok(())
}

/// Parses rows back from [`CampaignReport::to_csv`] output.
pub fn rows_from_csv(text: &str) -> Result<Vec<TrialRow>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    r.deserialize().map(|row| row.map_err(csv_err)).collect()
}

enum Outcome {
    Row(TrialRow, u32),
    Failed(TrialError),
}

fn run_trial(cfg: &CampaignConfig, t: &PlannedTrial) -> Outcome {
    let spec = GeneratorSpec {
        n: t.n,
        m: t.m,
        ..cfg.generator.clone()
    };
    let fail = |message: String| {
        Outcome::Failed(TrialError {
            inequality_id: t.id,
            n: t.n,
            m: t.m,
            seed_index: t.seed_index,
            message,
        })
    };
    let generated = match generate_trial(t.id, &spec, t.k, t.seed_index) {
        Ok(g) => g,
        Err(e) => return fail(format!("generation: {e}")),
    };
    let report: Result<InequalityReport> = match &generated.input {
        TrialInput::Matrices(inst) => evaluate(t.id, inst),
        TrialInput::Grid(grid) => check_minkowski_complement(grid),
    };
    match report {
        Ok(r) => {
            let r = r.with_tolerance(cfg.tol_verdict);
            let row = TrialRow {
                inequality_id: t.id,
                n: t.n,
                k: generated.k(),
                m: generated.m(),
                alpha: generated.alpha(),
                seed_index: t.seed_index,
                lhs: r.lhs,
                rhs: r.rhs,
                gap: r.gap,
                rel_gap: r.rel_gap,
                holds: r.holds,
                clamped_terms: r.clamped_terms,
            };
            Outcome::Row(row, generated.retries)
        }
        Err(e) => fail(format!("evaluation: {e}")),
    }
}

/// Aggregates for one inequality, recomputable from its rows alone.
pub fn aggregate(id: InequalityId, rows: &[TrialRow], retries: u64, errors: usize) -> Aggregate {
    let mine: Vec<&TrialRow> = rows.iter().filter(|r| r.inequality_id == id).collect();
    let mut gaps: Vec<f64> = mine.iter().map(|r| r.gap).collect();
    gaps.sort_by(f64::total_cmp);
    let median_gap = match gaps.len() {
        0 => None,
        len if len % 2 == 1 => Some(gaps[len / 2]),
        len => Some(0.5 * (gaps[len / 2 - 1] + gaps[len / 2])),
    };
    Aggregate {
        inequality_id: id,
        trials: mine.len(),
        violations: mine.iter().filter(|r| !r.holds).count(),
        worst_rel_gap: mine.iter().map(|r| r.rel_gap).min_by(f64::total_cmp),
        equality_cases: mine
            .iter()
            .filter(|r| r.rel_gap.abs() <= crate::tolerance::EQUALITY_REL_GAP)
            .count(),
        clamped_trials: mine.iter().filter(|r| r.clamped_terms > 0).count(),
        clamped_terms: mine.iter().map(|r| u64::from(r.clamped_terms)).sum(),
        min_gap: gaps.first().copied(),
        median_gap,
        generator_retries: retries,
        errors,
    }
}

/// Runs the whole campaign in memory. Writing is left to the caller.
pub fn run(cfg: &CampaignConfig) -> Result<CampaignReport> {
    cfg.validate()?;
    let timestamp = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let start = Instant::now();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.unwrap_or(0))
        .build()
        .map_err(|e| Error::Domain(format!("thread pool: {e}")))?;

    let mut rows = Vec::new();
    let mut errors = Vec::new();
    let mut aggregates = Vec::new();
    let mut per_inequality_seconds = BTreeMap::new();
    let plan = cfg.plan();

    for id in cfg.ids() {
        let t0 = Instant::now();
        let trials: Vec<&PlannedTrial> = plan.iter().filter(|t| t.id == id).collect();
        let outcomes: Vec<Outcome> =
            pool.install(|| trials.par_iter().map(|t| run_trial(cfg, t)).collect());

        let first_row = rows.len();
        let mut retries = 0u64;
        let mut failed = 0;
        for o in outcomes {
            match o {
                Outcome::Row(row, r) => {
                    retries += u64::from(r);
                    rows.push(row);
                }
                Outcome::Failed(e) => {
                    failed += 1;
                    errors.push(e);
                }
            }
        }
        aggregates.push(aggregate(id, &rows[first_row..], retries, failed));
        per_inequality_seconds.insert(id, t0.elapsed().as_secs_f64());
    }

    Ok(CampaignReport {
        config: cfg.clone(),
        aggregates,
        rows,
        errors,
        metadata: Metadata {
            timestamp,
            wall_time_seconds: start.elapsed().as_secs_f64(),
            per_inequality_seconds,
        },
    })
}
