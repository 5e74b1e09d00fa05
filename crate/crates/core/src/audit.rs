//! Random-instance campaigns that check every engine variant against the
//! brute-force oracle.
//!
//! Two properties are hard requirements and are counted as soundness
//! violations: an engine must never report UNSAT for a satisfiable formula,
//! and no entry of a grid derived from a model may ever be cleared. Engine
//! SAT claims on unsatisfiable formulas are counted, minimized to 1-minimal
//! clause subsets and reported, but are not treated as failures of the run.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cnf::{Assignment, Clause, Cnf, Literal};
use crate::compat::CompatMatrix;
use crate::engine::{Decision, EngineConfig, EngineError, Variant};
use crate::extract::{extract_self_reduce, ExtractError, ExtractionStatus};
use crate::oracle::{self, grid_from_assignment, OracleDecision, OracleError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClauseLen {
    /// Every clause has exactly this many literals.
    Fixed(usize),
    /// Each clause length drawn uniformly from 1..=3.
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenConfig {
    pub num_vars: u32,
    pub num_clauses: usize,
    pub clause_len: ClauseLen,
    pub seed: u64,
    pub allow_duplicate_clauses: bool,
    /// Append `(x1) ∧ (¬x1)` after the random clauses.
    pub plant_contradiction: bool,
}

impl GenConfig {
    pub fn fixed3(num_vars: u32, num_clauses: usize, seed: u64) -> Self {
        GenConfig {
            num_vars,
            num_clauses,
            clause_len: ClauseLen::Fixed(3),
            seed,
            allow_duplicate_clauses: false,
            plant_contradiction: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("need at least one variable and one clause")]
    Empty,
    #[error("clause length {len} is not in 1..=3 or exceeds {num_vars} variables")]
    BadClauseLen { len: usize, num_vars: u32 },
    #[error("cannot draw {wanted} distinct clauses, only {available} exist")]
    NotEnoughDistinct { wanted: usize, available: u128 },
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Draws a random formula: distinct variables per clause, uniform signs.
/// Deterministic in `cfg.seed`.
pub fn gen_random(cfg: &GenConfig) -> Result<Cnf, GenError> {
    let n = cfg.num_vars;
    if n == 0 || cfg.num_clauses == 0 {
        return Err(GenError::Empty);
    }
    if let ClauseLen::Fixed(len) = cfg.clause_len {
        if len == 0 || len > 3 || len > n as usize {
            return Err(GenError::BadClauseLen { len, num_vars: n });
        }
        let available = binomial(n as u128, len as u128) << len;
        if !cfg.allow_duplicate_clauses && available < cfg.num_clauses as u128 {
            return Err(GenError::NotEnoughDistinct {
                wanted: cfg.num_clauses,
                available,
            });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut seen = HashSet::new();
    let mut clauses = Vec::with_capacity(cfg.num_clauses + 2);
    while clauses.len() < cfg.num_clauses {
        let mut attempts = 0;
        let clause = loop {
            let len = match cfg.clause_len {
                ClauseLen::Fixed(len) => len,
                ClauseLen::Mixed => rng.gen_range(1..=3.min(n as usize)),
            };
            let lits = sample(&mut rng, n as usize, len)
                .into_iter()
                .map(|v| Literal::new(v as u32 + 1, rng.gen()));
            let clause = Clause::new(lits)
                .expect("1..=3 distinct variables")
                .expect("distinct variables cannot form a tautology");
            if cfg.allow_duplicate_clauses || seen.insert(clause.clone()) {
                break clause;
            }
            attempts += 1;
            if attempts > 10_000 {
                return Err(GenError::NotEnoughDistinct {
                    wanted: cfg.num_clauses,
                    available: seen.len() as u128,
                });
            }
        };
        clauses.push(clause);
    }
    if cfg.plant_contradiction {
        clauses.push(Clause::from_dimacs(&[1]));
        clauses.push(Clause::from_dimacs(&[-1]));
    }
    Ok(Cnf::new(n, clauses).expect("variables drawn from 1..=n"))
}

/// Greedy clause-removal minimizer. The result is a clause subset of `f`
/// on which `predicate` holds, and removing any single clause from it makes
/// the predicate fail. An input that is already 1-minimal comes back
/// unchanged.
///
/// # Panics
/// Panics if `predicate(f)` is false.
pub fn minimize(f: &Cnf, mut predicate: impl FnMut(&Cnf) -> bool) -> Cnf {
    assert!(predicate(f), "minimize needs an instance satisfying the predicate");
    let mut current = f.clone();
    loop {
        let mut removed_any = false;
        let mut idx = 0;
        while idx < current.num_clauses() {
            let candidate = current.retain_clauses(|i| i != idx);
            if predicate(&candidate) {
                current = candidate;
                removed_any = true;
            } else {
                idx += 1;
            }
        }
        if !removed_any {
            return current;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VariantOutcome {
    pub variant: Variant,
    pub decision: Decision,
    pub sweeps: usize,
    pub box_updates: u64,
    pub early_exit: bool,
    #[serde(skip)]
    pub wall_time: Duration,
    /// Decision matches the oracle.
    pub agrees: bool,
    /// Model-grid entries cleared in the final matrix; must be zero.
    pub grid_entries_cleared: usize,
    /// `sweeps ≤ entry_count + 1`.
    pub within_sweep_bound: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtractionSummary {
    pub variant: Variant,
    pub status: ExtractionStatus,
    pub model: Option<Assignment>,
    pub engine_runs: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditRecord {
    pub index: usize,
    pub seed: Option<u64>,
    pub num_vars: u32,
    pub num_clauses: usize,
    pub oracle: OracleDecision,
    pub models: usize,
    pub variants: Vec<VariantOutcome>,
    pub extractions: Vec<ExtractionSummary>,
}

impl AuditRecord {
    pub fn outcome(&self, variant: Variant) -> &VariantOutcome {
        self.variants
            .iter()
            .find(|o| o.variant == variant)
            .expect("every variant is audited")
    }

    /// Engine UNSAT on a satisfiable formula.
    pub fn decision_violations(&self) -> usize {
        self.variants
            .iter()
            .filter(|o| o.decision == Decision::Unsat && self.oracle == OracleDecision::Sat)
            .count()
    }

    pub fn grid_violations(&self) -> usize {
        self.variants.iter().map(|o| o.grid_entries_cleared).sum()
    }

    /// An extraction that returned a model for an unsatisfiable formula.
    pub fn extraction_violations(&self) -> usize {
        self.extractions
            .iter()
            .filter(|e| e.status == ExtractionStatus::Model && self.oracle == OracleDecision::Unsat)
            .count()
    }

    /// Variants that claimed SAT on an unsatisfiable formula.
    pub fn completeness_failures(&self) -> Vec<Variant> {
        self.variants
            .iter()
            .filter(|o| o.decision == Decision::SatClaim && self.oracle == OracleDecision::Unsat)
            .map(|o| o.variant)
            .collect()
    }
}

#[derive(Debug, Error)]
pub enum AuditError {
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Extract(#[from] ExtractError),
    #[error("invalid campaign: {0}")]
    InvalidConfig(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

fn oracle_decision_matches(decision: Decision, oracle: OracleDecision) -> bool {
    matches!(
        (decision, oracle),
        (Decision::Unsat, OracleDecision::Unsat) | (Decision::SatClaim, OracleDecision::Sat)
    )
}

/// Runs the oracle and all four variants on `f`, checks every model grid
/// against every final matrix, and extracts a model from SAT claims.
///
/// Extraction always uses the basic variant; any other variant whose SAT
/// claim contradicts the oracle is additionally run through extraction to
/// confirm that the verifier gate rejects it.
pub fn audit_instance(f: &Cnf) -> Result<AuditRecord, AuditError> {
    let oracle_result = oracle::brute_force(f, true)?;
    let grids: BTreeSet<_> = oracle_result
        .models
        .iter()
        .map(|a| grid_from_assignment(f, a))
        .collect();
    let built = CompatMatrix::build(f);
    let entry_count = built.entry_count();

    let mut variants = Vec::with_capacity(Variant::ALL.len());
    for variant in Variant::ALL {
        let v = EngineConfig::new(variant).run(built.clone())?;
        let grid_entries_cleared = grids.iter().map(|g| v.fixpoint.cleared_grid_entries(g)).sum();
        variants.push(VariantOutcome {
            variant,
            decision: v.decision,
            sweeps: v.stats.sweeps,
            box_updates: v.stats.box_updates,
            early_exit: v.stats.terminated_early,
            wall_time: v.stats.wall_time,
            agrees: oracle_decision_matches(v.decision, oracle_result.decision),
            grid_entries_cleared,
            within_sweep_bound: v.stats.sweeps as u64 <= entry_count + 1,
        });
    }

    let mut extractions = Vec::new();
    for o in &variants {
        let wanted = o.decision == Decision::SatClaim
            && (o.variant == Variant::Basic || !o.agrees);
        if wanted {
            let out = extract_self_reduce(f, &EngineConfig::new(o.variant))?;
            extractions.push(ExtractionSummary {
                variant: o.variant,
                status: out.status,
                engine_runs: out.engine_runs(),
                model: out.model,
            });
        }
    }

    Ok(AuditRecord {
        index: 0,
        seed: None,
        num_vars: f.num_vars(),
        num_clauses: f.num_clauses(),
        oracle: oracle_result.decision,
        models: oracle_result.models.len(),
        variants,
        extractions,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CampaignConfig {
    pub count: usize,
    pub master_seed: u64,
    pub min_vars: u32,
    pub max_vars: u32,
    pub min_ratio: f64,
    pub max_ratio: f64,
    pub clause_len: ClauseLen,
    pub plant_contradiction: bool,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            count: 1000,
            master_seed: 0,
            min_vars: 5,
            max_vars: 16,
            min_ratio: 3.0,
            max_ratio: 5.0,
            clause_len: ClauseLen::Fixed(3),
            plant_contradiction: false,
        }
    }
}

impl CampaignConfig {
    fn validate(&self) -> Result<(), AuditError> {
        let bad = |msg: &str| Err(AuditError::InvalidConfig(msg.to_string()));
        if self.min_vars == 0 || self.min_vars > self.max_vars {
            return bad("need 1 <= min_vars <= max_vars");
        }
        if !(self.min_ratio > 0.0 && self.min_ratio <= self.max_ratio && self.max_ratio.is_finite()) {
            return bad("need 0 < min_ratio <= max_ratio");
        }
        if self.max_vars > oracle::max_vars() {
            return bad("max_vars exceeds the oracle limit");
        }
        if let ClauseLen::Fixed(len) = self.clause_len {
            if len == 0 || len > 3 || len > self.min_vars as usize {
                return bad("fixed clause length must be in 1..=3 and at most min_vars");
            }
        }
        Ok(())
    }

    /// The generator settings of every instance, derived in order from the
    /// master seed.
    pub fn instances(&self) -> Vec<GenConfig> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        (0..self.count)
            .map(|_| {
                let num_vars = rng.gen_range(self.min_vars..=self.max_vars);
                let ratio = if self.min_ratio < self.max_ratio {
                    rng.gen_range(self.min_ratio..=self.max_ratio)
                } else {
                    self.min_ratio
                };
                let seed = rng.gen();
                GenConfig {
                    num_vars,
                    num_clauses: ((ratio * num_vars as f64).round() as usize).max(1),
                    clause_len: self.clause_len,
                    seed,
                    allow_duplicate_clauses: false,
                    plant_contradiction: self.plant_contradiction,
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AgreementCounts {
    pub both_sat: usize,
    pub both_unsat: usize,
    pub engine_sat_oracle_unsat: usize,
    pub engine_unsat_oracle_sat: usize,
    pub grid_entries_cleared: usize,
    pub sweep_bound_violations: usize,
}

impl AgreementCounts {
    pub fn total(&self) -> usize {
        self.both_sat + self.both_unsat + self.engine_sat_oracle_unsat + self.engine_unsat_oracle_sat
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct MedianPoint {
    pub instances: usize,
    pub median_sweeps: usize,
    pub log2_m: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct IterationSummary {
    pub min: Option<usize>,
    pub median: Option<usize>,
    pub max: Option<usize>,
    pub histogram: BTreeMap<usize, usize>,
    /// Median sweeps per clause count, next to `log2 m`.
    pub median_by_m: BTreeMap<usize, MedianPoint>,
}

fn lower_median(sorted: &[usize]) -> Option<usize> {
    if sorted.is_empty() {
        None
    } else {
        Some(sorted[(sorted.len() - 1) / 2])
    }
}

impl IterationSummary {
    fn from_samples(samples: &[(usize, usize)]) -> Self {
        let mut sweeps: Vec<usize> = samples.iter().map(|&(_, s)| s).collect();
        sweeps.sort_unstable();
        let mut histogram = BTreeMap::new();
        for &s in &sweeps {
            *histogram.entry(s).or_insert(0) += 1;
        }
        let mut per_m: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &(m, s) in samples {
            per_m.entry(m).or_default().push(s);
        }
        let median_by_m = per_m
            .into_iter()
            .map(|(m, mut s)| {
                s.sort_unstable();
                let point = MedianPoint {
                    instances: s.len(),
                    median_sweeps: lower_median(&s).unwrap_or(0),
                    log2_m: (m as f64).log2(),
                };
                (m, point)
            })
            .collect();
        IterationSummary {
            min: sweeps.first().copied(),
            median: lower_median(&sweeps),
            max: sweeps.last().copied(),
            histogram,
            median_by_m,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub index: usize,
    pub seed: Option<u64>,
    pub variant: Variant,
    pub oracle: OracleDecision,
    pub engine: Decision,
    pub original_clauses: usize,
    pub minimized_clauses: usize,
    pub file: String,
    pub dimacs: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SoundnessSummary {
    pub decision_violations: usize,
    pub grid_violations: usize,
    pub extraction_violations: usize,
    pub ok: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ExtractionCounts {
    pub models: usize,
    pub engine_contradictions: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditReport {
    /// Generator settings; absent for a campaign over given formulas.
    pub campaign: Option<CampaignConfig>,
    pub oracle: BTreeMap<String, usize>,
    pub per_variant: BTreeMap<String, AgreementCounts>,
    /// Sweep statistics of the basic variant.
    pub iterations: IterationSummary,
    pub iterations_by_variant: BTreeMap<String, IterationSummary>,
    pub extraction: ExtractionCounts,
    pub soundness: SoundnessSummary,
    pub counterexamples: Vec<Counterexample>,
    /// Instances where the triangular verdict differs from the basic one.
    pub triangular_divergences: Vec<Counterexample>,
}

impl AuditReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// A finished campaign: the report and the per-instance records.
#[derive(Debug, Clone)]
pub struct Campaign {
    pub report: AuditReport,
    pub records: Vec<AuditRecord>,
}

fn engine_decision(variant: Variant, f: &Cnf) -> Decision {
    EngineConfig::new(variant)
        .decide_formula(f)
        .expect("default schedules are valid")
        .decision
}

fn oracle_unsat(f: &Cnf) -> bool {
    oracle::brute_force(f, false).map(|r| r.decision == OracleDecision::Unsat).unwrap_or(false)
}

/// Runs a seeded campaign. Instances are audited in parallel and merged in
/// index order, so the result depends only on `cfg`.
pub fn run_campaign(cfg: &CampaignConfig) -> Result<Campaign, AuditError> {
    cfg.validate()?;
    let instances = cfg.instances();
    let formulas = instances.iter().map(gen_random).collect::<Result<Vec<_>, _>>()?;
    let seeds: Vec<Option<u64>> = instances.iter().map(|g| Some(g.seed)).collect();
    audit_formulas(Some(cfg), &formulas, &seeds)
}

/// Audits the given formulas as one campaign. `seeds[i]` is recorded with
/// formula `i`; `cfg` is copied into the report when the formulas came
/// from a generated campaign.
pub fn audit_formulas(
    cfg: Option<&CampaignConfig>,
    formulas: &[Cnf],
    seeds: &[Option<u64>],
) -> Result<Campaign, AuditError> {
    assert_eq!(formulas.len(), seeds.len(), "one seed slot per formula");
    let records: Vec<AuditRecord> = formulas
        .par_iter()
        .enumerate()
        .map(|(index, f)| {
            let mut record = audit_instance(f)?;
            record.index = index;
            record.seed = seeds[index];
            Ok(record)
        })
        .collect::<Result<_, AuditError>>()?;

    let mut counterexamples = Vec::new();
    let mut triangular_divergences = Vec::new();
    for record in &records {
        let failures = record.completeness_failures();
        let tri = record.outcome(Variant::Triangular).decision;
        let basic = record.outcome(Variant::Basic).decision;
        if failures.is_empty() && tri == basic {
            continue;
        }
        let f = &formulas[record.index];
        for variant in failures {
            let core = minimize(f, |g| {
                engine_decision(variant, g) == Decision::SatClaim && oracle_unsat(g)
            });
            counterexamples.push(Counterexample {
                index: record.index,
                seed: record.seed,
                variant,
                oracle: OracleDecision::Unsat,
                engine: Decision::SatClaim,
                original_clauses: f.num_clauses(),
                minimized_clauses: core.num_clauses(),
                file: format!("cex_{:05}_{}.cnf", record.index, variant),
                dimacs: core.to_dimacs(),
            });
        }
        if tri != basic {
            let core = minimize(f, |g| {
                engine_decision(Variant::Triangular, g) != engine_decision(Variant::Basic, g)
            });
            triangular_divergences.push(Counterexample {
                index: record.index,
                seed: record.seed,
                variant: Variant::Triangular,
                oracle: record.oracle,
                engine: tri,
                original_clauses: f.num_clauses(),
                minimized_clauses: core.num_clauses(),
                file: format!("divergence_{:05}_triangular.cnf", record.index),
                dimacs: core.to_dimacs(),
            });
        }
    }

    let report = summarize(cfg, &records, counterexamples, triangular_divergences);
    Ok(Campaign { report, records })
}

fn summarize(
    cfg: Option<&CampaignConfig>,
    records: &[AuditRecord],
    counterexamples: Vec<Counterexample>,
    triangular_divergences: Vec<Counterexample>,
) -> AuditReport {
    let mut per_variant = BTreeMap::new();
    let mut iterations_by_variant = BTreeMap::new();
    for variant in Variant::ALL {
        let mut counts = AgreementCounts::default();
        let mut samples = Vec::with_capacity(records.len());
        for r in records {
            let o = r.outcome(variant);
            match (o.decision, r.oracle) {
                (Decision::SatClaim, OracleDecision::Sat) => counts.both_sat += 1,
                (Decision::Unsat, OracleDecision::Unsat) => counts.both_unsat += 1,
                (Decision::SatClaim, OracleDecision::Unsat) => counts.engine_sat_oracle_unsat += 1,
                (Decision::Unsat, OracleDecision::Sat) => counts.engine_unsat_oracle_sat += 1,
            }
            counts.grid_entries_cleared += o.grid_entries_cleared;
            counts.sweep_bound_violations += usize::from(!o.within_sweep_bound);
            samples.push((r.num_clauses, o.sweeps));
        }
        per_variant.insert(variant.name().to_string(), counts);
        iterations_by_variant.insert(variant.name().to_string(), IterationSummary::from_samples(&samples));
    }

    let mut oracle_counts = BTreeMap::from([("sat".to_string(), 0), ("unsat".to_string(), 0)]);
    let mut extraction = ExtractionCounts::default();
    let mut soundness = SoundnessSummary::default();
    for r in records {
        let key = match r.oracle {
            OracleDecision::Sat => "sat",
            OracleDecision::Unsat => "unsat",
        };
        *oracle_counts.get_mut(key).expect("both keys present") += 1;
        for e in &r.extractions {
            match e.status {
                ExtractionStatus::Model => extraction.models += 1,
                ExtractionStatus::EngineContradiction => extraction.engine_contradictions += 1,
            }
        }
        soundness.decision_violations += r.decision_violations();
        soundness.grid_violations += r.grid_violations();
        soundness.extraction_violations += r.extraction_violations();
    }
    soundness.ok = soundness.decision_violations == 0
        && soundness.grid_violations == 0
        && soundness.extraction_violations == 0;

    AuditReport {
        campaign: cfg.cloned(),
        oracle: oracle_counts,
        iterations: iterations_by_variant[Variant::Basic.name()].clone(),
        per_variant,
        iterations_by_variant,
        extraction,
        soundness,
        counterexamples,
        triangular_divergences,
    }
}

/// Flat per-record CSV.
pub fn records_csv(records: &[AuditRecord]) -> Result<String, AuditError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec![
        "index".to_string(),
        "seed".to_string(),
        "num_vars".to_string(),
        "num_clauses".to_string(),
        "oracle".to_string(),
        "models".to_string(),
    ];
    for v in Variant::ALL {
        for field in ["decision", "sweeps", "box_updates", "early_exit", "agrees", "grid_cleared"] {
            header.push(format!("{}_{field}", v.name()));
        }
    }
    header.push("extraction".to_string());
    w.write_record(&header)?;
    for r in records {
        let mut row = vec![
            r.index.to_string(),
            r.seed.map(|s| s.to_string()).unwrap_or_default(),
            r.num_vars.to_string(),
            r.num_clauses.to_string(),
            r.oracle.to_string(),
            r.models.to_string(),
        ];
        for v in Variant::ALL {
            let o = r.outcome(v);
            row.extend([
                o.decision.to_string(),
                o.sweeps.to_string(),
                o.box_updates.to_string(),
                o.early_exit.to_string(),
                o.agrees.to_string(),
                o.grid_entries_cleared.to_string(),
            ]);
        }
        let extraction = r
            .extractions
            .iter()
            .find(|e| e.variant == Variant::Basic)
            .map(|e| match e.status {
                ExtractionStatus::Model => "MODEL",
                ExtractionStatus::EngineContradiction => "ENGINE_CONTRADICTION",
            })
            .unwrap_or("");
        row.push(extraction.to_string());
        w.write_record(&row)?;
    }
    let bytes = w.into_inner().map_err(|e| AuditError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Writes `audit_report.json`, `audit_records.csv` and one `.cnf` file per
/// counterexample and divergence into `dir`. Returns the written paths.
pub fn write_campaign(dir: &Path, campaign: &Campaign) -> Result<Vec<PathBuf>, AuditError> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    let json = dir.join("audit_report.json");
    fs::write(&json, campaign.report.to_json())?;
    written.push(json);
    let csv_path = dir.join("audit_records.csv");
    fs::write(&csv_path, records_csv(&campaign.records)?)?;
    written.push(csv_path);
    for cex in campaign
        .report
        .counterexamples
        .iter()
        .chain(&campaign.report.triangular_divergences)
    {
        let path = dir.join(&cex.file);
        let header = format!(
            "c instance {} seed {} variant {} oracle {} engine {}\n",
            cex.index,
            cex.seed.map(|s| s.to_string()).unwrap_or_else(|| "-".into()),
            cex.variant,
            cex.oracle,
            cex.engine
        );
        fs::write(&path, header + &cex.dimacs)?;
        written.push(path);
    }
    Ok(written)
}
