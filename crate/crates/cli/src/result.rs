use std::collections::BTreeMap;

use serde::Serialize;
use sts_core::golden::RowVerdict;
use sts_core::{ColorPattern, DefiningSetRecord, Strength};

/// Outcome class of a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    Failed,
    BudgetExhausted,
}

/// The JSON document every analysis subcommand emits.
///
/// Keys serialize in field order: `command`, `inputs_digest`, `status`,
/// `records`, `summary`, `budget`, `timings`. Everything except `timings`
/// is reproducible across runs and worker counts.
#[derive(Clone, Debug, Serialize)]
pub struct RunResult {
    /// Canonical echo of the command (worker count omitted).
    pub command: String,
    /// SHA-256 over the systems and options the run depended on.
    pub inputs_digest: String,
    pub status: Status,
    pub records: Vec<DefiningSetRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub summary: Option<Summary>,
    pub budget: BudgetUsage,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

impl RunResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("RunResult serializes")
    }

    /// The JSON with `timings` removed: identical for identical inputs.
    pub fn stable_json(&self) -> String {
        let mut r = self.clone();
        r.timings = None;
        serde_json::to_string(&r).expect("RunResult serializes")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BudgetUsage {
    /// Node limit per search; `None` is unlimited.
    pub limit: Option<u64>,
    pub nodes_used: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timings {
    pub jobs: usize,
    pub wall_ms: u64,
}

/// Command-specific results.
#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum Summary {
    Search(SearchSummary),
    Spectra(SpectraSummary),
    Verify(VerifySummary),
    Catalog(CatalogSummary),
    Classify(ClassifySummary),
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchSummary {
    pub system_id: String,
    pub kind: &'static str,
    pub pattern: Option<ColorPattern>,
    /// Present when the budget ran out: the certified range of the answer.
    pub bounds: Option<[usize; 2]>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectraSummary {
    pub v: usize,
    pub systems: usize,
    pub spec_d: Vec<usize>,
    pub spec_big_d: Vec<usize>,
    pub d: Option<usize>,
    pub big_d: Option<usize>,
    /// Systems whose searches ran out of budget.
    pub incomplete: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifySummary {
    pub rows: usize,
    pub passed: usize,
    pub failed: usize,
    pub verdicts: Vec<RowVerdict>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogSummary {
    pub entries: usize,
    pub source_digest: String,
    pub pairwise_nonisomorphic: Option<bool>,
    pub pasch_distribution: BTreeMap<usize, usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassifySummary {
    pub system_id: String,
    pub size: usize,
    pub defining: bool,
    pub minimal: bool,
    pub strength: Option<Strength>,
    /// The unique extension, when the set is defining.
    pub extension: Option<String>,
}
