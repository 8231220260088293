use thiserror::Error;

use crate::defining::{DefiningSetRecord, SearchKind};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("not a Steiner triple system: {0}")]
    NotADesign(String),

    #[error("unknown built-in system `{0}`")]
    UnknownName(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("system is {chromatic}-chromatic, a 3-chromatic system is required")]
    NotThreeChromatic { chromatic: usize },

    #[error("partial colouring is not a defining set")]
    NotDefining,

    #[error("node budget exhausted: {0}")]
    BudgetExhausted(Box<BudgetReport>),

    #[error("{task} exceeded its budget of {budget} nodes")]
    NodeLimit { task: &'static str, budget: u64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("catalog entry {id}: {reason}")]
    CatalogEntry { id: usize, reason: String },

    #[error("catalog has {found} entries, expected {expected}")]
    WrongCount { expected: usize, found: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Certified state of a search that ran out of budget.
///
/// For a minimum search the true value lies in `lower..=best_size`; for a
/// largest-minimal search it lies in `best_size..=upper`.
#[derive(Debug, Clone)]
pub struct BudgetReport {
    pub kind: SearchKind,
    pub best: Option<DefiningSetRecord>,
    pub lower: usize,
    pub upper: usize,
    pub nodes_used: u64,
    pub budget: u64,
}

impl std::fmt::Display for BudgetReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} search used {} of {} nodes; value in [{}, {}]",
            self.kind.as_str(),
            self.nodes_used,
            self.budget,
            self.lower,
            self.upper
        )
    }
}
