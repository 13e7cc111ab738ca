//! Janet-like completion of linear difference ideals.
//!
//! [`groebner_basis`] builds a Janet-like basis with ancestor tracking and the chain
//! criteria, then extracts the reduced Gröbner basis from it. [`buchberger_oracle`] is an
//! independent plain Buchberger completion used for cross-checking, and [`certify`]
//! re-verifies finished results from scratch.

pub mod certify;
mod janet;
mod oracle;
mod partition;
pub mod random;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::Field;
use crate::diffpoly::{DiffPoly, DiffPolyError, RankedPoly, Ranking, Shift, WorkBudget};

pub use janet::{
    c1, c2, c3, c4, groebner_basis, head_reduce_queue, j_normal_form, shifts_coprime, Ancestor, JanetBasis,
    Origin, Triple,
};
pub use oracle::{buchberger_oracle, interreduce, s_polynomial};
pub use partition::{difference_powers, is_janet_multiplier, Power};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("reduction budget of {limit} steps exceeded")]
    BudgetExceeded { limit: u64 },
    #[error("polynomial has {found} shift slots but the ranking has {expected}")]
    ShiftArity { expected: usize, found: usize },
    #[error("indeterminate {found} is outside the ranking's {expected} indeterminates")]
    UnknownIndet { expected: usize, found: usize },
}

impl From<DiffPolyError> for EngineError {
    fn from(e: DiffPolyError) -> Self {
        match e {
            DiffPolyError::BudgetExceeded { limit } => EngineError::BudgetExceeded { limit },
            other => unreachable!("engine reductions cannot fail with {other}"),
        }
    }
}

/// Index of the chain criteria: C1, C2, C3 and the co-prime criterion C4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Criterion {
    C1,
    C2,
    C3,
    C4,
}

impl Criterion {
    pub const ALL: [Criterion; 4] = [Criterion::C1, Criterion::C2, Criterion::C3, Criterion::C4];

    pub fn index(self) -> usize {
        self as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EngineOptions {
    /// Per-criterion switches. C4 additionally requires parameter-free coefficients and a
    /// single indeterminate.
    pub criteria: [bool; 4],
    /// Maximum number of elementary reductions and loop iterations.
    pub budget: u64,
    /// Record a step-by-step event log.
    pub trace: bool,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions {
            criteria: [true; 4],
            budget: WorkBudget::DEFAULT_LIMIT,
            trace: false,
        }
    }
}

impl EngineOptions {
    pub fn without(mut self, c: Criterion) -> Self {
        self.criteria[c.index()] = false;
        self
    }

    pub fn no_criteria() -> Self {
        EngineOptions {
            criteria: [false; 4],
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EngineStats {
    /// Elementary head reductions.
    pub head_reductions: u64,
    /// Elementary tail reductions.
    pub tail_reductions: u64,
    /// Polynomials whose head normal form vanished.
    pub zero_reductions: u64,
    /// Head-reducible prolongations on which the criteria were evaluated.
    pub criteria_checks: u64,
    /// Polynomials discarded by C1..C4.
    pub criteria_hits: [u64; 4],
    /// Prolongations by difference powers.
    pub prolongations: u64,
    /// Basis elements moved back to the queue.
    pub moved_back: u64,
    /// Queue entries dropped as descendants of a vanished ancestor.
    pub purged: u64,
    /// Iterations of the main loop.
    pub iterations: u64,
    pub max_queue: usize,
    /// Budget units consumed.
    pub work: u64,
    /// Whether C4 was in effect for this input.
    pub coprime_enabled: bool,
}

/// Basis element in the Janet-like result, with its difference powers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JanetElement<K> {
    pub pol: DiffPoly<K>,
    pub dp: Vec<Power>,
    /// True when the element is its own ancestor.
    pub is_ancestor: bool,
}

#[derive(Clone, Debug)]
pub struct BasisResult<K> {
    pub janet_like: Vec<JanetElement<K>>,
    pub reduced_gb: Vec<DiffPoly<K>>,
    pub stats: EngineStats,
    pub trace: Vec<TraceEvent>,
}

/// One step of a traced run. Polynomials are identified by triple id and leading monomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum TraceEvent {
    Select { id: usize, lm: String },
    MoveBack { id: usize, lm: String },
    Insert { id: usize, idx: usize, lm: String, anc: usize },
    Prolong { parent: usize, power: String, lm: String },
    Criterion { id: usize, which: Criterion },
    Vanish { id: usize },
    Purge { id: usize },
    Wrap { id: usize, lm: String },
}

pub(crate) fn check_input<K: Field>(fs: &[DiffPoly<K>], r: &Ranking) -> Result<(), EngineError> {
    for f in fs {
        for (m, _) in f.terms() {
            if m.mu.len() != r.num_shifts() {
                return Err(EngineError::ShiftArity {
                    expected: r.num_shifts(),
                    found: m.mu.len(),
                });
            }
            if m.indet.index() >= r.num_indets() {
                return Err(EngineError::UnknownIndet {
                    expected: r.num_indets(),
                    found: m.indet.index(),
                });
            }
        }
    }
    Ok(())
}

/// Normalized copies sorted from highest to lowest leading monomial.
pub(crate) fn canonical<K: Field>(ps: impl IntoIterator<Item = RankedPoly<K>>) -> Vec<RankedPoly<K>> {
    let mut out: Vec<RankedPoly<K>> = ps
        .into_iter()
        .filter(|p| !p.is_zero())
        .map(|p| p.normalized())
        .collect();
    out.sort_by(|a, b| b.lead_key().cmp(&a.lead_key()).then_with(|| b.lm().cmp(&a.lm())));
    out
}

pub(crate) fn power_shift(p: &Power, n: usize) -> Shift {
    Shift::from_vec(p.as_shift(n))
}
