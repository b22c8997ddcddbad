//! Constraint-tableau prover with countermodel extraction.
//!
//! A tableau branch is a growing set of order constraints (see
//! [`crate::constraints`]). Rules decompose a constraint on a compound
//! formula into constraints on its immediate subformulas, possibly splitting
//! the branch; modal rules introduce fresh worlds, fresh relation weights,
//! and fresh adjacent T-term pairs. A branch is *closed* when its translated
//! linear system (including the T-term gap condition) is infeasible, and a
//! saturated branch that stays feasible yields a finite F-model refuting the
//! query — which is always re-checked by the independent evaluator before
//! being reported.

mod extract;
mod rules;
mod search;

pub use extract::extract_countermodel;
pub use rules::{applicable_rules, apply_rule, RuleInstance};
pub use search::{init_validity, prove, ProveReport, TableauOutcome, TraceEntry, Verdict};

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::constraints::{Constraint, RelSign, SolveError, Structure};
use crate::formula::FormulaError;
use crate::kripke::{FModel, ValuePair};
use crate::Formula;

/// A relational term `(from, sign, to)` occurring on a branch.
pub type RelTerm = (String, RelSign, String);

/// One tableau branch: a constraint set plus the bookkeeping needed to apply
/// each rule instance at most once and to draw fresh symbols.
#[derive(Clone, Debug)]
pub struct Branch {
    pub constraints: BTreeSet<Constraint>,
    /// Rule instances already applied: `(principal, witnessing rel term)`.
    applied: BTreeSet<(Constraint, Option<RelTerm>)>,
    /// All relational terms occurring in the constraint set.
    pub rel_terms: BTreeSet<RelTerm>,
    /// World-generation depth, root at 0.
    pub world_depth: BTreeMap<String, u32>,
    /// Defect world and T-pair instance per modal value `(world, index,
    /// formula)`. The pair straddling a modal value and a worst defect
    /// successor are canonical per value, so every rule application on the
    /// same value shares them — which also dedups the emitted constraints.
    modal_cache: BTreeMap<(String, u8, Formula), (String, u32)>,
    next_world: u32,
    next_var: u32,
    next_pair: u32,
}

impl Branch {
    /// A fresh branch whose root world is `w0`.
    pub fn new() -> Branch {
        Branch {
            constraints: BTreeSet::new(),
            applied: BTreeSet::new(),
            rel_terms: BTreeSet::new(),
            world_depth: BTreeMap::from([(Branch::root_world().to_string(), 0)]),
            modal_cache: BTreeMap::new(),
            next_world: 1,
            next_var: 1,
            next_pair: 0,
        }
    }

    pub fn root_world() -> &'static str {
        "w0"
    }

    /// Adds a constraint, indexing any relational term it mentions and
    /// registering the symbols it uses, so that fresh names never collide
    /// even on hand-seeded branches.
    pub fn insert(&mut self, c: Constraint) {
        for side in [&c.lhs, &c.rhs] {
            match side {
                Structure::Rel { from, sign, to } => {
                    self.rel_terms.insert((from.clone(), *sign, to.clone()));
                    self.register_world(from);
                    self.register_world(to);
                }
                Structure::FVal { world, .. } => self.register_world(world),
                Structure::Term(t) => self.register_term(t),
            }
        }
        self.constraints.insert(c);
    }

    fn register_world(&mut self, w: &str) {
        self.world_depth.entry(w.to_string()).or_insert(0);
        if let Some(k) = w.strip_prefix('w').and_then(|d| d.parse::<u32>().ok()) {
            self.next_world = self.next_world.max(k + 1);
        }
    }

    fn register_term(&mut self, t: &crate::constraints::ValueTerm) {
        use crate::constraints::ValueTerm;
        match t {
            ValueTerm::Var(name) => {
                if let Some(k) = name.strip_prefix('c').and_then(|d| d.parse::<u32>().ok()) {
                    self.next_var = self.next_var.max(k + 1);
                }
            }
            ValueTerm::T(tt) => {
                self.register_world(&tt.world);
                self.next_pair = self.next_pair.max(tt.instance + 1);
            }
            ValueTerm::Const(_) => {}
            ValueTerm::OneMinus(inner) => self.register_term(inner),
        }
    }

    /// The constraints as an ordered slice-like vector (for translation).
    pub fn constraint_vec(&self) -> Vec<Constraint> {
        self.constraints.iter().cloned().collect()
    }

    fn fresh_world(&mut self, parent: &str) -> String {
        let name = format!("w{}", self.next_world);
        self.next_world += 1;
        let depth = self.world_depth.get(parent).copied().unwrap_or(0) + 1;
        self.world_depth.insert(name.clone(), depth);
        name
    }

    fn fresh_var(&mut self) -> String {
        let name = format!("c{}", self.next_var);
        self.next_var += 1;
        name
    }

    fn fresh_pair_instance(&mut self) -> u32 {
        let n = self.next_pair;
        self.next_pair += 1;
        n
    }

    /// The shared defect world and pair instance for the modal value of
    /// `formula` at `(world, index)`, created on first use.
    fn modal_witnesses(&mut self, world: &str, index: u8, formula: &Formula) -> (String, u32) {
        let key = (world.to_string(), index, formula.clone());
        if let Some(hit) = self.modal_cache.get(&key) {
            return hit.clone();
        }
        let w = self.fresh_world(world);
        let n = self.fresh_pair_instance();
        self.modal_cache.insert(key, (w.clone(), n));
        (w, n)
    }

    fn mark_applied(&mut self, key: (Constraint, Option<RelTerm>)) {
        self.applied.insert(key);
    }

    fn is_applied(&self, key: &(Constraint, Option<RelTerm>)) -> bool {
        self.applied.contains(key)
    }

    /// Maximum world-generation depth reached on this branch.
    pub fn max_depth(&self) -> u32 {
        self.world_depth.values().copied().max().unwrap_or(0)
    }
}

impl Default for Branch {
    fn default() -> Branch {
        Branch::new()
    }
}

/// Search configuration.
#[derive(Clone, Debug)]
pub struct SearchLimits {
    /// Maximum number of rule applications across one tableau.
    pub max_expansions: usize,
    /// Feasibility-solver limits used for the closure check.
    pub solver: crate::constraints::SolveLimits,
    /// Use `≤` instead of `<` in the root constraint.
    pub weak_root: bool,
    /// Record a proof trace.
    pub collect_trace: bool,
}

impl Default for SearchLimits {
    fn default() -> SearchLimits {
        SearchLimits {
            max_expansions: 100_000,
            solver: crate::constraints::SolveLimits::default(),
            weak_root: false,
            collect_trace: false,
        }
    }
}

/// Errors from proof search.
#[derive(Clone, Debug, Error)]
pub enum TableauError {
    #[error("tableau resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("countermodel verification failed: {0}")]
    Verification(String),
}

/// A refuting model extracted from an open branch, already re-verified.
#[derive(Clone, Debug)]
pub struct CountermodelReport {
    pub model: FModel,
    pub root: String,
    /// The query's value at the root in `model`, computed by the evaluator.
    pub achieved: ValuePair,
    /// 1 if the refutation bounds the truth coordinate, 2 the falsity one.
    pub tableau_index: u8,
    pub query: Formula,
}
