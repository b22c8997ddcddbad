//! Finite fuzzy bi-relational Kripke models, F-models, exact evaluators,
//! generated submodels, and JSON model I/O.
//!
//! A [`Model`] carries two weighted accessibility relations `R⁺`/`R⁻` and two
//! valuations `v₁` (support of truth) / `v₂` (support of falsity). The
//! involutive logics use only `R⁺`/`v₁` (with `box2`/`dia2` reading `R⁻` in
//! the bi-modal language); the bi-lattice logic uses everything. An
//! [`FModel`] additionally fixes, per world, finite sets `T₁(w)`/`T₂(w)` of
//! admissible modal values — every modal subformula value is snapped into the
//! corresponding set.
//!
//! All degrees are exact rationals in `[0,1]`; infima and suprema are genuine
//! minima/maxima because the world set is finite.

mod eval;
mod io;

pub use eval::{eval_fmodel, eval_standard};
pub use io::{load_model, save_model, AnyModel, FormatError};

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::formula::LogicId;
use crate::rational::{fmt_rat, in_unit, Rat};

/// A finite fuzzy bi-relational Kripke model.
///
/// Absent relation entries mean weight `0`; absent valuation entries mean
/// value `0` (sparse representation).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Model {
    pub worlds: Vec<String>,
    /// `R⁺`, keyed `(from, to)`.
    pub rel_plus: BTreeMap<(String, String), Rat>,
    /// `R⁻`, keyed `(from, to)`.
    pub rel_minus: BTreeMap<(String, String), Rat>,
    /// Support of truth, keyed `(variable, world)`.
    pub v1: BTreeMap<(String, String), Rat>,
    /// Support of falsity, keyed `(variable, world)`.
    pub v2: BTreeMap<(String, String), Rat>,
}

/// A model together with per-world finite sets of admissible modal values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FModel {
    pub base: Model,
    /// `T₁(w)` — admissible values of index-1 (truth-order) modalities.
    pub t1: BTreeMap<String, BTreeSet<Rat>>,
    /// `T₂(w)` — admissible values of index-2 modalities.
    pub t2: BTreeMap<String, BTreeSet<Rat>>,
}

/// The paired value of a formula at a world.
///
/// For the involutive logics `negv` is always reported as `1 − pos`, so that
/// one result type serves all three logics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuePair {
    pub pos: Rat,
    pub negv: Rat,
}

impl ValuePair {
    pub fn new(pos: Rat, negv: Rat) -> ValuePair {
        ValuePair { pos, negv }
    }
}

impl std::fmt::Display for ValuePair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", fmt_rat(&self.pos), fmt_rat(&self.negv))
    }
}

/// Errors raised by the evaluators and model utilities.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("unknown world `{0}`")]
    UnknownWorld(String),
    #[error("connective `{kind}` is not part of the {logic} language")]
    IllegalConnective { logic: LogicId, kind: &'static str },
    #[error("model is malformed: {0}")]
    Malformed(String),
}

impl Model {
    /// An empty model over the given worlds.
    pub fn with_worlds<I: IntoIterator<Item = S>, S: Into<String>>(worlds: I) -> Model {
        Model {
            worlds: worlds.into_iter().map(Into::into).collect(),
            rel_plus: BTreeMap::new(),
            rel_minus: BTreeMap::new(),
            v1: BTreeMap::new(),
            v2: BTreeMap::new(),
        }
    }

    pub fn has_world(&self, w: &str) -> bool {
        self.worlds.iter().any(|x| x == w)
    }

    /// `R⁺(from, to)`, defaulting to 0.
    pub fn rp(&self, from: &str, to: &str) -> Rat {
        self.rel_plus
            .get(&(from.to_string(), to.to_string()))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    /// `R⁻(from, to)`, defaulting to 0.
    pub fn rm(&self, from: &str, to: &str) -> Rat {
        self.rel_minus
            .get(&(from.to_string(), to.to_string()))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    /// `v₁(var, world)`, defaulting to 0.
    pub fn val1(&self, var: &str, world: &str) -> Rat {
        self.v1
            .get(&(var.to_string(), world.to_string()))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    /// `v₂(var, world)`, defaulting to 0.
    pub fn val2(&self, var: &str, world: &str) -> Rat {
        self.v2
            .get(&(var.to_string(), world.to_string()))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    /// Checks weight/value ranges and that referenced worlds exist.
    pub fn validate(&self) -> Result<(), EvalError> {
        if self.worlds.is_empty() {
            return Err(EvalError::Malformed("empty world set".into()));
        }
        let mut seen = BTreeSet::new();
        for w in &self.worlds {
            if !seen.insert(w) {
                return Err(EvalError::Malformed(format!("duplicate world `{w}`")));
            }
        }
        for (name, rel) in [("rel_plus", &self.rel_plus), ("rel_minus", &self.rel_minus)] {
            for ((from, to), weight) in rel {
                for w in [from, to] {
                    if !self.has_world(w) {
                        return Err(EvalError::UnknownWorld(w.clone()));
                    }
                }
                if !in_unit(weight) {
                    return Err(EvalError::Malformed(format!(
                        "{name}[{from},{to}] = {} is outside [0,1]",
                        fmt_rat(weight)
                    )));
                }
            }
        }
        for (name, val) in [("v1", &self.v1), ("v2", &self.v2)] {
            for ((var, world), value) in val {
                if !self.has_world(world) {
                    return Err(EvalError::UnknownWorld(world.clone()));
                }
                if !in_unit(value) {
                    return Err(EvalError::Malformed(format!(
                        "{name}[{var},{world}] = {} is outside [0,1]",
                        fmt_rat(value)
                    )));
                }
            }
        }
        Ok(())
    }

    /// True iff every weight of both relations is 0 or 1.
    pub fn is_crisp(&self) -> bool {
        self.rel_plus
            .values()
            .chain(self.rel_minus.values())
            .all(|w| w.is_zero() || w.is_one())
    }

    /// The submodel generated by `roots`: the closure of `roots` under
    /// positive-weight edges of *both* relations, with relations and
    /// valuations restricted to the surviving worlds.
    pub fn generated_submodel(&self, roots: &[String]) -> Result<Model, EvalError> {
        for r in roots {
            if !self.has_world(r) {
                return Err(EvalError::UnknownWorld(r.clone()));
            }
        }
        let mut keep: BTreeSet<String> = roots.iter().cloned().collect();
        let mut frontier: Vec<String> = roots.to_vec();
        while let Some(w) = frontier.pop() {
            for ((from, to), weight) in self.rel_plus.iter().chain(self.rel_minus.iter()) {
                if *from == w && !weight.is_zero() && keep.insert(to.clone()) {
                    frontier.push(to.clone());
                }
            }
        }
        Ok(Model {
            worlds: self.worlds.iter().filter(|w| keep.contains(*w)).cloned().collect(),
            rel_plus: self
                .rel_plus
                .iter()
                .filter(|((f, t), _)| keep.contains(f) && keep.contains(t))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
            rel_minus: self
                .rel_minus
                .iter()
                .filter(|((f, t), _)| keep.contains(f) && keep.contains(t))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
            v1: self
                .v1
                .iter()
                .filter(|((_, w), _)| keep.contains(w))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
            v2: self
                .v2
                .iter()
                .filter(|((_, w), _)| keep.contains(w))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        })
    }
}

impl FModel {
    /// Wraps a model with the trivial value sets `T₁(w) = T₂(w) = {0,1}`.
    pub fn trivial(base: Model) -> FModel {
        let zero_one: BTreeSet<Rat> = [Rat::zero(), Rat::one()].into_iter().collect();
        let t: BTreeMap<String, BTreeSet<Rat>> = base
            .worlds
            .iter()
            .map(|w| (w.clone(), zero_one.clone()))
            .collect();
        FModel {
            base,
            t1: t.clone(),
            t2: t,
        }
    }

    /// Inserts the mandatory elements 0 and 1 into every T set, creating
    /// missing per-world entries.
    pub fn normalize(&mut self) {
        for t in [&mut self.t1, &mut self.t2] {
            for w in &self.base.worlds {
                let set = t.entry(w.clone()).or_default();
                set.insert(Rat::zero());
                set.insert(Rat::one());
            }
        }
    }

    /// `T₁(w)`; the model must be normalized (every world present).
    pub fn t1_of(&self, w: &str) -> &BTreeSet<Rat> {
        &self.t1[w]
    }

    /// `T₂(w)`; the model must be normalized.
    pub fn t2_of(&self, w: &str) -> &BTreeSet<Rat> {
        &self.t2[w]
    }

    /// Validates the base model, value ranges, and the `{0,1} ⊆ T` invariant.
    pub fn validate(&self) -> Result<(), EvalError> {
        self.base.validate()?;
        for (name, t) in [("T1", &self.t1), ("T2", &self.t2)] {
            for w in &self.base.worlds {
                let set = t.get(w).ok_or_else(|| {
                    EvalError::Malformed(format!("{name} has no entry for world `{w}`"))
                })?;
                if !set.contains(&Rat::zero()) || !set.contains(&Rat::one()) {
                    return Err(EvalError::Malformed(format!(
                        "{name}({w}) must contain 0 and 1"
                    )));
                }
                if let Some(bad) = set.iter().find(|x| !in_unit(x)) {
                    return Err(EvalError::Malformed(format!(
                        "{name}({w}) element {} is outside [0,1]",
                        fmt_rat(bad)
                    )));
                }
            }
            for w in t.keys() {
                if !self.base.has_world(w) {
                    return Err(EvalError::UnknownWorld(w.clone()));
                }
            }
        }
        Ok(())
    }

    pub fn is_crisp(&self) -> bool {
        self.base.is_crisp()
    }

    /// Generated submodel with T sets restricted alongside the worlds.
    pub fn generated_submodel(&self, roots: &[String]) -> Result<FModel, EvalError> {
        let base = self.base.generated_submodel(roots)?;
        let filter = |t: &BTreeMap<String, BTreeSet<Rat>>| {
            t.iter()
                .filter(|(w, _)| base.has_world(w))
                .map(|(w, s)| (w.clone(), s.clone()))
                .collect()
        };
        Ok(FModel {
            t1: filter(&self.t1),
            t2: filter(&self.t2),
            base,
        })
    }
}
