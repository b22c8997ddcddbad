//! A decision-procedure toolkit for two expansions of Gödel modal logic:
//! `KG-inv` (Gödel modal logic with the involutive negation `x ↦ 1−x`) and
//! `KG-bl` (a bi-lattice logic with paired support-of-truth / support-of-falsity
//! valuations and two families of modalities).
//!
//! The crate provides:
//!
//! * [`formula`] — ASTs, a keyword-based concrete grammar, printing, and
//!   desugaring of defined connectives into the core languages;
//! * [`kripke`] — finite fuzzy bi-relational Kripke models and F-models
//!   (models with per-world finite truth-value sets), exact rational
//!   evaluators, generated submodels, and JSON model I/O;
//! * [`translate`] — the ⊕/⊖ translations from the bi-lattice language into
//!   the bi-modal involutive language, the ⋈ translation back, and the two
//!   validity-preserving embeddings;
//! * [`constraints`] — the order-constraint language used by the tableau
//!   calculus, its translation to exact linear systems, and a feasibility
//!   solver that honours the T-term gap condition;
//! * [`tableau`] — a constraint-tableau prover deciding validity in all three
//!   languages, with countermodel extraction and independent re-verification;
//! * [`cli`] — the command-line front end (`prove`, `eval`, `translate`,
//!   `solve`, `parse`).
//!
//! Everything is computed in exact rational arithmetic; no floating point is
//! used anywhere. See the `examples/` directory for runnable tours of each
//! capability.

pub mod cli;
pub mod constraints;
pub mod formula;
pub mod kripke;
pub mod rational;
pub mod sampling;
pub mod tableau;
pub mod translate;

pub use formula::{parse, print, Formula, LogicId};
pub use kripke::{eval_fmodel, eval_standard, FModel, Model, ValuePair};
pub use rational::Rat;
