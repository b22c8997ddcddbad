//! Formula ASTs for the three languages, their concrete grammar, printing,
//! and desugaring of defined connectives.
//!
//! The crate works with three nested languages:
//!
//! * `KGINV` — Gödel modal logic with the involutive negation `inv`
//!   (`x ↦ 1−x`) plus the defined connectives `snot`, `delta`, `|`, `-<`;
//! * `KGINV2` — the same language with two indexed modality pairs
//!   `box1/dia1` (evaluated over the positive relation) and `box2/dia2`
//!   (over the negative relation);
//! * `KGBL` — the bi-lattice language with paired valuations, truth-order
//!   connectives (`&`, `|`, `->`, `-<`, `neg`), information-order connectives
//!   (`iand`, `ior`, `iimpl`, `icoimpl`, `conf`), constants `B`/`N`, and the
//!   modalities `box dia ibox idia`.

mod desugar;
mod parser;
mod printer;

pub use desugar::{desugar, desugar_expanding_inv, CoreFormula};
pub use parser::parse;
pub use printer::print;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Identifies one of the three supported languages/logics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LogicId {
    KgInv,
    KgInv2,
    KgBl,
}

impl LogicId {
    pub fn name(self) -> &'static str {
        match self {
            LogicId::KgInv => "kginv",
            LogicId::KgInv2 => "kginv2",
            LogicId::KgBl => "kgbl",
        }
    }

    pub fn from_name(s: &str) -> Option<LogicId> {
        match s {
            "kginv" => Some(LogicId::KgInv),
            "kginv2" => Some(LogicId::KgInv2),
            "kgbl" => Some(LogicId::KgBl),
            _ => None,
        }
    }
}

impl fmt::Display for LogicId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Formula AST covering the union of the three languages.
///
/// Children are boxed; formulas are immutable values, freely cloneable and
/// hashable (the tableau keys constraint sets by formula).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Var(String),
    /// Constant 1 — value `1` (in KGBL: `(1,0)`).
    One,
    /// Constant 0 — value `0` (in KGBL: `(0,1)`).
    Zero,
    /// Constant B — both supported and denied: `(1,1)` (KGBL only).
    Both,
    /// Constant N — neither supported nor denied: `(0,0)` (KGBL only).
    Neither,

    /// `inv` — involutive negation, `x ↦ 1−x` on each coordinate.
    Inv(Box<Formula>),
    /// `neg` — bi-lattice negation, swaps the two coordinates (KGBL only).
    Neg(Box<Formula>),
    /// `conf` — conflation, `(x,y) ↦ (1−y, 1−x)` (KGBL only).
    Conf(Box<Formula>),
    /// `delta` — Baaz delta, defined via co-implication.
    Delta(Box<Formula>),
    /// `snot` — Gödel negation, defined as `φ -> 0`.
    SNot(Box<Formula>),
    /// `idelta` — informational delta (KGBL only), defined via `icoimpl`.
    IDelta(Box<Formula>),
    /// `isnot` — informational Gödel negation (KGBL only), `φ iimpl N`.
    ISNot(Box<Formula>),

    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Impl(Box<Formula>, Box<Formula>),
    /// `-<` — co-implication, the order dual of `->`.
    Coimpl(Box<Formula>, Box<Formula>),
    /// `iand` — informational meet (KGBL only).
    IAnd(Box<Formula>, Box<Formula>),
    /// `ior` — informational join (KGBL only), defined connective.
    IOr(Box<Formula>, Box<Formula>),
    /// `iimpl` — informational implication (KGBL only).
    IImpl(Box<Formula>, Box<Formula>),
    /// `icoimpl` — informational co-implication (KGBL only), defined.
    ICoimpl(Box<Formula>, Box<Formula>),

    BoxM(Box<Formula>),
    DiaM(Box<Formula>),
    /// `ibox` (■) — informational box (KGBL only).
    IBox(Box<Formula>),
    /// `idia` (♦) — informational diamond (KGBL only).
    IDia(Box<Formula>),
    /// `box1` — positive-relation box (KGINV2 only).
    Box1(Box<Formula>),
    Dia1(Box<Formula>),
    /// `box2` — negative-relation box (KGINV2 only).
    Box2(Box<Formula>),
    Dia2(Box<Formula>),
}

impl Formula {
    pub fn var(name: &str) -> Formula {
        Formula::Var(name.to_string())
    }

    /// Number of symbol occurrences (connectives, constants, and variables).
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    /// The set of propositional variables occurring in the formula.
    pub fn props(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_props(&mut out);
        out
    }

    fn collect_props(&self, out: &mut BTreeSet<String>) {
        if let Formula::Var(name) = self {
            out.insert(name.clone());
        }
        for c in self.children() {
            c.collect_props(out);
        }
    }

    /// Maximum nesting depth of modal operators.
    pub fn modal_depth(&self) -> u32 {
        let inner = self
            .children()
            .iter()
            .map(|c| c.modal_depth())
            .max()
            .unwrap_or(0);
        if self.is_modal() {
            inner + 1
        } else {
            inner
        }
    }

    /// True iff the top node is a modal operator.
    pub fn is_modal(&self) -> bool {
        matches!(
            self,
            Formula::BoxM(_)
                | Formula::DiaM(_)
                | Formula::IBox(_)
                | Formula::IDia(_)
                | Formula::Box1(_)
                | Formula::Dia1(_)
                | Formula::Box2(_)
                | Formula::Dia2(_)
        )
    }

    /// Immediate subformulas.
    pub fn children(&self) -> Vec<&Formula> {
        use Formula::*;
        match self {
            Var(_) | One | Zero | Both | Neither => vec![],
            Inv(a) | Neg(a) | Conf(a) | Delta(a) | SNot(a) | IDelta(a) | ISNot(a) | BoxM(a)
            | DiaM(a) | IBox(a) | IDia(a) | Box1(a) | Dia1(a) | Box2(a) | Dia2(a) => vec![a],
            And(a, b) | Or(a, b) | Impl(a, b) | Coimpl(a, b) | IAnd(a, b) | IOr(a, b)
            | IImpl(a, b) | ICoimpl(a, b) => vec![a, b],
        }
    }

    /// All subformulas including `self`, in pre-order.
    pub fn subformulas(&self) -> Vec<&Formula> {
        let mut out = vec![self];
        for c in self.children() {
            out.extend(c.subformulas());
        }
        out
    }

    /// Short name of the top node kind, used in error messages.
    pub fn kind_name(&self) -> &'static str {
        use Formula::*;
        match self {
            Var(_) => "variable",
            One => "1",
            Zero => "0",
            Both => "B",
            Neither => "N",
            Inv(_) => "inv",
            Neg(_) => "neg",
            Conf(_) => "conf",
            Delta(_) => "delta",
            SNot(_) => "snot",
            IDelta(_) => "idelta",
            ISNot(_) => "isnot",
            And(..) => "&",
            Or(..) => "|",
            Impl(..) => "->",
            Coimpl(..) => "-<",
            IAnd(..) => "iand",
            IOr(..) => "ior",
            IImpl(..) => "iimpl",
            ICoimpl(..) => "icoimpl",
            BoxM(_) => "box",
            DiaM(_) => "dia",
            IBox(_) => "ibox",
            IDia(_) => "idia",
            Box1(_) => "box1",
            Dia1(_) => "dia1",
            Box2(_) => "box2",
            Dia2(_) => "dia2",
        }
    }

    /// True iff the node kind belongs to the language of `logic`.
    pub fn allowed_in(&self, logic: LogicId) -> bool {
        use Formula::*;
        match logic {
            LogicId::KgInv => matches!(
                self,
                Var(_)
                    | One
                    | Zero
                    | Inv(_)
                    | SNot(_)
                    | Delta(_)
                    | And(..)
                    | Or(..)
                    | Impl(..)
                    | Coimpl(..)
                    | BoxM(_)
                    | DiaM(_)
            ),
            LogicId::KgInv2 => {
                matches!(self, Box1(_) | Dia1(_) | Box2(_) | Dia2(_))
                    || self.allowed_in(LogicId::KgInv)
            }
            LogicId::KgBl => !matches!(self, Box1(_) | Dia1(_) | Box2(_) | Dia2(_)),
        }
    }

    /// Checks that every node of the formula is in the language of `logic`.
    pub fn check_language(&self, logic: LogicId) -> Result<(), FormulaError> {
        for sub in self.subformulas() {
            if !sub.allowed_in(logic) {
                return Err(FormulaError::IllegalConnective {
                    logic,
                    kind: sub.kind_name(),
                });
            }
        }
        Ok(())
    }

    /// The smallest of the three languages containing the formula, if any.
    pub fn minimal_logic(&self) -> Option<LogicId> {
        for logic in [LogicId::KgInv, LogicId::KgInv2, LogicId::KgBl] {
            if self.check_language(logic).is_ok() {
                return Some(logic);
            }
        }
        None
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print(self))
    }
}

/// Errors produced while parsing or desugaring formulas.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormulaError {
    #[error("syntax error at byte {position}: expected {expected}, found {found}")]
    Syntax {
        position: usize,
        expected: String,
        found: String,
    },
    #[error("connective `{kind}` is not part of the {logic} language")]
    IllegalConnective { logic: LogicId, kind: &'static str },
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn size_counts_symbols() {
        assert_eq!(f("p").size(), 1);
        assert_eq!(f("p -> p").size(), 3);
        assert_eq!(f("box(p -> idia neg q) | conf r").size(), 9);
    }

    #[test]
    fn modal_depth_counts_nesting() {
        assert_eq!(f("p").modal_depth(), 0);
        assert_eq!(f("box p").modal_depth(), 1);
        assert_eq!(f("box(p -> idia neg q) | conf r").modal_depth(), 2);
        assert_eq!(f("box p & dia q").modal_depth(), 1);
    }

    #[test]
    fn props_collects_variables() {
        let props = f("box(p -> idia neg q) | conf r").props();
        assert_eq!(
            props.into_iter().collect::<Vec<_>>(),
            vec!["p".to_string(), "q".to_string(), "r".to_string()]
        );
    }

    #[test]
    fn language_membership() {
        assert!(f("inv p & delta q").check_language(LogicId::KgInv).is_ok());
        assert!(f("neg p").check_language(LogicId::KgInv).is_err());
        assert!(f("box2 p").check_language(LogicId::KgInv).is_err());
        assert!(f("box2 p").check_language(LogicId::KgInv2).is_ok());
        assert!(f("box2 p").check_language(LogicId::KgBl).is_err());
        assert!(f("B iand conf p").check_language(LogicId::KgBl).is_ok());
        assert_eq!(f("inv p").minimal_logic(), Some(LogicId::KgInv));
        assert_eq!(f("dia2 p").minimal_logic(), Some(LogicId::KgInv2));
        assert_eq!(f("neg p").minimal_logic(), Some(LogicId::KgBl));
    }
}
