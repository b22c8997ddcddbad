//! Expansion of defined connectives into the core languages.
//!
//! Core nodes are the ones the tableau calculus has rules for:
//!
//! * `KGINV`/`KGINV2`: variables, constants `0`/`1`, `inv`, `&`, `->`, and
//!   the (indexed) modalities;
//! * `KGBL`: variables, all four constants, `neg`, `conf`, `inv`, `&`,
//!   `iand`, `->`, `iimpl`, and `box/dia/ibox/idia`.
//!
//! Defined connectives expand as follows (writing `~i` for `inv`):
//!
//! * involutive fragment: `snot f := f -> 0`, `f | g := ~i(~i f & ~i g)`,
//!   `f -< g := ~i(~i g -> ~i f)`, `delta f := 1 -< (1 -< f)`;
//! * bi-lattice fragment: the same shapes with `neg` in place of `inv` for
//!   `|`, `-<`, `delta`; `f ior g := conf(conf f iand conf g)`,
//!   `f icoimpl g := conf(conf g iimpl conf f)`, `idelta f := B icoimpl
//!   (B icoimpl f)`, `isnot f := f iimpl N`, and (optionally) `inv f :=
//!   neg conf f`.
//!
//! Constants stay primitive: macro-expanding `1` as `p -> p` would inject a
//! variable into `props`, while a primitive node with fixed semantics is
//! provably equivalent (a property test in the evaluator asserts this).

use super::{Formula, FormulaError, LogicId};

/// A formula known to contain only core nodes for its logic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoreFormula {
    formula: Formula,
    logic: LogicId,
}

impl CoreFormula {
    pub fn formula(&self) -> &Formula {
        &self.formula
    }

    pub fn logic(&self) -> LogicId {
        self.logic
    }

    pub fn into_formula(self) -> Formula {
        self.formula
    }
}

/// True iff the node kind is core for `logic` (children not inspected).
fn is_core_node(f: &Formula, logic: LogicId) -> bool {
    use Formula::*;
    match logic {
        LogicId::KgInv | LogicId::KgInv2 => matches!(
            f,
            Var(_) | One | Zero | Inv(_) | And(..) | Impl(..) | BoxM(_) | DiaM(_)
        ) || (logic == LogicId::KgInv2
            && matches!(f, Box1(_) | Dia1(_) | Box2(_) | Dia2(_))),
        LogicId::KgBl => matches!(
            f,
            Var(_)
                | One
                | Zero
                | Both
                | Neither
                | Neg(_)
                | Conf(_)
                | Inv(_)
                | And(..)
                | IAnd(..)
                | Impl(..)
                | IImpl(..)
                | BoxM(_)
                | DiaM(_)
                | IBox(_)
                | IDia(_)
        ),
    }
}

fn un(f: Formula) -> Box<Formula> {
    Box::new(f)
}

/// `~i(~i g ∘ ~i f)`-style expansion helper: builds `not_(x)` for the chosen
/// "truth-order negation" (`inv` in the involutive languages, `neg` in KGBL).
fn order_not(logic: LogicId, x: Formula) -> Formula {
    match logic {
        LogicId::KgInv | LogicId::KgInv2 => Formula::Inv(un(x)),
        LogicId::KgBl => Formula::Neg(un(x)),
    }
}

fn expand(f: &Formula, logic: LogicId, expand_inv: bool) -> Formula {
    use Formula::*;
    let go = |g: &Formula| expand(g, logic, expand_inv);
    match f {
        Var(_) | One | Zero | Both | Neither => f.clone(),
        Inv(a) => {
            if expand_inv && logic == LogicId::KgBl {
                Neg(un(Conf(un(go(a)))))
            } else {
                Inv(un(go(a)))
            }
        }
        Neg(a) => Neg(un(go(a))),
        Conf(a) => Conf(un(go(a))),
        SNot(a) => Impl(un(go(a)), un(Zero)),
        Or(a, b) => order_not(
            logic,
            And(un(order_not(logic, go(a))), un(order_not(logic, go(b)))),
        ),
        Coimpl(a, b) => {
            // f -< g := not(not g -> not f)
            order_not(
                logic,
                Impl(un(order_not(logic, go(b))), un(order_not(logic, go(a)))),
            )
        }
        Delta(a) => {
            // delta f := 1 -< (1 -< f)
            let inner = Coimpl(un(One), un(go(a)));
            let outer = Coimpl(un(One), un(inner));
            expand(&outer, logic, expand_inv)
        }
        IOr(a, b) => Conf(un(IAnd(un(Conf(un(go(a)))), un(Conf(un(go(b))))))),
        ICoimpl(a, b) => Conf(un(IImpl(un(Conf(un(go(b)))), un(Conf(un(go(a))))))),
        IDelta(a) => {
            // idelta f := B icoimpl (B icoimpl f)
            let inner = ICoimpl(un(Both), un(go(a)));
            let outer = ICoimpl(un(Both), un(inner));
            expand(&outer, logic, expand_inv)
        }
        ISNot(a) => IImpl(un(go(a)), un(Neither)),
        And(a, b) => And(un(go(a)), un(go(b))),
        IAnd(a, b) => IAnd(un(go(a)), un(go(b))),
        Impl(a, b) => Impl(un(go(a)), un(go(b))),
        IImpl(a, b) => IImpl(un(go(a)), un(go(b))),
        BoxM(a) => BoxM(un(go(a))),
        DiaM(a) => DiaM(un(go(a))),
        IBox(a) => IBox(un(go(a))),
        IDia(a) => IDia(un(go(a))),
        Box1(a) => Box1(un(go(a))),
        Dia1(a) => Dia1(un(go(a))),
        Box2(a) => Box2(un(go(a))),
        Dia2(a) => Dia2(un(go(a))),
    }
}

/// Desugars `f` into the core language of `logic`.
///
/// Errors with [`FormulaError::IllegalConnective`] if `f` uses a node outside
/// `logic`'s language. `inv` is kept primitive in KGBL (the calculus has a
/// native rule for it).
pub fn desugar(f: &Formula, logic: LogicId) -> Result<CoreFormula, FormulaError> {
    f.check_language(logic)?;
    let formula = expand(f, logic, false);
    debug_assert!(
        formula.subformulas().iter().all(|s| is_core_node(s, logic)),
        "desugar produced a non-core node"
    );
    Ok(CoreFormula { formula, logic })
}

/// Like [`desugar`], but additionally rewrites `inv f` to `neg conf f` in
/// KGBL. The translations of the `translate` module use this variant, since
/// their tables cover only the primitive bi-lattice connectives.
pub fn desugar_expanding_inv(f: &Formula, logic: LogicId) -> Result<Formula, FormulaError> {
    f.check_language(logic)?;
    Ok(expand(f, logic, true))
}
