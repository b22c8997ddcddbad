//! The tableau rules: applicability scanning and rule application.
//!
//! Every rule instance is keyed by its principal constraint (plus, for the
//! relational propagation rules, the relational term it instantiates) and is
//! applied at most once per branch. All rules operate on *core* formulas —
//! the prover desugars queries first; constraints on defined connectives are
//! never decomposed.
//!
//! Modal rules follow a uniform scheme. A modal node together with a truth
//! index determines a *descriptor* `(style, relation sign, T-index)`:
//! `Inf`-style values are the rounding-down of an infimum of residuated
//! implications over the signed relation, `Sup`-style values the rounding-up
//! of a supremum of minima. Four templates per style (lower-bound,
//! upper-bound, approximation, and per-successor propagation) then cover all
//! eight modal node/index combinations of the bi-lattice language and the
//! four indexed modalities of the bi-modal involutive language.

use num_traits::{One, Zero};

use super::{Branch, RelTerm};
use crate::constraints::{Bound, Cmp, Constraint, RelSign, Structure, TTerm, ValueTerm};
use crate::rational::Rat;
use crate::Formula;

/// One applicable rule instance on a branch.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RuleInstance {
    /// 0 = non-branching propositional, 1 = branching propositional,
    /// 2 = modal bound/approximation, 3 = modal propagation.
    /// First field so that the derived ordering sorts by priority.
    pub priority: u8,
    /// Rule name, e.g. `->:1:up`, `box:2:prop`, `neg:1`.
    pub name: String,
    pub principal: Constraint,
    /// The relational term instantiated by a propagation rule.
    pub witness: Option<RelTerm>,
}

impl RuleInstance {
    fn key(&self) -> (Constraint, Option<RelTerm>) {
        (self.principal.clone(), self.witness.clone())
    }
}

/// Direction class of an oriented principal constraint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Dir {
    /// The formula value bounds the other side from above: `v > X` or `v ≥ X`.
    Up,
    /// `v < X` or `v ≤ X`.
    Dn,
    Eq,
}

fn dir_of(rel: Cmp) -> Dir {
    match rel {
        Cmp::Gt | Cmp::Ge => Dir::Up,
        Cmp::Lt | Cmp::Le => Dir::Dn,
        Cmp::Eq => Dir::Eq,
    }
}

fn dir_name(rel: Cmp) -> &'static str {
    match dir_of(rel) {
        Dir::Up => "up",
        Dir::Dn => "dn",
        Dir::Eq => "eq",
    }
}

/// A principal constraint read with the formula value on the left:
/// `world:index:formula rel other`.
struct Oriented<'a> {
    world: &'a str,
    index: u8,
    formula: &'a Formula,
    rel: Cmp,
    other: &'a Structure,
}

fn orient(c: &Constraint) -> Option<Oriented<'_>> {
    if let Structure::FVal {
        world,
        index,
        formula,
    } = &c.lhs
    {
        return Some(Oriented {
            world,
            index: *index,
            formula,
            rel: c.rel,
            other: &c.rhs,
        });
    }
    if let Structure::FVal {
        world,
        index,
        formula,
    } = &c.rhs
    {
        return Some(Oriented {
            world,
            index: *index,
            formula,
            rel: c.rel.converse(),
            other: &c.lhs,
        });
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Style {
    Inf,
    Sup,
}

/// Maps a modal node and truth index to `(style, relation sign, T-index)`.
fn descriptor(f: &Formula, index: u8) -> (Style, RelSign, u8) {
    use Formula::*;
    match (f, index) {
        (BoxM(_), 1) => (Style::Inf, RelSign::Plus, 1),
        (BoxM(_), 2) => (Style::Sup, RelSign::Minus, 2),
        (DiaM(_), 1) => (Style::Sup, RelSign::Plus, 1),
        (DiaM(_), 2) => (Style::Inf, RelSign::Minus, 2),
        (IBox(_), 1) => (Style::Inf, RelSign::Plus, 1),
        (IBox(_), 2) => (Style::Inf, RelSign::Minus, 2),
        (IDia(_), 1) => (Style::Sup, RelSign::Plus, 1),
        (IDia(_), 2) => (Style::Sup, RelSign::Minus, 2),
        (Box1(_), _) => (Style::Inf, RelSign::Plus, 1),
        (Dia1(_), _) => (Style::Sup, RelSign::Plus, 1),
        (Box2(_), _) => (Style::Inf, RelSign::Minus, 2),
        (Dia2(_), _) => (Style::Sup, RelSign::Minus, 2),
        _ => unreachable!("descriptor of non-modal node"),
    }
}

/// Whether an `Eq` right-hand side pins the modal value exactly enough for
/// per-successor propagation: one of the branch's own T-terms of the same
/// world and T-index, or the style's extreme constant (1 for `Inf`, 0 for
/// `Sup`). Anything else goes through the approximation rule, which rewrites
/// it into a pinned form — dispatching on the shape is what keeps the
/// approximation rule from looping on its own output.
fn pinned(other: &Structure, world: &str, tindex: u8, style: Style) -> bool {
    match other {
        Structure::Term(ValueTerm::T(t)) => t.world == world && t.index == tindex,
        Structure::Term(ValueTerm::Const(c)) => match style {
            Style::Inf => c.is_one(),
            Style::Sup => c.is_zero(),
        },
        _ => false,
    }
}

/// Propositional rule families for core binary truth-functional nodes.
#[derive(Clone, Copy, Debug)]
enum PropFamily {
    /// The value is the minimum of the children's values.
    Min,
    /// The value is the maximum of the children's values.
    Max,
    /// Residuated implication: 1 if `φ ≤ χ`, else the value of `χ`.
    GImp,
    /// Its order dual: 0 if `χ ≤ φ`, else the value of `χ`.
    DImp,
}

fn prop_family(f: &Formula, index: u8) -> Option<PropFamily> {
    use Formula::*;
    match (f, index) {
        (And(..), 1) | (IAnd(..), _) => Some(PropFamily::Min),
        (And(..), 2) => Some(PropFamily::Max),
        (Impl(..), 1) | (IImpl(..), _) => Some(PropFamily::GImp),
        (Impl(..), 2) => Some(PropFamily::DImp),
        _ => None,
    }
}

fn is_core_kind(f: &Formula) -> bool {
    !matches!(
        f,
        Formula::Or(..)
            | Formula::IOr(..)
            | Formula::Coimpl(..)
            | Formula::ICoimpl(..)
            | Formula::Delta(_)
            | Formula::IDelta(_)
            | Formula::SNot(_)
            | Formula::ISNot(_)
    )
}

/// Scans the branch for applicable, not-yet-applied rule instances, ordered
/// by `(priority, principal, witness)` — the search always applies the first.
pub fn applicable_rules(branch: &Branch) -> Vec<RuleInstance> {
    let mut out = Vec::new();
    for c in &branch.constraints {
        let Some(o) = orient(c) else { continue };
        if matches!(o.formula, Formula::Var(_)) {
            continue;
        }
        debug_assert!(is_core_kind(o.formula), "non-core formula on branch");
        if !is_core_kind(o.formula) {
            continue;
        }
        let kind = o.formula.kind_name();
        if o.formula.is_modal() {
            let (style, sign, tindex) = descriptor(o.formula, o.index);
            if o.rel == Cmp::Eq && pinned(o.other, o.world, tindex, style) {
                for rt in &branch.rel_terms {
                    if rt.0 == o.world && rt.1 == sign {
                        out.push(RuleInstance {
                            name: format!("{kind}:{}:prop", o.index),
                            priority: 3,
                            principal: c.clone(),
                            witness: Some(rt.clone()),
                        });
                    }
                }
            } else {
                out.push(RuleInstance {
                    name: format!("{kind}:{}:{}", o.index, dir_name(o.rel)),
                    priority: 2,
                    principal: c.clone(),
                    witness: None,
                });
            }
        } else {
            let (name, priority) = match o.formula {
                Formula::Neg(_) | Formula::Conf(_) | Formula::Inv(_) => {
                    (format!("{kind}:{}", o.index), 0)
                }
                Formula::One | Formula::Zero | Formula::Both | Formula::Neither => {
                    (format!("const:{}", o.index), 0)
                }
                _ => {
                    let family = prop_family(o.formula, o.index).expect("core binary node");
                    match (family, dir_of(o.rel)) {
                        (_, Dir::Eq) => (format!("{kind}:{}:split", o.index), 0),
                        (PropFamily::Min, Dir::Up) | (PropFamily::Max, Dir::Dn) => {
                            (format!("{kind}:{}:{}", o.index, dir_name(o.rel)), 0)
                        }
                        (PropFamily::DImp, Dir::Up) if o.rel == Cmp::Gt => {
                            (format!("{kind}:{}:up", o.index), 0)
                        }
                        _ => (format!("{kind}:{}:{}", o.index, dir_name(o.rel)), 1),
                    }
                }
            };
            out.push(RuleInstance {
                name,
                priority,
                principal: c.clone(),
                witness: None,
            });
        }
    }
    out.retain(|inst| !branch.is_applied(&inst.key()));
    out.sort();
    out
}

fn fv(world: &str, index: u8, f: &Formula) -> Structure {
    Structure::fval(world, index, f.clone())
}

fn con(c: Rat) -> Structure {
    Structure::constant(c)
}

fn one() -> Structure {
    con(Rat::one())
}

fn zero() -> Structure {
    con(Rat::zero())
}

fn cc(lhs: Structure, rel: Cmp, rhs: Structure) -> Constraint {
    Constraint::new(lhs, rel, rhs)
}

/// `≈`-emission: pins the value of `target` to the fresh variable `c`.
/// A single equality suffices for modal targets (the modal `Eq` rules take it
/// from there); for non-modal targets two inequalities avoid creating `Eq`
/// constraints no rule dispatches on.
fn emit_approx(target: Structure, c: &str, out: &mut Vec<Constraint>) {
    let modal = matches!(&target, Structure::FVal { formula, .. } if formula.is_modal());
    if modal {
        out.push(cc(target, Cmp::Eq, Structure::var(c)));
    } else {
        out.push(cc(target.clone(), Cmp::Le, Structure::var(c)));
        out.push(cc(target, Cmp::Ge, Structure::var(c)));
    }
}

/// `1 − other` as a structure; relation weights (and any other non-term side)
/// are bridged through a fresh variable equated to them.
fn complement(proto: &mut Branch, other: &Structure, extra: &mut Vec<Constraint>) -> Structure {
    match other {
        Structure::Term(t) => Structure::Term(ValueTerm::one_minus(t.clone())),
        _ => {
            let e = proto.fresh_var();
            extra.push(cc(other.clone(), Cmp::Eq, Structure::var(&e)));
            Structure::Term(ValueTerm::one_minus(ValueTerm::Var(e)))
        }
    }
}

/// Applies `inst` to `branch`, returning the child branches in left-to-right
/// order. The instance is recorded as applied in every child.
pub fn apply_rule(branch: &Branch, inst: &RuleInstance) -> Vec<Branch> {
    let mut proto = branch.clone();
    proto.mark_applied(inst.key());
    let c = &inst.principal;
    let o = orient(c).expect("principal has a formula side");
    let world = o.world.to_string();
    let index = o.index;
    let formula = o.formula.clone();
    let rel = o.rel;
    let other = o.other.clone();

    let children: Vec<Vec<Constraint>> = if formula.is_modal() {
        modal_children(&mut proto, &world, index, &formula, rel, &other, inst)
    } else {
        prop_children(&mut proto, &world, index, &formula, rel, &other)
    };

    children
        .into_iter()
        .map(|cs| {
            let mut child = proto.clone();
            for c in cs {
                child.insert(c);
            }
            child
        })
        .collect()
}

fn prop_children(
    proto: &mut Branch,
    w: &str,
    i: u8,
    formula: &Formula,
    rel: Cmp,
    other: &Structure,
) -> Vec<Vec<Constraint>> {
    use Formula::*;
    let x = || other.clone();
    match formula {
        // Coordinate rules: the value is a coordinate (or complemented
        // coordinate) of the immediate subformula.
        Neg(a) => vec![vec![cc(fv(w, 3 - i, a), rel, x())]],
        Conf(a) => {
            let mut extra = Vec::new();
            let compl = complement(proto, other, &mut extra);
            extra.push(cc(fv(w, 3 - i, a), rel.converse(), compl));
            vec![extra]
        }
        Inv(a) => {
            let mut extra = Vec::new();
            let compl = complement(proto, other, &mut extra);
            extra.push(cc(fv(w, i, a), rel.converse(), compl));
            vec![extra]
        }
        One | Zero | Both | Neither => {
            let value = match (formula, i) {
                (One, 1) | (Both, 1) | (Zero, 2) | (Both, 2) => Rat::one(),
                _ => Rat::zero(),
            };
            vec![vec![cc(con(value), rel, x())]]
        }
        And(a, b) | IAnd(a, b) | Impl(a, b) | IImpl(a, b) => {
            let family = prop_family(formula, i).expect("core binary node");
            if rel == Cmp::Eq {
                // Split an equality into its two half-bounds; the directional
                // rules decompose those.
                return vec![vec![
                    cc(fv(w, i, formula), Cmp::Le, x()),
                    cc(fv(w, i, formula), Cmp::Ge, x()),
                ]];
            }
            match (family, dir_of(rel)) {
                (PropFamily::Min, Dir::Up) => {
                    vec![vec![cc(fv(w, i, a), rel, x()), cc(fv(w, i, b), rel, x())]]
                }
                (PropFamily::Min, Dir::Dn) => {
                    vec![vec![cc(fv(w, i, a), rel, x())], vec![cc(fv(w, i, b), rel, x())]]
                }
                (PropFamily::Max, Dir::Up) => {
                    vec![vec![cc(fv(w, i, a), rel, x())], vec![cc(fv(w, i, b), rel, x())]]
                }
                (PropFamily::Max, Dir::Dn) => {
                    vec![vec![cc(fv(w, i, a), rel, x()), cc(fv(w, i, b), rel, x())]]
                }
                (PropFamily::GImp, Dir::Up) => {
                    // Either the consequent alone is large enough, or the
                    // value is 1 — witnessed by the antecedent not exceeding
                    // the consequent's exact value c.
                    let cvar = proto.fresh_var();
                    let mut right = vec![cc(x(), rel.converse(), one())];
                    emit_approx(fv(w, i, b), &cvar, &mut right);
                    right.push(cc(fv(w, i, a), Cmp::Le, Structure::var(&cvar)));
                    vec![vec![cc(fv(w, i, b), rel, x())], right]
                }
                (PropFamily::GImp, Dir::Dn) => {
                    // Either 1 is already small enough, or the antecedent
                    // strictly exceeds the consequent and the value is the
                    // consequent's.
                    let cvar = proto.fresh_var();
                    let mut right = vec![cc(fv(w, i, b), rel, x())];
                    emit_approx(fv(w, i, a), &cvar, &mut right);
                    right.push(cc(fv(w, i, b), Cmp::Lt, Structure::var(&cvar)));
                    vec![vec![cc(one(), rel, x())], right]
                }
                (PropFamily::DImp, Dir::Up) => {
                    // The value is 0 or the consequent's value; any strict (or
                    // weak, via the extra 0-branch) lower bound forces the
                    // consequent case.
                    let cvar = proto.fresh_var();
                    let mut active = vec![cc(fv(w, i, b), rel, x())];
                    emit_approx(fv(w, i, a), &cvar, &mut active);
                    active.push(cc(fv(w, i, b), Cmp::Gt, Structure::var(&cvar)));
                    if rel == Cmp::Gt {
                        vec![active]
                    } else {
                        vec![vec![cc(x(), Cmp::Le, zero())], active]
                    }
                }
                (PropFamily::DImp, Dir::Dn) => {
                    // Either the consequent bound already suffices (the value
                    // never exceeds the consequent's), or the value is 0.
                    let cvar = proto.fresh_var();
                    let mut right = vec![cc(zero(), rel, x())];
                    right.push(cc(fv(w, i, a), Cmp::Ge, Structure::var(&cvar)));
                    emit_approx(fv(w, i, b), &cvar, &mut right);
                    vec![vec![cc(fv(w, i, b), rel, x())], right]
                }
                _ => unreachable!("Eq handled above"),
            }
        }
        _ => unreachable!("propositional rule on non-core or modal node"),
    }
}

fn modal_children(
    proto: &mut Branch,
    w: &str,
    i: u8,
    formula: &Formula,
    rel: Cmp,
    other: &Structure,
    inst: &RuleInstance,
) -> Vec<Vec<Constraint>> {
    let (style, sign, tindex) = descriptor(formula, i);
    let sub = formula.children()[0].clone();
    let x = || other.clone();

    if let Some((_, _, u)) = &inst.witness {
        // Propagation: the modal value is pinned to X; every successor must
        // individually respect the corresponding bound.
        return match style {
            Style::Inf => vec![
                vec![cc(fv(u, i, &sub), Cmp::Ge, x())],
                vec![
                    cc(fv(u, i, &sub), Cmp::Lt, x()),
                    cc(Structure::rel(w, sign, u.as_str()), Cmp::Le, fv(u, i, &sub)),
                ],
            ],
            Style::Sup => vec![
                vec![cc(Structure::rel(w, sign, u.as_str()), Cmp::Le, x())],
                vec![
                    cc(fv(u, i, &sub), Cmp::Le, x()),
                    cc(Structure::rel(w, sign, u.as_str()), Cmp::Gt, x()),
                ],
            ],
        };
    }

    let (wp, n) = proto.modal_witnesses(w, i, formula);
    let t0 = Structure::tterm(TTerm::new(w, tindex, n, Bound::Lower));
    let t1 = Structure::tterm(TTerm::new(w, tindex, n, Bound::Upper));
    let edge = Structure::rel(w, sign, wp.as_str());
    let principal = fv(w, i, formula);

    match (style, dir_of(rel)) {
        (Style::Inf, Dir::Up) => vec![
            vec![cc(principal.clone(), Cmp::Eq, one()), cc(one(), rel, x())],
            vec![
                cc(principal, Cmp::Eq, t0.clone()),
                cc(t0, rel, x()),
                cc(fv(&wp, i, &sub), Cmp::Lt, edge),
                cc(fv(&wp, i, &sub), Cmp::Lt, t1),
            ],
        ],
        (Style::Inf, Dir::Dn) => vec![
            vec![cc(one(), rel, x())],
            // The defect world forces the rounded value to at most the lower
            // pair member, so the bound must be read off t0 — not imposed on
            // it: constraining X from above here would be unsound.
            vec![
                cc(t0, rel, x()),
                cc(fv(&wp, i, &sub), Cmp::Lt, edge),
                cc(fv(&wp, i, &sub), Cmp::Lt, t1),
            ],
        ],
        (Style::Inf, Dir::Eq) => vec![
            vec![cc(principal.clone(), Cmp::Eq, one()), cc(x(), Cmp::Eq, one())],
            vec![
                cc(principal, Cmp::Eq, t0.clone()),
                cc(x(), Cmp::Eq, t0),
                cc(fv(&wp, i, &sub), Cmp::Lt, edge),
                cc(fv(&wp, i, &sub), Cmp::Lt, t1),
            ],
        ],
        (Style::Sup, Dir::Up) => vec![
            vec![cc(zero(), rel, x())],
            vec![
                cc(t1, rel, x()),
                cc(t0.clone(), Cmp::Lt, edge),
                cc(fv(&wp, i, &sub), Cmp::Gt, t0),
            ],
        ],
        (Style::Sup, Dir::Dn) => vec![
            vec![cc(principal.clone(), Cmp::Eq, zero()), cc(zero(), rel, x())],
            vec![
                cc(principal, Cmp::Eq, t1.clone()),
                cc(t1, rel, x()),
                cc(edge, Cmp::Gt, t0.clone()),
                cc(fv(&wp, i, &sub), Cmp::Gt, t0),
            ],
        ],
        (Style::Sup, Dir::Eq) => vec![
            vec![cc(principal.clone(), Cmp::Eq, zero()), cc(x(), Cmp::Eq, zero())],
            vec![
                cc(principal, Cmp::Eq, t1.clone()),
                cc(x(), Cmp::Eq, t1),
                cc(edge, Cmp::Gt, t0.clone()),
                cc(fv(&wp, i, &sub), Cmp::Gt, t0),
            ],
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constraints::parse_constraint;

    fn branch_with(lines: &[&str]) -> Branch {
        let mut b = Branch::new();
        for l in lines {
            b.insert(parse_constraint(l).unwrap());
        }
        b
    }

    fn strings(cs: &Branch) -> Vec<String> {
        cs.constraints.iter().map(|c| c.to_string()).collect()
    }

    #[test]
    fn min_rule_directions() {
        let b = branch_with(&["w0:1:p & q > c"]);
        let insts = applicable_rules(&b);
        assert_eq!(insts.len(), 1);
        assert_eq!(insts[0].name, "&:1:up");
        assert_eq!(insts[0].priority, 0);
        let kids = apply_rule(&b, &insts[0]);
        assert_eq!(kids.len(), 1);
        assert!(strings(&kids[0]).contains(&"w0:1:p > c".to_string()));
        assert!(strings(&kids[0]).contains(&"w0:1:q > c".to_string()));

        let b = branch_with(&["w0:1:p & q <= c"]);
        let insts = applicable_rules(&b);
        assert_eq!(insts[0].name, "&:1:dn");
        let kids = apply_rule(&b, &insts[0]);
        assert_eq!(kids.len(), 2);
        assert!(strings(&kids[0]).contains(&"w0:1:p <= c".to_string()));
        assert!(strings(&kids[1]).contains(&"w0:1:q <= c".to_string()));
    }

    #[test]
    fn max_rule_swaps_branching() {
        // Index 2 of & is a maximum: upper bounds decompose conjunctively.
        let b = branch_with(&["w0:2:p & q < c"]);
        let insts = applicable_rules(&b);
        assert_eq!(insts[0].name, "&:2:dn");
        assert_eq!(insts[0].priority, 0);
        assert_eq!(apply_rule(&b, &insts[0]).len(), 1);
        let b = branch_with(&["w0:2:p & q > c"]);
        assert_eq!(apply_rule(&b, &applicable_rules(&b)[0]).len(), 2);
    }

    #[test]
    fn rule_fires_once_per_instance() {
        let b = branch_with(&["w0:1:p & q > c"]);
        let insts = applicable_rules(&b);
        let kids = apply_rule(&b, &insts[0]);
        assert!(applicable_rules(&kids[0]).is_empty());
    }

    #[test]
    fn orientation_from_the_right_side() {
        let b = branch_with(&["c < w0:1:p & q"]);
        let insts = applicable_rules(&b);
        assert_eq!(insts[0].name, "&:1:up");
    }

    #[test]
    fn neg_swaps_index_and_inv_complements() {
        let b = branch_with(&["w0:1:neg p < c"]);
        let kids = apply_rule(&b, &applicable_rules(&b)[0]);
        assert!(strings(&kids[0]).contains(&"w0:2:p < c".to_string()));

        let b = branch_with(&["w0:1:inv p < c"]);
        let kids = apply_rule(&b, &applicable_rules(&b)[0]);
        assert!(strings(&kids[0]).contains(&"w0:1:p > 1 - c".to_string()));

        let b = branch_with(&["w0:1:conf p < c"]);
        let kids = apply_rule(&b, &applicable_rules(&b)[0]);
        assert!(strings(&kids[0]).contains(&"w0:2:p > 1 - c".to_string()));
    }

    #[test]
    fn complement_of_a_relation_weight_is_bridged() {
        let b = branch_with(&["w0:1:inv p < w0 R+ w1"]);
        let kids = apply_rule(&b, &applicable_rules(&b)[0]);
        let ss = strings(&kids[0]);
        assert!(ss.contains(&"w0 R+ w1 = c1".to_string()), "{ss:?}");
        assert!(ss.contains(&"w0:1:p > 1 - c1".to_string()), "{ss:?}");
    }

    #[test]
    fn constants_produce_their_coordinate() {
        let b = branch_with(&["w0:1:B >= c"]);
        let kids = apply_rule(&b, &applicable_rules(&b)[0]);
        assert!(strings(&kids[0]).contains(&"1 >= c".to_string()));
        let b = branch_with(&["w0:2:N > c"]);
        let kids = apply_rule(&b, &applicable_rules(&b)[0]);
        assert!(strings(&kids[0]).contains(&"0 > c".to_string()));
    }

    #[test]
    fn godel_implication_branches() {
        let b = branch_with(&["w0:1:p -> q < c"]);
        let insts = applicable_rules(&b);
        assert_eq!(insts[0].name, "->:1:dn");
        assert_eq!(insts[0].priority, 1);
        let kids = apply_rule(&b, &insts[0]);
        assert_eq!(kids.len(), 2);
        assert!(strings(&kids[0]).contains(&"1 < c".to_string()));
        let right = strings(&kids[1]);
        assert!(right.contains(&"w0:1:q < c".to_string()), "{right:?}");
        assert!(right.contains(&"w0:1:p <= c1".to_string()), "{right:?}");
        assert!(right.contains(&"w0:1:p >= c1".to_string()), "{right:?}");
        assert!(right.contains(&"w0:1:q < c1".to_string()), "{right:?}");
    }

    #[test]
    fn dual_implication_strict_lower_bound_is_single_child() {
        let b = branch_with(&["w0:2:p -> q > c"]);
        let insts = applicable_rules(&b);
        assert_eq!(insts[0].name, "->:2:up");
        assert_eq!(insts[0].priority, 0);
        let kids = apply_rule(&b, &insts[0]);
        assert_eq!(kids.len(), 1);
        let ss = strings(&kids[0]);
        assert!(ss.contains(&"w0:2:q > c".to_string()), "{ss:?}");
        assert!(ss.contains(&"w0:2:q > c1".to_string()), "{ss:?}");
    }

    #[test]
    fn modal_rule_creates_world_pair_and_defect() {
        let b = branch_with(&["w0:1:box p < c"]);
        let insts = applicable_rules(&b);
        assert_eq!(insts[0].name, "box:1:dn");
        assert_eq!(insts[0].priority, 2);
        let kids = apply_rule(&b, &insts[0]);
        assert_eq!(kids.len(), 2);
        assert!(strings(&kids[0]).contains(&"1 < c".to_string()));
        let right = strings(&kids[1]);
        assert!(right.contains(&"t0@w0:1 < c".to_string()), "{right:?}");
        assert!(right.contains(&"w1:1:p < w0 R+ w1".to_string()), "{right:?}");
        assert!(right.contains(&"w1:1:p < t1@w0:1".to_string()), "{right:?}");
        assert_eq!(kids[1].world_depth["w1"], 1);
    }

    #[test]
    fn modal_descriptors_pick_sign_and_index() {
        // Index 2 of box is diamond-like over the negative relation.
        let b = branch_with(&["w0:2:box p > c"]);
        let insts = applicable_rules(&b);
        assert_eq!(insts[0].name, "box:2:up");
        let right = strings(&apply_rule(&b, &insts[0])[1]);
        assert!(right.contains(&"t1@w0:2 > c".to_string()), "{right:?}");
        assert!(right.contains(&"t0@w0:2 < w0 R- w1".to_string()), "{right:?}");
        assert!(right.contains(&"w1:2:p > t0@w0:2".to_string()), "{right:?}");

        // box2 in the bi-modal involutive language also reads R- and T2,
        // at truth index 1.
        let b = branch_with(&["w0:1:box2 p < c"]);
        let right = strings(&apply_rule(&b, &applicable_rules(&b)[0])[1]);
        assert!(right.contains(&"t0@w0:2 < c".to_string()), "{right:?}");
        assert!(right.contains(&"w1:1:p < w0 R- w1".to_string()), "{right:?}");

        // ibox keeps Inf style on both indices.
        let b = branch_with(&["w0:2:ibox p < c"]);
        let right = strings(&apply_rule(&b, &applicable_rules(&b)[0])[1]);
        assert!(right.contains(&"t0@w0:2 < c".to_string()), "{right:?}");
        assert!(right.contains(&"w1:2:p < w0 R- w1".to_string()), "{right:?}");
    }

    #[test]
    fn pinned_equality_dispatches_to_propagation() {
        // The approximation rule's own output is pinned and must go to the
        // propagation rule, once a successor exists.
        let b = branch_with(&["w0:1:box p = t0@w0:1", "w0 R+ w1 > 0"]);
        let insts = applicable_rules(&b);
        assert_eq!(insts.len(), 1);
        assert_eq!(insts[0].name, "box:1:prop");
        assert_eq!(insts[0].priority, 3);
        assert_eq!(insts[0].witness, Some(("w0".into(), RelSign::Plus, "w1".into())));
        let kids = apply_rule(&b, &insts[0]);
        assert_eq!(kids.len(), 2);
        assert!(strings(&kids[0]).contains(&"w1:1:p >= t0@w0:1".to_string()));
        let right = strings(&kids[1]);
        assert!(right.contains(&"w1:1:p < t0@w0:1".to_string()), "{right:?}");
        assert!(right.contains(&"w0 R+ w1 <= w1:1:p".to_string()), "{right:?}");
    }

    #[test]
    fn unpinned_equality_goes_through_approximation() {
        let b = branch_with(&["w0:1:box p = c", "w0 R+ w1 > 0"]);
        let insts = applicable_rules(&b);
        assert_eq!(insts[0].name, "box:1:eq");
        let kids = apply_rule(&b, &insts[0]);
        assert_eq!(kids.len(), 2);
        let left = strings(&kids[0]);
        assert!(left.contains(&"w0:1:box p = 1".to_string()), "{left:?}");
        assert!(left.contains(&"c = 1".to_string()), "{left:?}");
        let right = strings(&kids[1]);
        assert!(right.contains(&"w0:1:box p = t0@w0:1".to_string()), "{right:?}");
        assert!(right.contains(&"c = t0@w0:1".to_string()), "{right:?}");
        // The pinned output now dispatches to propagation, not back to eq.
        let next: Vec<_> = applicable_rules(&kids[1]);
        assert!(next.iter().all(|i| i.name != "box:1:eq"), "{next:?}");
        assert!(next.iter().any(|i| i.name == "box:1:prop"));
    }

    #[test]
    fn diamond_rules_are_sup_style() {
        let b = branch_with(&["w0:1:dia p > c"]);
        let insts = applicable_rules(&b);
        assert_eq!(insts[0].name, "dia:1:up");
        let kids = apply_rule(&b, &insts[0]);
        assert!(strings(&kids[0]).contains(&"0 > c".to_string()));
        let right = strings(&kids[1]);
        assert!(right.contains(&"t1@w0:1 > c".to_string()), "{right:?}");
        assert!(right.contains(&"t0@w0:1 < w0 R+ w1".to_string()), "{right:?}");
        assert!(right.contains(&"w1:1:p > t0@w0:1".to_string()), "{right:?}");

        let b = branch_with(&["w0:1:dia p = 0", "w0 R+ w1 > 0"]);
        let insts = applicable_rules(&b);
        assert_eq!(insts[0].name, "dia:1:prop");
        let kids = apply_rule(&b, &insts[0]);
        assert!(strings(&kids[0]).contains(&"w0 R+ w1 <= 0".to_string()));
        let right = strings(&kids[1]);
        assert!(right.contains(&"w1:1:p <= 0".to_string()), "{right:?}");
        assert!(right.contains(&"w0 R+ w1 > 0".to_string()), "{right:?}");
    }

    #[test]
    fn new_successors_enable_new_propagation_instances() {
        let b = branch_with(&["w0:1:box p = 1", "w0 R+ w1 > 0"]);
        let insts = applicable_rules(&b);
        assert_eq!(insts.len(), 1);
        let kid = &apply_rule(&b, &insts[0])[0];
        // Adding a new successor re-enables propagation for the new world.
        let mut kid2 = kid.clone();
        kid2.insert(parse_constraint("w0 R+ w2 > 0").unwrap());
        let insts = applicable_rules(&kid2);
        assert_eq!(insts.len(), 1);
        assert_eq!(insts[0].witness.as_ref().unwrap().2, "w2");
    }

    #[test]
    fn priorities_order_instances() {
        let b = branch_with(&["w0:1:box p < c", "w0:1:neg q < c", "w0:1:q -> r < c"]);
        let insts = applicable_rules(&b);
        let names: Vec<&str> = insts.iter().map(|i| i.name.as_str()).collect();
        assert_eq!(names, vec!["neg:1", "->:1:dn", "box:1:dn"]);
    }

    #[test]
    fn formula_allows_parse_roundtrip_of_rule_output() {
        // Every constraint a rule emits stays within the constraint grammar.
        let b = branch_with(&["w0:1:box(p -> inv q) < c"]);
        let mut stack = vec![b];
        let mut steps = 0;
        while let Some(top) = stack.pop() {
            let insts = applicable_rules(&top);
            if let Some(inst) = insts.first() {
                steps += 1;
                assert!(steps < 200, "runaway expansion");
                for child in apply_rule(&top, inst) {
                    for c in &child.constraints {
                        let s = c.to_string();
                        assert_eq!(
                            crate::constraints::parse_constraint(&s).unwrap(),
                            *c,
                            "round-trip failure for {s}"
                        );
                    }
                    stack.push(child);
                }
            }
        }
    }
}
