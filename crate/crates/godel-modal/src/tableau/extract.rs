//! Building a countermodel from an open, saturated branch and a satisfying
//! witness of its constraint system — and re-verifying it.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::constraints::{Structure, TTerm, ValueTerm, Witness};
use crate::formula::LogicId;
use crate::kripke::{eval_fmodel, FModel, Model};
use crate::rational::{rat_int, Rat};
use crate::Formula;

use super::{Branch, CountermodelReport, TableauError};

fn witness_value(witness: &Witness, name: &str) -> Rat {
    witness.get(name).cloned().unwrap_or_else(Rat::zero)
}

fn collect_tterms(t: &ValueTerm, out: &mut BTreeSet<TTerm>) {
    match t {
        ValueTerm::T(tt) => {
            out.insert(tt.clone());
        }
        ValueTerm::OneMinus(inner) => collect_tterms(inner, out),
        ValueTerm::Var(_) | ValueTerm::Const(_) => {}
    }
}

/// Reads the finite model off the branch: worlds and relation weights from
/// the relational terms, valuations from the atomic formula values, and the
/// per-world value sets from the T-terms (plus the mandatory 0 and 1).
/// Anything the witness leaves unmentioned defaults to 0.
pub fn extract_countermodel(
    branch: &Branch,
    witness: &Witness,
    query: &Formula,
    logic: LogicId,
    tableau_index: u8,
) -> Result<CountermodelReport, TableauError> {
    let mut worlds: BTreeSet<String> = BTreeSet::new();
    let mut tterms: BTreeSet<TTerm> = BTreeSet::new();
    let mut atoms: BTreeSet<(String, u8, String)> = BTreeSet::new(); // (world, index, var)

    worlds.insert(Branch::root_world().to_string());
    for c in &branch.constraints {
        for side in [&c.lhs, &c.rhs] {
            match side {
                Structure::FVal {
                    world,
                    index,
                    formula,
                } => {
                    worlds.insert(world.clone());
                    if let Formula::Var(p) = formula {
                        atoms.insert((world.clone(), *index, p.clone()));
                    }
                }
                Structure::Rel { from, to, .. } => {
                    worlds.insert(from.clone());
                    worlds.insert(to.clone());
                }
                Structure::Term(t) => collect_tterms(t, &mut tterms),
            }
        }
    }
    for t in &tterms {
        worlds.insert(t.world.clone());
    }

    let mut base = Model::with_worlds(worlds.iter().cloned());
    for (from, sign, to) in &branch.rel_terms {
        let name = Structure::rel(from.clone(), *sign, to.clone()).to_string();
        let weight = witness_value(witness, &name);
        let rel = match sign {
            crate::constraints::RelSign::Plus => &mut base.rel_plus,
            crate::constraints::RelSign::Minus => &mut base.rel_minus,
        };
        rel.insert((from.clone(), to.clone()), weight);
    }
    for (world, index, p) in &atoms {
        let name = Structure::fval(world.clone(), *index, Formula::var(p)).to_string();
        let value = witness_value(witness, &name);
        let val = if *index == 1 { &mut base.v1 } else { &mut base.v2 };
        val.insert((p.clone(), world.clone()), value);
    }

    let mut fm = FModel {
        base,
        t1: Default::default(),
        t2: Default::default(),
    };
    for t in &tterms {
        let value = witness_value(witness, &t.to_string());
        let set = if t.index == 1 { &mut fm.t1 } else { &mut fm.t2 };
        set.entry(t.world.clone()).or_default().insert(value);
    }
    fm.normalize();
    fm.validate()
        .map_err(|e| TableauError::Verification(format!("extracted model invalid: {e}")))?;

    let root = Branch::root_world().to_string();
    let achieved = eval_fmodel(&fm, query, &root, logic)
        .map_err(|e| TableauError::Verification(format!("evaluation failed: {e}")))?;

    // Mandatory re-verification: the evaluator must confirm that the model
    // actually refutes the query on the coordinate the tableau attacked.
    let refutes = match tableau_index {
        1 => achieved.pos < rat_int(1),
        _ => achieved.negv > rat_int(0),
    };
    if !refutes {
        return Err(TableauError::Verification(format!(
            "open branch produced a model that does not refute the query: \
             value {achieved} at {root} (tableau {tableau_index})"
        )));
    }

    Ok(CountermodelReport {
        model: fm,
        root,
        achieved,
        tableau_index,
        query: query.clone(),
    })
}
