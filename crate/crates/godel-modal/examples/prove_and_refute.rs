//! The tableau prover: validity verdicts and verified countermodels.
//!
//! Run with: `cargo run --example prove_and_refute`

use godel_modal::kripke::{save_model, AnyModel};
use godel_modal::tableau::{prove, SearchLimits, Verdict};
use godel_modal::{eval_fmodel, parse, LogicId};

fn main() {
    let limits = SearchLimits::default();

    println!("validities (all tableaux close):");
    for (text, logic) in [
        ("box(p -> q) -> (box p -> box q)", LogicId::KgInv),
        ("(p -> q) | (q -> p)", LogicId::KgInv),
        ("inv inv p -> p", LogicId::KgInv),
        ("p -> p", LogicId::KgBl),
        ("box1 1", LogicId::KgInv2),
    ] {
        let r = prove(&parse(text).unwrap(), logic, &limits).unwrap();
        assert_eq!(r.verdict, Verdict::Valid);
        println!("  VALID   {:36} [{}]  ({} expansions)", text, logic.name(), r.expansions);
    }

    // An invalid formula yields a finite F-model countermodel. The prover
    // re-checks it with the independent evaluator before reporting it.
    let query = parse("box p -> inv dia inv p").unwrap();
    let r = prove(&query, LogicId::KgInv, &limits).unwrap();
    assert_eq!(r.verdict, Verdict::Invalid);
    let cm = r.countermodel.unwrap();
    println!("\nINVALID  box p -> inv dia inv p  [kginv]");
    println!("value at {}: {}", cm.root, cm.achieved);
    println!("countermodel:\n{}", save_model(&AnyModel::F(cm.model.clone())));

    // Independent confirmation, straight from the report.
    let again = eval_fmodel(&cm.model, &query, &cm.root, LogicId::KgInv).unwrap();
    assert_eq!(again, cm.achieved);
    println!("re-evaluated in the reported model: {again} (matches)");
}
