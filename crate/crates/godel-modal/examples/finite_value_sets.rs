//! F-models: finite per-world value sets and modal snapping.
//!
//! In an F-model every world `w` carries finite sets `T₁(w)`, `T₂(w)` ⊇ {0,1}
//! into which modal values are coerced: infimum-style values (boxes) snap
//! *down* to the nearest element, supremum-style values (diamonds) snap *up*.
//! This is what makes the logics decidable — and it changes truth: a box and
//! the dual of a diamond may land on different sides of a gap.
//!
//! Run with: `cargo run --example finite_value_sets`

use godel_modal::kripke::{load_model, AnyModel};
use godel_modal::{eval_fmodel, eval_standard, parse, LogicId};

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/finite-sets.json");
    let loaded = load_model(&std::fs::read_to_string(path).unwrap()).unwrap();
    let AnyModel::F(fm) = &loaded else {
        panic!("file declares T sets, so it loads as an F-model")
    };

    println!("T1(w) = {:?}", fm.t1_of("w").iter().map(ToString::to_string).collect::<Vec<_>>());
    println!("p has value 1/2 at the successor u; R+(w,u) = 3/4\n");

    for text in ["box p", "dia p", "inv dia inv p", "box p -> inv dia inv p"] {
        let f = parse(text).unwrap();
        let unsnapped = eval_standard(&fm.base, &f, "w", LogicId::KgInv).unwrap();
        let snapped = eval_fmodel(fm, &f, "w", LogicId::KgInv).unwrap();
        println!("  {text:24} standard {unsnapped}   F-model {snapped}");
    }

    println!(
        "\nThe box value 1/2 snaps down into T1(w) giving 1/3, while the \
         diamond\nunder the involution snaps up — so the interaction \
         implication drops below 1."
    );
}
