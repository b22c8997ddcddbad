//! Exact evaluation over fuzzy Kripke models, from code and from JSON files.
//!
//! Run with: `cargo run --example evaluate_model`

use godel_modal::kripke::load_model;
use godel_modal::rational::rat;
use godel_modal::{eval_standard, parse, LogicId, Model};

fn main() {
    // Build a bi-relational model in code: two worlds, a positive and a
    // negative accessibility weight, and valuations for both truth indices.
    let mut m = Model::with_worlds(["w", "u"]);
    m.rel_plus.insert(("w".into(), "u".into()), rat(3, 4));
    m.rel_minus.insert(("w".into(), "u".into()), rat(1, 2));
    m.v1.insert(("p".into(), "u".into()), rat(1, 5));
    m.v2.insert(("p".into(), "u".into()), rat(3, 5));
    m.validate().unwrap();

    println!("formula values at w (positive, negative coordinate):");
    for (text, logic) in [
        ("box p", LogicId::KgInv),
        ("dia p", LogicId::KgInv),
        ("inv box p", LogicId::KgInv),
        ("box p", LogicId::KgBl),
        ("neg box p", LogicId::KgBl),
        ("box1 p & dia2 p", LogicId::KgInv2),
    ] {
        let f = parse(text).unwrap();
        let v = eval_standard(&m, &f, "w", logic).unwrap();
        println!("  {:18} in {:7} = {v}", text, logic.name());
    }

    // The same machinery works on models loaded from the JSON format.
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/two-world.json");
    let loaded = load_model(&std::fs::read_to_string(path).unwrap()).unwrap();
    let f = parse("p -> box q").unwrap();
    println!("\n`p -> box q` over {path} (kginv):");
    for w in &loaded.base().worlds {
        let v = eval_standard(loaded.base(), &f, w, LogicId::KgInv).unwrap();
        println!("  {w}: {v}");
    }
}
