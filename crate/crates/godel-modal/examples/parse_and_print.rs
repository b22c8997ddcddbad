//! Parsing, canonical printing, language inference, and desugaring.
//!
//! Run with: `cargo run --example parse_and_print`

use godel_modal::formula::desugar;
use godel_modal::{parse, print, LogicId};

fn minimal(f: &godel_modal::Formula) -> &'static str {
    f.minimal_logic().map_or("mixed", |l| l.name())
}

fn main() {
    // The parser accepts ASCII names for every connective; the printer emits
    // a canonical, re-parseable form with minimal parentheses.
    for text in [
        "(p & (q))",
        "p -> q -> r",
        "inv box p | snot q",
        "neg (p iand q) iimpl conf r",
        "box1 p & dia2 q",
    ] {
        let f = parse(text).unwrap();
        println!("{text:32} ==> {:32} [{}]", print(&f), minimal(&f));
    }

    // Defined connectives desugar into the core language of the chosen logic.
    println!();
    for (text, logic) in [
        ("snot p", LogicId::KgInv),
        ("delta p", LogicId::KgInv),
        ("isnot p", LogicId::KgBl),
        ("p | q", LogicId::KgBl),
    ] {
        let f = parse(text).unwrap();
        let core = desugar(&f, logic).unwrap();
        println!(
            "{:10} desugars in {:6} to  {}",
            text,
            logic.name(),
            print(core.formula())
        );
    }
}
