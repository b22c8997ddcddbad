//! Translations between the bi-lattice language and the bi-modal involutive
//! language, and the validity-preserving embeddings built from them.
//!
//! * `oplus`  — the truth coordinate of a bi-lattice formula, as a bi-modal
//!   involutive formula over fresh starred variables.
//! * `ominus` — the falsity coordinate, over the same starred variables.
//! * `join`   — eliminates indexed modalities in favour of bi-lattice ones.
//!
//! Run with: `cargo run --example translate_logics`

use godel_modal::translate::{embed_bl_to_inv, embed_inv_to_bl, join, ominus, oplus, StarMap};
use godel_modal::{parse, print};

fn main() {
    println!("coordinate translations of bi-lattice formulas:");
    for text in ["neg p", "p & q", "box p", "conf dia p", "p iimpl q"] {
        let f = parse(text).unwrap();
        let stars = StarMap::for_formula(&f);
        println!(
            "  {:12}  oplus: {:28} ominus: {}",
            text,
            print(&oplus(&f, &stars).unwrap()),
            print(&ominus(&f, &stars).unwrap()),
        );
    }

    println!("\nindexed-modality elimination:");
    for text in ["box1 p", "dia2 p", "box1(p -> dia2 q)"] {
        let f = parse(text).unwrap();
        println!("  {:20} join: {}", text, print(&join(&f).unwrap()));
    }

    println!("\nvalidity-preserving embeddings:");
    let chi = parse("neg box p").unwrap();
    println!("  kgbl   {:12} => kginv2: {}", print(&chi), print(&embed_bl_to_inv(&chi).unwrap()));
    let phi = parse("box1 p -> dia1 p").unwrap();
    println!("  kginv2 {:18} => kgbl: {}", print(&phi), print(&embed_inv_to_bl(&phi).unwrap()));
}
