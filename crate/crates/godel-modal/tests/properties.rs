//! Seeded property tests for the library-wide invariants: syntax round-trips,
//! desugaring faithfulness, semantic identities of the evaluators, structural
//! preservation theorems (generated submodels, order isomorphisms),
//! translation hygiene, and solver monotonicity. Every generator is a
//! deterministic function of a fixed seed, so failures reproduce exactly.

use godel_modal::constraints::{parse_constraint_file, solve, translate_branch, Solution};
use godel_modal::formula::{desugar, Formula};
use godel_modal::kripke::{FModel, Model};
use godel_modal::rational::{fmt_rat, one_minus, rat, rat_int, Rat};
use godel_modal::sampling::{random_fmodel, random_formula, random_model, rng};
use godel_modal::tableau::{prove, SearchLimits, Verdict};
use godel_modal::translate::{join, ominus, oplus, StarMap};
use godel_modal::{eval_fmodel, eval_standard, parse, print, LogicId, ValuePair};

const LOGICS: [LogicId; 3] = [LogicId::KgInv, LogicId::KgInv2, LogicId::KgBl];
const VARS: [&str; 3] = ["p", "q", "r"];

fn ev(m: &Model, f: &Formula, w: &str, logic: LogicId) -> ValuePair {
    eval_standard(m, f, w, logic).unwrap()
}

fn evf(m: &FModel, f: &Formula, w: &str, logic: LogicId) -> ValuePair {
    eval_fmodel(m, f, w, logic).unwrap()
}

#[test]
fn printing_then_parsing_is_the_identity() {
    use rand::Rng;
    let mut r = rng(101);
    for logic in LOGICS {
        for _ in 0..150 {
            let size = r.gen_range(1..=12);
            let f = random_formula(&mut r, logic, size, &VARS);
            let text = print(&f);
            let back = parse(&text).unwrap_or_else(|e| panic!("reparse of `{text}` failed: {e}"));
            assert_eq!(back, f, "round trip changed `{text}`");
        }
    }
}

#[test]
fn desugaring_is_idempotent_and_lands_in_the_core_language() {
    let mut r = rng(202);
    for logic in LOGICS {
        for _ in 0..200 {
            let f = random_formula(&mut r, logic, 9, &VARS);
            let core = desugar(&f, logic).unwrap();
            assert!(core.formula().check_language(logic).is_ok());
            let again = desugar(core.formula(), logic).unwrap();
            assert_eq!(
                again.formula(),
                core.formula(),
                "desugaring `{}` twice gave different results",
                print(&f)
            );
            // No new propositional variables appear.
            assert!(core.formula().props().is_subset(&f.props()) || f.props().is_empty());
        }
    }
}

#[test]
fn desugaring_preserves_both_value_coordinates() {
    let mut r = rng(303);
    for logic in LOGICS {
        for _ in 0..120 {
            let f = random_formula(&mut r, logic, 8, &VARS);
            let core = desugar(&f, logic).unwrap();
            let m = random_model(&mut r, 3, &VARS, 6, 0.6);
            let fm = random_fmodel(&mut r, 2, &VARS, 6, 0.7, 2);
            for w in m.worlds.clone() {
                assert_eq!(
                    ev(&m, &f, &w, logic),
                    ev(&m, core.formula(), &w, logic),
                    "desugaring changed the value of `{}` at {w}",
                    print(&f)
                );
            }
            for w in fm.base.worlds.clone() {
                assert_eq!(
                    evf(&fm, &f, &w, logic),
                    evf(&fm, core.formula(), &w, logic),
                    "desugaring changed the F-model value of `{}` at {w}",
                    print(&f)
                );
            }
        }
    }
}

#[test]
fn primitive_constants_equal_their_defining_formulas() {
    let mut r = rng(404);
    for _ in 0..60 {
        let m = random_model(&mut r, 2, &VARS, 8, 0.6);
        for w in m.worlds.clone() {
            // Involutive languages: 1 ≡ p → p and 0 ≡ ∼ᵢ1.
            for logic in [LogicId::KgInv, LogicId::KgInv2] {
                assert_eq!(ev(&m, &parse("1").unwrap(), &w, logic), ev(&m, &parse("p -> p").unwrap(), &w, logic));
                assert_eq!(ev(&m, &parse("0").unwrap(), &w, logic), ev(&m, &parse("inv 1").unwrap(), &w, logic));
            }
            // Bi-lattice language: the four constants against definitions
            // built from ¬ and the informational lattice operations.
            let bl = LogicId::KgBl;
            assert_eq!(ev(&m, &parse("1").unwrap(), &w, bl), ev(&m, &parse("p -> p").unwrap(), &w, bl));
            assert_eq!(ev(&m, &parse("0").unwrap(), &w, bl), ev(&m, &parse("neg 1").unwrap(), &w, bl));
            assert_eq!(ev(&m, &parse("B").unwrap(), &w, bl), ev(&m, &parse("1 ior 0").unwrap(), &w, bl));
            assert_eq!(ev(&m, &parse("N").unwrap(), &w, bl), ev(&m, &parse("1 iand 0").unwrap(), &w, bl));
        }
    }
}

#[test]
fn double_negations_cancel() {
    let mut r = rng(505);
    for logic in LOGICS {
        for _ in 0..120 {
            let f = random_formula(&mut r, logic, 7, &VARS);
            let m = random_model(&mut r, 3, &VARS, 6, 0.6);
            let inv2 = Formula::Inv(Box::new(Formula::Inv(Box::new(f.clone()))));
            for w in m.worlds.clone() {
                assert_eq!(ev(&m, &inv2, &w, logic), ev(&m, &f, &w, logic));
                if logic == LogicId::KgBl {
                    let neg2 = Formula::Neg(Box::new(Formula::Neg(Box::new(f.clone()))));
                    let conf2 = Formula::Conf(Box::new(Formula::Conf(Box::new(f.clone()))));
                    assert_eq!(ev(&m, &neg2, &w, logic), ev(&m, &f, &w, logic));
                    assert_eq!(ev(&m, &conf2, &w, logic), ev(&m, &f, &w, logic));
                }
            }
        }
    }
}

#[test]
fn crisp_models_interdefine_box_and_diamond() {
    let mut r = rng(606);
    let box_p = parse("box p").unwrap();
    let not_dia_not = parse("inv dia inv p").unwrap();
    let dia_p = parse("dia p").unwrap();
    let not_box_not = parse("inv box inv p").unwrap();
    for _ in 0..150 {
        let mut m = random_model(&mut r, 3, &["p"], 8, 0.6);
        // Make the relations crisp; values stay fuzzy.
        for wt in m.rel_plus.values_mut() {
            *wt = if *wt >= rat(1, 2) { rat_int(1) } else { rat_int(0) };
        }
        for w in m.worlds.clone() {
            assert_eq!(
                ev(&m, &box_p, &w, LogicId::KgInv).pos,
                ev(&m, &not_dia_not, &w, LogicId::KgInv).pos,
                "□p ≠ ∼ᵢ◇∼ᵢp at {w} on a crisp model"
            );
            assert_eq!(
                ev(&m, &dia_p, &w, LogicId::KgInv).pos,
                ev(&m, &not_box_not, &w, LogicId::KgInv).pos,
                "◇p ≠ ∼ᵢ□∼ᵢp at {w} on a crisp model"
            );
        }
    }
}

#[test]
fn generated_submodels_preserve_all_values() {
    let mut r = rng(707);
    for logic in LOGICS {
        for _ in 0..60 {
            let m = random_model(&mut r, 4, &VARS, 5, 0.4);
            let fm = random_fmodel(&mut r, 4, &VARS, 5, 0.4, 2);
            let sub = m.generated_submodel(&["w0".into()]).unwrap();
            let fsub = fm.generated_submodel(&["w0".into()]).unwrap();
            for _ in 0..5 {
                let f = random_formula(&mut r, logic, 8, &VARS);
                for w in sub.worlds.clone() {
                    assert_eq!(
                        ev(&sub, &f, &w, logic),
                        ev(&m, &f, &w, logic),
                        "submodel changed the value of `{}` at {w}",
                        print(&f)
                    );
                }
                for w in fsub.base.worlds.clone() {
                    assert_eq!(
                        evf(&fsub, &f, &w, logic),
                        evf(&fm, &f, &w, logic),
                        "F-submodel changed the value of `{}` at {w}",
                        print(&f)
                    );
                }
            }
        }
    }
}

/// A strictly increasing piecewise-linear bijection of `[0,1]` through
/// `(0,0), (1/4,1/8), (1/2,1/2), (3/4,7/8), (1,1)`. It satisfies
/// `g(1−x) = 1−g(x)`, so it commutes with every connective of the languages.
fn g(x: &Rat) -> Rat {
    let pts = [
        (rat_int(0), rat_int(0)),
        (rat(1, 4), rat(1, 8)),
        (rat(1, 2), rat(1, 2)),
        (rat(3, 4), rat(7, 8)),
        (rat_int(1), rat_int(1)),
    ];
    for pair in pts.windows(2) {
        let (x0, y0) = &pair[0];
        let (x1, y1) = &pair[1];
        if x >= x0 && x <= x1 {
            return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
        }
    }
    unreachable!("input outside the unit interval")
}

fn g_pair(v: &ValuePair) -> ValuePair {
    ValuePair::new(g(&v.pos), g(&v.negv))
}

#[test]
fn the_polyline_is_an_odd_order_isomorphism() {
    // Sanity for the transfer test below: strictly increasing, fixes the
    // endpoints, and symmetric under x ↦ 1−x.
    let mut prev: Option<(Rat, Rat)> = None;
    for k in 0..=24 {
        let x = rat(k, 24);
        let y = g(&x);
        assert_eq!(g(&one_minus(&x)), one_minus(&y), "g is not odd at {}", fmt_rat(&x));
        if let Some((px, py)) = prev {
            assert!(px < x && py < y, "g is not strictly increasing");
        }
        prev = Some((x, y));
    }
    assert_eq!(g(&rat_int(0)), rat_int(0));
    assert_eq!(g(&rat_int(1)), rat_int(1));
}

#[test]
fn order_isomorphisms_transfer_values() {
    let mut r = rng(808);
    for logic in LOGICS {
        for _ in 0..80 {
            let fm = random_fmodel(&mut r, 3, &VARS, 6, 0.5, 2);
            // Apply g to every weight, valuation entry, and value-set element.
            let mut gm = fm.clone();
            for wt in gm.base.rel_plus.values_mut() {
                *wt = g(wt);
            }
            for wt in gm.base.rel_minus.values_mut() {
                *wt = g(wt);
            }
            for v in gm.base.v1.values_mut() {
                *v = g(v);
            }
            for v in gm.base.v2.values_mut() {
                *v = g(v);
            }
            for t in gm.t1.values_mut().chain(gm.t2.values_mut()) {
                *t = t.iter().map(g).collect();
            }
            for _ in 0..4 {
                let f = random_formula(&mut r, logic, 8, &VARS);
                for w in fm.base.worlds.clone() {
                    assert_eq!(
                        evf(&gm, &f, &w, logic),
                        g_pair(&evf(&fm, &f, &w, logic)),
                        "transfer along g failed for `{}` at {w}",
                        print(&f)
                    );
                    assert_eq!(
                        ev(&gm.base, &f, &w, logic),
                        g_pair(&ev(&fm.base, &f, &w, logic)),
                        "transfer along g failed on the base model for `{}` at {w}",
                        print(&f)
                    );
                }
            }
        }
    }
}

#[test]
fn the_threshold_formula_tracks_the_box_value() {
    // φ := ∼ᵢ△(□d → ∼ᵢ□d) takes value 1 exactly when □d > 1/2, and value 0
    // otherwise — a crisp threshold definable thanks to the involution.
    let phi = parse("inv delta (box d -> inv box d)").unwrap();
    let box_d = parse("box d").unwrap();
    for x in [rat_int(0), rat(1, 4), rat(1, 2), rat(3, 5), rat_int(1)] {
        let mut m = Model::with_worlds(["w", "u"]);
        m.rel_plus.insert(("w".into(), "u".into()), rat_int(1));
        m.v1.insert(("d".into(), "u".into()), x.clone());
        let b = ev(&m, &box_d, "w", LogicId::KgInv).pos;
        assert_eq!(b, x, "□d should equal the successor value");
        let got = ev(&m, &phi, "w", LogicId::KgInv).pos;
        let want = if x > rat(1, 2) { rat_int(1) } else { rat_int(0) };
        assert_eq!(got, want, "threshold misfired at □d = {}", fmt_rat(&x));
    }
}

#[test]
fn modal_values_land_in_the_value_sets() {
    let mut r = rng(909);
    for _ in 0..120 {
        let fm = random_fmodel(&mut r, 3, &["p"], 7, 0.6, 3);
        for w in fm.base.worlds.clone() {
            // Bi-lattice modalities: truth coordinate in T1, falsity in T2.
            for text in ["box p", "dia p", "ibox p", "idia p"] {
                let v = evf(&fm, &parse(text).unwrap(), &w, LogicId::KgBl);
                assert!(fm.t1_of(&w).contains(&v.pos), "`{text}` pos left T1({w})");
                assert!(fm.t2_of(&w).contains(&v.negv), "`{text}` negv left T2({w})");
            }
            // Indexed modalities snap into the set named by their index.
            for (text, ix) in [("box1 p", 1u8), ("dia1 p", 1), ("box2 p", 2), ("dia2 p", 2)] {
                let v = evf(&fm, &parse(text).unwrap(), &w, LogicId::KgInv2);
                let t = if ix == 1 { fm.t1_of(&w) } else { fm.t2_of(&w) };
                assert!(t.contains(&v.pos), "`{text}` left T{ix}({w})");
            }
        }
    }
}

#[test]
fn coordinate_translations_are_star_fresh_and_linear() {
    let mut r = rng(1010);
    for _ in 0..200 {
        let f = random_formula(&mut r, LogicId::KgBl, 10, &VARS);
        let stars = StarMap::for_formula(&f);
        let plus = oplus(&f, &stars).unwrap();
        let minus = ominus(&f, &stars).unwrap();
        let mut allowed = f.props();
        for (v, s) in stars.pairs() {
            assert!(!f.props().contains(s), "star {s} collides with a variable of `{}`", print(&f));
            assert!(f.props().contains(v));
            allowed.insert(s.clone());
        }
        for t in [&plus, &minus] {
            assert!(
                t.props().is_subset(&allowed),
                "translation of `{}` uses a variable outside props ∪ stars",
                print(&f)
            );
            assert!(
                t.size() <= 5 * f.size() + 5,
                "translation of `{}` is not size-linear: {} vs {}",
                print(&f),
                t.size(),
                f.size()
            );
            assert!(t.check_language(LogicId::KgInv2).is_ok());
        }
        let h = random_formula(&mut r, LogicId::KgInv2, 9, &VARS);
        let j = join(&h).unwrap();
        assert!(j.check_language(LogicId::KgBl).is_ok());
        assert_eq!(j.props(), h.props(), "join must not touch variables");
        assert!(j.size() <= 5 * h.size() + 5, "join of `{}` is not size-linear", print(&h));
    }
}

#[test]
fn coordinate_translations_agree_with_paired_evaluation() {
    // On a model whose starred variables are wired to the falsity valuation,
    // φ⊕ computes the truth coordinate of φ and φ⊖ the falsity coordinate.
    let mut r = rng(1111);
    for _ in 0..80 {
        let f = random_formula(&mut r, LogicId::KgBl, 8, &VARS);
        let stars = StarMap::for_formula(&f);
        let m = random_model(&mut r, 3, &VARS, 6, 0.6);
        let mut linked = m.clone();
        for (v, s) in stars.pairs() {
            for w in m.worlds.clone() {
                let val = m.val2(v, &w);
                linked.v1.insert((s.clone(), w), val);
            }
        }
        let plus = oplus(&f, &stars).unwrap();
        let minus = ominus(&f, &stars).unwrap();
        for w in m.worlds.clone() {
            let pair = ev(&m, &f, &w, LogicId::KgBl);
            assert_eq!(ev(&linked, &plus, &w, LogicId::KgInv2).pos, pair.pos);
            assert_eq!(ev(&linked, &minus, &w, LogicId::KgInv2).pos, pair.negv);
        }
    }
}

/// A random constraint line over a small pool of variables, T-term pairs,
/// formula values, and constants.
fn random_line(r: &mut rand_chacha::ChaCha8Rng) -> String {
    use rand::prelude::*;
    let terms = [
        "x0", "x1", "x2", "t0@w:1", "t1@w:1", "t0.1@w:1", "t1.1@w:1", "w:1:p", "w:1:p -> q",
    ];
    let consts = ["0", "1/4", "1/2", "3/4", "1"];
    let rels = ["<", "<=", "=", ">=", ">"];
    let lhs = *terms.choose(r).unwrap();
    let rhs = if r.gen_bool(0.5) {
        *terms.choose(r).unwrap()
    } else {
        *consts.choose(r).unwrap()
    };
    format!("{lhs} {} {rhs}", rels.choose(r).unwrap())
}

#[test]
fn adding_a_constraint_never_repairs_infeasibility() {
    let mut r = rng(1212);
    use rand::prelude::*;
    let mut unsat_seen = 0;
    for _ in 0..400 {
        let n = r.gen_range(2..=6);
        let lines: Vec<String> = (0..n).map(|_| random_line(&mut r)).collect();
        let base = parse_constraint_file(&lines.join("\n")).unwrap();
        let sys = translate_branch(&base);
        let verdict = solve(&sys).unwrap();
        if let Solution::Sat(w) = &verdict {
            sys.check_witness(w).unwrap();
        } else {
            unsat_seen += 1;
        }
        // Extend the system and re-solve: SAT may flip to UNSAT, never back.
        let mut extended = lines.clone();
        extended.push(random_line(&mut r));
        let bigger = translate_branch(&parse_constraint_file(&extended.join("\n")).unwrap());
        let verdict2 = solve(&bigger).unwrap();
        if matches!(verdict, Solution::Unsat) {
            assert!(
                matches!(verdict2, Solution::Unsat),
                "adding `{}` repaired an infeasible system:\n{}",
                extended.last().unwrap(),
                lines.join("\n")
            );
        }
        if let Solution::Sat(w) = &verdict2 {
            sys.check_witness(w).unwrap(); // restriction still satisfies the base
        }
    }
    assert!(unsat_seen >= 40, "too few UNSAT systems sampled: {unsat_seen}");
}

#[test]
fn prover_verdicts_match_random_model_search() {
    let mut r = rng(1313);
    let limits = SearchLimits::default();
    let mut valid = 0;
    let mut invalid = 0;
    for _ in 0..40 {
        let f = random_formula(&mut r, LogicId::KgInv, 6, &["p", "q"]);
        if f.modal_depth() > 2 {
            continue;
        }
        let report = prove(&f, LogicId::KgInv, &limits).unwrap();
        match report.verdict {
            Verdict::Valid => {
                valid += 1;
                // No random F-model may refute a formula the prover validated.
                for _ in 0..120 {
                    let fm = random_fmodel(&mut r, 2, &["p", "q"], 6, 0.8, 2);
                    for w in fm.base.worlds.clone() {
                        assert!(
                            evf(&fm, &f, &w, LogicId::KgInv).pos.eq(&rat_int(1)),
                            "random model refutes `{}` which the prover called valid",
                            print(&f)
                        );
                    }
                }
            }
            Verdict::Invalid => {
                invalid += 1;
                let cm = report.countermodel.expect("invalid verdicts carry a countermodel");
                let got = evf(&cm.model, &f, &cm.root, LogicId::KgInv);
                assert_eq!(got, cm.achieved);
                assert!(got.pos < rat_int(1), "countermodel for `{}` does not refute it", print(&f));
            }
        }
    }
    assert!(valid >= 3 && invalid >= 10, "unbalanced sample: {valid} valid / {invalid} invalid");
}
