//! Translations between the bi-lattice and bi-modal involutive languages.
//!
//! * [`oplus`]/[`ominus`] map a bi-lattice formula to two bi-modal involutive
//!   formulas capturing, respectively, its support-of-truth and
//!   support-of-falsity coordinate. Falsity of an atom `p` is represented by
//!   a fresh starred variable (see [`StarMap`]); `box`/`ibox` become `box1`,
//!   `dia`/`idia` become `dia1` on the positive side, and dually `dia2`/`box2`
//!   on the negative side.
//! * [`join`] maps a bi-modal involutive formula back into the bi-lattice
//!   language: `box1`/`dia1` become `box`/`dia`, while the negative-relation
//!   modalities become their `neg`-dual (`box2 ↦ neg dia neg`,
//!   `dia2 ↦ neg box neg`).
//! * [`embed_inv_to_bl`] and [`embed_bl_to_inv`] wrap these into
//!   validity-preserving embeddings: `f ↦ B -> join(f)` and
//!   `f ↦ oplus(f) & snot(ominus(f))` with one shared star map.
//!
//! Both directions are purely syntactic; their semantic correctness (the
//! translated formula evaluates to exactly the intended coordinate on every
//! model) is established by the evaluator-backed tests below and the
//! randomized properties in the test suite.

use std::collections::{BTreeMap, BTreeSet};

use crate::formula::{desugar_expanding_inv, Formula, FormulaError, LogicId};

/// An injective map `p ↦ p_star` whose range is disjoint from the variables
/// of the formula it was built for.
#[derive(Clone, Debug)]
pub struct StarMap {
    map: BTreeMap<String, String>,
}

impl StarMap {
    /// Builds a star map covering every variable of `f`. Starred names append
    /// `_star` (doubling the suffix until fresh relative to `f`'s variables
    /// and the other starred names).
    pub fn for_formula(f: &Formula) -> StarMap {
        let props = f.props();
        let mut taken: BTreeSet<String> = props.clone();
        let mut map = BTreeMap::new();
        for p in &props {
            let mut candidate = format!("{p}_star");
            while taken.contains(&candidate) {
                candidate.push_str("_star");
            }
            taken.insert(candidate.clone());
            map.insert(p.clone(), candidate);
        }
        StarMap { map }
    }

    /// The starred counterpart of `var`; defaults to `var_star` for
    /// variables outside the map's domain.
    pub fn star(&self, var: &str) -> String {
        self.map
            .get(var)
            .cloned()
            .unwrap_or_else(|| format!("{var}_star"))
    }

    /// Iterates over `(variable, starred variable)` pairs.
    pub fn pairs(&self) -> impl Iterator<Item = (&String, &String)> {
        self.map.iter()
    }
}

fn un(f: Formula) -> Box<Formula> {
    Box::new(f)
}

/// Core translation: `positive` selects the ⊕ (truth) table, otherwise ⊖.
/// `f` must be a core KGBL formula (no defined connectives, no `inv`).
fn tr(f: &Formula, stars: &StarMap, positive: bool) -> Formula {
    use Formula::*;
    let same = |g: &Formula| tr(g, stars, positive);
    let flip = |g: &Formula| tr(g, stars, !positive);
    match f {
        Var(p) => {
            if positive {
                Var(p.clone())
            } else {
                Var(stars.star(p))
            }
        }
        // Constants translate to their fixed coordinate: 1=(1,0), 0=(0,1),
        // B=(1,1), N=(0,0).
        One => {
            if positive {
                One
            } else {
                Zero
            }
        }
        Zero => {
            if positive {
                Zero
            } else {
                One
            }
        }
        Both => One,
        Neither => Zero,
        Neg(a) => flip(a),
        Conf(a) => Inv(un(flip(a))),
        And(a, b) => {
            if positive {
                And(un(same(a)), un(same(b)))
            } else {
                Or(un(same(a)), un(same(b)))
            }
        }
        IAnd(a, b) => And(un(same(a)), un(same(b))),
        Impl(a, b) => {
            if positive {
                Impl(un(same(a)), un(same(b)))
            } else {
                // falsity of an implication is the co-implication of the
                // falsity coordinates, consequent first
                Coimpl(un(same(b)), un(same(a)))
            }
        }
        IImpl(a, b) => Impl(un(same(a)), un(same(b))),
        BoxM(a) => {
            if positive {
                Box1(un(same(a)))
            } else {
                Dia2(un(same(a)))
            }
        }
        DiaM(a) => {
            if positive {
                Dia1(un(same(a)))
            } else {
                Box2(un(same(a)))
            }
        }
        IBox(a) => {
            if positive {
                Box1(un(same(a)))
            } else {
                Box2(un(same(a)))
            }
        }
        IDia(a) => {
            if positive {
                Dia1(un(same(a)))
            } else {
                Dia2(un(same(a)))
            }
        }
        _ => unreachable!("input was desugared to the core bi-lattice language"),
    }
}

/// The support-of-truth translation: a bi-modal involutive formula whose
/// value under `v(p) := v₁(p)`, `v(p_star) := v₂(p)` is exactly `v₁(f)`.
pub fn oplus(f: &Formula, stars: &StarMap) -> Result<Formula, FormulaError> {
    let core = desugar_expanding_inv(f, LogicId::KgBl)?;
    Ok(tr(&core, stars, true))
}

/// The support-of-falsity translation: evaluates to exactly `v₂(f)` under the
/// same variable convention as [`oplus`].
pub fn ominus(f: &Formula, stars: &StarMap) -> Result<Formula, FormulaError> {
    let core = desugar_expanding_inv(f, LogicId::KgBl)?;
    Ok(tr(&core, stars, false))
}

/// Replaces the indexed modalities by bi-lattice ones: `box1 ↦ box`,
/// `dia1 ↦ dia`, `box2 ↦ neg dia neg`, `dia2 ↦ neg box neg`. Propositional
/// structure is untouched.
pub fn join(f: &Formula) -> Result<Formula, FormulaError> {
    f.check_language(LogicId::KgInv2)?;
    Ok(join_rec(f))
}

fn join_rec(f: &Formula) -> Formula {
    use Formula::*;
    match f {
        Box1(a) => BoxM(un(join_rec(a))),
        Dia1(a) => DiaM(un(join_rec(a))),
        Box2(a) => Neg(un(DiaM(un(Neg(un(join_rec(a))))))),
        Dia2(a) => Neg(un(BoxM(un(Neg(un(join_rec(a))))))),
        Var(_) | One | Zero => f.clone(),
        Inv(a) => Inv(un(join_rec(a))),
        SNot(a) => SNot(un(join_rec(a))),
        Delta(a) => Delta(un(join_rec(a))),
        BoxM(a) => BoxM(un(join_rec(a))),
        DiaM(a) => DiaM(un(join_rec(a))),
        And(a, b) => And(un(join_rec(a)), un(join_rec(b))),
        Or(a, b) => Or(un(join_rec(a)), un(join_rec(b))),
        Impl(a, b) => Impl(un(join_rec(a)), un(join_rec(b))),
        Coimpl(a, b) => Coimpl(un(join_rec(a)), un(join_rec(b))),
        _ => unreachable!("language checked"),
    }
}

/// Embeds a bi-modal involutive formula into the bi-lattice language so that
/// validity is preserved and reflected: `f ↦ B -> join(f)`.
pub fn embed_inv_to_bl(f: &Formula) -> Result<Formula, FormulaError> {
    Ok(Formula::Impl(un(Formula::Both), un(join(f)?)))
}

/// Embeds a bi-lattice formula into the bi-modal involutive language so that
/// validity is preserved and reflected: `f ↦ oplus(f) & snot(ominus(f))`,
/// with one star map shared between the two halves.
pub fn embed_bl_to_inv(f: &Formula) -> Result<Formula, FormulaError> {
    let stars = StarMap::for_formula(f);
    Ok(Formula::And(
        un(oplus(f, &stars)?),
        un(Formula::SNot(un(ominus(f, &stars)?))),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse, print};
    use crate::kripke::{eval_standard, Model};
    use crate::rational::{one_minus, rat};
    use crate::LogicId;

    fn stars_of(s: &str) -> (Formula, StarMap) {
        let f = parse(s).unwrap();
        let m = StarMap::for_formula(&f);
        (f, m)
    }

    #[test]
    fn star_map_is_fresh_and_injective() {
        let (_, m) = stars_of("p & q_star & q");
        assert_eq!(m.star("p"), "p_star");
        assert_eq!(m.star("q"), "q_star_star"); // q_star is taken by the input
        let range: BTreeSet<String> = m.pairs().map(|(_, s)| s.clone()).collect();
        assert_eq!(range.len(), m.pairs().count());
    }

    #[test]
    fn oplus_ominus_golden() {
        // box(p -> idia neg q) | conf r
        let (f, m) = stars_of("box(p -> idia neg q) | conf r");
        assert_eq!(
            print(&oplus(&f, &m).unwrap()),
            "box1(p -> dia1 q_star) | inv r_star"
        );
        assert_eq!(
            print(&ominus(&f, &m).unwrap()),
            "dia2(dia2 q -< p_star) & inv r"
        );
    }

    #[test]
    fn atoms_and_negation() {
        let (p, m) = stars_of("p");
        assert_eq!(print(&oplus(&p, &m).unwrap()), "p");
        assert_eq!(print(&ominus(&p, &m).unwrap()), "p_star");
        let (np, m) = stars_of("neg p");
        assert_eq!(print(&oplus(&np, &m).unwrap()), "p_star");
        assert_eq!(print(&ominus(&np, &m).unwrap()), "p");
    }

    #[test]
    fn join_golden() {
        let f = parse("box1(p & q) -> dia2 p").unwrap();
        assert_eq!(print(&join(&f).unwrap()), "box(p & q) -> neg box neg p");
        assert_eq!(print(&join(&parse("dia1 p").unwrap()).unwrap()), "dia p");
        assert_eq!(print(&join(&parse("p -> p").unwrap()).unwrap()), "p -> p");
    }

    #[test]
    fn embeddings_shape() {
        assert_eq!(
            print(&embed_inv_to_bl(&parse("dia2 p").unwrap()).unwrap()),
            "B -> neg box neg p"
        );
        assert_eq!(
            print(&embed_bl_to_inv(&parse("p").unwrap()).unwrap()),
            "p & snot p_star"
        );
        assert_eq!(
            print(&embed_bl_to_inv(&parse("neg p").unwrap()).unwrap()),
            "p_star & snot p"
        );
    }

    #[test]
    fn rejects_wrong_language() {
        let (f, m) = stars_of("box2 p");
        assert!(oplus(&f, &m).is_err());
        assert!(join(&parse("neg p").unwrap()).is_err());
    }

    /// On a concrete bi-relational model, the translated formulas compute
    /// exactly the two value coordinates of the original.
    #[test]
    fn oplus_ominus_track_the_coordinates() {
        let mut m = Model::with_worlds(["w", "u"]);
        m.rel_plus.insert(("w".into(), "u".into()), rat(2, 3));
        m.rel_minus.insert(("w".into(), "u".into()), rat(1, 2));
        m.v1.insert(("p".into(), "w".into()), rat(1, 3));
        m.v2.insert(("p".into(), "w".into()), rat(3, 4));
        m.v1.insert(("p".into(), "u".into()), rat(4, 5));
        m.v2.insert(("q".into(), "u".into()), rat(1, 5));
        // The translated formulas read starred variables for v2.
        let mut m_star = m.clone();
        for ((var, world), x) in m.v2.clone() {
            m_star.v1.insert((format!("{var}_star"), world), x);
        }
        for s in [
            "p",
            "neg p",
            "conf q",
            "inv p",
            "p & q",
            "p iand q",
            "p -> q",
            "p iimpl q",
            "box p",
            "dia p",
            "ibox q",
            "idia q",
            "box(p -> idia neg q) | conf r",
            "delta p ior isnot q",
            "B icoimpl p",
        ] {
            let (f, stars) = stars_of(s);
            let pair = eval_standard(&m, &f, "w", LogicId::KgBl).unwrap();
            let plus = eval_standard(&m_star, &oplus(&f, &stars).unwrap(), "w", LogicId::KgInv2)
                .unwrap();
            let minus = eval_standard(&m_star, &ominus(&f, &stars).unwrap(), "w", LogicId::KgInv2)
                .unwrap();
            assert_eq!(plus.pos, pair.pos, "oplus mismatch for {s}");
            assert_eq!(minus.pos, pair.negv, "ominus mismatch for {s}");
        }
    }

    /// On models whose v2 is forced to 1 − v1 (the sub-class the involutive
    /// logic lives in), a formula and its join-image evaluate identically.
    #[test]
    fn join_preserves_values_on_involutive_models() {
        let mut m = Model::with_worlds(["w", "u"]);
        m.rel_plus.insert(("w".into(), "u".into()), rat(2, 3));
        m.rel_minus.insert(("w".into(), "u".into()), rat(1, 2));
        m.v1.insert(("p".into(), "w".into()), rat(1, 3));
        m.v1.insert(("p".into(), "u".into()), rat(4, 5));
        m.v1.insert(("q".into(), "u".into()), rat(1, 4));
        for var in ["p", "q"] {
            for w in ["w", "u"] {
                let x = m.val1(var, w);
                m.v2.insert((var.into(), w.into()), one_minus(&x));
            }
        }
        for s in [
            "p",
            "inv p",
            "p -> q",
            "box1 p",
            "dia1 q",
            "box2 p",
            "dia2 q",
            "box1(p & q) -> dia2 p",
            "delta p | snot q",
        ] {
            let f = parse(s).unwrap();
            let orig = eval_standard(&m, &f, "w", LogicId::KgInv2).unwrap();
            let image = eval_standard(&m, &join(&f).unwrap(), "w", LogicId::KgBl).unwrap();
            assert_eq!(image.pos, orig.pos, "join mismatch for {s}");
        }
    }
}
