//! Seeded random generation of formulas, models, and F-models.
//!
//! All generators are deterministic functions of a [`rand_chacha`] RNG, so
//! test failures reproduce from a seed. Rationals are drawn from the grid
//! `{0, 1/d, …, 1}` for a chosen maximum denominator — small denominators
//! keep countermodels and solver traces readable.

use std::collections::BTreeMap;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::formula::{Formula, LogicId};
use crate::kripke::{FModel, Model};
use crate::rational::{rat, Rat};

/// A fresh deterministic RNG for the given seed.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A rational `k/d` with `0 ≤ k ≤ d` and `1 ≤ d ≤ max_denominator`.
pub fn random_rat(rng: &mut ChaCha8Rng, max_denominator: i64) -> Rat {
    let d = rng.gen_range(1..=max_denominator);
    let k = rng.gen_range(0..=d);
    rat(k, d)
}

/// A random formula in the language of `logic` with exactly `size` symbol
/// occurrences, over the variables `vars`.
pub fn random_formula(
    rng: &mut ChaCha8Rng,
    logic: LogicId,
    size: usize,
    vars: &[&str],
) -> Formula {
    use Formula::*;
    assert!(size >= 1 && !vars.is_empty());
    if size == 1 {
        let constants: &[Formula] = match logic {
            LogicId::KgInv | LogicId::KgInv2 => &[One, Zero],
            LogicId::KgBl => &[One, Zero, Both, Neither],
        };
        // Mostly variables, occasionally a constant.
        return if rng.gen_bool(0.8) {
            Formula::var(vars.choose(rng).unwrap())
        } else {
            constants.choose(rng).unwrap().clone()
        };
    }
    // Choose a unary or (when size permits) binary connective.
    let binary_ok = size >= 3;
    let unary: Vec<fn(Box<Formula>) -> Formula> = match logic {
        LogicId::KgInv => vec![Inv, SNot, Delta, BoxM, DiaM],
        LogicId::KgInv2 => vec![Inv, SNot, Delta, BoxM, DiaM, Box1, Dia1, Box2, Dia2],
        LogicId::KgBl => vec![
            Inv, Neg, Conf, SNot, Delta, ISNot, IDelta, BoxM, DiaM, IBox, IDia,
        ],
    };
    let binary: Vec<fn(Box<Formula>, Box<Formula>) -> Formula> = match logic {
        LogicId::KgInv | LogicId::KgInv2 => vec![And, Or, Impl, Coimpl],
        LogicId::KgBl => vec![And, Or, Impl, Coimpl, IAnd, IOr, IImpl, ICoimpl],
    };
    if binary_ok && rng.gen_bool(0.5) {
        let op = *binary.choose(rng).unwrap();
        let left_size = rng.gen_range(1..=size - 2);
        let left = random_formula(rng, logic, left_size, vars);
        let right = random_formula(rng, logic, size - 1 - left_size, vars);
        op(Box::new(left), Box::new(right))
    } else {
        let op = *unary.choose(rng).unwrap();
        op(Box::new(random_formula(rng, logic, size - 1, vars)))
    }
}

/// A random model with `n_worlds` worlds named `w0, w1, …`, edge probability
/// `density` for each relation independently, and values on the
/// `max_denominator` grid. Both valuations are populated.
pub fn random_model(
    rng: &mut ChaCha8Rng,
    n_worlds: usize,
    vars: &[&str],
    max_denominator: i64,
    density: f64,
) -> Model {
    let worlds: Vec<String> = (0..n_worlds).map(|i| format!("w{i}")).collect();
    let mut m = Model::with_worlds(worlds.clone());
    for from in &worlds {
        for to in &worlds {
            if rng.gen_bool(density) {
                m.rel_plus
                    .insert((from.clone(), to.clone()), random_rat(rng, max_denominator));
            }
            if rng.gen_bool(density) {
                m.rel_minus
                    .insert((from.clone(), to.clone()), random_rat(rng, max_denominator));
            }
        }
    }
    for var in vars {
        for w in &worlds {
            m.v1
                .insert((var.to_string(), w.clone()), random_rat(rng, max_denominator));
            m.v2
                .insert((var.to_string(), w.clone()), random_rat(rng, max_denominator));
        }
    }
    m
}

/// A random F-model: a random model plus per-world value sets containing
/// `{0,1}` and up to `extra_t` additional grid points each.
pub fn random_fmodel(
    rng: &mut ChaCha8Rng,
    n_worlds: usize,
    vars: &[&str],
    max_denominator: i64,
    density: f64,
    extra_t: usize,
) -> FModel {
    let base = random_model(rng, n_worlds, vars, max_denominator, density);
    let mut fm = FModel {
        base,
        t1: BTreeMap::new(),
        t2: BTreeMap::new(),
    };
    fm.normalize();
    let worlds = fm.base.worlds.clone();
    for w in &worlds {
        for _ in 0..extra_t {
            fm.t1
                .get_mut(w)
                .unwrap()
                .insert(random_rat(rng, max_denominator));
            fm.t2
                .get_mut(w)
                .unwrap()
                .insert(random_rat(rng, max_denominator));
        }
    }
    fm
}
