//! Exact evaluators for all three languages, over plain models and F-models.
//!
//! The evaluators handle every connective natively, including the defined
//! ones — a property test elsewhere confirms that evaluating a formula and
//! evaluating its desugared form agree exactly, which keeps the desugarer
//! honest against an independent implementation of the same semantics.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use super::{EvalError, FModel, Model, ValuePair};
use crate::formula::{Formula, LogicId};
use crate::rational::{one_minus, Rat};

/// Gödel implication: `1` if `x ≤ y`, else `y`.
fn gimp(x: &Rat, y: &Rat) -> Rat {
    if x <= y {
        Rat::one()
    } else {
        y.clone()
    }
}

/// Gödel co-implication: `0` if `x ≤ y`, else `x`.
fn gco(x: &Rat, y: &Rat) -> Rat {
    if x <= y {
        Rat::zero()
    } else {
        x.clone()
    }
}

/// The falsity coordinate of `→`: `0` if `y ≤ x`, else `y`.
fn coval(x: &Rat, y: &Rat) -> Rat {
    if y <= x {
        Rat::zero()
    } else {
        y.clone()
    }
}

/// Baaz projection: `1` if `x = 1`, else `0`.
fn baaz(x: &Rat) -> Rat {
    if x.is_one() {
        Rat::one()
    } else {
        Rat::zero()
    }
}

fn min(a: Rat, b: Rat) -> Rat {
    if a <= b {
        a
    } else {
        b
    }
}

fn max(a: Rat, b: Rat) -> Rat {
    if a >= b {
        a
    } else {
        b
    }
}

/// Largest element of `t` that is `≤ x`. `t` contains 0, so this total on
/// `[0,1]` inputs.
fn snap_down(t: &BTreeSet<Rat>, x: &Rat) -> Rat {
    t.range(..=x).next_back().cloned().expect("T set contains 0")
}

/// Smallest element of `t` that is `≥ x`. `t` contains 1.
fn snap_up(t: &BTreeSet<Rat>, x: &Rat) -> Rat {
    t.range(x..).next().cloned().expect("T set contains 1")
}

/// Which accessibility relation a clause ranges over.
#[derive(Clone, Copy)]
enum Sign {
    Plus,
    Minus,
}

/// Shared evaluation context: a model plus, for F-models, the value sets.
struct Ctx<'a> {
    m: &'a Model,
    t: Option<&'a FModel>,
}

impl<'a> Ctx<'a> {
    fn weight(&self, sign: Sign, from: &str, to: &str) -> Rat {
        match sign {
            Sign::Plus => self.m.rp(from, to),
            Sign::Minus => self.m.rm(from, to),
        }
    }

    /// `inf over w' of gimp(R(w,w'), value(w'))` — the box-style clause.
    fn inf_clause(
        &self,
        sign: Sign,
        w: &str,
        mut value: impl FnMut(&str) -> Result<Rat, EvalError>,
    ) -> Result<Rat, EvalError> {
        let mut acc = Rat::one();
        for u in &self.m.worlds {
            let r = self.weight(sign, w, u);
            // Weight-0 worlds contribute gimp(0, _) = 1: vacuous. Skipping
            // them avoids evaluating unreachable subtrees.
            if r.is_zero() {
                continue;
            }
            acc = min(acc, gimp(&r, &value(u)?));
        }
        Ok(acc)
    }

    /// `sup over w' of min(R(w,w'), value(w'))` — the diamond-style clause.
    fn sup_clause(
        &self,
        sign: Sign,
        w: &str,
        mut value: impl FnMut(&str) -> Result<Rat, EvalError>,
    ) -> Result<Rat, EvalError> {
        let mut acc = Rat::zero();
        for u in &self.m.worlds {
            let r = self.weight(sign, w, u);
            if r.is_zero() {
                continue;
            }
            acc = max(acc, min(r, value(u)?));
        }
        Ok(acc)
    }

    /// Snaps a modal value into `T_index(w)` when evaluating an F-model.
    fn snap(&self, index: u8, down: bool, w: &str, x: Rat) -> Rat {
        match self.t {
            None => x,
            Some(fm) => {
                let t = if index == 1 { fm.t1_of(w) } else { fm.t2_of(w) };
                if down {
                    snap_down(t, &x)
                } else {
                    snap_up(t, &x)
                }
            }
        }
    }

    /// Scalar (`v₁`-only) evaluation for the involutive languages.
    fn scalar(&self, f: &Formula, w: &str) -> Result<Rat, EvalError> {
        use Formula::*;
        Ok(match f {
            Var(p) => self.m.val1(p, w),
            One => Rat::one(),
            Zero => Rat::zero(),
            Inv(a) => one_minus(&self.scalar(a, w)?),
            SNot(a) => baaz(&one_minus(&self.scalar(a, w)?)),
            Delta(a) => baaz(&self.scalar(a, w)?),
            And(a, b) => min(self.scalar(a, w)?, self.scalar(b, w)?),
            Or(a, b) => max(self.scalar(a, w)?, self.scalar(b, w)?),
            Impl(a, b) => gimp(&self.scalar(a, w)?, &self.scalar(b, w)?),
            Coimpl(a, b) => gco(&self.scalar(a, w)?, &self.scalar(b, w)?),
            BoxM(a) | Box1(a) => {
                let raw = self.inf_clause(Sign::Plus, w, |u| self.scalar(a, u))?;
                self.snap(1, true, w, raw)
            }
            DiaM(a) | Dia1(a) => {
                let raw = self.sup_clause(Sign::Plus, w, |u| self.scalar(a, u))?;
                self.snap(1, false, w, raw)
            }
            Box2(a) => {
                let raw = self.inf_clause(Sign::Minus, w, |u| self.scalar(a, u))?;
                self.snap(2, true, w, raw)
            }
            Dia2(a) => {
                let raw = self.sup_clause(Sign::Minus, w, |u| self.scalar(a, u))?;
                self.snap(2, false, w, raw)
            }
            _ => unreachable!("language checked before evaluation"),
        })
    }

    /// Paired evaluation for the bi-lattice language.
    fn pair(&self, f: &Formula, w: &str) -> Result<ValuePair, EvalError> {
        use Formula::*;
        let v = |pos, negv| ValuePair { pos, negv };
        Ok(match f {
            Var(p) => v(self.m.val1(p, w), self.m.val2(p, w)),
            One => v(Rat::one(), Rat::zero()),
            Zero => v(Rat::zero(), Rat::one()),
            Both => v(Rat::one(), Rat::one()),
            Neither => v(Rat::zero(), Rat::zero()),
            Neg(a) => {
                let x = self.pair(a, w)?;
                v(x.negv, x.pos)
            }
            Conf(a) => {
                let x = self.pair(a, w)?;
                v(one_minus(&x.negv), one_minus(&x.pos))
            }
            Inv(a) => {
                let x = self.pair(a, w)?;
                v(one_minus(&x.pos), one_minus(&x.negv))
            }
            SNot(a) => {
                // φ → 0 componentwise: (gimp(x,0), coval(y,1)).
                let x = self.pair(a, w)?;
                v(baaz(&one_minus(&x.pos)), one_minus(&baaz(&x.negv)))
            }
            ISNot(a) => {
                // φ ⊐ N: (gimp(x,0), gimp(y,0)).
                let x = self.pair(a, w)?;
                v(baaz(&one_minus(&x.pos)), baaz(&one_minus(&x.negv)))
            }
            Delta(a) => {
                // (△x, 1 − △(1−y)): true iff fully supported, false iff
                // falsity support is exactly 0.
                let x = self.pair(a, w)?;
                v(baaz(&x.pos), one_minus(&baaz(&one_minus(&x.negv))))
            }
            IDelta(a) => {
                let x = self.pair(a, w)?;
                v(baaz(&x.pos), baaz(&x.negv))
            }
            And(a, b) => {
                let (x, y) = (self.pair(a, w)?, self.pair(b, w)?);
                v(min(x.pos, y.pos), max(x.negv, y.negv))
            }
            Or(a, b) => {
                let (x, y) = (self.pair(a, w)?, self.pair(b, w)?);
                v(max(x.pos, y.pos), min(x.negv, y.negv))
            }
            IAnd(a, b) => {
                let (x, y) = (self.pair(a, w)?, self.pair(b, w)?);
                v(min(x.pos, y.pos), min(x.negv, y.negv))
            }
            IOr(a, b) => {
                let (x, y) = (self.pair(a, w)?, self.pair(b, w)?);
                v(max(x.pos, y.pos), max(x.negv, y.negv))
            }
            Impl(a, b) => {
                let (x, y) = (self.pair(a, w)?, self.pair(b, w)?);
                v(gimp(&x.pos, &y.pos), coval(&x.negv, &y.negv))
            }
            IImpl(a, b) => {
                let (x, y) = (self.pair(a, w)?, self.pair(b, w)?);
                v(gimp(&x.pos, &y.pos), gimp(&x.negv, &y.negv))
            }
            Coimpl(a, b) => {
                let (x, y) = (self.pair(a, w)?, self.pair(b, w)?);
                v(gco(&x.pos, &y.pos), gimp(&y.negv, &x.negv))
            }
            ICoimpl(a, b) => {
                let (x, y) = (self.pair(a, w)?, self.pair(b, w)?);
                v(gco(&x.pos, &y.pos), gco(&x.negv, &y.negv))
            }
            BoxM(a) => {
                let pos = self.inf_clause(Sign::Plus, w, |u| Ok(self.pair(a, u)?.pos))?;
                let negv = self.sup_clause(Sign::Minus, w, |u| Ok(self.pair(a, u)?.negv))?;
                v(self.snap(1, true, w, pos), self.snap(2, false, w, negv))
            }
            DiaM(a) => {
                let pos = self.sup_clause(Sign::Plus, w, |u| Ok(self.pair(a, u)?.pos))?;
                let negv = self.inf_clause(Sign::Minus, w, |u| Ok(self.pair(a, u)?.negv))?;
                v(self.snap(1, false, w, pos), self.snap(2, true, w, negv))
            }
            IBox(a) => {
                let pos = self.inf_clause(Sign::Plus, w, |u| Ok(self.pair(a, u)?.pos))?;
                let negv = self.inf_clause(Sign::Minus, w, |u| Ok(self.pair(a, u)?.negv))?;
                v(self.snap(1, true, w, pos), self.snap(2, true, w, negv))
            }
            IDia(a) => {
                let pos = self.sup_clause(Sign::Plus, w, |u| Ok(self.pair(a, u)?.pos))?;
                let negv = self.sup_clause(Sign::Minus, w, |u| Ok(self.pair(a, u)?.negv))?;
                v(self.snap(1, false, w, pos), self.snap(2, false, w, negv))
            }
            _ => unreachable!("language checked before evaluation"),
        })
    }

    fn eval(&self, f: &Formula, w: &str, logic: LogicId) -> Result<ValuePair, EvalError> {
        if !self.m.has_world(w) {
            return Err(EvalError::UnknownWorld(w.to_string()));
        }
        if let Err(crate::formula::FormulaError::IllegalConnective { logic, kind }) =
            f.check_language(logic)
        {
            return Err(EvalError::IllegalConnective { logic, kind });
        }
        match logic {
            LogicId::KgInv | LogicId::KgInv2 => {
                let pos = self.scalar(f, w)?;
                let negv = one_minus(&pos);
                Ok(ValuePair { pos, negv })
            }
            LogicId::KgBl => self.pair(f, w),
        }
    }
}

/// Evaluates `f` at `w` in a plain (non-F) model.
///
/// For the involutive logics the result's `negv` is `1 − pos`.
pub fn eval_standard(m: &Model, f: &Formula, w: &str, logic: LogicId) -> Result<ValuePair, EvalError> {
    Ctx { m, t: None }.eval(f, w, logic)
}

/// Evaluates `f` at `w` in an F-model: each modal value is snapped into the
/// world's value set (box-style clauses round down, diamond-style up).
pub fn eval_fmodel(m: &FModel, f: &Formula, w: &str, logic: LogicId) -> Result<ValuePair, EvalError> {
    Ctx { m: &m.base, t: Some(m) }.eval(f, w, logic)
}
