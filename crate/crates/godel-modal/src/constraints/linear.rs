//! Translation of a constraint set into an exact linear system.
//!
//! Every distinct structure (formula value, relation weight, fresh variable,
//! T-term) becomes one variable ranging over `[0,1]`; `1 - t` becomes the
//! affine atom `1 − x`. For every T-term pair occurring in the input, the
//! side constraint `t₀ < t₁` is appended, and the pair is registered in the
//! gap group of its `(world, truth index)` — a satisfying assignment must
//! leave no other T-term variable of the same group strictly between the two
//! members of any pair.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Zero};

use super::{Bound, Cmp, Constraint, Structure, TTerm, ValueTerm};
use crate::rational::{fmt_rat, one_minus, Rat};

/// Index of a variable in a [`LinearSystem`].
pub type VarId = usize;

/// A unit-coefficient operand: a constant, a variable, or its complement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    Const(Rat),
    Pos(VarId),
    /// `1 − x`.
    Neg(VarId),
}

impl Atom {
    pub fn eval(&self, values: &[Rat]) -> Rat {
        match self {
            Atom::Const(c) => c.clone(),
            Atom::Pos(v) => values[*v].clone(),
            Atom::Neg(v) => one_minus(&values[*v]),
        }
    }
}

/// One translated constraint: `lhs rel rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinIneq {
    pub lhs: Atom,
    pub rel: Cmp,
    pub rhs: Atom,
    /// The source constraint, kept for explain dumps and error reports.
    pub origin: String,
}

/// An adjacent T-term pair: `lower < upper`, scoped to a gap group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pair {
    pub lower: VarId,
    pub upper: VarId,
    pub group: (String, u8),
}

/// The translated system: named `[0,1]` variables, unit-coefficient
/// comparisons, pair side constraints, and gap groups.
#[derive(Clone, Debug, Default)]
pub struct LinearSystem {
    /// Display names, indexed by `VarId`.
    pub var_names: Vec<String>,
    pub constraints: Vec<LinIneq>,
    pub pairs: Vec<Pair>,
    /// All T-term variables per `(world, truth index)`.
    pub gap_groups: BTreeMap<(String, u8), Vec<VarId>>,
}

/// A satisfying assignment, keyed by variable name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub values: BTreeMap<String, Rat>,
}

impl Witness {
    pub fn get(&self, name: &str) -> Option<&Rat> {
        self.values.get(name)
    }
}

struct Builder {
    sys: LinearSystem,
    by_name: BTreeMap<String, VarId>,
}

impl Builder {
    fn var(&mut self, name: String) -> VarId {
        if let Some(&id) = self.by_name.get(&name) {
            return id;
        }
        let id = self.sys.var_names.len();
        self.sys.var_names.push(name.clone());
        self.by_name.insert(name, id);
        id
    }

    /// Registers a T-term (and, on first sight of its pair, the partner
    /// variable, the `t₀ < t₁` side constraint, and the gap-group entries).
    fn tterm_var(&mut self, t: &TTerm) -> VarId {
        let name = t.to_string();
        if let Some(&id) = self.by_name.get(&name) {
            return id;
        }
        let (lo, hi) = match t.bound {
            Bound::Lower => (t.clone(), t.partner()),
            Bound::Upper => (t.partner(), t.clone()),
        };
        let lower = self.var(lo.to_string());
        let upper = self.var(hi.to_string());
        let group = (t.world.clone(), t.index);
        self.sys.constraints.push(LinIneq {
            lhs: Atom::Pos(lower),
            rel: Cmp::Lt,
            rhs: Atom::Pos(upper),
            origin: format!("{lo} < {hi} (pair)"),
        });
        self.sys.pairs.push(Pair {
            lower,
            upper,
            group: group.clone(),
        });
        let members = self.sys.gap_groups.entry(group).or_default();
        members.push(lower);
        members.push(upper);
        self.by_name[&name]
    }

    fn term_atom(&mut self, t: &ValueTerm) -> Atom {
        match t.clone().normalize() {
            ValueTerm::Const(c) => Atom::Const(c),
            ValueTerm::Var(name) => Atom::Pos(self.var(name)),
            ValueTerm::T(t) => Atom::Pos(self.tterm_var(&t)),
            ValueTerm::OneMinus(inner) => match self.term_atom(&inner) {
                Atom::Pos(v) => Atom::Neg(v),
                Atom::Neg(v) => Atom::Pos(v),
                Atom::Const(c) => Atom::Const(one_minus(&c)),
            },
        }
    }

    fn atom(&mut self, s: &Structure) -> Atom {
        match s {
            Structure::FVal { .. } | Structure::Rel { .. } => Atom::Pos(self.var(s.to_string())),
            Structure::Term(t) => self.term_atom(t),
        }
    }
}

/// Translates a constraint set into a [`LinearSystem`].
pub fn translate_branch(constraints: &[Constraint]) -> LinearSystem {
    let mut b = Builder {
        sys: LinearSystem::default(),
        by_name: BTreeMap::new(),
    };
    for c in constraints {
        let lhs = b.atom(&c.lhs);
        let rhs = b.atom(&c.rhs);
        b.sys.constraints.push(LinIneq {
            lhs,
            rel: c.rel,
            rhs,
            origin: c.to_string(),
        });
    }
    b.sys
}

impl LinearSystem {
    pub fn n_vars(&self) -> usize {
        self.var_names.len()
    }

    /// The gap obligations implied by the pairs: for each pair and each
    /// other T-term variable `s` of the same group, `s ≤ lower ∨ s ≥ upper`.
    pub fn gap_obligations(&self) -> Vec<(VarId, VarId, VarId)> {
        let mut out = Vec::new();
        for p in &self.pairs {
            if let Some(members) = self.gap_groups.get(&p.group) {
                for &s in members {
                    if s != p.lower && s != p.upper {
                        out.push((s, p.lower, p.upper));
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Checks an assignment against every constraint, the `[0,1]` bounds,
    /// and every gap obligation. Returns the first violation, if any.
    pub fn check_values(&self, values: &[Rat]) -> Result<(), String> {
        assert_eq!(values.len(), self.n_vars());
        for (i, x) in values.iter().enumerate() {
            if !crate::rational::in_unit(x) {
                return Err(format!(
                    "{} = {} is outside [0,1]",
                    self.var_names[i],
                    fmt_rat(x)
                ));
            }
        }
        for c in &self.constraints {
            let (a, b) = (c.lhs.eval(values), c.rhs.eval(values));
            if !c.rel.holds(&a, &b) {
                return Err(format!(
                    "constraint `{}` violated: {} {} {} is false",
                    c.origin,
                    fmt_rat(&a),
                    c.rel,
                    fmt_rat(&b)
                ));
            }
        }
        for (s, lo, hi) in self.gap_obligations() {
            if values[lo] < values[s] && values[s] < values[hi] {
                return Err(format!(
                    "gap violated: {} = {} lies strictly between {} = {} and {} = {}",
                    self.var_names[s],
                    fmt_rat(&values[s]),
                    self.var_names[lo],
                    fmt_rat(&values[lo]),
                    self.var_names[hi],
                    fmt_rat(&values[hi])
                ));
            }
        }
        Ok(())
    }

    /// Checks a named witness; every variable must be assigned.
    pub fn check_witness(&self, w: &Witness) -> Result<(), String> {
        let values: Vec<Rat> = self
            .var_names
            .iter()
            .map(|name| {
                w.get(name)
                    .cloned()
                    .ok_or_else(|| format!("witness misses variable `{name}`"))
            })
            .collect::<Result<_, _>>()?;
        self.check_values(&values)
    }

    pub(crate) fn witness_from_values(&self, values: &[Rat]) -> Witness {
        Witness {
            values: self
                .var_names
                .iter()
                .cloned()
                .zip(values.iter().cloned())
                .collect(),
        }
    }

    fn atom_name(&self, a: &Atom) -> String {
        match a {
            Atom::Const(c) => fmt_rat(c),
            Atom::Pos(v) => self.var_names[*v].clone(),
            Atom::Neg(v) => format!("1 - {}", self.var_names[*v]),
        }
    }

    /// A human-readable dump of the system (the CLI `--explain` output).
    pub fn explain(&self) -> String {
        let mut out = String::new();
        writeln!(out, "variables ({}):", self.n_vars()).unwrap();
        for name in &self.var_names {
            writeln!(out, "  0 <= {name} <= 1").unwrap();
        }
        writeln!(out, "constraints ({}):", self.constraints.len()).unwrap();
        for c in &self.constraints {
            writeln!(
                out,
                "  {} {} {}    [from: {}]",
                self.atom_name(&c.lhs),
                c.rel,
                self.atom_name(&c.rhs),
                c.origin
            )
            .unwrap();
        }
        let obligations = self.gap_obligations();
        writeln!(out, "gap obligations ({}):", obligations.len()).unwrap();
        for (s, lo, hi) in obligations {
            writeln!(
                out,
                "  {} <= {}  or  {} >= {}",
                self.var_names[s], self.var_names[lo], self.var_names[s], self.var_names[hi]
            )
            .unwrap();
        }
        out
    }
}

/// Zero and one as plain rationals (helpers for the solvers).
pub(crate) fn zero() -> Rat {
    Rat::zero()
}

pub(crate) fn unit() -> Rat {
    Rat::one()
}
