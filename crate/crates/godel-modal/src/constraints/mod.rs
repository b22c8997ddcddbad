//! The order-constraint language of the tableau calculus, its translation to
//! exact linear systems, and feasibility solvers.
//!
//! A branch of the tableau is a set of [`Constraint`]s comparing
//! [`Structure`]s: formula values at a world and truth index (`w:1:phi`),
//! relation weights (`w R+ u`), and value terms (fresh variables, constants,
//! T-terms, and `1 - x`). [`linear::translate_branch`] maps a branch to a
//! [`linear::LinearSystem`]; [`solve::solve`] decides feasibility exactly,
//! respecting the T-term gap condition, and [`oracle::oracle_solve`] is an
//! independent brute-force check used by the test suite.
//!
//! # Constraint file grammar
//!
//! One constraint per line; `#` starts a comment. A line is
//! `LHS REL RHS` with `REL ∈ {<, <=, >, >=, =}` (whitespace-delimited).
//! Each side is one of:
//!
//! ```text
//! w:1:p -> q        formula value at world w, truth index 1
//! w R+ u            positive relation weight; R- for the negative relation
//! t0@w:1            lower member of the T-term pair (w, index 1, instance 0)
//! t1.2@w:1          upper member of instance 2 of the same family
//! 2/3               rational constant
//! 1 - c             complement of a value term
//! c                 anything else: a fresh variable
//! ```

pub mod linear;
pub mod oracle;
pub mod solve;

pub use linear::{translate_branch, LinearSystem, Witness};
pub use solve::{
    feasible_relaxed, obviously_unsat, solve, solve_with, Solution, SolveError, SolveLimits,
};

use std::fmt;

use crate::formula::{parse as parse_formula, Formula};
use crate::rational::{fmt_rat, parse_rat, Rat};

/// Which member of an adjacent T-term pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bound {
    Lower,
    Upper,
}

/// A T-term `t_j` of the pair `(world, index, instance)`: an element of the
/// world's finite value set, constrained to be adjacent to its partner.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TTerm {
    pub world: String,
    /// Truth index: 1 for support of truth, 2 for support of falsity.
    pub index: u8,
    /// Distinguishes multiple pairs of the same world and index.
    pub instance: u32,
    pub bound: Bound,
}

impl TTerm {
    pub fn new(world: impl Into<String>, index: u8, instance: u32, bound: Bound) -> TTerm {
        TTerm {
            world: world.into(),
            index,
            instance,
            bound,
        }
    }

    /// The other member of the same pair.
    pub fn partner(&self) -> TTerm {
        TTerm {
            bound: match self.bound {
                Bound::Lower => Bound::Upper,
                Bound::Upper => Bound::Lower,
            },
            ..self.clone()
        }
    }
}

impl fmt::Display for TTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let j = match self.bound {
            Bound::Lower => 0,
            Bound::Upper => 1,
        };
        if self.instance == 0 {
            write!(f, "t{j}@{}:{}", self.world, self.index)
        } else {
            write!(f, "t{j}.{}@{}:{}", self.instance, self.world, self.index)
        }
    }
}

/// A value term: a fresh variable, a T-term, a rational constant, or the
/// complement `1 - t`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ValueTerm {
    Var(String),
    T(TTerm),
    Const(Rat),
    OneMinus(Box<ValueTerm>),
}

impl ValueTerm {
    /// Collapses double complements and folds complements of constants.
    pub fn normalize(self) -> ValueTerm {
        match self {
            ValueTerm::OneMinus(inner) => match inner.normalize() {
                ValueTerm::OneMinus(x) => *x,
                ValueTerm::Const(c) => ValueTerm::Const(crate::rational::one_minus(&c)),
                other => ValueTerm::OneMinus(Box::new(other)),
            },
            other => other,
        }
    }

    pub fn one_minus(t: ValueTerm) -> ValueTerm {
        ValueTerm::OneMinus(Box::new(t)).normalize()
    }
}

impl fmt::Display for ValueTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValueTerm::Var(name) => f.write_str(name),
            ValueTerm::T(t) => write!(f, "{t}"),
            ValueTerm::Const(c) => f.write_str(&fmt_rat(c)),
            ValueTerm::OneMinus(t) => write!(f, "1 - {t}"),
        }
    }
}

/// Sign of an accessibility relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelSign {
    Plus,
    Minus,
}

impl fmt::Display for RelSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RelSign::Plus => "R+",
            RelSign::Minus => "R-",
        })
    }
}

/// One side of a constraint.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Structure {
    /// The value of `formula` at `world`, coordinate `index` — `w:1:phi`.
    FVal {
        world: String,
        index: u8,
        formula: Formula,
    },
    /// A relation weight — `w R+ u`.
    Rel {
        from: String,
        sign: RelSign,
        to: String,
    },
    /// A value term.
    Term(ValueTerm),
}

impl Structure {
    pub fn fval(world: impl Into<String>, index: u8, formula: Formula) -> Structure {
        Structure::FVal {
            world: world.into(),
            index,
            formula,
        }
    }

    pub fn rel(from: impl Into<String>, sign: RelSign, to: impl Into<String>) -> Structure {
        Structure::Rel {
            from: from.into(),
            sign,
            to: to.into(),
        }
    }

    pub fn var(name: impl Into<String>) -> Structure {
        Structure::Term(ValueTerm::Var(name.into()))
    }

    pub fn tterm(t: TTerm) -> Structure {
        Structure::Term(ValueTerm::T(t))
    }

    pub fn constant(c: Rat) -> Structure {
        Structure::Term(ValueTerm::Const(c))
    }
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Structure::FVal {
                world,
                index,
                formula,
            } => write!(f, "{world}:{index}:{formula}"),
            Structure::Rel { from, sign, to } => write!(f, "{from} {sign} {to}"),
            Structure::Term(t) => write!(f, "{t}"),
        }
    }
}

/// A comparison relation between structures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cmp {
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
}

impl Cmp {
    pub fn as_str(self) -> &'static str {
        match self {
            Cmp::Lt => "<",
            Cmp::Le => "<=",
            Cmp::Gt => ">",
            Cmp::Ge => ">=",
            Cmp::Eq => "=",
        }
    }

    pub fn from_str(s: &str) -> Option<Cmp> {
        Some(match s {
            "<" => Cmp::Lt,
            "<=" => Cmp::Le,
            ">" => Cmp::Gt,
            ">=" => Cmp::Ge,
            "=" => Cmp::Eq,
            _ => return None,
        })
    }

    /// The relation read right-to-left: `a < b` iff `b > a`.
    pub fn converse(self) -> Cmp {
        match self {
            Cmp::Lt => Cmp::Gt,
            Cmp::Le => Cmp::Ge,
            Cmp::Gt => Cmp::Lt,
            Cmp::Ge => Cmp::Le,
            Cmp::Eq => Cmp::Eq,
        }
    }

    pub fn is_strict(self) -> bool {
        matches!(self, Cmp::Lt | Cmp::Gt)
    }

    /// Whether `a rel b` holds for rationals.
    pub fn holds(self, a: &Rat, b: &Rat) -> bool {
        match self {
            Cmp::Lt => a < b,
            Cmp::Le => a <= b,
            Cmp::Gt => a > b,
            Cmp::Ge => a >= b,
            Cmp::Eq => a == b,
        }
    }
}

impl fmt::Display for Cmp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An atomic order constraint between two structures.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Constraint {
    pub lhs: Structure,
    pub rel: Cmp,
    pub rhs: Structure,
}

impl Constraint {
    pub fn new(lhs: Structure, rel: Cmp, rhs: Structure) -> Constraint {
        Constraint { lhs, rel, rhs }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.lhs, self.rel, self.rhs)
    }
}

/// A constraint-file parse error, with 1-based line number.
#[derive(Clone, Debug, thiserror::Error, PartialEq, Eq)]
#[error("constraint error on line {line}: {message}")]
pub struct ConstraintParseError {
    pub line: usize,
    pub message: String,
}

fn parse_tterm(token: &str) -> Option<TTerm> {
    // t{0|1}[.{instance}]@{world}:{index}
    let rest = token.strip_prefix('t')?;
    let (head, tail) = rest.split_once('@')?;
    let (j, instance) = match head.split_once('.') {
        Some((j, inst)) => (j, inst.parse::<u32>().ok()?),
        None => (head, 0),
    };
    let bound = match j {
        "0" => Bound::Lower,
        "1" => Bound::Upper,
        _ => return None,
    };
    let (world, index) = tail.rsplit_once(':')?;
    let index: u8 = index.parse().ok()?;
    if !(index == 1 || index == 2) || world.is_empty() {
        return None;
    }
    Some(TTerm::new(world, index, instance, bound))
}

fn parse_value_term(tokens: &[&str]) -> Result<ValueTerm, String> {
    match tokens {
        [] => Err("empty value term".into()),
        ["1", "-", rest @ ..] => Ok(ValueTerm::one_minus(parse_value_term(rest)?)),
        [single] => {
            if let Some(t) = parse_tterm(single) {
                return Ok(ValueTerm::T(t));
            }
            if single.chars().next().is_some_and(|c| c.is_ascii_digit()) {
                let c = parse_rat(single)?;
                if !crate::rational::in_unit(&c) {
                    return Err(format!("constant {single} is outside [0,1]"));
                }
                return Ok(ValueTerm::Const(c));
            }
            if single
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || c == '_')
            {
                Ok(ValueTerm::Var(single.to_string()))
            } else {
                Err(format!("cannot parse value term `{single}`"))
            }
        }
        _ => Err(format!("cannot parse value term `{}`", tokens.join(" "))),
    }
}

fn parse_structure(tokens: &[&str]) -> Result<Structure, String> {
    if let [from, sign, to] = tokens {
        if let Some(sign) = match *sign {
            "R+" => Some(RelSign::Plus),
            "R-" => Some(RelSign::Minus),
            _ => None,
        } {
            return Ok(Structure::rel(*from, sign, *to));
        }
    }
    // A formula value has the shape `world:index:formula…` in its first
    // token; T-terms also contain `:` but start with `t{j}…@`.
    let first = tokens[0];
    if first.contains(':') && parse_tterm(first).is_none() {
        let (world, rest) = first.split_once(':').unwrap();
        let (index, formula_head) = rest
            .split_once(':')
            .ok_or_else(|| format!("expected `world:index:formula` in `{first}`"))?;
        let index: u8 = index
            .parse()
            .ok()
            .filter(|i| *i == 1 || *i == 2)
            .ok_or_else(|| format!("truth index must be 1 or 2 in `{first}`"))?;
        if world.is_empty() {
            return Err(format!("empty world name in `{first}`"));
        }
        let mut text = formula_head.to_string();
        for t in &tokens[1..] {
            text.push(' ');
            text.push_str(t);
        }
        let formula = parse_formula(&text).map_err(|e| e.to_string())?;
        return Ok(Structure::fval(world, index, formula));
    }
    Ok(Structure::Term(parse_value_term(tokens)?))
}

/// Parses one constraint from the ASCII grammar.
pub fn parse_constraint(text: &str) -> Result<Constraint, String> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    let rel_positions: Vec<usize> = tokens
        .iter()
        .enumerate()
        .filter(|(_, t)| Cmp::from_str(t).is_some())
        .map(|(i, _)| i)
        .collect();
    let pos = match rel_positions.as_slice() {
        [p] => *p,
        [] => return Err("no comparison operator found".into()),
        _ => return Err("more than one comparison operator found".into()),
    };
    if pos == 0 || pos == tokens.len() - 1 {
        return Err("comparison operator needs both sides".into());
    }
    let rel = Cmp::from_str(tokens[pos]).unwrap();
    let lhs = parse_structure(&tokens[..pos])?;
    let rhs = parse_structure(&tokens[pos + 1..])?;
    Ok(Constraint::new(lhs, rel, rhs))
}

/// Parses a constraint file: one constraint per line, `#` comments.
pub fn parse_constraint_file(text: &str) -> Result<Vec<Constraint>, ConstraintParseError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let c = parse_constraint(line).map_err(|message| ConstraintParseError {
            line: i + 1,
            message,
        })?;
        out.push(c);
    }
    Ok(out)
}
